#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <set>
#include <functional>
#include <map>
#include <random>
#include <thread>

#include "stag/derived_tree.hpp"
#include "stag/error.hpp"
#include "stag/generator.hpp"
#include "stag/grammar_io.hpp"
#include "stag/oracle.hpp"
#include "stag/parser.hpp"
#include "stag/pipeline.hpp"
#include "stag/transfer.hpp"
#include "test_support.hpp"

namespace {

using namespace stag;
using namespace stag::testing;

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> c = regression_corpus();
  return c;
}

// ---- grammar model ---------------------------------------------------------

TEST(GornProperty, PrintParseRoundTrip) {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    std::vector<int> path(rng() % 6);
    for (int& p : path) p = 1 + static_cast<int>(rng() % 12);
    GornAddress a(path);
    EXPECT_EQ(GornAddress::parse(a.str()), a);
  }
}

TEST(ValidatePairProperty, LinkOrderIndependent) {
  std::mt19937 rng(11);
  for (const auto& name : shipped_names()) {
    for (const SyncPair& pair : shipped(name).pairs()) {
      for (int round = 0; round < 10; ++round) {
        SyncPair p = pair;
        // Add a few arbitrary (often invalid) links, then shuffle.
        for (int k = 0; k < 3; ++k) {
          p.links.push_back({rng() % 3, GornAddress(std::vector<int>(rng() % 3, 1 + static_cast<int>(rng() % 3))),
                             GornAddress(std::vector<int>(rng() % 3, 1 + static_cast<int>(rng() % 3)))});
        }
        auto expected = validate_pair(p);
        std::shuffle(p.links.begin(), p.links.end(), rng);
        EXPECT_EQ(validate_pair(p), expected) << pair.name;
      }
    }
  }
}

// ---- grammar io ------------------------------------------------------------

TEST(GrammarIoProperty, LoadDumpIdentity) {
  for (const auto& name : shipped_names()) {
    const Grammar& g = shipped(name);
    EXPECT_EQ(load_grammar(dump_grammar(g)), g) << name;
  }
}

TEST(GrammarIoProperty, LoadingIsTotal) {
  std::mt19937 rng(3);
  const std::string base = read_file(grammar_path("chase"));
  const std::string alphabet = "{}[]\":,0123456789abcdeflnrstu \n-.@";
  std::size_t loaded = 0, rejected = 0;
  for (int i = 0; i < 3000; ++i) {
    std::string text = base;
    switch (rng() % 4) {
      case 0:
        text.resize(rng() % text.size());
        break;
      case 1:
        for (int k = 0; k < 1 + static_cast<int>(rng() % 4); ++k) text[rng() % text.size()] = alphabet[rng() % alphabet.size()];
        break;
      case 2:
        text.erase(rng() % text.size(), 1 + rng() % 40);
        break;
      default: {
        // Swap two quoted tokens, which keeps the syntax and stresses the schema.
        std::vector<std::size_t> quotes;
        for (std::size_t p = 0; p < text.size(); ++p) {
          if (text[p] == '"') quotes.push_back(p);
        }
        std::size_t a = (rng() % (quotes.size() / 2)) * 2, b = (rng() % (quotes.size() / 2)) * 2;
        std::string ta = text.substr(quotes[a], quotes[a + 1] - quotes[a] + 1);
        std::string tb = text.substr(quotes[b], quotes[b + 1] - quotes[b] + 1);
        if (a > b) std::swap(a, b), std::swap(ta, tb);
        if (a == b) break;
        text.replace(quotes[b], tb.size(), ta);
        text.replace(quotes[a], ta.size(), tb);
      }
    }
    try {
      load_grammar(text);
      ++loaded;
    } catch (const GrammarLoadError&) {
      ++rejected;
    } catch (const std::exception& e) {
      ADD_FAILURE() << "escaped exception: " << e.what();
    }
  }
  EXPECT_GT(rejected, 0u);
  EXPECT_EQ(loaded + rejected, 3000u);
}

// ---- morphology ------------------------------------------------------------

TEST(MorphProperty, SpellingsAgreeAndCountsArePreserved) {
  for (const auto& name : shipped_names()) {
    const Grammar& g = shipped(name);
    std::vector<std::string> vocab = vocabulary(g);
    for (const std::string& word : vocab) {
      Token hyphen = segment_token(word, g.particles(), g.anchors());
      std::string bare = word;
      std::erase(bare, '-');
      Token joined = segment_token(bare, g.particles(), g.anchors());
      EXPECT_EQ(hyphen.stem, joined.stem) << word;
      EXPECT_EQ(hyphen.particle, joined.particle) << word;
    }
    std::string all;
    for (const auto& w : vocab) all += w + "   ";
    EXPECT_EQ(tokenize(all, g).tokens.size(), vocab.size());
  }
}

// ---- parser vs oracle on the regression corpus -----------------------------

class CorpusProperty : public ::testing::TestWithParam<std::string> {};

TEST_P(CorpusProperty, ParserMatchesOracleAndInvariantsHold) {
  std::size_t sentences = 0, parsed = 0, derivations = 0;
  std::vector<std::string> failures;
  for (const CorpusEntry& e : corpus()) {
    if (e.grammar != GetParam()) continue;
    CorpusCheck c = check_corpus_entry(e);
    ++sentences;
    parsed += c.parsed;
    derivations += c.derivations;
    for (auto& f : c.failures) failures.push_back(std::move(f));
    EXPECT_LT(c.seconds, 10.0) << e.sentence;
  }
  EXPECT_TRUE(failures.empty()) << failures.size() << " failures, first: " << failures.front();
  // Frozen corpus statistics, established with the oracle.
  static const std::map<std::string, std::array<std::size_t, 3>> frozen = {
      {"chase", {7522, 6, 14}}, {"ditransitive", {5216, 162, 432}}, {"embedded", {5435, 99, 855}}};
  std::array<std::size_t, 3> actual = {sentences, parsed, derivations};
  EXPECT_EQ(actual, frozen.at(GetParam()))
      << GetParam() << ": sentences " << sentences << ", parsed " << parsed << ", derivations " << derivations;
}

INSTANTIATE_TEST_SUITE_P(Shipped, CorpusProperty, ::testing::Values("chase", "ditransitive", "embedded"));

// Verb-final: with the argument frame fixed, an order parses iff the verb
// comes last.
TEST(ParserProperty, VerbFinal) {
  struct Case {
    std::string grammar;
    std::vector<std::string> words;
  };
  for (const Case& c : {Case{"chase", {"Tom-i", "Jerry-lul", "ccossnunta"}},
                        Case{"ditransitive", {"Tom-i", "Jerry-eykey", "chicu-lul", "cwunta"}},
                        Case{"ditransitive", {"chicu-ka", "Tom-eykey", "Jerry-lul", "cwunta"}}}) {
    const Grammar& g = shipped(c.grammar);
    std::vector<std::string> words = c.words;
    std::sort(words.begin(), words.end());
    std::set<std::string> translations;
    do {
      std::string text;
      for (const auto& w : words) text += w + " ";
      bool verb_last = words.back() == c.words.back();
      try {
        translations.insert(translate(text, g).surface);
        EXPECT_TRUE(verb_last) << text;
      } catch (const Error& e) {
        EXPECT_FALSE(verb_last) << text << ": " << e.what();
        EXPECT_EQ(e.kind(), ErrorKind::no_parse);
      }
    } while (std::next_permutation(words.begin(), words.end()));
    EXPECT_EQ(translations.size(), 1u);
  }
}

TEST(ParserProperty, ConcurrentParsesAgree) {
  std::vector<CorpusEntry> sample;
  for (const CorpusEntry& e : corpus()) {
    if (e.sentence.size() > 25) sample.push_back(e);
    if (sample.size() == 200) break;
  }
  auto run = [&](std::vector<std::string>& out) {
    for (const auto& e : sample) {
      const Grammar& g = shipped(e.grammar);
      std::string line;
      for (const auto& d : parser_derivations(tokenize(e.sentence, g).tokens, g, 0)) line += canonical_key(d);
      out.push_back(line);
    }
  };
  std::vector<std::string> serial;
  run(serial);
  std::vector<std::vector<std::string>> results(4);
  std::vector<std::thread> threads;
  for (auto& r : results) threads.emplace_back([&] { run(r); });
  for (auto& t : threads) t.join();
  for (const auto& r : results) EXPECT_EQ(r, serial);
}

// ---- transfer --------------------------------------------------------------

std::string target_shape(const TargetDerivation& td) {
  std::map<int, std::vector<int>> kids;
  std::map<int, std::string> names;
  for (const auto& u : td.uses) names[u.id] = u.pair;
  for (const auto& a : td.attachments) kids[a.host].push_back(a.child);
  std::function<std::string(int)> shape = [&](int id) {
    std::vector<std::string> parts;
    for (int k : kids[id]) parts.push_back(shape(k));
    std::sort(parts.begin(), parts.end());
    std::string out = names[id] + "(";
    for (const auto& p : parts) out += p + " ";
    return out + ")";
  };
  return shape(td.root_use);
}

TEST(TransferProperty, IsomorphismAndScramblingInvariance) {
  std::mt19937 rng(2024);
  std::size_t with_variants = 0;
  for (int i = 0; i < 100; ++i) {
    const Grammar& g = shipped(shipped_names()[i % 3]);
    Derivation d = random_derivation(g, rng);
    ASSERT_TRUE(validate_derivation(d, g).empty());

    TargetDerivation td = transfer_derivation(d, g);
    EXPECT_EQ(td.uses.size(), d.uses.size());
    EXPECT_EQ(td.attachments.size() + 1, d.uses.size());
    EXPECT_EQ(target_shape(td), collapsed_source_shape(d, g)) << render_derivation(d, g);
    for (const TargetAttachment& a : td.attachments) {
      const Use* host = d.find_use(a.host);
      ASSERT_NE(host, nullptr);
      EXPECT_EQ(resolve_attachment(g.at(host->pair), a.source_comp, a.source_address), a.address);
    }
    EXPECT_NO_THROW(realize(td, g));

    std::vector<Derivation> variants = scrambling_variants(d, g);
    EXPECT_FALSE(variants.empty());
    if (variants.size() > 1) ++with_variants;
    for (const Derivation& v : variants) EXPECT_EQ(transfer_derivation(v, g), td) << render_derivation(v, g);

    // The derivation's own yield parses back to it.
    DerivedTree source = build_derived_tree(d, g);
    Sentence s = tokenize(yield_surface(source), g);
    std::vector<Derivation> all = parser_derivations(s.tokens, g, 0);
    EXPECT_NE(std::find(all.begin(), all.end(), d), all.end()) << yield_surface(source);
  }
  // The sample must actually exercise scrambling alternatives.
  EXPECT_GT(with_variants, 10u);
}

}  // namespace
