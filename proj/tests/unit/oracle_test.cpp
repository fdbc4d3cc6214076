#include <gtest/gtest.h>

#include <algorithm>

#include "stag/derived_tree.hpp"
#include "stag/oracle.hpp"
#include "stag/parser.hpp"
#include "test_support.hpp"

namespace {

using namespace stag;
using stag::testing::att;
using stag::testing::shipped;
using stag::testing::tokens_of;

OracleResult oracle(std::string_view text, std::string_view grammar = "chase", OracleBound bound = {}) {
  const Grammar& g = shipped(grammar);
  return brute_force_derivations(tokens_of(text, g).tokens, g, bound);
}

std::vector<int> costs(const std::vector<Derivation>& ds, const Grammar& g) {
  std::vector<int> out;
  for (const auto& d : ds) out.push_back(d.cost(g));
  std::sort(out.begin(), out.end());
  return out;
}

// Frozen: the oracle finds the alpha-only reading, the scrambled-subject
// reading, and the reading with both arguments scrambled (stacked).
TEST(Oracle, SentenceOne) {
  OracleResult r = oracle("Tom-i Jerry-lul ccossnunta.");
  EXPECT_FALSE(r.bound_exceeded);
  ASSERT_EQ(r.derivations.size(), 3u);
  EXPECT_EQ(costs(r.derivations, shipped("chase")), (std::vector<int>{0, 1, 2}));
  Derivation alpha{{{1, "gamma_chase"}, {2, "alpha_tom_sp"}, {3, "alpha_jerry_op"}},
                   {att(2, 0, 1, 0, "1"), att(3, 0, 1, 0, "2")},
                   1};
  auto it = std::find_if(r.derivations.begin(), r.derivations.end(),
                         [&](const Derivation& d) { return canonical_key(d) == canonical_key(alpha); });
  EXPECT_NE(it, r.derivations.end());
}

TEST(Oracle, SentenceTwo) {
  OracleResult r = oracle("Jerry-lul Tom-i ccossnunta.");
  ASSERT_EQ(r.derivations.size(), 2u);
  EXPECT_EQ(costs(r.derivations, shipped("chase")), (std::vector<int>{1, 2}));
  Derivation beta{{{1, "gamma_chase"}, {2, "beta_jerry_op"}, {3, "alpha_tom_sp"}},
                  {att(2, 0, 1, 0, "e", Op::adjoin), att(3, 0, 1, 0, "1"), att(2, 1, 1, 0, "2")},
                  1};
  auto levels = rank_by_priority(r.derivations, shipped("chase"));
  ASSERT_EQ(levels[0].derivations.size(), 1u);
  EXPECT_EQ(canonical_key(levels[0].derivations[0]), canonical_key(beta));
}

TEST(Oracle, LexicalGap) {
  OracleResult r = oracle("Foo");
  EXPECT_TRUE(r.derivations.empty());
  ASSERT_FALSE(r.notes.empty());
  EXPECT_NE(r.notes[0].find("lexical gap"), std::string::npos);
}

TEST(Oracle, VerbFirstIsEmpty) { EXPECT_TRUE(oracle("ccossnunta Tom-i Jerry-lul").derivations.empty()); }

TEST(Oracle, ResultsAreValid) {
  const Grammar& g = shipped("embedded");
  Sentence s = tokens_of("Jerry-lul Mary-ka Tom-i ccossnuntako sayngkakhanta.", g);
  OracleResult r = brute_force_derivations(s.tokens, g);
  EXPECT_EQ(r.derivations.size(), 7u);
  for (const auto& d : r.derivations) {
    EXPECT_TRUE(validate_derivation(d, g).empty());
    EXPECT_EQ(build_derived_tree(d, g).yield(), lex_sequence(s.tokens));
    EXPECT_EQ(d, canonicalize(d));
  }
}

TEST(Oracle, IndependentOfPairOrder) {
  const Grammar& g = shipped("ditransitive");
  std::vector<SyncPair> pairs(g.pairs().begin(), g.pairs().end());
  std::reverse(pairs.begin(), pairs.end());
  Grammar reversed = index_grammar(pairs, g.meta());
  Sentence s = tokens_of("chicu-lul Tom-i Jerry-eykey cwunta", g);
  auto keys = [](const OracleResult& r) {
    std::vector<std::string> out;
    for (const auto& d : r.derivations) out.push_back(canonical_key(d));
    std::sort(out.begin(), out.end());
    return out;
  };
  EXPECT_EQ(keys(brute_force_derivations(s.tokens, g)), keys(brute_force_derivations(s.tokens, reversed)));
}

TEST(Equivalence, ExampleSentences) {
  for (const char* text : {"Tom-i Jerry-lul ccossnunta.", "Jerry-lul Tom-i ccossnunta.", "ccossnunta Tom-i Jerry-lul"}) {
    const Grammar& g = shipped("chase");
    EquivalenceReport r = assert_equivalence(tokens_of(text, g).tokens, g);
    EXPECT_TRUE(r.equivalent) << text << "\n" << r.str();
  }
}

TEST(Equivalence, AdjunctionDisabledParserIsCaught) {
  const Grammar& g = shipped("chase");
  DerivationSource no_adjunction = [](std::span<const Token> tokens, const Grammar& grammar, std::size_t max_uses) {
    std::vector<Derivation> out = parser_derivations(tokens, grammar, max_uses);
    std::erase_if(out, [](const Derivation& d) {
      return std::any_of(d.attachments.begin(), d.attachments.end(),
                         [](const Attachment& a) { return a.op == Op::adjoin; });
    });
    return out;
  };
  EquivalenceReport r = assert_equivalence(tokens_of("Jerry-lul Tom-i ccossnunta.", g).tokens, g, {}, no_adjunction);
  EXPECT_FALSE(r.equivalent);
  EXPECT_EQ(r.parser_count, 0u);
  EXPECT_EQ(r.missing.size(), 2u);
  EXPECT_TRUE(r.extra.empty());
  EXPECT_NE(r.str().find("missing"), std::string::npos);
}

TEST(Equivalence, SmallBoundIsReported) {
  const Grammar& g = shipped("embedded");
  OracleBound bound;
  bound.max_uses = 3;
  EquivalenceReport r =
      assert_equivalence(tokens_of("Jerry-lul Mary-ka Tom-i ccossnuntako sayngkakhanta.", g).tokens, g, bound);
  EXPECT_TRUE(r.bound_exceeded);
  EXPECT_NE(r.str().find("bound exceeded"), std::string::npos) << r.str();

  OracleBound nodes;
  nodes.max_nodes = 5;
  OracleResult capped = brute_force_derivations(
      tokens_of("Jerry-lul Mary-ka Tom-i ccossnuntako sayngkakhanta.", g).tokens, g, nodes);
  EXPECT_TRUE(capped.bound_exceeded);
}

}  // namespace
