#include <gtest/gtest.h>

#include <json.hpp>

#include "stag/grammar_io.hpp"
#include "test_support.hpp"

namespace {

using namespace stag;
using nlohmann::json;
using stag::testing::grammar_path;
using stag::testing::read_file;

json chase_json() { return json::parse(read_file(grammar_path("chase"))); }

GrammarLoadError load_error(const std::string& text) {
  try {
    load_grammar(text);
  } catch (const GrammarLoadError& e) {
    return e;
  }
  ADD_FAILURE() << "grammar unexpectedly loaded";
  return GrammarLoadError(ErrorKind::internal, "none");
}

TEST(GrammarIo, LoadsShippedGrammars) {
  EXPECT_EQ(load_grammar_file(grammar_path("chase")).pairs().size(), 8u);
  EXPECT_EQ(load_grammar_file(grammar_path("ditransitive")).pairs().size(), 19u);
  EXPECT_EQ(load_grammar_file(grammar_path("embedded")).pairs().size(), 15u);
}

TEST(GrammarIo, ChaseTranscription) {
  Grammar g = load_grammar_file(grammar_path("chase"));
  const SyncPair& beta = g.at("beta_jerry_op");
  EXPECT_EQ(beta.priority, 2);
  EXPECT_EQ(beta.source.head, 1u);
  ASSERT_EQ(beta.source.dominance.size(), 1u);
  EXPECT_EQ(beta.source.dominance[0], (std::pair<std::size_t, std::size_t>{0, 1}));
  EXPECT_TRUE(beta.source.components[0].is_auxiliary());
  EXPECT_EQ(beta.source.components[1].root().kind, NodeKind::empty);
  EXPECT_EQ(beta.source.components[1].root().features.at("trace"), "@set");
  EXPECT_TRUE(beta.links.empty());
  const SyncPair& gamma = g.at("gamma_chase");
  ASSERT_EQ(gamma.links.size(), 2u);
  EXPECT_EQ(gamma.links[1].tgt.str(), "2.2");
}

TEST(GrammarIo, EmptyFileIsSyntaxError) {
  EXPECT_EQ(load_error("").kind(), ErrorKind::syntax);
  EXPECT_EQ(load_error("   \n").kind(), ErrorKind::syntax);
}

TEST(GrammarIo, SyntaxErrorCarriesLine) {
  auto e = load_error("{\n  \"version\": 1,\n  \"pairs\": [,]\n}\n");
  EXPECT_EQ(e.kind(), ErrorKind::syntax);
  EXPECT_EQ(e.line(), 3);
}

TEST(GrammarIo, BadLinkAddressIsSchemaError) {
  json doc = chase_json();
  doc["pairs"][0]["links"][0]["src"] = "9";
  auto e = load_error(doc.dump());
  EXPECT_EQ(e.kind(), ErrorKind::schema);
  EXPECT_NE(std::string(e.what()).find("\"9\""), std::string::npos) << e.what();
  EXPECT_EQ(e.field(), "pairs[0] (gamma_chase).links[0].src");

  doc = chase_json();
  doc["pairs"][0]["links"][0]["tgt"] = "1.0";
  EXPECT_EQ(load_error(doc.dump()).kind(), ErrorKind::schema);
}

TEST(GrammarIo, SchemaErrors) {
  json doc = chase_json();
  doc["extra"] = 1;
  EXPECT_EQ(load_error(doc.dump()).kind(), ErrorKind::schema);

  doc = chase_json();
  doc["version"] = 2;
  EXPECT_EQ(load_error(doc.dump()).kind(), ErrorKind::schema);

  doc = chase_json();
  doc["pairs"][0]["source"]["components"][0]["kind"] = "twig";
  EXPECT_EQ(load_error(doc.dump()).kind(), ErrorKind::schema);

  doc = chase_json();
  doc["pairs"][0]["source"]["components"][0]["adjoin"] = "maybe";
  EXPECT_EQ(load_error(doc.dump()).kind(), ErrorKind::schema);

  doc = chase_json();
  doc["pairs"][0]["name"] = 7;
  EXPECT_EQ(load_error(doc.dump()).kind(), ErrorKind::schema);

  doc = chase_json();
  doc["pairs"][0].erase("target");
  auto e = load_error(doc.dump());
  EXPECT_EQ(e.kind(), ErrorKind::schema);
  EXPECT_NE(std::string(e.what()).find("target"), std::string::npos);

  EXPECT_EQ(load_error("[1, 2]").kind(), ErrorKind::schema);
}

TEST(GrammarIo, ValidationErrorsAreForwarded) {
  json doc = chase_json();
  doc["pairs"][0]["links"].erase(1);
  auto e = load_error(doc.dump());
  EXPECT_EQ(e.kind(), ErrorKind::validation);
  ASSERT_FALSE(e.diagnostics().empty());
  EXPECT_EQ(e.diagnostics()[0].pair, "gamma_chase");
}

TEST(GrammarIo, DuplicateAndStartErrors) {
  json doc = chase_json();
  doc["pairs"][1]["name"] = "gamma_chase";
  EXPECT_EQ(load_error(doc.dump()).kind(), ErrorKind::duplicate_name);

  doc = chase_json();
  doc["start_symbol"] = "CP";
  EXPECT_EQ(load_error(doc.dump()).kind(), ErrorKind::no_start_pair);
}

TEST(GrammarIo, DefaultsApply) {
  json doc = chase_json();
  for (auto& pair : doc["pairs"]) pair.erase("priority");
  Grammar g = load_grammar(doc.dump());
  EXPECT_EQ(g.at("alpha_tom_sp").priority, 1);
  EXPECT_EQ(g.at("beta_tom_sp").priority, 2);
  EXPECT_EQ(g.at("gamma_chase").source.components[0].root().adjoin, AdjoinConstraint::allow);
}

TEST(GrammarIo, UnreadableFileIsIoError) {
  try {
    load_grammar_file("/nonexistent/missing.grammar");
    FAIL();
  } catch (const GrammarLoadError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
}

TEST(GrammarIo, RoundTrip) {
  for (const auto& name : stag::testing::shipped_names()) {
    Grammar g = load_grammar_file(grammar_path(name));
    std::string text = dump_grammar(g);
    Grammar again = load_grammar(text);
    EXPECT_EQ(again, g) << name;
    EXPECT_EQ(dump_grammar(again), text) << name;
    EXPECT_EQ(text.back(), '\n');
  }
}

TEST(GrammarIo, DumpOmitsDefaults) {
  std::string text = dump_grammar(load_grammar_file(grammar_path("chase")));
  EXPECT_EQ(text.find("\"interior\""), std::string::npos);
  EXPECT_EQ(text.find("\"allow\""), std::string::npos);
  // Sorted keys: "cat" precedes "children" precedes "kind".
  EXPECT_LT(text.find("\"cat\""), text.find("\"children\""));
}

}  // namespace
