#include <gtest/gtest.h>

#include "stag/error.hpp"
#include "stag/morph.hpp"
#include "test_support.hpp"

namespace {

using namespace stag;
using stag::testing::shipped;

Token seg(std::string_view word) {
  const Grammar& g = shipped("chase");
  return segment_token(word, g.particles(), g.anchors());
}

ErrorKind seg_error(std::string_view word) {
  try {
    seg(word);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::internal;
}

TEST(Segment, Hyphenated) {
  Token t = seg("Jerry-lul");
  EXPECT_EQ(t.surface, "Jerry-lul");
  EXPECT_EQ(t.stem, "Jerry");
  EXPECT_EQ(t.particle, "lul");
  EXPECT_EQ(t.case_label, "acc");
}

TEST(Segment, AnchorWordIsKeptWhole) {
  Token t = seg("ccossnunta");
  EXPECT_EQ(t.stem, "ccossnunta");
  EXPECT_FALSE(t.particle.has_value());
  EXPECT_FALSE(t.case_label.has_value());
}

TEST(Segment, LongestSuffixFallback) {
  Token t = seg("Tomi");
  EXPECT_EQ(t.stem, "Tom");
  EXPECT_EQ(t.particle, "i");
  EXPECT_EQ(t.case_label, "nom");
  // "lul" beats "ul".
  Token j = seg("Jerrylul");
  EXPECT_EQ(j.stem, "Jerry");
  EXPECT_EQ(j.particle, "lul");
}

TEST(Segment, UnknownWordWithoutParticle) {
  Token t = seg("Foo");
  EXPECT_EQ(t.stem, "Foo");
  EXPECT_FALSE(t.particle.has_value());
}

TEST(Segment, SplitsAtLastHyphen) {
  Token t = seg("Kim-Lee-ka");
  EXPECT_EQ(t.stem, "Kim-Lee");
  EXPECT_EQ(t.particle, "ka");
}

TEST(Segment, Errors) {
  EXPECT_EQ(seg_error("Jerry-xyz"), ErrorKind::unknown_particle);
  EXPECT_EQ(seg_error("Jerry-"), ErrorKind::unknown_particle);
  EXPECT_EQ(seg_error("-lul"), ErrorKind::malformed_token);
}

TEST(Segment, HyphenatedAndBareAgree) {
  for (const char* pair : {"Tom", "Jerry"}) {
    for (const char* particle : {"i", "ka", "lul", "ul"}) {
      std::string stem = pair;
      Token a = seg(stem + "-" + particle);
      Token b = seg(stem + particle);
      EXPECT_EQ(a.stem, b.stem);
      EXPECT_EQ(a.particle, b.particle);
      EXPECT_EQ(a.case_label, b.case_label);
    }
  }
}

TEST(Tokenize, SentenceOne) {
  Sentence s = tokenize("Tom-i Jerry-lul ccossnunta.", shipped("chase"));
  ASSERT_EQ(s.tokens.size(), 3u);
  EXPECT_EQ(s.terminator, ".");
  EXPECT_EQ(s.tokens[0].stem, "Tom");
  EXPECT_EQ(s.tokens[0].case_label, "nom");
  EXPECT_EQ(s.tokens[1].stem, "Jerry");
  EXPECT_EQ(s.tokens[1].case_label, "acc");
  EXPECT_EQ(s.tokens[2].stem, "ccossnunta");
  EXPECT_EQ(lex_sequence(s.tokens), (std::vector<std::string>{"Tom", "i", "Jerry", "lul", "ccossnunta"}));
  EXPECT_EQ(join_tokens(s.tokens), "Tom-i Jerry-lul ccossnunta");
}

TEST(Tokenize, SentenceTwo) {
  Sentence s = tokenize("Jerry-lul Tom-i ccossnunta.", shipped("chase"));
  ASSERT_EQ(s.tokens.size(), 3u);
  EXPECT_EQ(s.tokens[0].particle, "lul");
  EXPECT_EQ(s.tokens[1].particle, "i");
  EXPECT_EQ(s.tokens[2].surface, "ccossnunta");
}

TEST(Tokenize, Whitespace) {
  Sentence s = tokenize("  Tom-i\tJerry-lul   ccossnunta  ", shipped("chase"));
  EXPECT_EQ(s.tokens.size(), 3u);
  EXPECT_EQ(s.terminator, "");
}

TEST(Tokenize, EmptyInput) {
  for (const char* text : {"", "   ", "."}) {
    try {
      tokenize(text, shipped("chase"));
      FAIL() << "'" << text << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::empty_input);
    }
  }
}

}  // namespace
