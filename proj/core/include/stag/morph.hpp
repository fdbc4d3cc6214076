#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stag/grammar.hpp"

namespace stag {

// One whitespace-separated word of romanized Korean, split into a stem and
// an optional case particle ("Jerry-lul" -> Jerry + lul/acc).
struct Token {
  std::string surface;
  std::string stem;
  std::optional<std::string> particle;
  std::optional<std::string> case_label;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::string terminator;  // "." when the input ended with one, else empty
};

// Throws Error(unknown_particle) when a hyphenated suffix is not a known
// particle and Error(malformed_token) for an empty stem.
Token segment_token(std::string_view token, const ParticleTable& particles,
                    const AnchorIndex& anchors);

// Throws Error(empty_input) when nothing but whitespace (and at most one
// terminator) is given.
Sentence tokenize(std::string_view sentence, const ParticleTable& particles,
                  const AnchorIndex& anchors);

inline Sentence tokenize(std::string_view sentence, const Grammar& grammar) {
  return tokenize(sentence, grammar.particles(), grammar.anchors());
}

// Stem/particle expansion matched against the lex yield of a derivation.
std::vector<std::string> lex_sequence(std::span<const Token> tokens);

// Canonical hyphenated spelling of tokens, e.g. "Tom-i Jerry-lul ccossnunta".
std::string join_tokens(std::span<const Token> tokens);

}  // namespace stag
