#pragma once

#include <string>
#include <string_view>

#include "stag/derived_tree.hpp"
#include "stag/generator.hpp"
#include "stag/morph.hpp"
#include "stag/parser.hpp"
#include "stag/transfer.hpp"

namespace stag {

// Everything produced while translating one sentence.
struct Translation {
  Sentence input;
  ParseResult parse;
  Derivation derivation;  // first derivation of the cheapest level
  DerivedTree source_tree;
  TargetDerivation target_derivation;
  DerivedTree target_tree;
  std::string surface;
};

// tokenize -> parse -> transfer -> realize. Errors from every stage
// propagate unchanged.
Translation translate(const Sentence& sentence, const Grammar& grammar,
                      const ParseOptions& options = {});

inline Translation translate(std::string_view sentence, const Grammar& grammar,
                             const ParseOptions& options = {}) {
  return translate(tokenize(sentence, grammar), grammar, options);
}

}  // namespace stag
