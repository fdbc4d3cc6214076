#include "stag/pipeline.hpp"

namespace stag {

Translation translate(const Sentence& sentence, const Grammar& grammar, const ParseOptions& options) {
  Translation t;
  t.input = sentence;
  t.parse = parse(sentence.tokens, grammar, options);
  t.derivation = t.parse.best().derivations.front();
  t.source_tree = build_derived_tree(t.derivation, grammar);
  t.target_derivation = transfer_derivation(t.derivation, grammar);
  t.target_tree = realize(t.target_derivation, grammar);
  t.surface = yield_surface(t.target_tree, sentence.terminator);
  return t;
}

}  // namespace stag
