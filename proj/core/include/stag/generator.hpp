#pragma once

#include <string>
#include <string_view>

#include "stag/derived_tree.hpp"
#include "stag/transfer.hpp"

namespace stag {

// Composes the target trees of a target derivation. Throws
// Error(unfilled_slot) naming the open address, or Error(illegal_attachment).
DerivedTree realize(const TargetDerivation& derivation, const Grammar& grammar);

// Lex words joined by single spaces, empty nodes skipped, `terminator`
// appended verbatim. A phrase whose children are exactly an N word and a P
// word prints as one hyphenated unit ("Jerry-lul").
std::string yield_surface(const DerivedTree& tree, std::string_view terminator = {});

}  // namespace stag
