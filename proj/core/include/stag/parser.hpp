#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stag/derivation.hpp"
#include "stag/grammar.hpp"
#include "stag/morph.hpp"

namespace stag {

struct ParseOptions {
  // Return every priority level instead of only the cheapest one.
  bool all_levels = false;
  // Upper bound on pair uses per derivation; 0 means token count + 2.
  std::size_t max_uses = 0;
};

inline std::size_t default_max_uses(std::size_t token_count) { return token_count + 2; }

struct PriorityLevel {
  int cost = 0;
  std::vector<Derivation> derivations;
};

struct ParseResult {
  // Ascending cost; a single entry unless ParseOptions::all_levels is set.
  std::vector<PriorityLevel> levels;
  // Set when the use bound or a cyclic chart cut some derivations off.
  bool truncated = false;

  const PriorityLevel& best() const { return levels.front(); }
  std::vector<Derivation> all() const;
};

// Chart-parses the token sequence and returns the valid derivations
// (canonicalized, deterministic order). Throws Error(empty_input),
// Error(lexical_gap) for a stem that anchors no pair, and Error(no_parse).
ParseResult parse(std::span<const Token> tokens, const Grammar& grammar,
                  const ParseOptions& options = {});

// Groups derivations by cost = sum of (priority - 1), cheapest first, each
// group sorted with derivation_less.
std::vector<PriorityLevel> rank_by_priority(std::vector<Derivation> derivations,
                                            const Grammar& grammar);

}  // namespace stag
