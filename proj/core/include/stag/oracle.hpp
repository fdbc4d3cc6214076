#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stag/derivation.hpp"
#include "stag/grammar.hpp"
#include "stag/morph.hpp"

namespace stag {

// Blind generate-and-test enumerator of derivations. It shares data types
// with the parser but none of its composition code, and is meant as a
// referee for small inputs: it is exponential.

struct OracleBound {
  std::size_t max_uses = 0;             // 0 means token count + 2
  std::size_t max_nodes = 20'000'000;   // search-node safety cap
};

struct OracleResult {
  std::vector<Derivation> derivations;  // canonical, sorted by canonical key
  bool bound_exceeded = false;
  std::vector<std::string> notes;
};

OracleResult brute_force_derivations(std::span<const Token> tokens, const Grammar& grammar,
                                     const OracleBound& bound = {});

// Source of derivations to check against the oracle. An empty result means
// "no parse".
using DerivationSource =
    std::function<std::vector<Derivation>(std::span<const Token>, const Grammar&, std::size_t max_uses)>;

// The chart parser over all priority levels.
std::vector<Derivation> parser_derivations(std::span<const Token> tokens, const Grammar& grammar,
                                           std::size_t max_uses);

struct EquivalenceReport {
  bool equivalent = true;
  std::size_t parser_count = 0;
  std::size_t oracle_count = 0;
  std::vector<std::string> missing;  // oracle has it, parser does not
  std::vector<std::string> extra;    // parser has it, oracle does not
  bool bound_exceeded = false;
  std::vector<std::string> notes;

  std::string str() const;
};

EquivalenceReport assert_equivalence(std::span<const Token> tokens, const Grammar& grammar,
                                     const OracleBound& bound = {},
                                     const DerivationSource& source = parser_derivations);

}  // namespace stag
