#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "stag/derivation.hpp"
#include "stag/grammar.hpp"
#include "stag/tree.hpp"

namespace stag {

// Where a node of a composed tree came from.
struct Provenance {
  int use = 0;
  std::size_t comp = 0;
  GornAddress address;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// A feature after instantiation: either an atom, or a co-index (the owning
// use id while composing; renumbered 1, 2, ... in a finished DerivedTree).
struct FeatureValue {
  std::string atom;
  int coindex = 0;

  friend bool operator==(const FeatureValue&, const FeatureValue&) = default;
};

struct DerivedNode {
  std::string category;
  NodeKind kind = NodeKind::interior;
  AdjoinConstraint adjoin = AdjoinConstraint::allow;
  std::string word;
  std::map<std::string, FeatureValue, std::less<>> features;
  std::vector<DerivedNode> children;
  Provenance origin;
  // Set once an auxiliary tree has been planted at this position.
  bool adjoined = false;

  const DerivedNode* at(const GornAddress& address) const;
  DerivedNode* at(const GornAddress& address);
  // Smallest co-index on this node, 0 when it carries none.
  int coindex() const;
};

// Labeled bracketing, e.g. (S (OP<1> (N Jerry) (P lul)) (S ...)). Empty
// leaves print as "e", open slots as "CAT!" and feet as "CAT*".
std::string render_bracketed(const DerivedNode& node);

// Lex words left to right; empty nodes contribute nothing.
std::vector<std::string> lex_yield(const DerivedNode& node);

// Copies an elementary tree into a working tree, replacing "@set" features
// by `use` and stamping provenance.
DerivedNode instantiate(const ElementaryTree& tree, int use, std::size_t comp);

// Replaces the slot at `address` by `child`. Throws Error(not_a_slot) or
// Error(category_mismatch).
DerivedNode substitute_at(DerivedNode host, const GornAddress& address, DerivedNode child);

// Plants the auxiliary tree at `address` and moves the displaced subtree to
// its foot. Throws Error(na_violation), Error(category_mismatch),
// Error(double_adjunction) or Error(not_auxiliary).
DerivedNode adjoin_at(DerivedNode host, const GornAddress& address, DerivedNode aux);

struct DerivedTree {
  DerivedNode root;

  std::vector<std::string> yield() const { return lex_yield(root); }
  std::string render() const { return render_bracketed(root); }
};

// Composes the derivation bottom-up and renumbers co-indices by first
// appearance in a preorder walk. Throws Error(internal) when the derivation
// is structurally broken (unknown pair, cycle, dangling host).
DerivedTree build_derived_tree(const Derivation& derivation, const Grammar& grammar);

struct SetConstraintReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Every component of every multi-component use is attached (the root use's
// head excepted) and every dominance link holds between instance roots in
// the composed tree.
SetConstraintReport check_set_constraints(const Derivation& derivation, const Grammar& grammar);

// Full structural check against the derivation semantics, except the yield
// condition. Empty result means valid.
std::vector<std::string> validate_derivation(const Derivation& derivation, const Grammar& grammar);

}  // namespace stag
