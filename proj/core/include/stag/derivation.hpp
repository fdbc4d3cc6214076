#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stag/gorn.hpp"

namespace stag {

class Grammar;

enum class Op { substitute, adjoin };

std::string_view to_string(Op op);

// One instantiation of a synchronous pair. The id doubles as the co-index
// for "@set" features in the use's components.
struct Use {
  int id = 0;
  std::string pair;

  friend auto operator<=>(const Use&, const Use&) = default;
};

struct ComponentRef {
  int use = 0;
  std::size_t comp = 0;

  friend auto operator<=>(const ComponentRef&, const ComponentRef&) = default;
};

// `child` is attached into the elementary tree of `host` at `address`
// (an address of the host's own elementary tree, not of a composed tree).
struct Attachment {
  ComponentRef child;
  ComponentRef host;
  GornAddress address;
  Op op = Op::substitute;

  friend auto operator<=>(const Attachment&, const Attachment&) = default;
};

struct Derivation {
  std::vector<Use> uses;
  std::vector<Attachment> attachments;
  int root_use = 0;

  const Use* find_use(int id) const;
  const Attachment* attachment_of(ComponentRef child) const;
  std::vector<const Attachment*> attachments_into(ComponentRef host) const;

  // Sum over uses of (priority - 1).
  int cost(const Grammar& grammar) const;
  // Sorted pair names, one entry per use.
  std::vector<std::string> pair_multiset() const;

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

// Renumbers uses 1..n in depth-first order of the component-instance tree
// (children visited in address order, starting from the root use's
// unattached head) and sorts uses and attachments. Two derivations are
// equal up to use renaming iff their canonical forms are equal.
Derivation canonicalize(const Derivation& derivation);
std::string canonical_key(const Derivation& derivation);

// Deterministic ordering: sorted pair-name multiset first, then attachments.
bool derivation_less(const Derivation& a, const Derivation& b);

// Indented "pair#use[/comp]@address(op)" lines, one per component instance.
std::string render_derivation(const Derivation& derivation, const Grammar& grammar);

}  // namespace stag
