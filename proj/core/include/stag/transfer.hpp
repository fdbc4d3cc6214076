#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stag/derivation.hpp"
#include "stag/grammar.hpp"

namespace stag {

struct TargetAttachment {
  int child = 0;
  int host = 0;
  GornAddress address;  // in the host pair's target tree
  Op op = Op::substitute;
  // The source site this attachment was mapped from.
  std::size_t source_comp = 0;
  GornAddress source_address;

  friend bool operator==(const TargetAttachment&, const TargetAttachment&) = default;
};

// One node per source use: multi-component uses collapse to a single target
// tree.
struct TargetDerivation {
  std::vector<Use> uses;
  std::vector<TargetAttachment> attachments;  // sorted by (host, address)
  int root_use = 0;

  friend bool operator==(const TargetDerivation&, const TargetDerivation&) = default;
};

// Target address linked to (comp, src) in the host pair, or nullopt when the
// source node is unlinked.
std::optional<GornAddress> resolve_attachment(const SyncPair& host, std::size_t comp,
                                              const GornAddress& src);

// Maps each non-root use through the attachment of its head component;
// attachments of non-head components have no target counterpart and are
// dropped. Throws Error(untranslatable_attachment) when a head component sits
// at an unlinked site and Error(dangling_use) when a non-root use has no head
// attachment.
TargetDerivation transfer_derivation(const Derivation& derivation, const Grammar& grammar);

std::string render_target_derivation(const TargetDerivation& derivation);

// One line per use describing how its head attachment was mapped.
std::string render_transfer_trace(const TargetDerivation& derivation);

}  // namespace stag
