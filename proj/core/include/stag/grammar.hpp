#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stag/gorn.hpp"
#include "stag/tree.hpp"

namespace stag {

// One or more source trees used together in a single derivational event.
// For the scrambled-argument pattern the head is the place-holder component
// and the scrambled (auxiliary) component dominates it.
struct SourceSet {
  std::vector<ElementaryTree> components;
  std::size_t head = 0;
  // (dominator, dominated) component indices.
  std::vector<std::pair<std::size_t, std::size_t>> dominance;

  bool is_multi() const { return components.size() > 1; }
  const ElementaryTree& head_tree() const { return components.at(head); }

  friend bool operator==(const SourceSet&, const SourceSet&) = default;
};

struct Link {
  std::size_t comp = 0;
  GornAddress src;
  GornAddress tgt;

  friend bool operator==(const Link&, const Link&) = default;
};

struct SyncPair {
  std::string name;
  SourceSet source;
  ElementaryTree target;
  std::vector<Link> links;
  int priority = 1;  // 1 is the highest priority

  friend bool operator==(const SyncPair&, const SyncPair&) = default;
};

inline int default_priority(const SourceSet& source) { return source.is_multi() ? 2 : 1; }

enum class Severity { error, warning };

struct Diagnostic {
  std::string pair;
  std::optional<std::size_t> component;  // nullopt: the target tree or the pair itself
  std::string address;                   // Gorn address text, empty when not node-specific
  std::string rule;
  std::string message;
  Severity severity = Severity::error;

  std::string str() const;

  friend auto operator<=>(const Diagnostic&, const Diagnostic&) = default;
};

// Static well-formedness of one synchronous pair. The result is sorted, so
// it does not depend on the order of the pair's links. Warnings do not make
// a pair invalid.
std::vector<Diagnostic> validate_pair(const SyncPair& pair);

bool has_errors(std::span<const Diagnostic> diagnostics);

using ParticleTable = std::map<std::string, std::string, std::less<>>;
using AnchorIndex = std::map<std::string, std::vector<std::string>, std::less<>>;

struct GrammarMeta {
  std::string source_language;
  std::string target_language;
  std::string start_symbol;
  ParticleTable particles;  // form -> case label

  friend bool operator==(const GrammarMeta&, const GrammarMeta&) = default;
};

// Validated, immutable pair inventory.
class Grammar {
 public:
  const GrammarMeta& meta() const { return meta_; }
  const std::string& start_symbol() const { return meta_.start_symbol; }
  const ParticleTable& particles() const { return meta_.particles; }
  const AnchorIndex& anchors() const { return anchors_; }

  std::span<const SyncPair> pairs() const { return pairs_; }
  const SyncPair* find(std::string_view name) const;
  // Throws Error(internal) for unknown names.
  const SyncPair& at(std::string_view name) const;

  bool is_anchor(std::string_view word) const { return anchors_.find(word) != anchors_.end(); }
  std::optional<std::string> particle_case(std::string_view form) const;

  // Pair whose head component can root a derivation.
  bool is_start_pair(const SyncPair& pair) const;

  friend bool operator==(const Grammar& a, const Grammar& b) {
    return a.meta_ == b.meta_ && a.pairs_ == b.pairs_;
  }

 private:
  friend Grammar index_grammar(std::vector<SyncPair> pairs, GrammarMeta meta);

  GrammarMeta meta_;
  std::vector<SyncPair> pairs_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
  AnchorIndex anchors_;
};

// Throws Error(duplicate_name), Error(no_start_pair), or Error(validation)
// when a pair carries error diagnostics.
Grammar index_grammar(std::vector<SyncPair> pairs, GrammarMeta meta);

}  // namespace stag
