#include "stag/grammar.hpp"

#include <algorithm>
#include <set>

#include "stag/error.hpp"

namespace stag {

std::string Diagnostic::str() const {
  std::string out = pair;
  out += component ? ": comp " + std::to_string(*component) : std::string(": target");
  if (!address.empty()) out += " @" + address;
  out += ": ";
  out += severity == Severity::warning ? "warning " : "";
  out += rule + ": " + message;
  return out;
}

bool has_errors(std::span<const Diagnostic> diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

namespace {

class Checker {
 public:
  explicit Checker(const SyncPair& pair) : pair_(pair) {}

  void report(std::optional<std::size_t> comp, const GornAddress* address, std::string rule,
              std::string message, Severity severity = Severity::error) {
    out_.push_back(Diagnostic{pair_.name, comp, address ? address->str() : std::string(),
                              std::move(rule), std::move(message), severity});
  }

  void check_tree(const ElementaryTree& tree, std::optional<std::size_t> comp, bool in_multi_set) {
    const TreeNode& root = tree.root();
    GornAddress root_address;
    if (root.kind == NodeKind::subst_slot || root.kind == NodeKind::foot) {
      report(comp, &root_address, "root-kind",
             "tree root cannot be a " + std::string(to_string(root.kind)) + " node");
    }
    for_each_node(root, [&](const GornAddress& a, const TreeNode& n) {
      if (n.category.empty()) report(comp, &a, "empty-category", "node has no category");
      if (n.is_leaf() && !n.children.empty()) {
        report(comp, &a, "leaf-children",
               std::string(to_string(n.kind)) + " node cannot have children");
      }
      if (n.kind == NodeKind::interior && n.children.empty()) {
        report(comp, &a, "interior-childless", "interior node has no children");
      }
      if (n.kind == NodeKind::lex && n.word.empty()) {
        report(comp, &a, "lex-word", "lex node has no word");
      }
      if (n.kind != NodeKind::lex && !n.word.empty()) {
        report(comp, &a, "lex-word", "only lex nodes carry a word");
      }
      if (!in_multi_set) {
        for (const auto& [name, value] : n.features) {
          if (value == kSetVariable) {
            report(comp, &a, "set-variable",
                   "feature " + name + "=@set outside a multi-component set");
          }
        }
      }
    });
    auto feet = tree.foot_addresses();
    if (feet.size() > 1) {
      report(comp, &feet[1], "foot-count", "auxiliary tree has more than one foot");
    }
    for (const auto& a : feet) {
      if (tree.find(a)->category != root.category) {
        report(comp, &a, "foot-category",
               "foot category " + tree.find(a)->category + " differs from root " + root.category);
      }
    }
  }

  std::vector<Diagnostic> run() {
    const SourceSet& source = pair_.source;
    if (pair_.name.empty()) report(std::nullopt, nullptr, "name", "pair has no name");
    if (pair_.priority < 1) {
      report(std::nullopt, nullptr, "priority",
             "priority must be >= 1, got " + std::to_string(pair_.priority));
    }
    if (source.components.empty()) {
      report(std::nullopt, nullptr, "components", "source set has no components");
      return finish();
    }
    const std::size_t n = source.components.size();
    bool head_ok = source.head < n;
    if (!head_ok) {
      report(std::nullopt, nullptr, "head-index",
             "head index " + std::to_string(source.head) + " out of range");
    }
    if (n == 1 && !source.dominance.empty()) {
      report(0, nullptr, "dominance", "singleton set cannot carry dominance links");
    }
    for (const auto& [d, e] : source.dominance) {
      if (d >= n || e >= n) {
        report(std::nullopt, nullptr, "dominance",
               "dominance link references a missing component");
      } else if (d == e) {
        report(d, nullptr, "dominance", "component cannot dominate itself");
      }
    }

    for (std::size_t c = 0; c < n; ++c) check_tree(source.components[c], c, source.is_multi());
    check_tree(pair_.target, std::nullopt, false);

    if (head_ok && source.is_multi()) {
      const ElementaryTree& head = source.components[source.head];
      if (head.is_auxiliary()) {
        report(source.head, nullptr, "head-convention",
               "head of a multi-component set must be the initial place-holder tree, "
               "not an auxiliary component");
      } else {
        for (std::size_t c = 0; c < n; ++c) {
          if (c == source.head || !source.components[c].is_auxiliary()) continue;
          bool linked = std::find(source.dominance.begin(), source.dominance.end(),
                                  std::pair{c, source.head}) != source.dominance.end();
          if (!linked) {
            report(c, nullptr, "dominance-convention",
                   "auxiliary component must dominate the head place-holder");
          }
        }
      }
    }

    check_links(head_ok);
    return finish();
  }

 private:
  void check_links(bool head_ok) {
    const SourceSet& source = pair_.source;
    std::set<std::pair<std::size_t, GornAddress>> seen_src;
    std::set<GornAddress> seen_tgt;
    for (const Link& link : pair_.links) {
      if (link.comp >= source.components.size()) {
        report(std::nullopt, &link.src, "link-component",
               "link names missing component " + std::to_string(link.comp));
        continue;
      }
      const TreeNode* src = source.components[link.comp].find(link.src);
      const TreeNode* tgt = pair_.target.find(link.tgt);
      if (!src || !src->is_operable()) {
        report(link.comp, &link.src, "link-source",
               src ? "linked source node is not operable" : "linked source address does not exist");
      }
      if (!tgt || !tgt->is_operable()) {
        report(std::nullopt, &link.tgt, "link-target",
               tgt ? "linked target node is not operable" : "linked target address does not exist");
      }
      if (src && tgt && src->is_operable() && tgt->is_operable() &&
          (src->kind == NodeKind::subst_slot) != (tgt->kind == NodeKind::subst_slot)) {
        report(link.comp, &link.src, "link-kind",
               "link joins a substitution slot to an adjunction site (target " + link.tgt.str() + ")");
      }
      if (!seen_src.insert({link.comp, link.src}).second) {
        report(link.comp, &link.src, "duplicate-link-source", "source node linked twice");
      }
      if (!seen_tgt.insert(link.tgt).second) {
        report(std::nullopt, &link.tgt, "duplicate-link-target", "target node linked twice");
      }
      if (head_ok && source.is_multi() && link.comp != source.head) {
        report(link.comp, &link.src, "nonhead-link",
               "link on a non-head component is ignored by transfer", Severity::warning);
      }
    }

    if (head_ok) {
      for_each_node(source.head_tree().root(), [&](const GornAddress& a, const TreeNode& node) {
        if (node.kind == NodeKind::subst_slot && !seen_src.count({source.head, a})) {
          report(source.head, &a, "unlinked-substitution",
                 "source substitution slot " + node.category + " is not linked");
        }
      });
    }
    for_each_node(pair_.target.root(), [&](const GornAddress& a, const TreeNode& node) {
      if (node.kind == NodeKind::subst_slot && !seen_tgt.count(a)) {
        report(std::nullopt, &a, "unlinked-substitution",
               "target substitution slot " + node.category + " is not linked");
      }
    });
  }

  std::vector<Diagnostic> finish() {
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return std::move(out_);
  }

  const SyncPair& pair_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate_pair(const SyncPair& pair) { return Checker(pair).run(); }

const SyncPair* Grammar::find(std::string_view name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &pairs_[it->second];
}

const SyncPair& Grammar::at(std::string_view name) const {
  if (const SyncPair* pair = find(name)) return *pair;
  throw Error(ErrorKind::internal, "unknown pair \"" + std::string(name) + "\"");
}

std::optional<std::string> Grammar::particle_case(std::string_view form) const {
  auto it = meta_.particles.find(form);
  if (it == meta_.particles.end()) return std::nullopt;
  return it->second;
}

bool Grammar::is_start_pair(const SyncPair& pair) const {
  const SourceSet& source = pair.source;
  if (source.head >= source.components.size()) return false;
  const ElementaryTree& head = source.components[source.head];
  return head.is_initial() && head.category() == meta_.start_symbol;
}

Grammar index_grammar(std::vector<SyncPair> pairs, GrammarMeta meta) {
  Grammar g;
  g.meta_ = std::move(meta);
  std::string problems;
  for (const SyncPair& pair : pairs) {
    for (const Diagnostic& d : validate_pair(pair)) {
      if (d.severity == Severity::error) problems += "\n  " + d.str();
    }
  }
  if (!problems.empty()) throw Error(ErrorKind::validation, "invalid pairs:" + problems);

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!g.by_name_.emplace(pairs[i].name, i).second) {
      throw Error(ErrorKind::duplicate_name, "duplicate pair name \"" + pairs[i].name + "\"");
    }
  }
  g.pairs_ = std::move(pairs);
  if (std::none_of(g.pairs_.begin(), g.pairs_.end(),
                   [&](const SyncPair& p) { return g.is_start_pair(p); })) {
    throw Error(ErrorKind::no_start_pair,
                "no pair has an initial head tree rooted in start symbol " + g.meta_.start_symbol);
  }
  for (const SyncPair& pair : g.pairs_) {
    for (const ElementaryTree& tree : pair.source.components) {
      for (const std::string& word : tree.lex_words()) {
        auto& names = g.anchors_[word];
        if (std::find(names.begin(), names.end(), pair.name) == names.end()) {
          names.push_back(pair.name);
        }
      }
    }
  }
  for (auto& [word, names] : g.anchors_) std::sort(names.begin(), names.end());
  return g;
}

}  // namespace stag
