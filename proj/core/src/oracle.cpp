#include "stag/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "stag/error.hpp"
#include "stag/parser.hpp"

namespace stag {

namespace {

using Bag = std::map<std::string, int>;

Bag pair_bag(const SyncPair& pair) {
  Bag bag;
  for (const ElementaryTree& tree : pair.source.components) {
    for (const std::string& word : tree.lex_words()) ++bag[word];
  }
  return bag;
}

bool take(Bag& from, const Bag& what) {
  for (const auto& [word, count] : what) {
    auto it = from.find(word);
    if (it == from.end() || it->second < count) return false;
  }
  for (const auto& [word, count] : what) {
    if ((from[word] -= count) == 0) from.erase(word);
  }
  return true;
}

struct Instance {
  int use;
  std::size_t comp;
  const ElementaryTree* tree;
};

struct Site {
  int instance;
  GornAddress address;
  bool slot;  // substitution slot, else adjunction site
  std::string category;
};

// Naively composed tree node.
struct Node {
  std::string category;
  NodeKind kind;
  std::string word;
  int instance;
  GornAddress address;
  std::vector<Node> kids;
};

class Search {
 public:
  Search(const Grammar& g, std::vector<std::string> lex, std::size_t max_nodes)
      : g_(g), lex_(std::move(lex)), max_nodes_(max_nodes) {}

  bool exhausted() const { return exhausted_; }

  void run(const std::vector<std::size_t>& multiset, std::map<std::string, Derivation>& found) {
    uses_ = multiset;
    for (std::size_t root = 0; root < uses_.size(); ++root) {
      const SyncPair& pair = g_.pairs()[uses_[root]];
      if (!g_.is_start_pair(pair)) continue;
      // Identical pairs give renamed copies of the same derivations.
      if (root > 0 && uses_[root] == uses_[root - 1]) continue;
      root_use_ = static_cast<int>(root);
      setup();
      assign(0, found);
    }
  }

 private:
  void setup() {
    instances_.clear();
    sites_.clear();
    movers_.clear();
    for (std::size_t u = 0; u < uses_.size(); ++u) {
      const SyncPair& pair = g_.pairs()[uses_[u]];
      for (std::size_t c = 0; c < pair.source.components.size(); ++c) {
        int id = static_cast<int>(instances_.size());
        instances_.push_back(Instance{static_cast<int>(u), c, &pair.source.components[c]});
        if (static_cast<int>(u) == root_use_ && c == pair.source.head) {
          root_instance_ = id;
        } else {
          movers_.push_back(id);
        }
        for_each_node(pair.source.components[c].root(), [&](const GornAddress& a, const TreeNode& n) {
          if (n.kind == NodeKind::subst_slot) sites_.push_back(Site{id, a, true, n.category});
          if (n.kind == NodeKind::interior && n.adjoin != AdjoinConstraint::na) {
            sites_.push_back(Site{id, a, false, n.category});
          }
        });
      }
    }
    site_of_.assign(instances_.size(), -1);
    used_.assign(sites_.size(), false);
  }

  void assign(std::size_t k, std::map<std::string, Derivation>& found) {
    if (exhausted_) return;
    if (++visited_ > max_nodes_) {
      exhausted_ = true;
      return;
    }
    if (k == movers_.size()) {
      test(found);
      return;
    }
    const Instance& mover = instances_[movers_[k]];
    const bool auxiliary = mover.tree->is_auxiliary();
    for (std::size_t s = 0; s < sites_.size(); ++s) {
      const Site& site = sites_[s];
      if (used_[s] || site.slot == auxiliary || site.category != mover.tree->category()) continue;
      used_[s] = true;
      site_of_[movers_[k]] = static_cast<int>(s);
      assign(k + 1, found);
      used_[s] = false;
      site_of_[movers_[k]] = -1;
    }
  }

  void test(std::map<std::string, Derivation>& found) {
    for (std::size_t s = 0; s < sites_.size(); ++s) {
      if (sites_[s].slot && !used_[s]) return;
      if (!sites_[s].slot && !used_[s]) {
        const TreeNode* node = instances_[sites_[s].instance].tree->find(sites_[s].address);
        if (node->adjoin == AdjoinConstraint::oa) return;
      }
    }
    // Every instance must hang from the root through its hosts.
    for (int m : movers_) {
      int at = m;
      for (std::size_t steps = 0; at != root_instance_; ++steps) {
        if (steps > instances_.size()) return;
        at = sites_[site_of_[at]].instance;
      }
    }
    Node tree = compose(root_instance_);
    std::vector<std::string> yield;
    collect(tree, yield);
    if (yield != lex_) return;
    if (!dominance_holds(tree)) return;

    Derivation d;
    for (std::size_t u = 0; u < uses_.size(); ++u) {
      d.uses.push_back(Use{static_cast<int>(u) + 1, g_.pairs()[uses_[u]].name});
    }
    d.root_use = root_use_ + 1;
    for (int m : movers_) {
      const Site& site = sites_[site_of_[m]];
      const Instance& child = instances_[m];
      const Instance& host = instances_[site.instance];
      d.attachments.push_back(Attachment{ComponentRef{child.use + 1, child.comp},
                                         ComponentRef{host.use + 1, host.comp}, site.address,
                                         site.slot ? Op::substitute : Op::adjoin});
    }
    Derivation c = canonicalize(d);
    found.emplace(canonical_key(c), std::move(c));
  }

  int mover_at(int host, const GornAddress& address) const {
    for (int m : movers_) {
      const Site& site = sites_[site_of_[m]];
      if (site.instance == host && site.address == address) return m;
    }
    return -1;
  }

  Node compose(int instance) const { return compose_node(instance, instances_[instance].tree->root(), {}); }

  Node compose_node(int instance, const TreeNode& source, const GornAddress& address) const {
    if (source.kind == NodeKind::subst_slot) return compose(mover_at(instance, address));
    Node node{source.category, source.kind, source.word, instance, address, {}};
    for (std::size_t i = 0; i < source.children.size(); ++i) {
      node.kids.push_back(compose_node(instance, source.children[i], address.child(static_cast<int>(i + 1))));
    }
    if (source.kind != NodeKind::interior) return node;
    int aux = mover_at(instance, address);
    if (aux < 0) return node;
    Node wrapper = compose(aux);
    plant(wrapper, aux, std::move(node));
    return wrapper;
  }

  static bool plant(Node& at, int aux, Node&& below) {
    if (at.kind == NodeKind::foot && at.instance == aux) {
      at = std::move(below);
      return true;
    }
    for (Node& kid : at.kids) {
      if (plant(kid, aux, std::move(below))) return true;
    }
    return false;
  }

  static void collect(const Node& node, std::vector<std::string>& out) {
    if (node.kind == NodeKind::lex) out.push_back(node.word);
    for (const Node& kid : node.kids) collect(kid, out);
  }

  static void root_paths(const Node& node, std::vector<int>& path, std::map<int, std::vector<int>>& out) {
    if (node.address.is_root()) out.emplace(node.instance, path);
    for (std::size_t i = 0; i < node.kids.size(); ++i) {
      path.push_back(static_cast<int>(i));
      root_paths(node.kids[i], path, out);
      path.pop_back();
    }
  }

  bool dominance_holds(const Node& tree) const {
    std::map<int, std::vector<int>> paths;
    std::vector<int> path;
    root_paths(tree, path, paths);
    for (std::size_t u = 0; u < uses_.size(); ++u) {
      const SyncPair& pair = g_.pairs()[uses_[u]];
      for (const auto& [upper, lower] : pair.source.dominance) {
        const std::vector<int>& a = paths.at(instance_of(static_cast<int>(u), upper));
        const std::vector<int>& b = paths.at(instance_of(static_cast<int>(u), lower));
        if (a.size() >= b.size() || !std::equal(a.begin(), a.end(), b.begin())) return false;
      }
    }
    return true;
  }

  int instance_of(int use, std::size_t comp) const {
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      if (instances_[i].use == use && instances_[i].comp == comp) return static_cast<int>(i);
    }
    throw Error(ErrorKind::internal, "oracle lost a component instance");
  }

  const Grammar& g_;
  std::vector<std::string> lex_;
  std::size_t max_nodes_;
  std::size_t visited_ = 0;
  bool exhausted_ = false;

  std::vector<std::size_t> uses_;
  int root_use_ = 0;
  int root_instance_ = 0;
  std::vector<Instance> instances_;
  std::vector<Site> sites_;
  std::vector<int> movers_;
  std::vector<int> site_of_;
  std::vector<bool> used_;
};

void enumerate_multisets(const std::vector<Bag>& bags, std::size_t start, Bag& remaining,
                         std::vector<std::size_t>& chosen, std::size_t max_uses,
                         std::vector<std::vector<std::size_t>>& out, bool& bound_hit) {
  if (remaining.empty()) out.push_back(chosen);
  for (std::size_t p = start; p < bags.size(); ++p) {
    Bag next = remaining;
    if (!take(next, bags[p])) continue;
    if (chosen.size() == max_uses) {
      bound_hit = true;
      continue;
    }
    chosen.push_back(p);
    enumerate_multisets(bags, p, next, chosen, max_uses, out, bound_hit);
    chosen.pop_back();
  }
}

}  // namespace

OracleResult brute_force_derivations(std::span<const Token> tokens, const Grammar& grammar,
                                     const OracleBound& bound) {
  OracleResult result;
  const std::size_t max_uses = bound.max_uses ? bound.max_uses : default_max_uses(tokens.size());
  for (const Token& token : tokens) {
    if (!grammar.is_anchor(token.stem)) result.notes.push_back("lexical gap: " + token.stem);
  }
  if (tokens.empty() || !result.notes.empty()) return result;

  std::vector<Bag> bags;
  for (const SyncPair& pair : grammar.pairs()) bags.push_back(pair_bag(pair));
  Bag remaining;
  std::vector<std::string> lex = lex_sequence(tokens);
  for (const std::string& word : lex) ++remaining[word];

  std::vector<std::vector<std::size_t>> multisets;
  std::vector<std::size_t> chosen;
  bool bound_hit = false;
  enumerate_multisets(bags, 0, remaining, chosen, max_uses, multisets, bound_hit);
  if (bound_hit) {
    result.bound_exceeded = true;
    result.notes.push_back("bound exceeded: multisets larger than " + std::to_string(max_uses) +
                           " uses were not explored");
  }

  std::map<std::string, Derivation> found;
  Search search(grammar, lex, bound.max_nodes);
  for (const auto& multiset : multisets) search.run(multiset, found);
  if (search.exhausted()) {
    result.bound_exceeded = true;
    result.notes.push_back("bound exceeded: more than " + std::to_string(bound.max_nodes) +
                           " search nodes");
  }
  for (auto& [key, d] : found) result.derivations.push_back(std::move(d));
  return result;
}

std::vector<Derivation> parser_derivations(std::span<const Token> tokens, const Grammar& grammar,
                                           std::size_t max_uses) {
  try {
    ParseOptions options;
    options.all_levels = true;
    options.max_uses = max_uses;
    return parse(tokens, grammar, options).all();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::no_parse || e.kind() == ErrorKind::lexical_gap) return {};
    throw;
  }
}

std::string EquivalenceReport::str() const {
  std::string out = equivalent ? "equivalent" : "NOT equivalent";
  out += " (parser " + std::to_string(parser_count) + ", oracle " + std::to_string(oracle_count) + ")";
  for (const std::string& key : missing) out += "\n  missing: " + key;
  for (const std::string& key : extra) out += "\n  extra: " + key;
  for (const std::string& note : notes) out += "\n  note: " + note;
  return out;
}

EquivalenceReport assert_equivalence(std::span<const Token> tokens, const Grammar& grammar,
                                     const OracleBound& bound, const DerivationSource& source) {
  const std::size_t max_uses = bound.max_uses ? bound.max_uses : default_max_uses(tokens.size());
  OracleResult oracle = brute_force_derivations(tokens, grammar, bound);
  std::set<std::string> expected;
  for (const Derivation& d : oracle.derivations) expected.insert(canonical_key(d));
  std::set<std::string> actual;
  for (const Derivation& d : source(tokens, grammar, max_uses)) actual.insert(canonical_key(d));

  EquivalenceReport report;
  report.parser_count = actual.size();
  report.oracle_count = expected.size();
  report.bound_exceeded = oracle.bound_exceeded;
  report.notes = oracle.notes;
  std::set_difference(expected.begin(), expected.end(), actual.begin(), actual.end(),
                      std::back_inserter(report.missing));
  std::set_difference(actual.begin(), actual.end(), expected.begin(), expected.end(),
                      std::back_inserter(report.extra));
  report.equivalent = report.missing.empty() && report.extra.empty();
  return report;
}

}  // namespace stag
