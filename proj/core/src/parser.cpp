#include "stag/parser.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>

#include "stag/derived_tree.hpp"
#include "stag/error.hpp"

namespace stag {

std::vector<Derivation> ParseResult::all() const {
  std::vector<Derivation> out;
  for (const PriorityLevel& level : levels) {
    out.insert(out.end(), level.derivations.begin(), level.derivations.end());
  }
  return out;
}

std::vector<PriorityLevel> rank_by_priority(std::vector<Derivation> derivations,
                                            const Grammar& grammar) {
  std::map<int, std::vector<Derivation>> by_cost;
  for (Derivation& d : derivations) {
    int cost = d.cost(grammar);
    by_cost[cost].push_back(std::move(d));
  }
  std::vector<PriorityLevel> levels;
  for (auto& [cost, group] : by_cost) {
    std::sort(group.begin(), group.end(), derivation_less);
    levels.push_back(PriorityLevel{cost, std::move(group)});
  }
  return levels;
}

namespace {

constexpr int kNone = -1;

// ---------------------------------------------------------------------------
// Elementary trees flattened for the chart.

struct FlatNode {
  const TreeNode* node = nullptr;
  GornAddress address;
  int parent = kNone;
  int position = 0;  // 0-based index among the parent's children
  std::vector<int> children;
};

struct TreeType {
  std::size_t pair = 0;
  std::size_t comp = 0;
  bool auxiliary = false;
  std::vector<FlatNode> nodes;  // preorder, root first
};

void flatten(const TreeNode& node, const GornAddress& address, int parent, int position,
             std::vector<FlatNode>& out) {
  int self = static_cast<int>(out.size());
  out.push_back(FlatNode{&node, address, parent, position, {}});
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    int child = static_cast<int>(out.size());
    out[self].children.push_back(child);
    flatten(node.children[i], address.child(static_cast<int>(i + 1)), self, static_cast<int>(i), out);
  }
}

// ---------------------------------------------------------------------------
// Chart items.
//
// Top(tree, node, i, j, gap): the node, after any adjunction at it, spans
// [i, j) of the lex sequence; gap is the span left open by the foot when the
// node dominates the foot of an auxiliary tree.
// Dot(tree, node, k, ...): the first k children of an interior node; with k
// equal to the child count it is the node's bottom (before adjunction).

struct Key {
  int tree, node, dot, i, j, f1, f2;  // dot == kNone marks a Top item

  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = 0;
    for (int v : {k.tree, k.node, k.dot, k.i, k.j, k.f1, k.f2}) {
      h = h * 1000003u ^ static_cast<std::size_t>(v + 7);
    }
    return h;
  }
};

enum class WayKind { axiom, extend, no_adjoin, adjoin, substitute };

struct Way {
  WayKind kind = WayKind::axiom;
  int a = kNone;  // extend: dot; no_adjoin: bottom; adjoin: aux root top; substitute: root top
  int b = kNone;  // extend: child top; adjoin: bottom
};

struct Item {
  Key key;
  std::vector<Way> ways;
};

struct Span3 {
  int a, b, c;
  auto operator<=>(const Span3&) const = default;
};

class Chart {
 public:
  Chart(const Grammar& grammar, std::vector<TreeType> types, std::vector<std::string> lex)
      : grammar_(grammar), types_(std::move(types)), lex_(std::move(lex)) {
    for (std::size_t t = 0; t < types_.size(); ++t) {
      for (std::size_t n = 0; n < types_[t].nodes.size(); ++n) {
        const TreeNode& node = *types_[t].nodes[n].node;
        if (node.kind == NodeKind::subst_slot) {
          slots_[node.category].push_back({static_cast<int>(t), static_cast<int>(n)});
        }
      }
    }
  }

  void run() {
    const int n = static_cast<int>(lex_.size());
    for (std::size_t t = 0; t < types_.size(); ++t) {
      const int tree = static_cast<int>(t);
      for (std::size_t v = 0; v < types_[t].nodes.size(); ++v) {
        const int node = static_cast<int>(v);
        const TreeNode& tn = *types_[t].nodes[v].node;
        switch (tn.kind) {
          case NodeKind::lex:
            for (int p = 0; p < n; ++p) {
              if (lex_[p] == tn.word) add({tree, node, kNone, p, p + 1, kNone, kNone}, {});
            }
            break;
          case NodeKind::empty:
            for (int p = 0; p <= n; ++p) add({tree, node, kNone, p, p, kNone, kNone}, {});
            break;
          case NodeKind::foot:
            for (int i = 0; i <= n; ++i) {
              for (int j = i; j <= n; ++j) add({tree, node, kNone, i, j, i, j}, {});
            }
            break;
          case NodeKind::interior:
            for (int p = 0; p <= n; ++p) add({tree, node, 0, p, p, kNone, kNone}, {});
            break;
          case NodeKind::subst_slot:
            break;
        }
      }
    }
    while (!agenda_.empty()) {
      int id = agenda_.front();
      agenda_.pop_front();
      process(id);
    }
  }

  std::vector<int> goals() const {
    std::vector<int> out;
    const int n = static_cast<int>(lex_.size());
    for (std::size_t t = 0; t < types_.size(); ++t) {
      const TreeType& type = types_[t];
      const SyncPair& pair = grammar_.pairs()[type.pair];
      if (type.comp != pair.source.head || !grammar_.is_start_pair(pair)) continue;
      auto it = ids_.find(Key{static_cast<int>(t), 0, kNone, 0, n, kNone, kNone});
      if (it != ids_.end()) out.push_back(it->second);
    }
    return out;
  }

  const Item& item(int id) const { return items_[id]; }
  const TreeType& type(int t) const { return types_[t]; }
  std::size_t item_count() const { return items_.size(); }

 private:
  const TreeNode& tree_node(const Key& k) const { return *types_[k.tree].nodes[k.node].node; }
  const FlatNode& flat(const Key& k) const { return types_[k.tree].nodes[k.node]; }

  void add(const Key& key, Way way) {
    auto [it, fresh] = ids_.emplace(key, static_cast<int>(items_.size()));
    if (fresh) {
      items_.push_back(Item{key, {}});
      agenda_.push_back(it->second);
    }
    items_[it->second].ways.push_back(way);
  }

  static bool merge_gap(int a1, int a2, int b1, int b2, int& f1, int& f2) {
    if (a1 != kNone && b1 != kNone) return false;
    f1 = a1 != kNone ? a1 : b1;
    f2 = a1 != kNone ? a2 : b2;
    return true;
  }

  void process(int id) {
    const Key k = items_[id].key;
    if (k.dot == kNone) {
      process_top(id, k);
    } else {
      process_dot(id, k);
    }
  }

  void process_top(int id, const Key& k) {
    const FlatNode& fn = flat(k);
    if (fn.parent != kNone) {
      auto it = dot_by_end_.find({k.tree, fn.parent, fn.position, k.i});
      if (it != dot_by_end_.end()) {
        for (int d : std::vector<int>(it->second)) extend(d, id);
      }
      top_by_start_[{k.tree, k.node, 0, k.i}].push_back(id);
      return;
    }
    // Root of an elementary tree: the tree itself is recognized.
    const TreeType& type = types_[k.tree];
    const std::string& category = tree_node(k).category;
    if (!type.auxiliary && k.f1 == kNone) {
      auto it = slots_.find(category);
      if (it != slots_.end()) {
        for (auto [t, v] : it->second) add({t, v, kNone, k.i, k.j, kNone, kNone}, {WayKind::substitute, id});
      }
    }
    if (type.auxiliary && k.f1 != kNone) {
      auto it = bottom_by_span_.find({category, k.f1, k.f2});
      if (it != bottom_by_span_.end()) {
        for (int b : std::vector<int>(it->second)) adjoin(id, b);
      }
      aux_by_gap_[{category, k.f1, k.f2}].push_back(id);
    }
  }

  void process_dot(int id, const Key& k) {
    const FlatNode& fn = flat(k);
    if (k.dot < static_cast<int>(fn.children.size())) {
      int child = fn.children[k.dot];
      auto it = top_by_start_.find({k.tree, child, 0, k.j});
      if (it != top_by_start_.end()) {
        for (int t : std::vector<int>(it->second)) extend(id, t);
      }
      dot_by_end_[{k.tree, k.node, k.dot, k.j}].push_back(id);
      return;
    }
    const TreeNode& node = tree_node(k);
    if (node.adjoin != AdjoinConstraint::oa) {
      add({k.tree, k.node, kNone, k.i, k.j, k.f1, k.f2}, {WayKind::no_adjoin, id});
    }
    if (node.adjoin != AdjoinConstraint::na) {
      auto it = aux_by_gap_.find({node.category, k.i, k.j});
      if (it != aux_by_gap_.end()) {
        for (int a : std::vector<int>(it->second)) adjoin(a, id);
      }
      bottom_by_span_[{node.category, k.i, k.j}].push_back(id);
    }
  }

  void extend(int dot_id, int top_id) {
    const Key d = items_[dot_id].key;
    const Key t = items_[top_id].key;
    int f1, f2;
    if (!merge_gap(d.f1, d.f2, t.f1, t.f2, f1, f2)) return;
    add({d.tree, d.node, d.dot + 1, d.i, t.j, f1, f2}, {WayKind::extend, dot_id, top_id});
  }

  void adjoin(int aux_id, int bottom_id) {
    const Key a = items_[aux_id].key;
    const Key b = items_[bottom_id].key;
    add({b.tree, b.node, kNone, a.i, a.j, b.f1, b.f2}, {WayKind::adjoin, aux_id, bottom_id});
  }

  const Grammar& grammar_;
  std::vector<TreeType> types_;
  std::vector<std::string> lex_;

  std::vector<Item> items_;
  std::unordered_map<Key, int, KeyHash> ids_;
  std::deque<int> agenda_;

  std::map<std::string, std::vector<std::pair<int, int>>, std::less<>> slots_;
  std::map<std::array<int, 4>, std::vector<int>> top_by_start_;
  std::map<std::array<int, 4>, std::vector<int>> dot_by_end_;
  std::map<std::tuple<std::string, int, int>, std::vector<int>> aux_by_gap_;
  std::map<std::tuple<std::string, int, int>, std::vector<int>> bottom_by_span_;
};

// ---------------------------------------------------------------------------
// Derivation extraction from the packed chart.

struct Instance;
using InstancePtr = std::shared_ptr<const Instance>;

struct ChildAttach {
  GornAddress address;
  Op op;
  InstancePtr child;
};

struct Alternative {
  std::vector<ChildAttach> attaches;
  std::size_t size = 0;  // instances below this node
};

struct Instance {
  int type = 0;
  std::vector<ChildAttach> attaches;
  std::size_t size = 1;
};

class Extractor {
 public:
  Extractor(const Chart& chart, std::size_t max_instances)
      : chart_(chart), max_instances_(max_instances) {}

  std::vector<InstancePtr> instances(int root_top) {
    std::vector<InstancePtr> out;
    for (const Alternative& alt : expand(root_top)) {
      auto inst = std::make_shared<Instance>();
      inst->type = chart_.item(root_top).key.tree;
      inst->attaches = alt.attaches;
      inst->size = alt.size + 1;
      if (inst->size > max_instances_) {
        truncated_ = true;
        continue;
      }
      out.push_back(std::move(inst));
    }
    return out;
  }

  bool truncated() const { return truncated_; }

 private:
  const std::vector<Alternative>& expand(int id) {
    if (auto it = memo_.find(id); it != memo_.end()) return it->second;
    static const std::vector<Alternative> kNothing;
    if (!active_.insert(id).second) {
      truncated_ = true;
      return kNothing;
    }
    std::vector<Alternative> out;
    const Item& item = chart_.item(id);
    const GornAddress& address = chart_.type(item.key.tree).nodes[item.key.node].address;
    for (const Way& way : item.ways) {
      switch (way.kind) {
        case WayKind::axiom:
          out.push_back(Alternative{});
          break;
        case WayKind::no_adjoin:
          for (const Alternative& alt : expand(way.a)) out.push_back(alt);
          break;
        case WayKind::extend:
          combine(expand(way.a), expand(way.b), out);
          break;
        case WayKind::substitute:
          for (InstancePtr child : instances(way.a)) {
            out.push_back(Alternative{{ChildAttach{address, Op::substitute, child}}, child->size});
          }
          break;
        case WayKind::adjoin: {
          std::vector<Alternative> planted;
          for (InstancePtr aux : instances(way.a)) {
            planted.push_back(Alternative{{ChildAttach{address, Op::adjoin, aux}}, aux->size});
          }
          combine(planted, expand(way.b), out);
          break;
        }
      }
    }
    active_.erase(id);
    return memo_.emplace(id, std::move(out)).first->second;
  }

  void combine(const std::vector<Alternative>& left, const std::vector<Alternative>& right,
               std::vector<Alternative>& out) {
    for (const Alternative& l : left) {
      for (const Alternative& r : right) {
        if (l.size + r.size + 1 > max_instances_) {
          truncated_ = true;
          continue;
        }
        Alternative merged = l;
        merged.attaches.insert(merged.attaches.end(), r.attaches.begin(), r.attaches.end());
        merged.size += r.size;
        out.push_back(std::move(merged));
      }
    }
  }

  const Chart& chart_;
  std::size_t max_instances_;
  bool truncated_ = false;
  std::set<int> active_;
  std::unordered_map<int, std::vector<Alternative>> memo_;
};

// ---------------------------------------------------------------------------
// Grouping component instances into uses.

struct FlatInstance {
  std::size_t pair = 0;
  std::size_t comp = 0;
  int parent = kNone;
  GornAddress address;
  Op op = Op::substitute;
};

void flatten_instance(const Instance& inst, const std::vector<TreeType>& types, int parent,
                      const GornAddress& address, Op op, std::vector<FlatInstance>& out) {
  const TreeType& type = types[inst.type];
  int self = static_cast<int>(out.size());
  out.push_back(FlatInstance{type.pair, type.comp, parent, address, op});
  for (const ChildAttach& a : inst.attaches) flatten_instance(*a.child, types, self, a.address, a.op, out);
}

class Grouper {
 public:
  Grouper(const Grammar& grammar, const std::vector<FlatInstance>& instances, std::size_t max_uses)
      : grammar_(grammar), instances_(instances), max_uses_(max_uses) {}

  // Appends every use assignment that satisfies the set constraints.
  bool run(std::vector<Derivation>& out) {
    std::map<std::size_t, std::vector<std::vector<int>>> by_pair;
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      const FlatInstance& inst = instances_[i];
      auto& comps = by_pair[inst.pair];
      comps.resize(grammar_.pairs()[inst.pair].source.components.size());
      comps[inst.comp].push_back(static_cast<int>(i));
    }
    std::size_t total_uses = 0;
    for (auto& [pair, comps] : by_pair) {
      std::size_t m = comps.front().size();
      for (const auto& list : comps) {
        if (list.size() != m) return true;  // some component has no partner
      }
      total_uses += m;
      groups_.push_back(Group{pair, comps, {}});
    }
    if (total_uses > max_uses_) return false;
    use_of_.assign(instances_.size(), 0);
    assign(0, 0, out);
    return true;
  }

 private:
  struct Group {
    std::size_t pair;
    std::vector<std::vector<int>> comps;  // instance ids per component
    std::vector<std::vector<int>> order;  // chosen permutation per component
  };

  void assign(std::size_t g, std::size_t c, std::vector<Derivation>& out) {
    if (g == groups_.size()) {
      emit(out);
      return;
    }
    Group& group = groups_[g];
    if (c == group.comps.size()) {
      assign(g + 1, 0, out);
      return;
    }
    std::vector<int> perm = group.comps[c];
    std::sort(perm.begin(), perm.end());
    // Component 0 fixes the use numbering; other components permute.
    do {
      group.order.resize(group.comps.size());
      group.order[c] = perm;
      assign(g, c + 1, out);
      if (c == 0) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  void emit(std::vector<Derivation>& out) {
    Derivation d;
    int next = 1;
    for (const Group& group : groups_) {
      const std::string& name = grammar_.pairs()[group.pair].name;
      for (std::size_t u = 0; u < group.order[0].size(); ++u) {
        int id = next++;
        d.uses.push_back(Use{id, name});
        for (const auto& order : group.order) use_of_[order[u]] = id;
      }
    }
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      const FlatInstance& inst = instances_[i];
      if (inst.parent == kNone) {
        d.root_use = use_of_[i];
        continue;
      }
      const FlatInstance& host = instances_[inst.parent];
      d.attachments.push_back(Attachment{ComponentRef{use_of_[i], inst.comp},
                                         ComponentRef{use_of_[inst.parent], host.comp},
                                         inst.address, inst.op});
    }
    if (check_set_constraints(d, grammar_).ok) out.push_back(std::move(d));
  }

  const Grammar& grammar_;
  const std::vector<FlatInstance>& instances_;
  std::size_t max_uses_;
  std::vector<Group> groups_;
  std::vector<int> use_of_;
};

bool lex_available(const SyncPair& pair, const std::map<std::string, int>& budget) {
  std::map<std::string, int> need;
  for (const ElementaryTree& tree : pair.source.components) {
    for (const std::string& word : tree.lex_words()) ++need[word];
  }
  for (const auto& [word, count] : need) {
    auto it = budget.find(word);
    if (it == budget.end() || it->second < count) return false;
  }
  return true;
}

}  // namespace

ParseResult parse(std::span<const Token> tokens, const Grammar& grammar, const ParseOptions& options) {
  if (tokens.empty()) throw Error(ErrorKind::empty_input, "nothing to parse");
  for (const Token& token : tokens) {
    if (!grammar.is_anchor(token.stem)) {
      throw Error(ErrorKind::lexical_gap, "no pair is anchored by \"" + token.stem + "\"");
    }
  }
  std::vector<std::string> lex = lex_sequence(tokens);
  std::map<std::string, int> budget;
  for (const std::string& word : lex) ++budget[word];

  std::vector<TreeType> types;
  std::size_t widest = 1;
  for (std::size_t p = 0; p < grammar.pairs().size(); ++p) {
    const SyncPair& pair = grammar.pairs()[p];
    if (!lex_available(pair, budget)) continue;
    widest = std::max(widest, pair.source.components.size());
    for (std::size_t c = 0; c < pair.source.components.size(); ++c) {
      TreeType type;
      type.pair = p;
      type.comp = c;
      type.auxiliary = pair.source.components[c].is_auxiliary();
      flatten(pair.source.components[c].root(), GornAddress{}, kNone, 0, type.nodes);
      types.push_back(std::move(type));
    }
  }

  const std::size_t max_uses = options.max_uses ? options.max_uses : default_max_uses(tokens.size());
  Chart chart(grammar, types, lex);
  chart.run();

  ParseResult result;
  Extractor extractor(chart, max_uses * widest);
  std::vector<Derivation> found;
  for (int goal : chart.goals()) {
    for (const InstancePtr& root : extractor.instances(goal)) {
      std::vector<FlatInstance> flat;
      flatten_instance(*root, types, kNone, GornAddress{}, Op::substitute, flat);
      Grouper grouper(grammar, flat, max_uses);
      if (!grouper.run(found)) result.truncated = true;
    }
  }
  result.truncated = result.truncated || extractor.truncated();

  std::set<std::string> seen;
  std::vector<Derivation> unique;
  for (const Derivation& d : found) {
    Derivation c = canonicalize(d);
    if (seen.insert(canonical_key(c)).second) unique.push_back(std::move(c));
  }
  if (unique.empty()) {
    throw Error(ErrorKind::no_parse, "no derivation for \"" + join_tokens(tokens) + "\"");
  }
  result.levels = rank_by_priority(std::move(unique), grammar);
  if (!options.all_levels) result.levels.resize(1);
  return result;
}

}  // namespace stag
