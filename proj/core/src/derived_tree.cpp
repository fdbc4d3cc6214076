#include "stag/derived_tree.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "stag/error.hpp"

namespace stag {

const DerivedNode* DerivedNode::at(const GornAddress& address) const {
  const DerivedNode* node = this;
  for (int position : address.path()) {
    if (static_cast<std::size_t>(position) > node->children.size()) return nullptr;
    node = &node->children[position - 1];
  }
  return node;
}

DerivedNode* DerivedNode::at(const GornAddress& address) {
  return const_cast<DerivedNode*>(std::as_const(*this).at(address));
}

int DerivedNode::coindex() const {
  int best = 0;
  for (const auto& [name, value] : features) {
    if (value.coindex > 0 && (best == 0 || value.coindex < best)) best = value.coindex;
  }
  return best;
}

std::string render_bracketed(const DerivedNode& node) {
  std::string label = node.category;
  std::set<int> indices;
  std::string atoms;
  for (const auto& [name, value] : node.features) {
    if (value.coindex > 0) {
      indices.insert(value.coindex);
    } else {
      atoms += (atoms.empty() ? "" : ",") + name + "=" + value.atom;
    }
  }
  for (int index : indices) label += "<" + std::to_string(index) + ">";
  if (!atoms.empty()) label += "[" + atoms + "]";

  switch (node.kind) {
    case NodeKind::lex: return "(" + label + " " + node.word + ")";
    case NodeKind::empty: return "(" + label + " e)";
    case NodeKind::subst_slot: return label + "!";
    case NodeKind::foot: return label + "*";
    case NodeKind::interior: break;
  }
  std::string out = "(" + label;
  for (const DerivedNode& child : node.children) out += " " + render_bracketed(child);
  return out + ")";
}

namespace {

void collect_yield(const DerivedNode& node, std::vector<std::string>& out) {
  if (node.kind == NodeKind::lex) out.push_back(node.word);
  for (const DerivedNode& child : node.children) collect_yield(child, out);
}

DerivedNode copy_node(const TreeNode& source, int use, std::size_t comp, const GornAddress& address) {
  DerivedNode node;
  node.category = source.category;
  node.kind = source.kind;
  node.adjoin = source.adjoin;
  node.word = source.word;
  node.origin = Provenance{use, comp, address};
  for (const auto& [name, value] : source.features) {
    node.features[name] = value == kSetVariable ? FeatureValue{{}, use} : FeatureValue{value, 0};
  }
  for (std::size_t i = 0; i < source.children.size(); ++i) {
    node.children.push_back(
        copy_node(source.children[i], use, comp, address.child(static_cast<int>(i + 1))));
  }
  return node;
}

DerivedNode* find_kind(DerivedNode& node, NodeKind kind) {
  if (node.kind == kind) return &node;
  for (DerivedNode& child : node.children) {
    if (DerivedNode* found = find_kind(child, kind)) return found;
  }
  return nullptr;
}

}  // namespace

std::vector<std::string> lex_yield(const DerivedNode& node) {
  std::vector<std::string> out;
  collect_yield(node, out);
  return out;
}

DerivedNode instantiate(const ElementaryTree& tree, int use, std::size_t comp) {
  return copy_node(tree.root(), use, comp, GornAddress{});
}

DerivedNode substitute_at(DerivedNode host, const GornAddress& address, DerivedNode child) {
  DerivedNode* slot = host.at(address);
  if (!slot) throw Error(ErrorKind::not_a_slot, "no node at address " + address.str());
  if (slot->kind != NodeKind::subst_slot) {
    throw Error(ErrorKind::not_a_slot, "node " + slot->category + " at " + address.str() +
                                           " is not a substitution slot");
  }
  if (slot->category != child.category) {
    throw Error(ErrorKind::category_mismatch, "cannot substitute " + child.category + " into " +
                                                  slot->category + " slot at " + address.str());
  }
  *slot = std::move(child);
  return host;
}

DerivedNode adjoin_at(DerivedNode host, const GornAddress& address, DerivedNode aux) {
  DerivedNode* site = host.at(address);
  if (!site) throw Error(ErrorKind::illegal_attachment, "no node at address " + address.str());
  if (site->kind != NodeKind::interior) {
    throw Error(ErrorKind::illegal_attachment,
                "cannot adjoin at " + std::string(to_string(site->kind)) + " node " + address.str());
  }
  if (site->adjoin == AdjoinConstraint::na) {
    throw Error(ErrorKind::na_violation,
                "node " + site->category + " at " + address.str() + " forbids adjunction");
  }
  if (site->adjoined) {
    throw Error(ErrorKind::double_adjunction,
                "node " + site->category + " at " + address.str() + " already received an adjunction");
  }
  if (site->category != aux.category) {
    throw Error(ErrorKind::category_mismatch, "cannot adjoin " + aux.category + " tree at " +
                                                  site->category + " node " + address.str());
  }
  DerivedNode* foot = find_kind(aux, NodeKind::foot);
  if (!foot) throw Error(ErrorKind::not_auxiliary, "adjoined tree " + aux.category + " has no foot");
  if (foot->category != site->category) {
    throw Error(ErrorKind::category_mismatch, "foot " + foot->category + " does not match " +
                                                  site->category);
  }
  DerivedNode displaced = std::move(*site);
  displaced.adjoined = true;
  *foot = std::move(displaced);
  aux.adjoined = true;
  *site = std::move(aux);
  return host;
}

namespace {

struct Composer {
  const Derivation& d;
  const Grammar& g;
  std::set<ComponentRef> active;

  const SyncPair& pair_of(int use) const {
    const Use* u = d.find_use(use);
    if (!u) throw Error(ErrorKind::internal, "attachment names unknown use " + std::to_string(use));
    const SyncPair* pair = g.find(u->pair);
    if (!pair) throw Error(ErrorKind::internal, "derivation names unknown pair " + u->pair);
    return *pair;
  }

  DerivedNode build(ComponentRef ref) {
    const SyncPair& pair = pair_of(ref.use);
    if (ref.comp >= pair.source.components.size()) {
      throw Error(ErrorKind::internal, pair.name + " has no component " + std::to_string(ref.comp));
    }
    if (!active.insert(ref).second) {
      throw Error(ErrorKind::internal, "cyclic attachment through " + pair.name);
    }
    DerivedNode tree = instantiate(pair.source.components[ref.comp], ref.use, ref.comp);
    auto children = d.attachments_into(ref);
    // Deepest and rightmost first, so pending addresses stay valid.
    std::sort(children.begin(), children.end(),
              [](const Attachment* a, const Attachment* b) { return b->address < a->address; });
    for (const Attachment* a : children) {
      DerivedNode child = build(a->child);
      try {
        tree = a->op == Op::substitute ? substitute_at(std::move(tree), a->address, std::move(child))
                                       : adjoin_at(std::move(tree), a->address, std::move(child));
      } catch (const Error& e) {
        throw Error(ErrorKind::internal, "illegal attachment of use " +
                                             std::to_string(a->child.use) + " into " + pair.name +
                                             ": " + e.what());
      }
    }
    active.erase(ref);
    return tree;
  }

  DerivedNode build_root() {
    const SyncPair& root = pair_of(d.root_use);
    return build(ComponentRef{d.root_use, root.source.head});
  }
};

void renumber(DerivedNode& node, std::map<int, int>& order) {
  for (auto& [name, value] : node.features) {
    if (value.coindex > 0) {
      auto [it, fresh] = order.emplace(value.coindex, static_cast<int>(order.size()) + 1);
      value.coindex = it->second;
    }
  }
  for (DerivedNode& child : node.children) renumber(child, order);
}

void locate(const DerivedNode& node, GornAddress& here,
            std::map<std::pair<int, std::size_t>, GornAddress>& roots) {
  if (node.origin.address.is_root()) roots.emplace(std::pair{node.origin.use, node.origin.comp}, here);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    GornAddress child = here.child(static_cast<int>(i + 1));
    locate(node.children[i], child, roots);
  }
}

bool has_open_nodes(const DerivedNode& node) {
  if (node.kind == NodeKind::subst_slot || node.kind == NodeKind::foot) return true;
  return std::any_of(node.children.begin(), node.children.end(), has_open_nodes);
}

}  // namespace

DerivedTree build_derived_tree(const Derivation& derivation, const Grammar& grammar) {
  Composer composer{derivation, grammar, {}};
  DerivedTree out{composer.build_root()};
  if (has_open_nodes(out.root)) {
    throw Error(ErrorKind::internal, "derivation leaves open slots: " + out.render());
  }
  std::map<int, int> order;
  renumber(out.root, order);
  return out;
}

SetConstraintReport check_set_constraints(const Derivation& d, const Grammar& g) {
  SetConstraintReport report;
  auto fail = [&](std::string message) {
    report.ok = false;
    report.violations.push_back(std::move(message));
  };

  for (const Use& use : d.uses) {
    const SyncPair& pair = g.at(use.pair);
    for (std::size_t c = 0; c < pair.source.components.size(); ++c) {
      if (use.id == d.root_use && c == pair.source.head) continue;
      if (!d.attachment_of(ComponentRef{use.id, c})) {
        fail("missing-component: use " + std::to_string(use.id) + " (" + use.pair +
             ") component " + std::to_string(c) + " is not attached");
      }
    }
  }

  Composer composer{d, g, {}};
  DerivedNode tree = composer.build_root();
  std::map<std::pair<int, std::size_t>, GornAddress> roots;
  GornAddress top;
  locate(tree, top, roots);
  for (const Use& use : d.uses) {
    const SyncPair& pair = g.at(use.pair);
    for (const auto& [dominator, dominated] : pair.source.dominance) {
      auto upper = roots.find({use.id, dominator});
      auto lower = roots.find({use.id, dominated});
      if (upper == roots.end() || lower == roots.end()) continue;
      if (upper->second == lower->second || !upper->second.is_prefix_of(lower->second)) {
        fail("dominance: use " + std::to_string(use.id) + " (" + use.pair + ") component " +
             std::to_string(dominator) + " does not dominate component " + std::to_string(dominated));
      }
    }
  }
  return report;
}

std::vector<std::string> validate_derivation(const Derivation& d, const Grammar& g) {
  std::vector<std::string> problems;
  std::set<int> ids;
  for (const Use& use : d.uses) {
    if (use.id < 1 || !ids.insert(use.id).second) {
      problems.push_back("bad or duplicate use id " + std::to_string(use.id));
    }
    if (!g.find(use.pair)) problems.push_back("unknown pair " + use.pair);
  }
  if (!problems.empty()) return problems;
  const Use* root = d.find_use(d.root_use);
  if (!root) return {"root use " + std::to_string(d.root_use) + " does not exist"};
  const SyncPair& root_pair = g.at(root->pair);
  if (!g.is_start_pair(root_pair)) problems.push_back("root pair " + root->pair + " cannot start a derivation");
  const ComponentRef root_head{d.root_use, root_pair.source.head};

  auto component = [&](ComponentRef ref) -> const ElementaryTree* {
    const Use* use = d.find_use(ref.use);
    if (!use) return nullptr;
    const SyncPair& pair = g.at(use->pair);
    return ref.comp < pair.source.components.size() ? &pair.source.components[ref.comp] : nullptr;
  };

  std::set<ComponentRef> attached;
  std::set<std::pair<ComponentRef, GornAddress>> sites;
  for (const Attachment& a : d.attachments) {
    const ElementaryTree* child = component(a.child);
    const ElementaryTree* host = component(a.host);
    std::string where = "use " + std::to_string(a.child.use) + "/" + std::to_string(a.child.comp) +
                        " at " + std::to_string(a.host.use) + "/" + std::to_string(a.host.comp) +
                        "@" + a.address.str();
    if (!child || !host) {
      problems.push_back(where + ": unknown component");
      continue;
    }
    if (a.child == root_head) problems.push_back(where + ": root head cannot attach");
    if (!attached.insert(a.child).second) problems.push_back(where + ": component attached twice");
    if (!sites.insert({a.host, a.address}).second) problems.push_back(where + ": site used twice");
    const TreeNode* node = host->find(a.address);
    if (!node) {
      problems.push_back(where + ": no such node");
      continue;
    }
    if (node->category != child->category()) problems.push_back(where + ": category mismatch");
    if (a.op == Op::substitute) {
      if (node->kind != NodeKind::subst_slot) problems.push_back(where + ": not a substitution slot");
      if (!child->is_initial()) problems.push_back(where + ": substituted tree is auxiliary");
    } else {
      if (node->kind != NodeKind::interior || node->adjoin == AdjoinConstraint::na) {
        problems.push_back(where + ": not an adjunction site");
      }
      if (!child->is_auxiliary()) problems.push_back(where + ": adjoined tree is not auxiliary");
    }
  }
  if (!problems.empty()) return problems;

  // Every instance must reach the root head through its hosts.
  for (const Attachment& a : d.attachments) {
    ComponentRef at = a.child;
    std::set<ComponentRef> seen;
    while (!(at == root_head)) {
      const Attachment* up = d.attachment_of(at);
      if (!up || !seen.insert(at).second) {
        problems.push_back("use " + std::to_string(a.child.use) + " is not connected to the root");
        break;
      }
      at = up->host;
    }
  }
  if (!problems.empty()) return problems;

  std::vector<ComponentRef> instances{root_head};
  for (const Attachment& a : d.attachments) instances.push_back(a.child);
  for (ComponentRef ref : instances) {
    for_each_node(component(ref)->root(), [&](const GornAddress& address, const TreeNode& node) {
      bool filled = sites.count({ref, address}) > 0;
      if (node.kind == NodeKind::subst_slot && !filled) {
        problems.push_back("unfilled slot " + node.category + " at " + std::to_string(ref.use) +
                           "/" + std::to_string(ref.comp) + "@" + address.str());
      }
      if (node.kind == NodeKind::interior && node.adjoin == AdjoinConstraint::oa && !filled) {
        problems.push_back("obligatory adjunction missing at " + std::to_string(ref.use) + "/" +
                           std::to_string(ref.comp) + "@" + address.str());
      }
    });
  }
  if (!problems.empty()) return problems;

  SetConstraintReport sets = check_set_constraints(d, g);
  problems.insert(problems.end(), sets.violations.begin(), sets.violations.end());
  return problems;
}

}  // namespace stag
