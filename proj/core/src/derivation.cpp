#include "stag/derivation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "stag/grammar.hpp"

namespace stag {

std::string_view to_string(Op op) { return op == Op::substitute ? "substitute" : "adjoin"; }

const Use* Derivation::find_use(int id) const {
  for (const Use& use : uses) {
    if (use.id == id) return &use;
  }
  return nullptr;
}

const Attachment* Derivation::attachment_of(ComponentRef child) const {
  for (const Attachment& a : attachments) {
    if (a.child == child) return &a;
  }
  return nullptr;
}

std::vector<const Attachment*> Derivation::attachments_into(ComponentRef host) const {
  std::vector<const Attachment*> out;
  for (const Attachment& a : attachments) {
    if (a.host == host) out.push_back(&a);
  }
  return out;
}

int Derivation::cost(const Grammar& grammar) const {
  int total = 0;
  for (const Use& use : uses) total += grammar.at(use.pair).priority - 1;
  return total;
}

std::vector<std::string> Derivation::pair_multiset() const {
  std::vector<std::string> names;
  for (const Use& use : uses) names.push_back(use.pair);
  std::sort(names.begin(), names.end());
  return names;
}

namespace {

std::string pair_name(const Derivation& d, int use) {
  const Use* u = d.find_use(use);
  return u ? u->pair : std::string();
}

// Children of a component instance in address order.
std::vector<const Attachment*> ordered_children(const Derivation& d, ComponentRef host) {
  auto children = d.attachments_into(host);
  std::sort(children.begin(), children.end(), [&](const Attachment* a, const Attachment* b) {
    return std::tuple(a->address, a->op, pair_name(d, a->child.use), a->child.comp) <
           std::tuple(b->address, b->op, pair_name(d, b->child.use), b->child.comp);
  });
  return children;
}

std::vector<ComponentRef> root_components(const Derivation& d) {
  std::set<ComponentRef> roots;
  for (const Attachment& a : d.attachments) {
    if (a.host.use == d.root_use) roots.insert(a.host);
  }
  for (const Attachment& a : d.attachments) roots.erase(a.child);
  return {roots.begin(), roots.end()};
}

}  // namespace

Derivation canonicalize(const Derivation& d) {
  std::map<int, int> renumber;
  auto number = [&](int id) {
    if (!renumber.count(id)) {
      int next = static_cast<int>(renumber.size()) + 1;
      renumber[id] = next;
    }
  };
  number(d.root_use);
  std::set<ComponentRef> visited;
  std::function<void(ComponentRef)> visit = [&](ComponentRef node) {
    if (!visited.insert(node).second) return;
    number(node.use);
    for (const Attachment* a : ordered_children(d, node)) visit(a->child);
  };
  for (ComponentRef root : root_components(d)) visit(root);
  std::vector<int> rest;
  for (const Use& use : d.uses) rest.push_back(use.id);
  std::sort(rest.begin(), rest.end());
  for (int id : rest) number(id);

  Derivation out;
  out.root_use = renumber.at(d.root_use);
  for (const Use& use : d.uses) out.uses.push_back(Use{renumber.at(use.id), use.pair});
  auto rename = [&](ComponentRef ref) {
    auto it = renumber.find(ref.use);
    return ComponentRef{it == renumber.end() ? ref.use : it->second, ref.comp};
  };
  for (const Attachment& a : d.attachments) {
    out.attachments.push_back(Attachment{rename(a.child), rename(a.host), a.address, a.op});
  }
  std::sort(out.uses.begin(), out.uses.end());
  std::sort(out.attachments.begin(), out.attachments.end(),
            [](const Attachment& a, const Attachment& b) {
              return std::tie(a.host, a.address, a.op, a.child) <
                     std::tie(b.host, b.address, b.op, b.child);
            });
  return out;
}

std::string canonical_key(const Derivation& derivation) {
  Derivation d = canonicalize(derivation);
  std::string key = "root=" + std::to_string(d.root_use);
  for (const Use& use : d.uses) key += "|" + std::to_string(use.id) + ":" + use.pair;
  for (const Attachment& a : d.attachments) {
    key += "|" + std::to_string(a.child.use) + "/" + std::to_string(a.child.comp) + ">" +
           std::to_string(a.host.use) + "/" + std::to_string(a.host.comp) + "@" + a.address.str() +
           (a.op == Op::substitute ? ":s" : ":a");
  }
  return key;
}

bool derivation_less(const Derivation& a, const Derivation& b) {
  auto names_a = a.pair_multiset();
  auto names_b = b.pair_multiset();
  if (names_a != names_b) return names_a < names_b;
  Derivation ca = canonicalize(a);
  Derivation cb = canonicalize(b);
  auto row = [](const Attachment& x) {
    return std::tuple(x.host, x.address, x.op, x.child);
  };
  return std::lexicographical_compare(
      ca.attachments.begin(), ca.attachments.end(), cb.attachments.begin(), cb.attachments.end(),
      [&](const Attachment& x, const Attachment& y) { return row(x) < row(y); });
}

std::string render_derivation(const Derivation& d, const Grammar& grammar) {
  auto label = [&](ComponentRef ref) {
    std::string name = pair_name(d, ref.use);
    std::string out = name + "#" + std::to_string(ref.use);
    const SyncPair* pair = grammar.find(name);
    if (pair && pair->source.is_multi()) out += "/" + std::to_string(ref.comp);
    return out;
  };
  std::string out;
  std::set<ComponentRef> visited;
  std::function<void(ComponentRef, int)> visit = [&](ComponentRef node, int depth) {
    if (!visited.insert(node).second) return;
    for (const Attachment* a : ordered_children(d, node)) {
      out += std::string(2 * depth, ' ') + label(a->child) + "@" + a->address.str() + "(" +
             std::string(to_string(a->op)) + ")\n";
      visit(a->child, depth + 1);
    }
  };
  std::vector<ComponentRef> roots = root_components(d);
  if (roots.empty()) {
    const SyncPair* pair = grammar.find(pair_name(d, d.root_use));
    roots.push_back(ComponentRef{d.root_use, pair ? pair->source.head : 0});
  }
  for (ComponentRef root : roots) {
    out += label(root) + "\n";
    visit(root, 1);
  }
  return out;
}

}  // namespace stag
