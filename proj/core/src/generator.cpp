#include "stag/generator.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "stag/error.hpp"

namespace stag {

namespace {

constexpr std::string_view kStemCategory = "N";
constexpr std::string_view kParticleCategory = "P";

class Realizer {
 public:
  Realizer(const TargetDerivation& d, const Grammar& g) : d_(d), g_(g) {}

  DerivedNode build(int use) {
    const Use* u = find(use);
    if (!u) throw Error(ErrorKind::illegal_attachment, "target derivation names missing use " + std::to_string(use));
    if (!active_.insert(use).second) {
      throw Error(ErrorKind::illegal_attachment, "cyclic target derivation at use " + std::to_string(use));
    }
    const SyncPair& pair = g_.at(u->pair);
    DerivedNode tree = instantiate(pair.target, use, 0);
    std::vector<const TargetAttachment*> children;
    for (const TargetAttachment& a : d_.attachments) {
      if (a.host == use) children.push_back(&a);
    }
    std::sort(children.begin(), children.end(),
              [](const TargetAttachment* a, const TargetAttachment* b) { return b->address < a->address; });
    for (const TargetAttachment* a : children) {
      DerivedNode child = build(a->child);
      try {
        tree = a->op == Op::substitute ? substitute_at(std::move(tree), a->address, std::move(child))
                                       : adjoin_at(std::move(tree), a->address, std::move(child));
      } catch (const Error& e) {
        throw Error(ErrorKind::illegal_attachment, "cannot attach " + find(a->child)->pair + " into " +
                                                       pair.name + " at " + a->address.str() + ": " +
                                                       e.what());
      }
    }
    active_.erase(use);
    return tree;
  }

 private:
  const Use* find(int id) const {
    for (const Use& use : d_.uses) {
      if (use.id == id) return &use;
    }
    return nullptr;
  }

  const TargetDerivation& d_;
  const Grammar& g_;
  std::set<int> active_;
};

const DerivedNode* first_slot(const DerivedNode& node) {
  if (node.kind == NodeKind::subst_slot || node.kind == NodeKind::foot) return &node;
  for (const DerivedNode& child : node.children) {
    if (const DerivedNode* found = first_slot(child)) return found;
  }
  return nullptr;
}

void surface_words(const DerivedNode& node, std::vector<std::string>& out) {
  if (node.kind == NodeKind::lex) {
    out.push_back(node.word);
    return;
  }
  if (node.children.size() == 2) {
    const DerivedNode& stem = node.children[0];
    const DerivedNode& particle = node.children[1];
    if (stem.kind == NodeKind::lex && particle.kind == NodeKind::lex &&
        stem.category == kStemCategory && particle.category == kParticleCategory) {
      out.push_back(stem.word + "-" + particle.word);
      return;
    }
  }
  for (const DerivedNode& child : node.children) surface_words(child, out);
}

}  // namespace

DerivedTree realize(const TargetDerivation& derivation, const Grammar& grammar) {
  Realizer realizer(derivation, grammar);
  DerivedTree out{realizer.build(derivation.root_use)};
  if (const DerivedNode* open = first_slot(out.root)) {
    const Use* use = nullptr;
    for (const Use& u : derivation.uses) {
      if (u.id == open->origin.use) use = &u;
    }
    throw Error(ErrorKind::unfilled_slot,
                "unfilled " + open->category + " slot at " + open->origin.address.str() + " of " +
                    (use ? use->pair : std::string("?")) + "#" + std::to_string(open->origin.use));
  }
  return out;
}

std::string yield_surface(const DerivedTree& tree, std::string_view terminator) {
  std::vector<std::string> words;
  surface_words(tree.root, words);
  std::string out;
  for (const std::string& word : words) {
    if (!out.empty()) out += ' ';
    out += word;
  }
  out += terminator;
  return out;
}

}  // namespace stag
