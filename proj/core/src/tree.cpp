#include "stag/tree.hpp"

namespace stag {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::interior: return "interior";
    case NodeKind::subst_slot: return "subst_slot";
    case NodeKind::foot: return "foot";
    case NodeKind::lex: return "lex";
    case NodeKind::empty: return "empty";
  }
  return "interior";
}

std::string_view to_string(AdjoinConstraint constraint) {
  switch (constraint) {
    case AdjoinConstraint::allow: return "allow";
    case AdjoinConstraint::na: return "na";
    case AdjoinConstraint::oa: return "oa";
  }
  return "allow";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
  for (NodeKind kind : {NodeKind::interior, NodeKind::subst_slot, NodeKind::foot,
                        NodeKind::lex, NodeKind::empty}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::optional<AdjoinConstraint> parse_adjoin(std::string_view text) {
  for (AdjoinConstraint c : {AdjoinConstraint::allow, AdjoinConstraint::na, AdjoinConstraint::oa}) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

TreeNode TreeNode::interior(std::string category, std::vector<TreeNode> children,
                            AdjoinConstraint adjoin) {
  TreeNode node;
  node.category = std::move(category);
  node.adjoin = adjoin;
  node.children = std::move(children);
  return node;
}

TreeNode TreeNode::slot(std::string category) {
  TreeNode node;
  node.category = std::move(category);
  node.kind = NodeKind::subst_slot;
  return node;
}

TreeNode TreeNode::foot(std::string category) {
  TreeNode node;
  node.category = std::move(category);
  node.kind = NodeKind::foot;
  return node;
}

TreeNode TreeNode::lex(std::string category, std::string word) {
  TreeNode node;
  node.category = std::move(category);
  node.kind = NodeKind::lex;
  node.word = std::move(word);
  return node;
}

TreeNode TreeNode::empty(std::string category) {
  TreeNode node;
  node.category = std::move(category);
  node.kind = NodeKind::empty;
  return node;
}

TreeNode&& TreeNode::with_feature(std::string name, std::string value) && {
  features[std::move(name)] = std::move(value);
  return std::move(*this);
}

bool TreeNode::is_operable() const {
  if (kind == NodeKind::subst_slot) return true;
  return kind == NodeKind::interior && adjoin != AdjoinConstraint::na;
}

const TreeNode* node_at(const TreeNode& root, const GornAddress& address) {
  const TreeNode* node = &root;
  for (int position : address.path()) {
    if (position < 1 || static_cast<std::size_t>(position) > node->children.size()) return nullptr;
    node = &node->children[position - 1];
  }
  return node;
}

namespace {

void walk(const TreeNode& node, GornAddress& address,
          const std::function<void(const GornAddress&, const TreeNode&)>& visit) {
  visit(address, node);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    GornAddress child = address.child(static_cast<int>(i + 1));
    walk(node.children[i], child, visit);
  }
}

}  // namespace

void for_each_node(const TreeNode& root,
                   const std::function<void(const GornAddress&, const TreeNode&)>& visit) {
  GornAddress address;
  walk(root, address, visit);
}

bool ElementaryTree::is_auxiliary() const { return !foot_addresses().empty(); }

std::vector<GornAddress> ElementaryTree::foot_addresses() const {
  std::vector<GornAddress> feet;
  for_each_node(root_, [&](const GornAddress& a, const TreeNode& n) {
    if (n.kind == NodeKind::foot) feet.push_back(a);
  });
  return feet;
}

std::vector<std::string> ElementaryTree::lex_words() const {
  std::vector<std::string> words;
  for_each_node(root_, [&](const GornAddress&, const TreeNode& n) {
    if (n.kind == NodeKind::lex) words.push_back(n.word);
  });
  return words;
}

bool ElementaryTree::uses_set_variable() const {
  bool found = false;
  for_each_node(root_, [&](const GornAddress&, const TreeNode& n) {
    for (const auto& [name, value] : n.features) {
      if (value == kSetVariable) found = true;
    }
  });
  return found;
}

}  // namespace stag
