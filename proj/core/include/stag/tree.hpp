#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stag/gorn.hpp"

namespace stag {

enum class NodeKind { interior, subst_slot, foot, lex, empty };
enum class AdjoinConstraint { allow, na, oa };

std::string_view to_string(NodeKind kind);
std::string_view to_string(AdjoinConstraint constraint);
std::optional<NodeKind> parse_node_kind(std::string_view text);
std::optional<AdjoinConstraint> parse_adjoin(std::string_view text);

// Feature value standing for "the index of the use this tree belongs to".
// Only legal inside the components of a multi-component source set.
inline constexpr std::string_view kSetVariable = "@set";

using FeatureMap = std::map<std::string, std::string, std::less<>>;

struct TreeNode {
  std::string category;
  NodeKind kind = NodeKind::interior;
  AdjoinConstraint adjoin = AdjoinConstraint::allow;
  std::string word;  // lex nodes only
  FeatureMap features;
  std::vector<TreeNode> children;

  static TreeNode interior(std::string category, std::vector<TreeNode> children,
                           AdjoinConstraint adjoin = AdjoinConstraint::allow);
  static TreeNode slot(std::string category);
  static TreeNode foot(std::string category);
  static TreeNode lex(std::string category, std::string word);
  static TreeNode empty(std::string category);

  TreeNode&& with_feature(std::string name, std::string value) &&;

  bool is_leaf() const { return kind != NodeKind::interior; }

  // A node a link or an attachment may target: a substitution slot, or an
  // interior node that does not forbid adjunction.
  bool is_operable() const;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

const TreeNode* node_at(const TreeNode& root, const GornAddress& address);

// Preorder walk with addresses.
void for_each_node(const TreeNode& root,
                   const std::function<void(const GornAddress&, const TreeNode&)>& visit);

class ElementaryTree {
 public:
  ElementaryTree() = default;
  explicit ElementaryTree(TreeNode root) : root_(std::move(root)) {}

  const TreeNode& root() const { return root_; }
  const std::string& category() const { return root_.category; }

  // Auxiliary iff the tree has a foot node. Well-formedness (exactly one foot,
  // matching the root category) is checked by validate_pair.
  bool is_auxiliary() const;
  bool is_initial() const { return !is_auxiliary(); }
  std::vector<GornAddress> foot_addresses() const;

  const TreeNode* find(const GornAddress& address) const { return node_at(root_, address); }

  std::vector<std::string> lex_words() const;
  bool uses_set_variable() const;

  friend bool operator==(const ElementaryTree&, const ElementaryTree&) = default;

 private:
  TreeNode root_;
};

}  // namespace stag
