#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stag {

// Path of 1-based child positions from the root of a tree. The empty path
// is the root and prints as "e"; otherwise positions are dot-joined ("2.1").
//
// The default ordering is lexicographic over the path, which is preorder
// (an ancestor sorts before its descendants, left siblings before right).
class GornAddress {
 public:
  GornAddress() = default;
  explicit GornAddress(std::vector<int> path);

  static GornAddress root() { return {}; }

  // Throws Error(schema) on malformed text.
  static GornAddress parse(std::string_view text);
  static std::optional<GornAddress> try_parse(std::string_view text);

  std::string str() const;

  const std::vector<int>& path() const { return path_; }
  bool is_root() const { return path_.empty(); }
  std::size_t depth() const { return path_.size(); }

  GornAddress child(int position) const;
  GornAddress parent() const;

  // True when this address is a (non-strict) ancestor of `other`.
  bool is_prefix_of(const GornAddress& other) const;

  friend auto operator<=>(const GornAddress&, const GornAddress&) = default;
  friend bool operator==(const GornAddress&, const GornAddress&) = default;

 private:
  std::vector<int> path_;
};

}  // namespace stag
