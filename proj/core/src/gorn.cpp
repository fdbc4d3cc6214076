#include "stag/gorn.hpp"

#include <charconv>

#include "stag/error.hpp"

namespace stag {

GornAddress::GornAddress(std::vector<int> path) : path_(std::move(path)) {
  for (int position : path_) {
    if (position < 1) {
      throw Error(ErrorKind::schema,
                  "address positions must be >= 1, got " + std::to_string(position));
    }
  }
}

std::optional<GornAddress> GornAddress::try_parse(std::string_view text) {
  if (text == "e") return GornAddress{};
  if (text.empty()) return std::nullopt;
  std::vector<int> path;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = text.find('.', start);
    std::string_view piece = text.substr(start, dot == std::string_view::npos ? text.size() - start : dot - start);
    if (piece.empty() || piece.front() == '0') return std::nullopt;
    int value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (ec != std::errc() || ptr != piece.data() + piece.size() || value < 1) return std::nullopt;
    path.push_back(value);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  GornAddress address;
  address.path_ = std::move(path);
  return address;
}

GornAddress GornAddress::parse(std::string_view text) {
  if (auto address = try_parse(text)) return *address;
  throw Error(ErrorKind::schema, "bad address \"" + std::string(text) + "\"");
}

std::string GornAddress::str() const {
  if (path_.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path_[i]);
  }
  return out;
}

GornAddress GornAddress::child(int position) const {
  GornAddress address = *this;
  address.path_.push_back(position);
  if (position < 1) throw Error(ErrorKind::schema, "child position must be >= 1");
  return address;
}

GornAddress GornAddress::parent() const {
  GornAddress address = *this;
  if (!address.path_.empty()) address.path_.pop_back();
  return address;
}

bool GornAddress::is_prefix_of(const GornAddress& other) const {
  if (path_.size() > other.path_.size()) return false;
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (path_[i] != other.path_[i]) return false;
  }
  return true;
}

}  // namespace stag
