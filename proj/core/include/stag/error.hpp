#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stag {

enum class ErrorKind {
  io,
  syntax,
  schema,
  validation,
  duplicate_name,
  no_start_pair,
  empty_input,
  malformed_token,
  unknown_particle,
  lexical_gap,
  no_parse,
  category_mismatch,
  not_a_slot,
  not_auxiliary,
  na_violation,
  double_adjunction,
  untranslatable_attachment,
  dangling_use,
  unfilled_slot,
  illegal_attachment,
  bound_exceeded,
  internal,
};

/// Stable snake_case name, used in diagnostics and structured CLI output.
std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace stag
