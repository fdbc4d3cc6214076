#include "stag/error.hpp"

namespace stag {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::io: return "io";
    case ErrorKind::syntax: return "syntax";
    case ErrorKind::schema: return "schema";
    case ErrorKind::validation: return "validation";
    case ErrorKind::duplicate_name: return "duplicate_name";
    case ErrorKind::no_start_pair: return "no_start_pair";
    case ErrorKind::empty_input: return "empty_input";
    case ErrorKind::malformed_token: return "malformed_token";
    case ErrorKind::unknown_particle: return "unknown_particle";
    case ErrorKind::lexical_gap: return "lexical_gap";
    case ErrorKind::no_parse: return "no_parse";
    case ErrorKind::category_mismatch: return "category_mismatch";
    case ErrorKind::not_a_slot: return "not_a_slot";
    case ErrorKind::not_auxiliary: return "not_auxiliary";
    case ErrorKind::na_violation: return "na_violation";
    case ErrorKind::double_adjunction: return "double_adjunction";
    case ErrorKind::untranslatable_attachment: return "untranslatable_attachment";
    case ErrorKind::dangling_use: return "dangling_use";
    case ErrorKind::unfilled_slot: return "unfilled_slot";
    case ErrorKind::illegal_attachment: return "illegal_attachment";
    case ErrorKind::bound_exceeded: return "bound_exceeded";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

}  // namespace stag
