#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "stag/error.hpp"
#include "stag/grammar.hpp"

namespace stag {

inline constexpr int kGrammarFormatVersion = 1;

// Failure to turn grammar text into a Grammar. `field` is a JSON-style path
// ("pairs[0].links[1].src") when the problem is tied to a field, and `line`
// is 1-based for syntax errors (0 when unknown).
class GrammarLoadError : public Error {
 public:
  GrammarLoadError(ErrorKind kind, const std::string& message, std::string field = {},
                   int line = 0, std::vector<Diagnostic> diagnostics = {})
      : Error(kind, message),
        field_(std::move(field)),
        line_(line),
        diagnostics_(std::move(diagnostics)) {}

  const std::string& field() const { return field_; }
  int line() const { return line_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::string field_;
  int line_;
  std::vector<Diagnostic> diagnostics_;
};

// Parses and fully validates a grammar document. Every failure is reported
// as GrammarLoadError (syntax, schema, validation, duplicate_name or
// no_start_pair); no other exception escapes.
Grammar load_grammar(std::string_view text);

// As load_grammar; unreadable files raise GrammarLoadError(io).
Grammar load_grammar_file(const std::filesystem::path& path);

// Canonical text: sorted keys, two-space indentation, default-valued tree
// fields omitted, trailing newline.
std::string dump_grammar(const Grammar& grammar);

}  // namespace stag
