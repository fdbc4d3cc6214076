#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stag/derivation.hpp"
#include "stag/derived_tree.hpp"
#include "stag/error.hpp"
#include "stag/generator.hpp"
#include "stag/grammar_io.hpp"
#include "stag/morph.hpp"
#include "stag/oracle.hpp"
#include "stag/parser.hpp"
#include "stag/pipeline.hpp"
#include "stag/transfer.hpp"

namespace stag::cli {
namespace {

using nlohmann::json;

struct Config {
  std::string grammar_path;
  std::vector<std::string> sentence;  // positional words
  std::string file;
  std::string format = "text";
  bool all_derivations = false;
  std::string show = "both";
  bool trace_transfer = false;
  unsigned jobs = 1;
  std::size_t max_uses = 0;
};

struct Line {
  std::size_t number = 0;
  std::string text;
};

std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string join(const std::vector<std::string>& words, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += sep;
    out += words[i];
  }
  return out;
}

// Blank lines are skipped but keep their numbers.
std::optional<std::vector<Line>> read_lines(const Config& cfg, std::istream& in, std::ostream& err) {
  std::vector<Line> lines;
  if (!cfg.sentence.empty()) {
    lines.push_back({1, join(cfg.sentence)});
    return lines;
  }
  std::ifstream file;
  std::istream* source = &in;
  if (!cfg.file.empty()) {
    file.open(cfg.file);
    if (!file) {
      err << "io: cannot read input file " << cfg.file << "\n";
      return std::nullopt;
    }
    source = &file;
  }
  std::string text;
  std::size_t number = 0;
  while (std::getline(*source, text)) {
    ++number;
    std::string t = trim(text);
    if (!t.empty()) lines.push_back({number, std::move(t)});
  }
  return lines;
}

std::optional<Grammar> load(const Config& cfg, std::ostream& err) {
  try {
    return load_grammar_file(cfg.grammar_path);
  } catch (const GrammarLoadError& e) {
    err << to_string(e.kind()) << ": " << e.what() << "\n";
    for (const auto& d : e.diagnostics()) err << "  " << d.str() << "\n";
    return std::nullopt;
  }
}

// Runs `work` for every index in [0, n) on up to `jobs` threads. Results
// are written by index, so output order never depends on scheduling.
template <class Work>
void for_each_parallel(std::size_t n, unsigned jobs, Work work) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) work(i);
    });
  }
  for (auto& th : pool) th.join();
}

ParseOptions parse_options(const Config& cfg, bool all_levels) {
  ParseOptions options;
  options.all_levels = all_levels;
  options.max_uses = cfg.max_uses;
  return options;
}

json error_json(ErrorKind kind, std::string_view message) {
  return {{"kind", std::string(to_string(kind))}, {"message", std::string(message)}};
}

// ---- translate -------------------------------------------------------------

struct TranslateOutcome {
  std::optional<Translation> ok;
  ErrorKind kind = ErrorKind::internal;
  std::string message;
};

TranslateOutcome translate_line(const std::string& text, const Grammar& grammar,
                                const ParseOptions& options) {
  TranslateOutcome outcome;
  try {
    outcome.ok = translate(std::string_view(text), grammar, options);
  } catch (const Error& e) {
    outcome.kind = e.kind();
    outcome.message = e.what();
  } catch (const std::exception& e) {
    outcome.message = e.what();
  }
  return outcome;
}

int cmd_translate(const Config& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  auto grammar = load(cfg, err);
  if (!grammar) return kExitConfig;
  auto lines = read_lines(cfg, in, err);
  if (!lines) return kExitConfig;

  std::vector<TranslateOutcome> results(lines->size());
  ParseOptions options = parse_options(cfg, false);
  for_each_parallel(lines->size(), cfg.jobs, [&](std::size_t i) {
    results[i] = translate_line((*lines)[i].text, *grammar, options);
  });

  int status = kExitOk;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Line& line = (*lines)[i];
    const TranslateOutcome& r = results[i];
    if (!r.ok) {
      status = kExitLinguistic;
      err << "line " << line.number << ": " << to_string(r.kind) << ": " << r.message << "\n";
    }
    if (cfg.format == "json") {
      json row = {{"line", line.number}, {"input", line.text}};
      if (r.ok) {
        row["output"] = r.ok->surface;
        row["cost"] = r.ok->parse.best().cost;
        if (cfg.trace_transfer) row["transfer"] = render_transfer_trace(r.ok->target_derivation);
      } else {
        row["output"] = nullptr;
        row["error"] = error_json(r.kind, r.message);
      }
      out << row.dump() << "\n";
    } else {
      out << (r.ok ? r.ok->surface : std::string("ERROR")) << "\n";
      if (r.ok && cfg.trace_transfer) out << render_transfer_trace(r.ok->target_derivation);
    }
  }
  return status;
}

// ---- parse -----------------------------------------------------------------

struct ParseOutcome {
  std::optional<ParseResult> result;
  Sentence sentence;
  ErrorKind kind = ErrorKind::internal;
  std::string message;
};

struct RenderedDerivation {
  std::string derivation;
  std::string derived;
  std::string transfer;
  std::string target;
  std::string surface;
};

RenderedDerivation render_one(const Derivation& d, const Grammar& grammar, const Sentence& s,
                              bool with_transfer) {
  RenderedDerivation r;
  r.derivation = render_derivation(d, grammar);
  r.derived = build_derived_tree(d, grammar).render();
  if (with_transfer) {
    try {
      TargetDerivation td = transfer_derivation(d, grammar);
      r.transfer = render_transfer_trace(td);
      DerivedTree tree = realize(td, grammar);
      r.target = tree.render();
      r.surface = yield_surface(tree, s.terminator);
    } catch (const Error& e) {
      r.transfer = std::string(to_string(e.kind())) + ": " + e.what() + "\n";
    }
  }
  return r;
}

int cmd_parse(const Config& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  auto grammar = load(cfg, err);
  if (!grammar) return kExitConfig;
  auto lines = read_lines(cfg, in, err);
  if (!lines) return kExitConfig;

  std::vector<ParseOutcome> results(lines->size());
  ParseOptions options = parse_options(cfg, cfg.all_derivations);
  for_each_parallel(lines->size(), cfg.jobs, [&](std::size_t i) {
    ParseOutcome& o = results[i];
    try {
      o.sentence = tokenize((*lines)[i].text, *grammar);
      o.result = parse(o.sentence.tokens, *grammar, options);
    } catch (const Error& e) {
      o.kind = e.kind();
      o.message = e.what();
    } catch (const std::exception& e) {
      o.message = e.what();
    }
  });

  const bool show_derivation = cfg.show != "derived";
  const bool show_derived = cfg.show != "derivation";
  int status = kExitOk;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Line& line = (*lines)[i];
    const ParseOutcome& o = results[i];
    if (!o.result) {
      status = kExitLinguistic;
      err << "line " << line.number << ": " << to_string(o.kind) << ": " << o.message << "\n";
    }
    if (cfg.format == "json") {
      json row = {{"line", line.number}, {"input", line.text}};
      if (o.result) {
        json levels = json::array();
        for (const auto& level : o.result->levels) {
          json ds = json::array();
          for (const auto& d : level.derivations) {
            RenderedDerivation r = render_one(d, *grammar, o.sentence, cfg.trace_transfer);
            json entry = json::object();
            if (show_derivation) entry["derivation"] = r.derivation;
            if (show_derived) entry["derived"] = r.derived;
            if (cfg.trace_transfer) {
              entry["transfer"] = r.transfer;
              entry["target"] = r.target;
              entry["translation"] = r.surface;
            }
            ds.push_back(std::move(entry));
          }
          levels.push_back({{"cost", level.cost}, {"derivations", std::move(ds)}});
        }
        row["levels"] = std::move(levels);
        row["truncated"] = o.result->truncated;
      } else {
        row["error"] = error_json(o.kind, o.message);
      }
      out << row.dump() << "\n";
      continue;
    }
    out << "# " << line.text << "\n";
    if (!o.result) {
      out << "ERROR\n";
      continue;
    }
    for (const auto& level : o.result->levels) {
      std::size_t k = 0;
      for (const auto& d : level.derivations) {
        RenderedDerivation r = render_one(d, *grammar, o.sentence, cfg.trace_transfer);
        out << "[cost " << level.cost << "] derivation " << ++k << " of " << level.derivations.size()
            << "\n";
        if (show_derivation) out << r.derivation;
        if (show_derived) out << r.derived << "\n";
        if (cfg.trace_transfer) {
          out << r.transfer;
          if (!r.target.empty()) out << r.target << "\n" << r.surface << "\n";
        }
      }
    }
    if (o.result->truncated) out << "(derivations truncated by the use bound)\n";
  }
  return status;
}

// ---- check -----------------------------------------------------------------

int cmd_check(const Config& cfg, std::ostream& out, std::ostream& err) {
  try {
    Grammar grammar = load_grammar_file(cfg.grammar_path);
    std::vector<Diagnostic> warnings;
    for (const auto& pair : grammar.pairs()) {
      for (auto& d : validate_pair(pair)) warnings.push_back(std::move(d));
    }
    if (cfg.format == "json") {
      json diags = json::array();
      for (const auto& d : warnings) diags.push_back(d.str());
      out << json{{"ok", true}, {"pairs", grammar.pairs().size()}, {"diagnostics", diags}}.dump()
          << "\n";
    } else {
      for (const auto& d : warnings) out << d.str() << "\n";
      out << "OK, " << grammar.pairs().size() << " pairs\n";
    }
    return kExitOk;
  } catch (const GrammarLoadError& e) {
    if (cfg.format == "json") {
      json diags = json::array();
      for (const auto& d : e.diagnostics()) diags.push_back(d.str());
      json row = {{"ok", false}, {"error", error_json(e.kind(), e.what())}, {"diagnostics", diags}};
      if (!e.field().empty()) row["field"] = e.field();
      if (e.line() > 0) row["line"] = e.line();
      out << row.dump() << "\n";
    } else {
      for (const auto& d : e.diagnostics()) out << d.str() << "\n";
    }
    err << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::io ? kExitConfig : kExitLinguistic;
  }
}

// ---- permutations ----------------------------------------------------------

struct PermutationRow {
  std::string order;
  bool parses = false;
  int cost = 0;
  std::string translation;
};

int cmd_permutations(const Config& cfg, std::ostream& out, std::ostream& err) {
  auto grammar = load(cfg, err);
  if (!grammar) return kExitConfig;

  std::vector<std::string> words;
  for (const auto& arg : cfg.sentence) {
    std::istringstream split(arg);
    for (std::string w; split >> w;) words.push_back(w);
  }
  if (!words.empty() && words.back().size() > 1 && words.back().back() == '.') words.back().pop_back();
  if (words.empty()) {
    err << "permutations: no words given\n";
    return kExitConfig;
  }

  // Distinct orders, in lexicographic order of the original positions.
  std::vector<std::vector<std::string>> orders;
  std::vector<std::size_t> idx(words.size());
  std::iota(idx.begin(), idx.end(), 0);
  do {
    std::vector<std::string> order;
    for (auto i : idx) order.push_back(words[i]);
    if (std::find(orders.begin(), orders.end(), order) == orders.end()) orders.push_back(std::move(order));
  } while (std::next_permutation(idx.begin(), idx.end()));

  std::vector<PermutationRow> rows(orders.size());
  ParseOptions options = parse_options(cfg, false);
  for_each_parallel(orders.size(), cfg.jobs, [&](std::size_t i) {
    PermutationRow& row = rows[i];
    row.order = join(orders[i]);
    TranslateOutcome r = translate_line(row.order, *grammar, options);
    if (r.ok) {
      row.parses = true;
      row.cost = r.ok->parse.best().cost;
      row.translation = r.ok->surface;
    }
  });

  std::size_t parsed = 0;
  for (const auto& row : rows) parsed += row.parses ? 1 : 0;

  if (cfg.format == "json") {
    json table = json::array();
    for (const auto& row : rows) {
      json r = {{"order", row.order}, {"parses", row.parses}};
      r["cost"] = row.parses ? json(row.cost) : json(nullptr);
      r["translation"] = row.parses ? json(row.translation) : json(nullptr);
      table.push_back(std::move(r));
    }
    out << json{{"rows", table}, {"parsed", parsed}, {"total", rows.size()}}.dump() << "\n";
    return kExitOk;
  }

  std::size_t width = std::string("order").size();
  for (const auto& row : rows) width = std::max(width, row.order.size());
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  out << pad("order", width) << " | parses? | cost | translation\n";
  for (const auto& row : rows) {
    out << pad(row.order, width) << " | " << pad(row.parses ? "yes" : "no", 7) << " | "
        << pad(row.parses ? std::to_string(row.cost) : "-", 4) << " | "
        << (row.parses ? row.translation : "-") << "\n";
  }
  out << parsed << " of " << rows.size() << " orders parse\n";
  return kExitOk;
}

// ---- oracle (hidden) -------------------------------------------------------

int cmd_oracle(const Config& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  auto grammar = load(cfg, err);
  if (!grammar) return kExitConfig;
  auto lines = read_lines(cfg, in, err);
  if (!lines) return kExitConfig;
  int status = kExitOk;
  for (const auto& line : *lines) {
    out << "# " << line.text << "\n";
    try {
      Sentence s = tokenize(line.text, *grammar);
      OracleBound bound;
      bound.max_uses = cfg.max_uses;
      OracleResult r = brute_force_derivations(s.tokens, *grammar, bound);
      for (const auto& note : r.notes) out << "note: " << note << "\n";
      for (const auto& level : rank_by_priority(r.derivations, *grammar)) {
        for (const auto& d : level.derivations) {
          out << "[cost " << level.cost << "]\n" << render_derivation(d, *grammar);
        }
      }
      EquivalenceReport report = assert_equivalence(s.tokens, *grammar, bound);
      out << report.str() << "\n";
      if (!report.equivalent) status = kExitLinguistic;
    } catch (const Error& e) {
      err << "line " << line.number << ": " << to_string(e.kind()) << ": " << e.what() << "\n";
      status = kExitLinguistic;
    }
  }
  return status;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synchronous TAG translator for scrambled Korean"};
  app.require_subcommand(1);
  Config cfg;

  auto add_grammar = [&](CLI::App* sub) {
    sub->add_option("-g,--grammar", cfg.grammar_path, "Grammar file")->required();
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("sentence", cfg.sentence, "Sentence (otherwise read lines from --file or stdin)");
    sub->add_option("-f,--file", cfg.file, "Read one sentence per line from this file");
    sub->add_option("-j,--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--max-uses", cfg.max_uses, "Bound on pair uses per derivation (0: tokens + 2)");
  };

  CLI::App* translate_cmd = app.add_subcommand("translate", "Translate sentences");
  add_grammar(translate_cmd);
  add_input(translate_cmd);
  translate_cmd->add_flag("--trace-transfer", cfg.trace_transfer, "Print the transfer mapping");

  CLI::App* parse_cmd = app.add_subcommand("parse", "Show derivations and derived trees");
  add_grammar(parse_cmd);
  add_input(parse_cmd);
  parse_cmd->add_flag("--all-derivations", cfg.all_derivations, "Print every priority level");
  parse_cmd->add_option("--show", cfg.show, "derivation, derived or both")
      ->check(CLI::IsMember({"derivation", "derived", "both"}));
  parse_cmd->add_flag("--trace-transfer", cfg.trace_transfer, "Also transfer and realize each derivation");

  CLI::App* check_cmd = app.add_subcommand("check", "Validate a grammar");
  add_grammar(check_cmd);

  CLI::App* perm_cmd = app.add_subcommand("permutations", "Try every order of the given words");
  add_grammar(perm_cmd);
  perm_cmd->add_option("words", cfg.sentence, "Source tokens")->required();
  perm_cmd->add_option("-j,--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1u, 256u));

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Brute-force enumeration (debugging)");
  oracle_cmd->group("");
  add_grammar(oracle_cmd);
  add_input(oracle_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (translate_cmd->parsed()) return cmd_translate(cfg, in, out, err);
  if (parse_cmd->parsed()) return cmd_parse(cfg, in, out, err);
  if (check_cmd->parsed()) return cmd_check(cfg, out, err);
  if (perm_cmd->parsed()) return cmd_permutations(cfg, out, err);
  if (oracle_cmd->parsed()) return cmd_oracle(cfg, in, out, err);
  return kExitConfig;
}

}  // namespace stag::cli
