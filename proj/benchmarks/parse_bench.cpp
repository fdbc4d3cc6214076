#include <benchmark/benchmark.h>

#include <string>

#include "stag/grammar_io.hpp"
#include "stag/oracle.hpp"
#include "stag/pipeline.hpp"

namespace {

const stag::Grammar& grammar(const std::string& name) {
  static const stag::Grammar chase = stag::load_grammar_file(STAG_GRAMMAR_DIR "/chase.grammar");
  static const stag::Grammar ditransitive = stag::load_grammar_file(STAG_GRAMMAR_DIR "/ditransitive.grammar");
  static const stag::Grammar embedded = stag::load_grammar_file(STAG_GRAMMAR_DIR "/embedded.grammar");
  if (name == "chase") return chase;
  if (name == "ditransitive") return ditransitive;
  return embedded;
}

struct Input {
  const char* grammar;
  const char* sentence;
};

constexpr Input kInputs[] = {
    {"chase", "Tom-i Jerry-lul ccossnunta."},
    {"chase", "Jerry-lul Tom-i ccossnunta."},
    {"ditransitive", "chicu-lul Jerry-eykey Tom-i cwunta."},
    {"embedded", "Jerry-lul Mary-ka Tom-i ccossnuntako sayngkakhanta."},
};

void BM_Parse(benchmark::State& state) {
  const Input& in = kInputs[state.range(0)];
  const stag::Grammar& g = grammar(in.grammar);
  stag::Sentence s = stag::tokenize(in.sentence, g);
  for (auto _ : state) benchmark::DoNotOptimize(stag::parse(s.tokens, g));
  state.SetLabel(in.sentence);
}

void BM_Translate(benchmark::State& state) {
  const Input& in = kInputs[state.range(0)];
  const stag::Grammar& g = grammar(in.grammar);
  for (auto _ : state) benchmark::DoNotOptimize(stag::translate(in.sentence, g).surface);
  state.SetLabel(in.sentence);
}

void BM_Oracle(benchmark::State& state) {
  const Input& in = kInputs[state.range(0)];
  const stag::Grammar& g = grammar(in.grammar);
  stag::Sentence s = stag::tokenize(in.sentence, g);
  for (auto _ : state) benchmark::DoNotOptimize(stag::brute_force_derivations(s.tokens, g));
  state.SetLabel(in.sentence);
}

BENCHMARK(BM_Parse)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Translate)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Oracle)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
