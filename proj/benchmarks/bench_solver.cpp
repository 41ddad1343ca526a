#include <benchmark/benchmark.h>

#include "dbsolve/analyzer.hpp"
#include "dbsolve/constraint.hpp"
#include "dbsolve/corpus.hpp"
#include "dbsolve/scenario.hpp"
#include "dbsolve/solver.hpp"
#include "dbsolve/substitution.hpp"

using namespace dbsolve;

namespace {

void BM_CorpusCase(benchmark::State& state) {
  const CorpusCase c = corpus_cases().at(static_cast<std::size_t>(state.range(0)));
  const ProtocolSpec p = parse_protocol(*corpus_file(c.protocol));
  const ScenarioConfig s = parse_scenario(*corpus_file(c.scenario));
  AnalysisOptions o;
  o.all_traces = c.all_traces;
  for (auto _ : state) benchmark::DoNotOptimize(check_scenario(p, s, o));
}

void register_corpus() {
  const auto cases = corpus_cases();
  for (std::size_t i = 0; i < cases.size(); ++i)
    benchmark::RegisterBenchmark(("corpus/" + cases[i].name).c_str(), BM_CorpusCase)
        ->Arg(static_cast<long>(i))
        ->Unit(benchmark::kMillisecond);
}

// Lowe's man-in-the-middle merge on NSPK, initiator talking to the attacker.
void BM_SolveNspk(benchmark::State& state) {
  const ProtocolSpec spec = parse_protocol(*corpus_file("nspk.proto"));
  const SemiBundle s = protocol_semibundle(spec).instantiate(
      Substitution{{Term::variable("B", Sort::Agent, 0), Term::attacker()}});
  Interleaving merge;
  merge.order = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 2}, {1, 2}};
  const AttackerKnowledge k = AttackerKnowledge::defaults(spec.agents(), spec.public_terms());
  const ConstraintSequence cs = build_constraints(s, merge, k);
  for (auto _ : state) benchmark::DoNotOptimize(solve(cs, k, {}, 1));
}
BENCHMARK(BM_SolveNspk)->Unit(benchmark::kMicrosecond);

// Two nested pair spines of depth N sharing one variable per level.
void BM_UnifyDeep(benchmark::State& state) {
  const Term n = Term::atom("n", Sort::Nonce);
  Term left = n, right = n;
  for (long i = 0; i < state.range(0); ++i) {
    const Term x = Term::variable("X" + std::to_string(i), Sort::Generic);
    left = Term::pair(left, Term::hash(x));
    right = Term::pair(right, Term::hash(Term::pair(n, n)));
  }
  for (auto _ : state) benchmark::DoNotOptimize(unify(left, right));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_UnifyDeep)->RangeMultiplier(4)->Range(4, 256)->Complexity();

}  // namespace

int main(int argc, char** argv) {
  register_corpus();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
