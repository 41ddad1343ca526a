#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "dbsolve/run.hpp"
#include "properties.hpp"

using namespace dbsolve;
using namespace dbsolve::oracle;

namespace dbsolve {
// gtest would otherwise dump the parameter's bytes into the test listing.
void PrintTo(const CorpusCase& c, std::ostream* os) { *os << c.name; }
}  // namespace dbsolve

TEST(Verdict, Comparison) {
  EXPECT_EQ(verdict(6, 2), Comparison::Violated);
  EXPECT_EQ(verdict(6, 7), Comparison::Satisfied);
  EXPECT_EQ(verdict(6, 6), Comparison::Boundary);
  EXPECT_THROW(verdict(-1, 2), std::invalid_argument);
  EXPECT_EQ(to_string(Status::NoAttackFound), "noAttackFound");
}

class CorpusCaseTest : public ::testing::TestWithParam<CorpusCase> {};

TEST_P(CorpusCaseTest, ReproducesVerdict) {
  const CorpusCase& c = GetParam();
  AnalysisOptions o;
  o.all_traces = c.all_traces;
  Verdict v = check_scenario(corpus_protocol(c.protocol), corpus_scenario(c.scenario), o);
  EXPECT_EQ(v.status, c.expected) << c.name;
  EXPECT_FALSE(v.truncated);
  if (c.traces) EXPECT_EQ(v.trace_count, *c.traces);
  for (const auto& w : v.witnesses) EXPECT_LT(w.tof, v.ideal_tof);
}

INSTANTIATE_TEST_SUITE_P(Corpus, CorpusCaseTest, ::testing::ValuesIn(corpus_cases()),
                         [](const auto& info) { return info.param.name; });

TEST(Analyzer, ExactTimesOfFlight) {
  struct Want {
    const char* proto;
    const char* scn;
    Rational ideal, real;
  };
  for (const auto& w : {Want{"p1.proto", "p1_closer.scn", 6, 2}, Want{"p2.proto", "p2_closer.scn", 262, 258},
                        Want{"p4.proto", "p4_closer.scn", 38, 34}}) {
    Verdict v = check_scenario(corpus_protocol(w.proto), corpus_scenario(w.scn));
    EXPECT_EQ(v.ideal_tof, w.ideal) << w.proto;
    ASSERT_TRUE(v.real_tof) << w.proto;
    EXPECT_EQ(*v.real_tof, w.real) << w.proto;
  }
}

TEST(Analyzer, P2WarnsAboutTurnaround) {
  Verdict v = check_scenario(corpus_protocol("p2.proto"), corpus_scenario("p2_closer.scn"));
  ASSERT_FALSE(v.warnings.empty());
  EXPECT_NE(v.warnings[0].find("turnaround"), std::string::npos);
}

TEST(Analyzer, PlacementChecked) {
  auto p = corpus_protocol("p1.proto");
  EXPECT_THROW(check_closer(p, ScenarioConfig::preset(Placement::Farther)), std::invalid_argument);
  EXPECT_THROW(check_farther(p, ScenarioConfig::preset(Placement::Closer)), std::invalid_argument);
}

TEST(Analyzer, InterleavingLimitIsReported) {
  AnalysisOptions o;
  o.max_interleavings = 2;
  Verdict v = check_scenario(corpus_protocol("p3.proto"), corpus_scenario("p3_closer.scn"), o);
  EXPECT_TRUE(v.truncated);
  EXPECT_NE(v.warnings.back().find("incomplete"), std::string::npos);
  EXPECT_EQ(v.status, Status::NoAttackFound);
}

TEST(Scenario, CollusionKnowledge) {
  auto p3 = corpus_protocol("p3.proto");
  const Term p = Term::atom("p", Sort::Agent);
  ScenarioModel partial = scenario_semibundle(p3, corpus_scenario("p3_partial.scn"));
  EXPECT_TRUE(partial.knowledge.contains(Term::atom("n_p", Sort::Nonce)));
  EXPECT_FALSE(partial.knowledge.compromised.contains(p));
  ScenarioModel full = scenario_semibundle(p3, corpus_scenario("p3_full.scn"));
  EXPECT_TRUE(full.knowledge.compromised.contains(p));
  EXPECT_TRUE(full.knowledge.contains(Term::shared_key(p, Term::atom("v", Sort::Agent))));
  ScenarioModel honest = scenario_semibundle(p3, corpus_scenario("p3_closer.scn"));
  EXPECT_FALSE(honest.knowledge.contains(Term::atom("n_p", Sort::Nonce)));
}

TEST(Scenario, PlacementShapesTheSemiBundle) {
  auto p2 = corpus_protocol("p2.proto");
  ScenarioModel closer = scenario_semibundle(p2, corpus_scenario("p2_closer.scn"));
  // The closer prover keeps its DB receive but not its DB send.
  const Strand& prover = closer.semibundle.strands[1];
  for (const auto& n : prover.nodes) EXPECT_FALSE(n.sign == Sign::Plus && n.has(kMarkDb));
  EXPECT_EQ(closer.ideal_source.strands[1].nodes.size(), p2.prover()->nodes.size());

  ScenarioModel farther = scenario_semibundle(p2, corpus_scenario("p2_farther.scn"));
  EXPECT_EQ(farther.tagged, std::set<int>{1});
  EXPECT_TRUE(farther.straight_relays);
  for (const auto& n : farther.semibundle.strands[1].nodes) EXPECT_FALSE(n.has(kMarkAuth));
  EXPECT_EQ(farther.policy(farther.response), BindPolicy::RelayFromTagged);
  EXPECT_EQ(farther.policy({0, static_cast<int>(farther.semibundle.strands[0].nodes.size() - 1)}),
            BindPolicy::NoTaggedBinding);
}

TEST(Scenario, BadConfigurations) {
  auto p1 = corpus_protocol("p1.proto");
  ScenarioConfig c = ScenarioConfig::preset(Placement::Closer);
  c.groundings.push_back({"verifier", "Q", "p"});
  EXPECT_THROW(scenario_semibundle(p1, c), std::invalid_argument);
  c.groundings = {{"verifier", "P", "n_v"}};
  EXPECT_THROW(scenario_semibundle(p1, c), std::invalid_argument);
  c.groundings.clear();
  c.multiplicity["verifier"] = 0;
  EXPECT_THROW(scenario_semibundle(p1, c), std::invalid_argument);
  EXPECT_THROW(scenario_semibundle(corpus_protocol("nspk.proto"), ScenarioConfig::preset(Placement::Closer)),
               std::invalid_argument);
}

TEST(Run, ExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(run_analysis(*corpus_file("p1.proto"), *corpus_file("p1_closer.scn"), {}, out, err), kExitViolation);
  EXPECT_NE(out.str().find("verdict: violated"), std::string::npos);
  EXPECT_EQ(run_analysis(*corpus_file("p3.proto"), *corpus_file("p3_closer.scn"), {}, out, err), kExitClean);
  EXPECT_EQ(run_analysis("protocol\n", *corpus_file("p1_closer.scn"), {}, out, err), kExitError);
  EXPECT_NE(err.str().find("protocol: 1:"), std::string::npos);
  EXPECT_EQ(run_analysis(*corpus_file("nspk.proto"), *corpus_file("p1_closer.scn"), {}, out, err), kExitError);
  EXPECT_EQ(run_analysis_files("/nonexistent.proto", "/nonexistent.scn", {}, out, err), kExitError);
}

TEST(Run, WritesDotFiles) {
  auto dir = std::filesystem::temp_directory_path() / "dbsolve_dot_test";
  std::filesystem::remove_all(dir);
  RunFlags f;
  f.dot_dir = dir.string();
  f.all_traces = true;
  std::ostringstream out, err;
  EXPECT_EQ(run_analysis(*corpus_file("p2.proto"), *corpus_file("p2_closer.scn"), f, out, err), kExitViolation);
  EXPECT_TRUE(std::filesystem::exists(dir / "p2_p2_closer_ideal.dot"));
  EXPECT_TRUE(std::filesystem::exists(dir / "p2_p2_closer_witness3.dot"));
  EXPECT_FALSE(std::filesystem::exists(dir / "p2_p2_closer_witness4.dot"));
  std::filesystem::remove_all(dir);
}

TEST(Run, UnrestrictedStillFindsP1) {
  RunFlags f;
  f.unrestricted = true;
  std::ostringstream out, err;
  EXPECT_EQ(run_analysis(*corpus_file("p1.proto"), *corpus_file("p1_closer.scn"), f, out, err), kExitViolation);
}
