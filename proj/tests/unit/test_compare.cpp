#include <doctest.h>

#include <cmath>
#include <fstream>

#include "fepa/compare.hpp"
#include "fepa/error.hpp"
#include "support.hpp"

using namespace fepa;
using fepa::testing::Rng;

namespace {

const std::vector<std::string> kProfileFiles{"app", "candc", "lgp", "minipar", "sp", "statccg"};

std::vector<ParserProfile> rank_profiles() {
  std::vector<ParserProfile> out;
  for (const auto& name : kProfileFiles) {
    std::ifstream in(testing::fixture("profiles/" + name + ".json"));
    out.push_back(read_profile(in));
  }
  return out;
}

std::map<std::string, int> by_name(const std::vector<Standing>& standings) {
  std::map<std::string, int> out;
  for (const auto& s : standings) out[s.parser] = s.rank;
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInvalidArgument;
}

}  // namespace

TEST_CASE("detail from tagset sizes") {
  CHECK(level_detail(0) == 0.0);
  CHECK(level_detail(1) == 0.0);
  CHECK(level_detail(100) == doctest::Approx(2.0));
  // Syntactic tags weigh twice as much as word-level ones.
  CHECK(detail_score(100, 100) == doctest::Approx(3.0));
  CHECK(detail_score(45, 1044) == doctest::Approx(std::log10(45.0) / 2 + std::log10(1044.0)));
}

TEST_CASE("combined preciseness") {
  CHECK(combined_preciseness(80.0, 2.0, 1.0, 0.0) == doctest::Approx(160.0));
  CHECK(combined_preciseness(80.0, 2.0, 2.0, 0.0) == doctest::Approx(80.0));
  CHECK(combined_preciseness(80.0, 2.0, 1.0, 1.0) == doctest::Approx(80.0));
}

TEST_CASE("output subtlety from alternative analyses") {
  std::vector<SentenceAnalyses> outputs{
      {{"N", "V", "X"}, {"N", "N", "X"}},
      {{"D", "N"}},
      {},
  };
  const auto s = measure_output_subtlety(outputs, {"X"});
  CHECK(s.sentences == 2);
  CHECK(s.analyses == 3);
  CHECK(s.ambiguity == doctest::Approx(1.5));
  CHECK(s.underspecified == 1);
  // One marked word over two covered sentences.
  CHECK(s.underspec_rate == doctest::Approx(0.5));
}

TEST_CASE("rank values") {
  const std::vector<double> v{0.9, 0.8, 0.8, 0.5, 0.4, 0.4};
  CHECK(rank_values(v, Orientation::kHigherBetter) == std::vector<int>{1, 2, 2, 4, 5, 5});
  CHECK(rank_values(v, Orientation::kHigherBetter, RankMethod::kDense) ==
        std::vector<int>{1, 2, 2, 3, 4, 4});
  CHECK(rank_values(v, Orientation::kLowerBetter) == std::vector<int>{6, 4, 4, 3, 1, 1});
  CHECK(rank_values(std::vector<double>{}, Orientation::kLowerBetter).empty());
}

TEST_CASE("ranks survive monotone transforms") {
  Rng rng(61);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> v;
    const int n = testing::uniform(rng, 1, 10);
    for (int k = 0; k < n; ++k) v.push_back(testing::uniform(rng, 0, 6) * 0.5 + 0.1);
    std::vector<double> up, down;
    for (double x : v) {
      up.push_back(std::exp(x) * 3.0 + 7.0);
      down.push_back(-std::log(x));
    }
    for (auto method : {RankMethod::kCompetition, RankMethod::kDense}) {
      const auto base = rank_values(v, Orientation::kHigherBetter, method);
      REQUIRE(rank_values(up, Orientation::kHigherBetter, method) == base);
      REQUIRE(rank_values(down, Orientation::kLowerBetter, method) == base);
    }
  }
}

TEST_CASE("composite rank with a tie-break column") {
  // Noisy-input rank, degradation rank and stability rank of six parsers.
  const std::vector<int> stability{1, 4, 6, 5, 3, 1};
  const std::vector<std::vector<int>> columns{{3, 1, 6, 4, 5, 2}, {4, 2, 3, 6, 5, 1}, stability};
  CHECK(composite_rank(columns) == std::vector<int>{3, 2, 5, 5, 4, 1});
  CHECK(composite_rank(columns, RankMethod::kCompetition, &stability) ==
        std::vector<int>{3, 2, 6, 5, 4, 1});
}

TEST_CASE("criteria from measured profiles") {
  std::vector<ParserProfile> profiles(6);
  const std::vector<std::string> names{"APP", "C&C", "LGP", "MINIPAR", "SP", "StatCCG"};
  const std::vector<std::pair<int, int>> tags{{0, 20}, {45, 48}, {8, 107}, {18, 27}, {45, 48}, {45, 1044}};
  for (std::size_t i = 0; i < 6; ++i) {
    profiles[i].name = names[i];
    profiles[i].subtlety = SubtletyInputs{
        detail_score(static_cast<std::size_t>(tags[i].first), static_cast<std::size_t>(tags[i].second)),
        1.0, 0.0};
  }
  profiles[2].subtlety->ambiguity = 1.259;
  profiles[0].subtlety->underspec_rate = 0.0006;
  const auto table = rank_criteria(profiles);
  CHECK(table.criteria == std::vector<Criterion>{Criterion::kSubtlety});
  CHECK(table.ranks.at(Criterion::kSubtlety) == std::vector<int>{6, 2, 5, 4, 2, 1});
  CHECK(table.subranks.at(Criterion::kSubtlety).at("detail") == std::vector<int>{6, 2, 4, 5, 2, 1});
}

TEST_CASE("robustness criterion uses stability for ties") {
  std::vector<ParserProfile> profiles(3);
  profiles[0] = {"a", {}, {}, {}, RobustnessInputs{0.9, 10.0, 2.0}, {}, {}};
  profiles[1] = {"b", {}, {}, {}, RobustnessInputs{0.8, 5.0, 1.0}, {}, {}};
  profiles[2] = {"c", {}, {}, {}, RobustnessInputs{0.7, 1.0, 0.0}, {}, {}};
  // Sub-rank sums: a 7, b 6, c 5.
  const auto t = rank_criteria(profiles);
  CHECK(t.ranks.at(Criterion::kRobustness) == std::vector<int>{3, 2, 1});
  CHECK(t.subranks.at(Criterion::kRobustness).at("stability") == std::vector<int>{3, 2, 1});

  // a and b tie on every sub-rank sum and on stability.
  profiles[0].robustness = RobustnessInputs{0.9, 5.0, 0.0};
  profiles[1].robustness = RobustnessInputs{0.8, 1.0, 0.0};
  profiles[2].robustness = RobustnessInputs{0.7, 10.0, 3.0};
  CHECK(rank_criteria(profiles).ranks.at(Criterion::kRobustness) == std::vector<int>{1, 1, 3});
}

TEST_CASE("profiles: parsing") {
  const auto p = parse_profile(R"({"name": "X", "preciseness": {"f_score": 80, "pos_tags": 45,
      "syntax_tags": 48}, "coverage": 0.9, "efficiency": 0.02,
      "robustness": {"noisy": 0.6, "degradation": 40, "terminated_pct": 0.1},
      "subtlety": {"detail": 2.5}})");
  CHECK(p.name == "X");
  CHECK(*p.preciseness == doctest::Approx(80.0 * detail_score(45, 48)));
  CHECK(*p.coverage == doctest::Approx(0.9));
  CHECK(p.robustness->degradation == doctest::Approx(40.0));
  CHECK(p.subtlety->detail == doctest::Approx(2.5));
  CHECK(kind_of([] { parse_profile(R"({"name": "X", "speed": 3})"); }) == ErrorKind::kConfigError);
  CHECK(kind_of([] { parse_profile(R"({"name": "X", "ranks": {"beauty": 1}})"); }) ==
        ErrorKind::kConfigError);
  CHECK(parse_criterion("subtlety") == Criterion::kSubtlety);
}

TEST_CASE("rank table errors") {
  const auto profiles = rank_profiles();
  CHECK(kind_of([&] { rank_criteria(std::span(profiles).first(1)); }) ==
        ErrorKind::kTooFewProfiles);
  auto partial = profiles;
  partial[0].ranks.clear();
  partial[0].coverage = 0.5;
  CHECK(kind_of([&] { rank_criteria(partial); }) == ErrorKind::kConfigError);
}

TEST_CASE("weighted comparison of the six profiles") {
  const auto table = rank_criteria(rank_profiles());
  CHECK(table.parsers.size() == 6);
  CHECK(table.criteria.size() == 5);

  const auto uniform = by_name(weighted_compare(table));
  CHECK(uniform.at("LGP") == 6);
  CHECK(uniform.at("StatCCG") == 1);
  CHECK(uniform.at("C&C") == 1);

  const std::map<Criterion, double> a{{Criterion::kPreciseness, 2}, {Criterion::kSubtlety, 0}};
  const std::vector<Criterion> tb{Criterion::kPreciseness};
  const auto scheme_a = by_name(weighted_compare(table, a, tb));
  CHECK(scheme_a.at("StatCCG") == 1);
  CHECK(scheme_a.at("C&C") == 2);
  CHECK(scheme_a.at("SP") == 3);
  CHECK(scheme_a.at("LGP") == 6);

  const auto only_coverage = weighted_compare(
      table, {{Criterion::kPreciseness, 0}, {Criterion::kRobustness, 0},
              {Criterion::kEfficiency, 0}, {Criterion::kSubtlety, 0}});
  CHECK(only_coverage.front().parser == "SP");
  CHECK(only_coverage.back().parser == "LGP");
}

TEST_CASE("weighted comparison invariants") {
  Rng rng(62);
  for (int i = 0; i < 200; ++i) {
    std::vector<ParserProfile> profiles;
    const int n = testing::uniform(rng, 2, 7);
    for (int k = 0; k < n; ++k) {
      ParserProfile p;
      p.name = "p" + std::to_string(k);
      for (auto c : kAllCriteria) p.ranks[c] = testing::uniform(rng, 1, n);
      profiles.push_back(p);
    }
    const auto table = rank_criteria(profiles);
    std::map<Criterion, double> w;
    for (auto c : kAllCriteria) w[c] = testing::uniform(rng, 0, 4) * 0.5;
    w[Criterion::kCoverage] += 1.0;
    std::map<Criterion, double> scaled;
    for (auto [c, v] : w) scaled[c] = v * 3.7;
    const auto a = weighted_compare(table, w);
    const auto b = weighted_compare(table, scaled);
    REQUIRE(by_name(a) == by_name(b));
    for (std::size_t k = 1; k < a.size(); ++k) REQUIRE(a[k - 1].score <= a[k].score + 1e-12);
  }
}

TEST_CASE("weighted comparison errors") {
  const auto table = rank_criteria(rank_profiles());
  std::map<Criterion, double> zero;
  for (auto c : kAllCriteria) zero[c] = 0.0;
  CHECK(kind_of([&] { weighted_compare(table, zero); }) == ErrorKind::kAllZeroWeights);
  CHECK(kind_of([&] { weighted_compare(table, {{Criterion::kCoverage, -1}}); }) ==
        ErrorKind::kInvalidArgument);
}

TEST_CASE("identical profiles tie") {
  auto profiles = rank_profiles();
  profiles[1] = profiles[0];
  profiles[1].name = "APP2";
  const auto standings = weighted_compare(rank_criteria(profiles));
  const auto ranks = by_name(standings);
  CHECK(ranks.at("APP") == ranks.at("APP2"));
  for (const auto& s : standings) {
    if (s.parser == "APP") CHECK(s.tied);
  }
}
