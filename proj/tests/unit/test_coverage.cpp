#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fepa/coverage.hpp"
#include "fepa/error.hpp"
#include "support.hpp"

using namespace fepa;
using fepa::testing::Rng;

namespace {

std::vector<VerdictRecord> toy() {
  std::ifstream in(testing::fixture("mine_toy.tsv"));
  return read_verdicts(in);
}

void check_against_oracle(const std::vector<VerdictRecord>& records, std::size_t max_n,
                          std::int64_t min_freq) {
  const auto got = mine_errors(records, {.max_n = max_n, .min_freq = min_freq});
  const auto want = testing::oracle_mine(records, max_n, min_freq);
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    REQUIRE(got[i].gram == want[i].gram);
    REQUIRE(got[i].sentences == want[i].sentences);
    REQUIRE(got[i].covered_sentences == want[i].covered);
    REQUIRE(got[i].freq_total == want[i].freq_total);
    REQUIRE(got[i].freq_uncovered == want[i].freq_uncovered);
  }
}

}  // namespace

TEST_CASE("verdicts: read and write") {
  const auto records = toy();
  REQUIRE(records.size() == 6);
  CHECK(records[0].verdict == Verdict::kCovered);
  CHECK(records[0].genre.empty());
  CHECK(records[5].verdict == Verdict::kFragmented);
  CHECK(records[2].tokens.size() == 4);
  std::ostringstream out;
  write_verdicts(out, records);
  std::istringstream back(out.str());
  const auto again = read_verdicts(back);
  REQUIRE(again.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(again[i].verdict == records[i].verdict);
    CHECK(again[i].tokens == records[i].tokens);
  }
  std::istringstream bad("maybe\t_\tx\n");
  CHECK_THROWS_AS(read_verdicts(bad), Error);
}

TEST_CASE("coverage: fractions and genres") {
  CoverageLedger ledger;
  for (int i = 0; i < 9; ++i) ledger.add(Verdict::kCovered, "news");
  ledger.add(Verdict::kFragmented, "news");
  ledger.add(Verdict::kCovered, "fiction");
  ledger.add(Verdict::kFailed, "fiction");
  CHECK(coverage(ledger.total) == Fraction{10, 12});
  const auto per = genre_coverages(ledger);
  CHECK(per.at("news") == doctest::Approx(0.9));
  CHECK(per.at("fiction") == doctest::Approx(0.5));
  CHECK(generalizability(per, "news") == doctest::Approx(100.0 * 0.5 / 0.9));
  CHECK_THROWS_AS(generalizability(per, "law"), Error);
  CHECK_THROWS_AS(coverage(VerdictTally{}), Error);
}

TEST_CASE("coverage: terminated and fragmented are not covered") {
  VerdictTally t;
  t.add(Verdict::kCovered);
  t.add(Verdict::kTerminated);
  t.add(Verdict::kFragmented);
  t.add(Verdict::kFailed);
  CHECK(coverage(t) == Fraction{1, 4});
}

TEST_CASE("ngrams: windows") {
  const std::vector<std::string> s{"a", "b", "a", "b"};
  CHECK(extract_ngrams(s, 2).size() == 3);
  CHECK(extract_ngrams(s, 4).size() == 1);
  CHECK(extract_ngrams(s, 5).empty());
  CHECK(extract_ngrams(s, 2)[2] == Gram{"a", "b"});
}

TEST_CASE("mining: toy corpus") {
  const auto records = toy();
  const auto mined = mine_errors(records, {.max_n = 3, .min_freq = 2});
  REQUIRE(mined.size() >= 2);
  CHECK(mined[0].text() == "loudly");
  CHECK(mined[0].parsability() == 0.0);
  CHECK(mined[0].freq_total == 2);
  CHECK(mined[0].freq_uncovered == 2);
  CHECK(mined[1].text() == "dog");
  CHECK(mined[1].parsability_fraction() == Fraction{1, 4});
  // "barks loudly" parses no worse than "loudly", so it is dropped.
  for (const auto& r : mined) CHECK(r.text() != "barks loudly");
  check_against_oracle(records, 3, 2);
  check_against_oracle(records, 4, 1);
}

TEST_CASE("mining: a gram must parse worse than both halves") {
  // "x y" appears only in failures, "x" and "y" also in parsed sentences.
  std::vector<std::vector<std::string>> covered{{"x", "z"}, {"z", "y"}};
  std::vector<std::vector<std::string>> uncovered{{"x", "y"}, {"x", "y"}};
  const auto mined = mine_errors(covered, uncovered, {.max_n = 2, .min_freq = 1});
  bool found = false;
  for (const auto& r : mined) found |= r.text() == "x y";
  CHECK(found);
  const auto below = mine_errors(covered, uncovered, {.max_n = 2, .min_freq = 1, .below = 0.5});
  for (const auto& r : below) CHECK(r.parsability() < 0.5);
}

TEST_CASE("mining: agrees with brute force on random corpora") {
  Rng rng(404);
  for (int round = 0; round < 30; ++round) {
    const int vocab_size = testing::uniform(rng, 2, 20);
    std::vector<std::string> vocab;
    for (int i = 0; i < vocab_size; ++i) vocab.push_back("w" + std::to_string(i));
    std::vector<VerdictRecord> records;
    const int n = testing::uniform(rng, 1, 80);
    for (int i = 0; i < n; ++i) {
      VerdictRecord r;
      r.verdict = static_cast<Verdict>(testing::uniform(rng, 0, 3));
      r.tokens = testing::random_words(rng, testing::uniform(rng, 1, 10), vocab);
      records.push_back(std::move(r));
    }
    check_against_oracle(records, 3, testing::uniform(rng, 1, 3));
  }
}
