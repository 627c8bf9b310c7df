#ifndef FEPA_COVERAGE_HPP_
#define FEPA_COVERAGE_HPP_

#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fepa/fraction.hpp"
#include "fepa/types.hpp"

namespace fepa {

// One judged sentence.
struct VerdictRecord {
  Verdict verdict = Verdict::kFailed;
  std::string genre;  // empty when untagged
  std::vector<std::string> tokens;
};

// Lines "verdict<TAB>genre<TAB>text"; "_" or an empty genre means untagged.
// Blank and "#" lines are skipped. Throws BadVerdictLine.
std::vector<VerdictRecord> read_verdicts(std::istream& in);
void write_verdicts(std::ostream& out, const std::vector<VerdictRecord>& records);

struct CoverageLedger {
  VerdictTally total;
  std::map<std::string, VerdictTally> per_genre;

  void add(Verdict verdict, const std::string& genre = {});
  static CoverageLedger from(const std::vector<VerdictRecord>& records);
};

// covered / all; throws EmptyCorpus.
Fraction coverage(const VerdictTally& tally);
std::map<std::string, double> genre_coverages(const CoverageLedger& ledger);

// 100 * (lowest genre coverage) / coverage(reference). Throws
// MissingReferenceGenre.
double generalizability(const std::map<std::string, double>& per_genre,
                        const std::string& reference);

// ---------------------------------------------------------------------------
// n-gram error mining.

using Gram = std::vector<std::string>;

// All contiguous windows of length n, in order, duplicates kept.
std::vector<Gram> extract_ngrams(std::span<const std::string> sentence,
                                 std::size_t n);

struct NgramRecord {
  Gram gram;
  std::int64_t freq_total = 0;      // occurrences in all sentences
  std::int64_t freq_uncovered = 0;  // occurrences in uncovered sentences
  std::int64_t sentences = 0;       // sentences containing the gram
  std::int64_t covered_sentences = 0;

  Fraction parsability_fraction() const { return {covered_sentences, sentences}; }
  double parsability() const { return parsability_fraction().value(); }
  std::string text() const;
};

struct MiningOptions {
  std::size_t max_n = 5;
  std::int64_t min_freq = 2;  // applied to freq_total
  // Keep only records with parsability strictly below this value.
  std::optional<double> below;
};

// Parsability of a gram is the share of sentences containing it that are
// covered. Grams longer than one word survive only if they parse worse than
// both of their (n-1)-word sub-grams. Sorted by parsability, then
// frequency (descending), then the gram itself.
std::vector<NgramRecord> mine_errors(
    const std::vector<std::vector<std::string>>& covered,
    const std::vector<std::vector<std::string>>& uncovered,
    const MiningOptions& options = {});

std::vector<NgramRecord> mine_errors(const std::vector<VerdictRecord>& records,
                                     const MiningOptions& options = {});

}  // namespace fepa

#endif  // FEPA_COVERAGE_HPP_
