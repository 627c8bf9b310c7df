#ifndef FEPA_ROBUSTNESS_HPP_
#define FEPA_ROBUSTNESS_HPP_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "fepa/constituency.hpp"
#include "fepa/fraction.hpp"
#include "fepa/types.hpp"

namespace fepa {

// ---------------------------------------------------------------------------
// Misspelling injection.

// Keys that sit next to each other on a keyboard. Lower-case ASCII only;
// lookups fold case.
class KeyboardMap {
 public:
  // 8-neighborhood on the three QWERTY letter rows.
  static KeyboardMap qwerty();
  // Lines "c: neighbors", e.g. "a: qwsxz". Throws BadKeyboardMap.
  static KeyboardMap read(std::istream& in);
  void write(std::ostream& out) const;

  const std::string& neighbors(char c) const;
  bool empty() const { return adjacent_.empty(); }

 private:
  std::map<char, std::string> adjacent_;
};

enum class EditOp { kDelete, kAdd, kTranspose };

std::string_view to_string(EditOp op);
std::optional<EditOp> parse_edit_op(std::string_view text);

struct NoiseSpec {
  KeyboardMap keyboard = KeyboardMap::qwerty();
  // Forms a misspelling must not produce; compared exactly and lower-cased.
  std::unordered_set<std::string> dictionary;
  std::set<EditOp> ops = {EditOp::kDelete, EditOp::kAdd, EditOp::kTranspose};
  int errors_per_sentence = 1;
  std::uint64_t seed = 0;
};

struct Misspelling {
  std::size_t position = 0;  // 0-based token position
  EditOp op = EditOp::kDelete;
  std::string original;
  std::string altered;
};

struct NoisySentence {
  std::vector<std::string> tokens;
  std::vector<Misspelling> edits;  // ordered by position
};

// Alphabetic words of at least two letters.
bool alterable(const std::string& word);

// Every legal misspelling of `word` produced by `op`, in a fixed order.
std::vector<std::string> misspellings(const std::string& word, EditOp op,
                                      const NoiseSpec& spec);

// Alters exactly spec.errors_per_sentence distinct words, one edit each.
// Throws NotEnoughAlterableWords or ExhaustedCandidates.
NoisySentence inject_noise(std::span<const std::string> sentence,
                           const NoiseSpec& spec, std::mt19937_64& rng);

// Deterministic in (spec.seed, sentence index). The dictionary defaults to
// the vocabulary of `sentences` when spec.dictionary is empty.
std::vector<ParallelPair> make_noisy_corpus(
    const std::vector<std::vector<std::string>>& sentences, NoiseSpec spec);

// Optimal string alignment distance (adjacent transposition costs 1).
std::size_t osa_distance(std::string_view a, std::string_view b);
std::size_t levenshtein(std::string_view a, std::string_view b);

// ---------------------------------------------------------------------------
// Similarity of analyses of a correct sentence and its noisy twin. Token
// forms are ignored; a missing analysis (parse failure) is never similar.

bool ulsim(const DepGraph& a, const DepGraph& b);
bool lsim(const DepGraph& a, const DepGraph& b);
bool ulsim(const SpanSet& a, const SpanSet& b);
bool lsim(const SpanSet& a, const SpanSet& b);

struct SimilarityTally {
  std::int64_t pairs = 0;
  std::int64_t unlabeled = 0;
  std::int64_t labeled = 0;

  void add(bool unlabeled_same, bool labeled_same);
  Fraction ur() const { return {unlabeled, pairs}; }
  Fraction lr() const { return {labeled, pairs}; }
  SimilarityTally& operator+=(const SimilarityTally& other);
};

template <typename Analysis>
SimilarityTally compare_outputs(
    std::span<const std::optional<Analysis>> correct,
    std::span<const std::optional<Analysis>> noisy);

// 100 * (first - last) / first; nullopt when first is 0.
std::optional<double> degradation(double first, double last);

struct RobustnessReport {
  std::map<int, SimilarityTally> levels;

  int first_level() const { return levels.begin()->first; }
  int last_level() const { return levels.rbegin()->first; }
  // Between the lowest and the highest level.
  std::optional<double> degradation_ur() const;
  std::optional<double> degradation_lr() const;
  // Pairs of all levels pooled.
  SimilarityTally pooled() const;
};

// Throws EmptyLevel for a level without pairs, EmptyCorpus for no levels.
RobustnessReport robustness_scores(std::map<int, SimilarityTally> levels);

// ---------------------------------------------------------------------------
// Scoring against several acceptable corrections: each noisy analysis gets
// the best labeled bracket F-score over its corrections.

struct FosterItem {
  SpanSet noisy;
  std::vector<SpanSet> corrections;
};

struct FosterResult {
  std::vector<double> best_f;
  std::vector<std::size_t> best_correction;
  ParsevalResult pooled;  // counts of each item's best correction
  double mean() const;
};

// Throws NoCorrections.
FosterResult foster_scores(std::span<const FosterItem> items);

// ---------------------------------------------------------------------------

struct Stability {
  double terminated_pct = 0.0;
  double failed_pct = 0.0;
};

Stability stability(const VerdictTally& tally);

}  // namespace fepa

#endif  // FEPA_ROBUSTNESS_HPP_
