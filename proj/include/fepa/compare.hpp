#ifndef FEPA_COMPARE_HPP_
#define FEPA_COMPARE_HPP_

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fepa {

// ---------------------------------------------------------------------------
// Output subtlety.

// log10(size), or 0 for an empty tagset.
double level_detail(std::size_t tagset_size);

// Amount of detail in an output scheme: the word level counts half, the
// syntactic level in full.
double detail_score(std::size_t pos_tagset_size, std::size_t syntax_tagset_size);

// All alternative analyses one parser returned for one sentence. Each
// analysis is reduced to the tags it carries (categories, POS tags, relation
// labels), one entry per tagged token or structure.
using TagSequence = std::vector<std::string>;
using SentenceAnalyses = std::vector<TagSequence>;

struct OutputSubtlety {
  std::size_t sentences = 0;  // covered sentences, i.e. with >= 1 analysis
  std::size_t analyses = 0;
  std::size_t underspecified = 0;  // marker-tagged items in first analyses
  double underspec_rate = 0.0;
  double ambiguity = 1.0;
};

// Sentences without any analysis are skipped. Underspecification is counted
// on the first (preferred) analysis only.
OutputSubtlety measure_output_subtlety(std::span<const SentenceAnalyses> outputs,
                                       const std::set<std::string>& markers);

// F-score scaled by the detail of the output and discounted by remaining
// ambiguity and underspecification.
double combined_preciseness(double f_score, double detail, double ambiguity,
                            double underspec_rate);

// ---------------------------------------------------------------------------
// Ranking.

enum class Criterion { kPreciseness, kCoverage, kRobustness, kEfficiency, kSubtlety };

inline constexpr Criterion kAllCriteria[] = {
    Criterion::kPreciseness, Criterion::kCoverage, Criterion::kRobustness,
    Criterion::kEfficiency, Criterion::kSubtlety};

std::string_view to_string(Criterion criterion);
// Throws InvalidArgument.
Criterion parse_criterion(std::string_view text);

enum class Orientation { kHigherBetter, kLowerBetter };

// Competition ranking gives 1,2,2,4; dense ranking gives 1,2,2,3.
enum class RankMethod { kCompetition, kDense };

std::string_view to_string(RankMethod method);
RankMethod parse_rank_method(std::string_view text);

// Ranks starting at 1; equal values share a rank.
std::vector<int> rank_values(std::span<const double> values,
                             Orientation orientation,
                             RankMethod method = RankMethod::kCompetition);

// Ranks the mean of several rank columns (lower mean is better). Parsers
// with equal means are ordered by `tie_break` (lower first) when given.
std::vector<int> composite_rank(std::span<const std::vector<int>> columns,
                                RankMethod method = RankMethod::kCompetition,
                                const std::vector<int>* tie_break = nullptr);

struct RobustnessInputs {
  double noisy_score = 0.0;     // similarity on noisy input, higher is better
  double degradation = 0.0;     // lower is better
  double terminated_pct = 0.0;  // lower is better
};

struct SubtletyInputs {
  double detail = 0.0;
  double ambiguity = 1.0;
  double underspec_rate = 0.0;
};

// What is known about one parser. For each criterion a profile supplies either
// a raw score or a precomputed rank.
struct ParserProfile {
  std::string name;
  std::optional<double> preciseness;  // higher is better
  std::optional<double> coverage;     // higher is better
  std::optional<double> efficiency;   // seconds per sentence
  std::optional<RobustnessInputs> robustness;
  std::optional<SubtletyInputs> subtlety;
  std::map<Criterion, int> ranks;
};

// JSON object:
//   {"name": "...",
//    "preciseness": 84.0 | {"f_score":..,"pos_tags":..,"syntax_tags":..,
//                           "ambiguity":..,"underspec":..},
//    "coverage": .., "efficiency": ..,
//    "robustness": {"noisy": .., "degradation": .., "terminated_pct": ..},
//    "subtlety": {"detail": .. | "pos_tags"+"syntax_tags", "ambiguity": ..,
//                 "underspec": ..},
//    "ranks": {"coverage": 2, ...}}
// Throws ConfigError.
ParserProfile read_profile(std::istream& in);
ParserProfile parse_profile(std::string_view json_text);

struct RankOptions {
  RankMethod method = RankMethod::kCompetition;
  // Round raw scores to this many decimals before ranking, so that values
  // equal at printed precision tie.
  std::optional<int> decimals;
  // Break ties in the robustness composite by the termination sub-rank.
  bool robustness_tie_break = true;
};

struct RankTable {
  std::vector<std::string> parsers;
  std::vector<Criterion> criteria;  // in kAllCriteria order
  std::map<Criterion, std::vector<int>> ranks;
  // Value each rank was derived from; the mean sub-rank for composites.
  // Absent when the profiles supplied ranks directly.
  std::map<Criterion, std::vector<double>> values;
  // Sub-rank columns of composite criteria, by name.
  std::map<Criterion, std::map<std::string, std::vector<int>>> subranks;
};

// A criterion enters the table when every profile has either a raw score or
// an explicit rank for it; explicit ranks win. Throws TooFewProfiles, or
// ConfigError when only some profiles describe a criterion.
RankTable rank_criteria(std::span<const ParserProfile> profiles,
                        const RankOptions& options = {});

struct Standing {
  std::string parser;
  double score = 0.0;  // weighted mean rank
  int rank = 0;
  bool tied = false;
};

// Weighted mean of criterion ranks, best first. Criteria missing from
// `weights` get weight 1; criteria missing from the table must not carry a
// positive weight. Equal scores stay tied unless `tie_break` criteria
// separate them (compared in order, lower rank first). Throws AllZeroWeights,
// InvalidArgument.
std::vector<Standing> weighted_compare(
    const RankTable& table, const std::map<Criterion, double>& weights = {},
    std::span<const Criterion> tie_break = {},
    RankMethod method = RankMethod::kCompetition);

}  // namespace fepa

#endif  // FEPA_COMPARE_HPP_
