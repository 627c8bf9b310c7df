#ifndef FEPA_CONSTITUENCY_HPP_
#define FEPA_CONSTITUENCY_HPP_

#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fepa/fraction.hpp"
#include "fepa/types.hpp"

namespace fepa {

struct LabeledSpan {
  Span span;
  std::string label;

  friend auto operator<=>(const LabeledSpan&, const LabeledSpan&) = default;
};

// Multiset of constituent brackets over a sentence of `length` tokens.
struct SpanSet {
  int length = 0;
  std::vector<LabeledSpan> spans;
};

struct SpanOptions {
  // evalb-style: ignore single-token constituents.
  bool drop_width_one = false;
  // Ignore nodes whose only child is a terminal.
  bool drop_preterminals = false;
  bool drop_root = false;
};

// Every nonterminal contributes one bracket, preterminals and the root
// included unless the options say otherwise.
SpanSet extract_spans(const PhraseTree& tree, const SpanOptions& options = {});

struct ParsevalResult {
  std::int64_t matched = 0;
  std::int64_t gold = 0;
  std::int64_t test = 0;
  std::int64_t crossing = 0;

  Fraction precision() const { return {matched, test}; }
  Fraction recall() const { return {matched, gold}; }
  double f() const { return f_score(precision().value(), recall().value()); }
};

// Bracket precision/recall. Matching is multiset-aware: a gold span can
// absorb at most one test span. Throws TokenCountMismatch.
ParsevalResult parseval(const SpanSet& gold, const SpanSet& test, bool labeled);

// Number of test spans that cross at least one gold span.
std::int64_t crossing_brackets(const SpanSet& gold, const SpanSet& test);

struct ParsevalTotals {
  std::vector<ParsevalResult> sentences;
  ParsevalResult sum;  // counts pooled over the corpus

  double mean_crossing() const {
    return sentences.empty() ? 0.0
                             : static_cast<double>(sum.crossing) /
                                   static_cast<double>(sentences.size());
  }
};

ParsevalTotals parseval_corpus(const Corpus<PhraseTree>& gold,
                               const Corpus<PhraseTree>& test, bool labeled,
                               const SpanOptions& options = {});

// ---------------------------------------------------------------------------
// Leaf-ancestor metric.

inline constexpr std::string_view kOpenMark = "[";
inline constexpr std::string_view kCloseMark = "]";

using Lineage = std::vector<std::string>;

// One lineage per terminal, bottom-up from the terminal's parent to the root.
// "[" precedes the label of the highest node starting at the terminal, "]"
// follows the label of the highest node ending at it.
std::vector<Lineage> lineages(const PhraseTree& tree);

// Replacement costs between labels. Identical symbols cost 0, a bracket
// against anything else costs 2, unlisted label pairs cost `default_cost`.
class CostTable {
 public:
  explicit CostTable(double default_cost = 2.0);

  // Symmetric; throws BadCostTable for costs outside [0, 2] or a nonzero
  // self cost.
  void set(const std::string& a, const std::string& b, double cost);
  double cost(const std::string& a, const std::string& b) const;

  // Lines "LABEL_A<TAB>LABEL_B<TAB>cost", "#" comments.
  static CostTable read(std::istream& in);

 private:
  double default_cost_;
  std::map<std::pair<std::string, std::string>, double> costs_;
};

// Weighted Levenshtein distance: insert/delete 1, replace per table.
double lineage_distance(const Lineage& a, const Lineage& b,
                        const CostTable& costs);

// 1 - d / (|a| + |b|); 1 for two empty lineages.
double lineage_similarity(const Lineage& a, const Lineage& b,
                          const CostTable& costs);

struct LaResult {
  std::vector<double> per_word;
  double sentence = 0.0;
  bool exact_match = false;
};

// Throws TerminalMismatch unless both trees have the same terminal forms.
LaResult la_score(const PhraseTree& gold, const PhraseTree& test,
                  const CostTable& costs = CostTable());

struct LaTotals {
  std::vector<LaResult> sentences;
  double word_sum = 0.0;
  std::size_t words = 0;
  std::size_t exact = 0;

  double mean_sentence() const;
  double mean_word() const { return words ? word_sum / double(words) : 0.0; }
};

LaTotals la_corpus(const Corpus<PhraseTree>& gold,
                   const Corpus<PhraseTree>& test,
                   const CostTable& costs = CostTable());

}  // namespace fepa

#endif  // FEPA_CONSTITUENCY_HPP_
