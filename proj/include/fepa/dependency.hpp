#ifndef FEPA_DEPENDENCY_HPP_
#define FEPA_DEPENDENCY_HPP_

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fepa/fraction.hpp"
#include "fepa/types.hpp"

namespace fepa {

struct DepOptions {
  // Skip punctuation tokens in the token-level measures.
  bool exclude_punct = false;
  // POS tags treated as punctuation; when empty, a token is punctuation if
  // its form consists of ASCII punctuation only.
  std::set<std::string> punct_tags;
};

bool is_punctuation(const Token& token, const DepOptions& options);

struct DepScorecard {
  Fraction uas;         // tokens with the gold head
  Fraction las;         // ... and the gold label
  Fraction da;          // non-root gold tokens with the gold head
  Fraction ra;          // sentences whose root sets agree
  Fraction cm;          // sentences with every head correct
  Fraction labeled_cm;  // ... and every label correct

  DepScorecard& operator+=(const DepScorecard& other);
};

// Per-sentence scorecard. Sentences where either graph has a head cycle
// (only possible after a permissive load) contribute to the token-level
// measures but not to RA/CM. Throws TokenCountMismatch.
DepScorecard dep_scores(const DepGraph& gold, const DepGraph& test,
                        const DepOptions& options = {});

struct DepCorpusScores {
  std::vector<DepScorecard> sentences;
  DepScorecard total;
};

DepCorpusScores dep_scores(const Corpus<DepGraph>& gold,
                           const Corpus<DepGraph>& test,
                           const DepOptions& options = {});

// ---------------------------------------------------------------------------
// Link categories after Lin: every token is correct, incorrect, missing or
// spurious depending on whether it modifies the same word in both graphs.

enum class LinkCategory { kCorrect, kIncorrect, kMissing, kSpurious };

std::string_view to_string(LinkCategory category);

struct LinResult {
  std::vector<LinkCategory> categories;  // one per token
  std::int64_t correct_links = 0;  // correct tokens that have a head
  std::int64_t gold_links = 0;
  std::int64_t test_links = 0;

  Fraction precision() const { return {correct_links, test_links}; }
  Fraction recall() const { return {correct_links, gold_links}; }
  double f() const { return f_score(precision().value(), recall().value()); }
  LinResult& operator+=(const LinResult& other);
};

LinResult lin_classify(const DepGraph& gold, const DepGraph& test,
                       bool labeled);

// ---------------------------------------------------------------------------
// Grammatical-relation hierarchy.

// Argument roles of one relation after applying the hierarchy's slot layout.
struct GrSlots {
  std::optional<GrRef> type;
  GrRef head;
  GrRef dependent;
};

class GrHierarchy {
 public:
  // No relations at all: matching degenerates to exact names.
  GrHierarchy() = default;

  // Lines "child<TAB>parent"; directives "@tolerant FAMILY",
  // "@open_type RELATION" (type slot first, may be left "_" in test data)
  // and "@type_first RELATION" (type slot first, must match). Throws
  // BadHierarchy on cycles or relations not reaching the root.
  static GrHierarchy read(std::istream& in);
  static GrHierarchy default_hierarchy();

  static constexpr std::string_view kRoot = "dependent";

  bool empty() const { return parent_.empty(); }
  bool known(const std::string& name) const;
  std::optional<std::string> parent(const std::string& name) const;
  // True when `name` is `family` or lies below it.
  bool in_family(const std::string& name, const std::string& family) const;
  // Parent/child pair inside one tolerant family.
  bool tolerant(const std::string& a, const std::string& b) const;
  bool open_type(const std::string& name) const;
  bool type_first(const std::string& name) const;

  GrSlots slots(const GrRelation& relation) const;

  const std::map<std::string, std::string>& parents() const { return parent_; }
  const std::set<std::string>& tolerant_families() const { return tolerant_; }

 private:
  bool marked(const std::string& name, const std::set<std::string>& set) const;

  std::map<std::string, std::string> parent_;
  std::set<std::string> tolerant_;
  std::set<std::string> open_type_;
  std::set<std::string> type_first_;
};

struct GrMatchOptions {
  // Throw UnknownRelation for names missing from the hierarchy.
  bool strict = false;
};

struct GrRelationStats {
  std::int64_t gold = 0;
  std::int64_t test = 0;
  std::int64_t matched_gold = 0;
  std::int64_t matched_test = 0;

  Fraction precision() const { return {matched_test, test}; }
  Fraction recall() const { return {matched_gold, gold}; }
};

inline constexpr std::string_view kNoRelation = "<none>";

struct GrMatchResult {
  std::int64_t matched = 0;
  std::int64_t gold = 0;
  std::int64_t test = 0;
  // Keyed by relation name: gold side counts under the gold name, test side
  // under the test name.
  std::map<std::string, GrRelationStats> per_relation;
  // (gold name, test name) -> count. Matched pairs, pairs sharing head and
  // dependent but not matching, and leftovers against kNoRelation.
  std::map<std::pair<std::string, std::string>, std::int64_t> confusion;

  Fraction precision() const { return {matched, test}; }
  Fraction recall() const { return {matched, gold}; }
  double f() const { return f_score(precision().value(), recall().value()); }
  GrMatchResult& operator+=(const GrMatchResult& other);
};

// True when `test` may stand for `gold`: same head and dependent, names
// equal or adjacent in a tolerant family, and compatible type slots.
bool gr_compatible(const GrRelation& gold, const GrRelation& test,
                   const GrHierarchy& hierarchy);

GrMatchResult gr_match(const GrSet& gold, const GrSet& test,
                       const GrHierarchy& hierarchy,
                       const GrMatchOptions& options = {});

GrMatchResult gr_match(const Corpus<GrSet>& gold, const Corpus<GrSet>& test,
                       const GrHierarchy& hierarchy,
                       const GrMatchOptions& options = {});

}  // namespace fepa

#endif  // FEPA_DEPENDENCY_HPP_
