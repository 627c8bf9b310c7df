#ifndef FEPA_TESTS_SUPPORT_HPP_
#define FEPA_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fepa/coverage.hpp"
#include "fepa/types.hpp"

namespace fepa::testing {

std::filesystem::path fixture(std::string_view name);
std::filesystem::path data_file(std::string_view name);
std::string slurp(const std::filesystem::path& path);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi);  // inclusive
template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(items.size()) - 1))];
}

// ---------------------------------------------------------------------------
// Generators.

std::vector<std::string> random_words(Rng& rng, std::size_t n,
                                      const std::vector<std::string>& vocab);

// Random tree over `words` with labels drawn from `labels`. Every word gets
// a preterminal with probability `preterminal_share`.
PhraseTree random_tree(Rng& rng, const std::vector<std::string>& words,
                       const std::vector<std::string>& labels,
                       double preterminal_share = 0.5);

// Random well-formed dependency tree (single root, acyclic).
DepGraph random_dep_tree(Rng& rng, const std::vector<std::string>& words,
                         const std::vector<std::string>& labels);

// Copy of `graph` where each token keeps its head with probability
// `keep_head` (otherwise any head 0..n) and its label with probability
// `keep_label`. The result may contain cycles.
DepGraph perturb_graph(Rng& rng, const DepGraph& graph,
                       const std::vector<std::string>& labels, double keep_head,
                       double keep_label);

DepGraph relabel(const DepGraph& graph, const std::map<std::string, std::string>& map);
PhraseTree relabel(const PhraseTree& tree, const std::map<std::string, std::string>& map);

// ---------------------------------------------------------------------------
// Independent oracles.

struct OracleBrackets {
  std::int64_t matched = 0;
  std::int64_t gold = 0;
  std::int64_t test = 0;
  std::int64_t crossing = 0;
};

// Counts brackets by explicit multiset intersection of (start, end[, label])
// keys; crossing = test brackets crossing at least one gold bracket.
OracleBrackets oracle_parseval(const PhraseTree& gold, const PhraseTree& test,
                               bool labeled);

// Plain dynamic programming, no shared code with the library.
std::size_t oracle_levenshtein(std::string_view a, std::string_view b);
// Levenshtein plus adjacent transposition of unchanged neighbours.
std::size_t oracle_osa(std::string_view a, std::string_view b);

struct OracleGram {
  std::vector<std::string> gram;
  std::int64_t sentences = 0;
  std::int64_t covered = 0;
  std::int64_t freq_total = 0;
  std::int64_t freq_uncovered = 0;
};

// Enumerates every window of every sentence and applies the suspicion
// filter literally: unigrams pass, longer grams need parsability strictly
// below both sub-grams; min_freq on total occurrences.
std::vector<OracleGram> oracle_mine(const std::vector<VerdictRecord>& records,
                                    std::size_t max_n, std::int64_t min_freq);

}  // namespace fepa::testing

#endif  // FEPA_TESTS_SUPPORT_HPP_
