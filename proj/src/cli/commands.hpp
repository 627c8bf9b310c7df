#ifndef FEPA_CLI_COMMANDS_HPP_
#define FEPA_CLI_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fepa/io.hpp"
#include "fepa/report.hpp"
#include "fepa/types.hpp"

namespace fepa {
struct NoiseSpec;
}

namespace fepa::cli {

struct Globals {
  std::string format;  // input format; empty picks the subcommand default
  std::string out = "-";
  std::string report = "table";
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  bool permissive = false;
};

struct EvalArgs {
  std::string gold;
  std::string test;
  std::string metric = "parseval";
  bool unlabeled_brackets = false;
  bool all_unlabeled = false;
  bool square_brackets = false;
  bool drop_root = false;
  bool drop_preterminals = false;
  std::string cost_table;
  bool exclude_punct = false;
  std::vector<std::string> punct_tags;
  std::string hierarchy;
  bool strict_gr = false;
  bool labeled = false;
};

struct MineArgs {
  std::string verdicts;
  std::size_t max_n = 5;
  std::int64_t min_freq = 2;
  std::optional<double> below;
};

struct RobustArgs {
  std::string tallies;                 // level, pairs, unlabeled, labeled
  std::vector<std::string> pairs;      // LEVEL:CORRECT_OUT:NOISY_OUT
  std::vector<std::string> corpora;    // LEVEL:CORRECT_TXT:NOISY_TXT
  std::string sentences;               // clean text to add noise to
  std::vector<int> generate_levels;
  std::vector<std::string> ops;
  std::string keyboard;
  std::string dictionary;
  std::string adapters;
  std::string adapter;
  std::string run_dir = "fepa-robust";
};

struct NoiseArgs {
  std::string input;
  int level = 1;
  std::vector<std::string> ops;
  std::string keyboard;
  std::string dictionary;
  std::string out_correct;
  std::string out_noisy;
};

struct BenchArgs {
  std::string corpus;
  std::string adapters;
  std::vector<std::string> adapter_names;
  std::string run_dir = "fepa-runs";
  std::string verdicts;  // score stored verdicts instead of running adapters
  bool tagged = false;
  std::string tag_separator = "/";
  bool no_resume = false;
  std::string reference_genre;
  std::size_t bucket_width = 10;
  std::size_t max_consecutive_failures = 100;
};

struct SubtletyArgs {
  std::string outputs;
  std::optional<std::size_t> pos_tags;
  std::optional<std::size_t> syntax_tags;
  std::vector<std::string> markers;
  std::optional<double> f_score;
};

struct CompareArgs {
  std::vector<std::string> profiles;
  std::vector<std::string> weights;  // criterion=value
  std::vector<std::string> tie_break;
  std::string rank_method = "competition";
  std::optional<int> decimals;
  bool no_robustness_tie_break = false;
};

struct ConvertArgs {
  std::string input;
  std::string from;
  std::string to;
  bool square_brackets = false;
  bool unlabeled_brackets = false;
};

Report cmd_eval(const EvalArgs& args, const Globals& globals);
Report cmd_mine(const MineArgs& args, const Globals& globals);
Report cmd_robust(const RobustArgs& args, const Globals& globals);
Report cmd_noise(const NoiseArgs& args, const Globals& globals);
Report cmd_bench(const BenchArgs& args, const Globals& globals);
Report cmd_subtlety(const SubtletyArgs& args, const Globals& globals);
Report cmd_compare(const CompareArgs& args, const Globals& globals);
// Returns the converted corpus text.
std::string cmd_convert(const ConvertArgs& args, const Globals& globals);

// ---------------------------------------------------------------------------
// Shared input helpers. Errors from readers are re-anchored at the file.

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
Corpus<PhraseTree> load_trees(const std::string& path, const io::BracketOptions& options);
Corpus<DepGraph> load_graphs(const std::string& path, const std::string& format,
                             bool permissive);
Corpus<GrSet> load_grs(const std::string& path);
std::vector<std::vector<std::string>> load_sentences(const std::string& path);

NoiseSpec noise_spec(const NoiseArgs& args, std::uint64_t seed);

// Re-throws the current fepa::Error with `path` prepended to its location.
[[noreturn]] void rethrow_at(const std::string& path);

}  // namespace fepa::cli

#endif  // FEPA_CLI_COMMANDS_HPP_
