#ifndef FEPA_HARNESS_HPP_
#define FEPA_HARNESS_HPP_

#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fepa/coverage.hpp"
#include "fepa/types.hpp"

namespace fepa {

// How sentences reach the adapter process.
enum class Invocation {
  kPerSentence,  // one process per sentence, sentence on stdin
  kBatchStream,  // one long-lived process, sentinel line after each sentence
};

// What a sentence looks like on the adapter's stdin.
enum class InputText {
  kRawText,    // forms separated by spaces
  kPreTagged,  // form<sep>POS tokens
};

enum class OutputFormat { kBracketed, kDepTsv, kGr, kOpaque };

std::string_view to_string(Invocation v);
std::string_view to_string(InputText v);
std::string_view to_string(OutputFormat v);
std::optional<OutputFormat> parse_output_format(std::string_view text);

struct JudgeSpec {
  std::string name = "identity";
  std::map<std::string, std::string> params;
};

struct AdapterSpec {
  std::string name;
  std::string command;  // run through /bin/sh -c
  Invocation invocation = Invocation::kPerSentence;
  InputText input_text = InputText::kRawText;
  std::string tag_separator = "/";
  OutputFormat output_format = OutputFormat::kOpaque;
  JudgeSpec judge;
  double timeout_seconds = 60.0;
  // Declared only; limits are the adapter command's business (ulimit etc.).
  std::optional<std::string> memory_cap;
  std::string sentinel = "<<<fepa-end-of-sentence>>>";
};

// INI-style config, one section per adapter:
//
//   [cat]
//   command = /bin/cat
//   invocation = per-sentence | batch-stream
//   input = raw-text | pre-tagged
//   output = bracketed | dep-tsv | gr | opaque
//   judge = identity
//   judge.covered = ^OK        ; judge parameters
//   timeout = 30
//   memory_cap = 2G
//
// Throws ConfigError.
std::vector<AdapterSpec> read_adapters(std::istream& in);

// ---------------------------------------------------------------------------
// Coverage judges.

class Judge {
 public:
  virtual ~Judge() = default;
  // `output` is the adapter's stdout for one sentence of `tokens` words.
  virtual Verdict judge(const std::string& output,
                        std::size_t tokens) const = 0;
};

// Built-in judges: identity, single-root-ps, connected-dep, marker,
// no-null-links. Throws JudgeConfigError.
std::unique_ptr<Judge> make_judge(const JudgeSpec& spec, OutputFormat format);

// ---------------------------------------------------------------------------
// Corpus runs.

struct BenchSentence {
  std::vector<Token> tokens;
  std::string genre;
};

// One sentence per line, optionally "genre<TAB>sentence". With `tagged`,
// tokens are form<sep>POS split at the last separator.
std::vector<BenchSentence> read_bench_corpus(std::istream& in, bool tagged,
                                             const std::string& separator = "/");

std::string render_sentence(const BenchSentence& sentence,
                            const AdapterSpec& adapter);

struct LedgerRecord {
  std::size_t index = 0;  // 1-based
  Verdict verdict = Verdict::kFailed;
  double millis = 0.0;
  int exit_status = 0;
  std::string output_path;  // relative to the run directory

  friend bool operator==(const LedgerRecord&, const LedgerRecord&) = default;
};

struct RunLedger {
  std::vector<LedgerRecord> records;
  std::string host;
  std::string started;  // ISO-8601 UTC

  VerdictTally tally() const;
  double total_seconds() const;
};

struct RunOptions {
  std::filesystem::path run_dir;
  // Continue after the last complete record of an existing ledger.
  bool resume = true;
  // Abort with AllSentencesTerminated after this many terminated sentences
  // in a row.
  std::size_t max_consecutive_failures = 100;
};

// Ledger file: "index<TAB>verdict<TAB>millis<TAB>exit<TAB>output-path".
std::vector<LedgerRecord> read_ledger(std::istream& in);
std::string format_ledger_record(const LedgerRecord& record);

// Throws AdapterNotFound, AllSentencesTerminated, EmptyCorpus.
RunLedger run_corpus(std::span<const BenchSentence> corpus,
                     const AdapterSpec& adapter, const RunOptions& options);

CoverageLedger coverage_ledger(const RunLedger& ledger,
                               std::span<const BenchSentence> corpus);

struct LengthBucket {
  std::size_t first = 0;  // shortest sentence length in the bucket
  std::size_t last = 0;
  std::size_t count = 0;
  double seconds = 0.0;

  double mean() const { return count ? seconds / double(count) : 0.0; }
};

struct TimingStats {
  std::size_t sentences = 0;
  double total_seconds = 0.0;
  double mean_seconds = 0.0;
  double p50 = 0.0;
  double p90 = 0.0;
  double p99 = 0.0;
  std::vector<LengthBucket> buckets;
};

// Nearest-rank percentiles. `lengths` (token counts, aligned with the
// ledger) feeds the per-length buckets and may be empty.
TimingStats timing_stats(std::span<const LedgerRecord> records,
                         std::span<const std::size_t> lengths = {},
                         bool include_terminated = true,
                         std::size_t bucket_width = 10);

}  // namespace fepa

#endif  // FEPA_HARNESS_HPP_
