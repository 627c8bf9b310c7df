#include "fepa/harness.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "fepa/error.hpp"
#include "fepa/io.hpp"
#include "fepa/process.hpp"

namespace fepa {
namespace {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

std::string hostname() {
  char buf[256] = {};
  if (::gethostname(buf, sizeof buf - 1) != 0) return "unknown";
  return buf;
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  ::gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

[[noreturn]] void config_error(const std::string& adapter,
                               const std::string& message) {
  throw Error(ErrorKind::kConfigError,
              fmt::format("adapter '{}': {}", adapter, message));
}

void write_file(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << data;
  if (!out) {
    throw Error(ErrorKind::kIoError,
                fmt::format("cannot write '{}'", path.string()));
  }
}

// Reads the complete records of an interrupted ledger and cuts off a torn
// last line so appending continues cleanly.
std::vector<LedgerRecord> recover_ledger(const fs::path& path) {
  std::string text;
  {
    std::ifstream in(path, std::ios::binary);
    text = io::read_all(in);
  }
  const auto end = text.rfind('\n');
  const std::size_t keep = end == std::string::npos ? 0 : end + 1;
  if (keep != text.size()) {
    text.resize(keep);
    write_file(path, text);
  }
  std::istringstream in(text);
  auto records = read_ledger(in);
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].index != i + 1) {
      throw Error(ErrorKind::kIoError,
                  fmt::format("ledger '{}' is not a contiguous prefix",
                              path.string()),
                  at_line(i + 1));
    }
  }
  return records;
}

struct Outcome {
  std::string output;
  double seconds = 0.0;
  int status = 0;
  bool terminated = false;
};

class Runner {
 public:
  explicit Runner(const AdapterSpec& adapter) : adapter_(adapter) {}

  Outcome run(const std::string& text) {
    const std::chrono::duration<double> timeout(adapter_.timeout_seconds);
    if (adapter_.invocation == Invocation::kPerSentence) {
      const auto r = run_command(adapter_.command, text + "\n", timeout);
      return {r.out, r.seconds, r.status(), !r.clean()};
    }
    if (!co_) co_ = std::make_unique<Coprocess>(adapter_.command);
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    const bool sent = co_->write(text + "\n" + adapter_.sentinel + "\n");
    std::optional<std::string> reply;
    if (sent) reply = co_->read_until(adapter_.sentinel, timeout);
    outcome.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    if (reply) {
      outcome.output = std::move(*reply);
      return outcome;
    }
    // Crash or hang: this sentence is lost, the next one gets a fresh process.
    outcome.terminated = true;
    outcome.status = co_->stop();
    if (outcome.status == 0) outcome.status = 1;
    co_.reset();
    return outcome;
  }

 private:
  const AdapterSpec& adapter_;
  std::unique_ptr<Coprocess> co_;
};

}  // namespace

std::string_view to_string(Invocation v) {
  return v == Invocation::kPerSentence ? "per-sentence" : "batch-stream";
}

std::string_view to_string(InputText v) {
  return v == InputText::kRawText ? "raw-text" : "pre-tagged";
}

std::string_view to_string(OutputFormat v) {
  switch (v) {
    case OutputFormat::kBracketed: return "bracketed";
    case OutputFormat::kDepTsv: return "dep-tsv";
    case OutputFormat::kGr: return "gr";
    case OutputFormat::kOpaque: return "opaque";
  }
  return "opaque";
}

std::optional<OutputFormat> parse_output_format(std::string_view text) {
  for (auto f : {OutputFormat::kBracketed, OutputFormat::kDepTsv,
                 OutputFormat::kGr, OutputFormat::kOpaque}) {
    if (text == to_string(f)) return f;
  }
  return std::nullopt;
}

std::vector<AdapterSpec> read_adapters(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::kConfigError, e.message(), at_line(e.line()));
  }
  std::vector<AdapterSpec> adapters;
  for (const auto& [name, section] : tree) {
    if (section.empty()) {
      throw Error(ErrorKind::kConfigError,
                  fmt::format("'{}' is outside any [adapter] section", name));
    }
    AdapterSpec a;
    a.name = name;
    for (const auto& [key, node] : section) {
      const std::string value = node.get_value<std::string>();
      if (key == "command") {
        a.command = value;
      } else if (key == "invocation") {
        if (value == "per-sentence") {
          a.invocation = Invocation::kPerSentence;
        } else if (value == "batch-stream") {
          a.invocation = Invocation::kBatchStream;
        } else {
          config_error(name, fmt::format("unknown invocation '{}'", value));
        }
      } else if (key == "input") {
        if (value == "raw-text") {
          a.input_text = InputText::kRawText;
        } else if (value == "pre-tagged") {
          a.input_text = InputText::kPreTagged;
        } else {
          config_error(name, fmt::format("unknown input mode '{}'", value));
        }
      } else if (key == "tag_separator") {
        a.tag_separator = value;
      } else if (key == "output") {
        auto f = parse_output_format(value);
        if (!f) config_error(name, fmt::format("unknown output '{}'", value));
        a.output_format = *f;
      } else if (key == "judge") {
        a.judge.name = value;
      } else if (key.rfind("judge.", 0) == 0) {
        a.judge.params[key.substr(6)] = value;
      } else if (key == "timeout") {
        try {
          a.timeout_seconds = std::stod(value);
        } catch (const std::exception&) {
          config_error(name, fmt::format("timeout '{}' is not a number", value));
        }
      } else if (key == "memory_cap") {
        a.memory_cap = value;
      } else if (key == "sentinel") {
        a.sentinel = value;
      } else {
        config_error(name, fmt::format("unknown key '{}'", key));
      }
    }
    if (a.command.empty()) config_error(name, "missing command");
    if (!(a.timeout_seconds > 0.0)) config_error(name, "timeout must be > 0");
    adapters.push_back(std::move(a));
  }
  return adapters;
}

std::vector<BenchSentence> read_bench_corpus(std::istream& in, bool tagged,
                                             const std::string& separator) {
  std::vector<BenchSentence> corpus;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    BenchSentence s;
    std::string_view text = line;
    const auto tab = line.find('\t');
    if (tab != std::string::npos) {
      s.genre = line.substr(0, tab);
      text.remove_prefix(tab + 1);
    }
    int index = 0;
    for (auto& word : io::split_ws(text)) {
      Token tok;
      tok.index = ++index;
      const auto cut = tagged ? word.rfind(separator) : std::string::npos;
      if (cut != std::string::npos && cut > 0) {
        tok.pos = word.substr(cut + separator.size());
        word.resize(cut);
      }
      tok.form = std::move(word);
      s.tokens.push_back(std::move(tok));
    }
    corpus.push_back(std::move(s));
  }
  return corpus;
}

std::string render_sentence(const BenchSentence& sentence,
                            const AdapterSpec& adapter) {
  std::vector<std::string> words;
  for (const auto& tok : sentence.tokens) {
    if (adapter.input_text == InputText::kPreTagged && tok.pos) {
      words.push_back(tok.form + adapter.tag_separator + *tok.pos);
    } else {
      words.push_back(tok.form);
    }
  }
  return io::join(words);
}

VerdictTally RunLedger::tally() const {
  VerdictTally t;
  for (const auto& r : records) t.add(r.verdict);
  return t;
}

double RunLedger::total_seconds() const {
  double ms = 0.0;
  for (const auto& r : records) ms += r.millis;
  return ms / 1000.0;
}

std::vector<LedgerRecord> read_ledger(std::istream& in) {
  std::vector<LedgerRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::string col;
    std::istringstream fields(line);
    while (std::getline(fields, col, '\t')) cols.push_back(col);
    if (cols.size() != 5) {
      throw Error(ErrorKind::kBadColumnCount, "ledger lines have 5 columns",
                  at_line(line_no));
    }
    const auto verdict = parse_verdict(cols[1]);
    if (!verdict) {
      throw Error(ErrorKind::kBadVerdictLine,
                  fmt::format("unknown verdict '{}'", cols[1]), at_line(line_no));
    }
    try {
      records.push_back({std::stoul(cols[0]), *verdict, std::stod(cols[2]),
                         std::stoi(cols[3]), cols[4]});
    } catch (const std::exception&) {
      throw Error(ErrorKind::kBadColumnCount, "malformed ledger numbers",
                  at_line(line_no));
    }
  }
  return records;
}

std::string format_ledger_record(const LedgerRecord& r) {
  return fmt::format("{}\t{}\t{:.3f}\t{}\t{}", r.index, to_string(r.verdict),
                     r.millis, r.exit_status, r.output_path);
}

RunLedger run_corpus(std::span<const BenchSentence> corpus,
                     const AdapterSpec& adapter, const RunOptions& options) {
  if (corpus.empty()) {
    throw Error(ErrorKind::kEmptyCorpus, "nothing to parse");
  }
  if (!command_available(adapter.command)) {
    throw Error(ErrorKind::kAdapterNotFound,
                fmt::format("adapter '{}': cannot execute '{}'", adapter.name,
                            adapter.command));
  }
  const auto judge = make_judge(adapter.judge, adapter.output_format);

  const fs::path dir = options.run_dir;
  fs::create_directories(dir / "outputs");
  const fs::path ledger_path = dir / "ledger.tsv";
  const fs::path info_path = dir / "run.info";

  RunLedger ledger;
  if (options.resume && fs::exists(ledger_path)) {
    ledger.records = recover_ledger(ledger_path);
  } else {
    write_file(ledger_path, "");
  }
  if (options.resume && fs::exists(info_path)) {
    std::ifstream in(info_path);
    std::getline(in, ledger.host);
    std::getline(in, ledger.started);
  } else {
    ledger.host = hostname();
    ledger.started = utc_now();
    write_file(info_path, ledger.host + "\n" + ledger.started + "\n");
  }
  if (ledger.records.size() > corpus.size()) {
    throw Error(ErrorKind::kIoError,
                "existing ledger is longer than the corpus");
  }

  std::ofstream out(ledger_path, std::ios::binary | std::ios::app);
  Runner runner(adapter);
  std::size_t consecutive = 0;
  for (std::size_t i = ledger.records.size(); i < corpus.size(); ++i) {
    const Outcome outcome = runner.run(render_sentence(corpus[i], adapter));
    LedgerRecord record;
    record.index = i + 1;
    record.millis = outcome.seconds * 1000.0;
    record.exit_status = outcome.status;
    record.output_path = fmt::format("outputs/{:06}.out", i + 1);
    record.verdict = outcome.terminated
                         ? Verdict::kTerminated
                         : judge->judge(outcome.output, corpus[i].tokens.size());
    write_file(dir / record.output_path, outcome.output);
    out << format_ledger_record(record) << '\n';
    out.flush();
    ledger.records.push_back(record);

    consecutive = outcome.terminated ? consecutive + 1 : 0;
    if (options.max_consecutive_failures > 0 &&
        consecutive >= options.max_consecutive_failures) {
      throw Error(ErrorKind::kAllSentencesTerminated,
                  fmt::format("adapter '{}' terminated on {} sentences in a row",
                              adapter.name, consecutive),
                  at_sentence(i + 1));
    }
  }
  return ledger;
}

CoverageLedger coverage_ledger(const RunLedger& ledger,
                               std::span<const BenchSentence> corpus) {
  CoverageLedger coverage;
  for (const auto& r : ledger.records) {
    const std::string genre =
        r.index >= 1 && r.index <= corpus.size() ? corpus[r.index - 1].genre
                                                 : std::string();
    coverage.add(r.verdict, genre);
  }
  return coverage;
}

TimingStats timing_stats(std::span<const LedgerRecord> records,
                         std::span<const std::size_t> lengths,
                         bool include_terminated, std::size_t bucket_width) {
  TimingStats stats;
  std::vector<double> seconds;
  std::map<std::size_t, LengthBucket> buckets;
  for (const auto& r : records) {
    if (!include_terminated && r.verdict == Verdict::kTerminated) continue;
    const double s = r.millis / 1000.0;
    seconds.push_back(s);
    stats.total_seconds += s;
    if (!lengths.empty() && bucket_width > 0 && r.index >= 1 &&
        r.index <= lengths.size()) {
      const std::size_t len = lengths[r.index - 1];
      const std::size_t b = len == 0 ? 0 : (len - 1) / bucket_width;
      auto& bucket = buckets[b];
      bucket.first = b * bucket_width + 1;
      bucket.last = (b + 1) * bucket_width;
      ++bucket.count;
      bucket.seconds += s;
    }
  }
  stats.sentences = seconds.size();
  if (seconds.empty()) return stats;
  stats.mean_seconds = stats.total_seconds / static_cast<double>(seconds.size());
  std::sort(seconds.begin(), seconds.end());
  auto rank = [&](double p) {
    const auto k = static_cast<std::size_t>(
        std::ceil(p * static_cast<double>(seconds.size())));
    return seconds[std::clamp<std::size_t>(k, 1, seconds.size()) - 1];
  };
  stats.p50 = rank(0.50);
  stats.p90 = rank(0.90);
  stats.p99 = rank(0.99);
  for (auto& [b, bucket] : buckets) stats.buckets.push_back(bucket);
  return stats;
}

}  // namespace fepa
