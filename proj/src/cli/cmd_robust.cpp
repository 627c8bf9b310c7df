#include <charconv>
#include <filesystem>
#include <sstream>

#include <fmt/format.h>

#include "commands.hpp"
#include "fepa/constituency.hpp"
#include "fepa/error.hpp"
#include "fepa/harness.hpp"
#include "fepa/robustness.hpp"

namespace fepa::cli {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kFailedMark = "#failed";

bool is_failed_mark(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
  return line == kFailedMark;
}

// "LEVEL:A:B" with a positive level.
struct LevelSpec {
  int level = 0;
  std::string first;
  std::string second;
};

LevelSpec parse_level_spec(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  LevelSpec spec;
  if (b != std::string::npos) {
    const auto digits = std::string_view(text).substr(0, a);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), spec.level);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && spec.level >= 0) {
      spec.first = text.substr(a + 1, b - a - 1);
      spec.second = text.substr(b + 1);
      if (!spec.first.empty() && !spec.second.empty()) return spec;
    }
  }
  throw Error(ErrorKind::kInvalidArgument,
              fmt::format("expected LEVEL:FILE:FILE, got '{}'", text));
}

// One tree per line; "#failed" stands for a sentence the parser did not
// analyse.
std::vector<std::optional<SpanSet>> load_span_outputs(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::optional<SpanSet>> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (io::split_ws(line).empty()) continue;
    if (is_failed_mark(line)) {
      out.emplace_back();
      continue;
    }
    try {
      auto trees = io::read_bracketed(std::string_view(line), {.allow_unlabeled = true});
      if (trees.size() != 1) {
        throw Error(ErrorKind::kStrayToken, "expected exactly one tree on the line");
      }
      out.emplace_back(extract_spans(trees.sentences.front()));
    } catch (const Error& e) {
      throw e.at(fmt::format("{}, {}", path, at_line(number)));
    }
  }
  return out;
}

// Blank-line separated blocks; a block holding only "#failed" is a sentence
// without analysis.
std::vector<std::optional<DepGraph>> load_graph_outputs(const std::string& path,
                                                        bool permissive) {
  std::istringstream in(read_file(path));
  std::vector<std::optional<DepGraph>> out;
  std::string line, block;
  bool failed = false;
  std::size_t sentence = 0;
  auto flush = [&] {
    if (block.empty() && !failed) return;
    ++sentence;
    if (failed && io::split_ws(block).empty()) {
      out.emplace_back();
    } else {
      try {
        auto graphs = io::read_dep_tsv(std::string_view(block), {permissive});
        if (graphs.size() != 1) {
          throw Error(ErrorKind::kBadColumnCount, "expected one sentence in the block");
        }
        out.emplace_back(std::move(graphs.sentences.front()));
      } catch (const Error& e) {
        throw e.at(fmt::format("{}, {}", path, at_sentence(sentence)));
      }
    }
    block.clear();
    failed = false;
  };
  while (std::getline(in, line)) {
    if (io::split_ws(line).empty()) {
      flush();
    } else if (is_failed_mark(line)) {
      failed = true;
    } else {
      block += line;
      block += '\n';
    }
  }
  flush();
  return out;
}

std::map<int, SimilarityTally> read_tallies(const std::string& path) {
  std::istringstream in(read_file(path));
  std::map<int, SimilarityTally> levels;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto fields = io::split_ws(line);
    if (fields.empty() || fields.front().starts_with('#')) continue;
    std::vector<long long> v;
    for (const auto& f : fields) {
      long long x = 0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), x);
      if (ec != std::errc() || ptr != f.data() + f.size() || x < 0) break;
      v.push_back(x);
    }
    if (fields.size() != 4 || v.size() != 4 || v[2] > v[1] || v[3] > v[2]) {
      throw Error(ErrorKind::kInvalidArgument,
                  "expected 'level pairs unlabeled-same labeled-same' with "
                  "labeled <= unlabeled <= pairs",
                  fmt::format("{}, {}", path, at_line(number)));
    }
    auto& t = levels[static_cast<int>(v[0])];
    t.pairs += v[1];
    t.unlabeled += v[2];
    t.labeled += v[3];
  }
  return levels;
}

std::string output_format(const Globals& globals) {
  const std::string f = globals.format.empty() ? "bracketed" : globals.format;
  if (f != "bracketed" && f != "dep-tsv" && f != "conll") {
    throw Error(ErrorKind::kFormatMismatch,
                fmt::format("robustness needs bracketed or dep-tsv analyses, not '{}'", f));
  }
  return f;
}

SimilarityTally compare_files(const std::string& correct, const std::string& noisy,
                              const std::string& format, bool permissive) {
  if (format == "bracketed") {
    const auto a = load_span_outputs(correct);
    const auto b = load_span_outputs(noisy);
    return compare_outputs<SpanSet>(a, b);
  }
  const auto a = load_graph_outputs(correct, permissive);
  const auto b = load_graph_outputs(noisy, permissive);
  return compare_outputs<DepGraph>(a, b);
}

// Runs the adapter over `sentences` and turns each covered or fragmented
// output into an analysis.
template <typename Analysis>
std::vector<std::optional<Analysis>> parse_with(
    const AdapterSpec& adapter, const std::vector<std::vector<std::string>>& sentences,
    const fs::path& dir, bool permissive) {
  std::vector<BenchSentence> corpus;
  for (const auto& words : sentences) {
    BenchSentence s;
    for (std::size_t i = 0; i < words.size(); ++i) {
      s.tokens.push_back(Token{static_cast<int>(i + 1), words[i], {}, {}});
    }
    corpus.push_back(std::move(s));
  }
  const auto ledger = run_corpus(corpus, adapter, RunOptions{dir});
  std::vector<std::optional<Analysis>> out;
  for (const auto& record : ledger.records) {
    if (record.verdict != Verdict::kCovered && record.verdict != Verdict::kFragmented) {
      out.emplace_back();
      continue;
    }
    const std::string text = read_file((dir / record.output_path).string());
    try {
      if constexpr (std::is_same_v<Analysis, SpanSet>) {
        auto trees = io::read_bracketed(std::string_view(text), {.allow_unlabeled = true});
        if (trees.empty()) {
          out.emplace_back();
        } else {
          out.emplace_back(extract_spans(trees.sentences.front()));
        }
      } else {
        auto graphs = io::read_dep_tsv(std::string_view(text), {permissive});
        if (graphs.empty()) {
          out.emplace_back();
        } else {
          out.emplace_back(std::move(graphs.sentences.front()));
        }
      }
    } catch (const Error&) {
      // Output the adapter's judge accepted but that does not parse.
      out.emplace_back();
    }
  }
  return out;
}

AdapterSpec find_adapter(const std::string& config, const std::string& name) {
  std::vector<AdapterSpec> adapters;
  {
    auto in = io::open_input(config);
    try {
      adapters = read_adapters(*in);
    } catch (const Error&) {
      rethrow_at(config);
    }
  }
  for (auto& a : adapters) {
    if (name.empty() || a.name == name) return a;
  }
  throw Error(ErrorKind::kConfigError,
              fmt::format("no adapter named '{}' in {}", name, config));
}

SimilarityTally run_level(const AdapterSpec& adapter,
                          const std::vector<ParallelPair>& pairs,
                          const fs::path& dir, bool permissive) {
  std::vector<std::vector<std::string>> correct, noisy;
  for (const auto& p : pairs) {
    correct.push_back(p.correct);
    noisy.push_back(p.noisy);
  }
  if (adapter.output_format == OutputFormat::kBracketed) {
    const auto a = parse_with<SpanSet>(adapter, correct, dir / "correct", permissive);
    const auto b = parse_with<SpanSet>(adapter, noisy, dir / "noisy", permissive);
    return compare_outputs<SpanSet>(a, b);
  }
  if (adapter.output_format == OutputFormat::kDepTsv) {
    const auto a = parse_with<DepGraph>(adapter, correct, dir / "correct", permissive);
    const auto b = parse_with<DepGraph>(adapter, noisy, dir / "noisy", permissive);
    return compare_outputs<DepGraph>(a, b);
  }
  throw Error(ErrorKind::kFormatMismatch,
              fmt::format("adapter '{}' must produce bracketed or dep-tsv output",
                          adapter.name));
}

}  // namespace

Report cmd_robust(const RobustArgs& args, const Globals& globals) {
  std::map<int, SimilarityTally> levels;
  const int modes = !args.tallies.empty() + !args.pairs.empty() +
                    (!args.corpora.empty() || !args.sentences.empty());
  if (modes != 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "give exactly one of --tallies, --pair, or an adapter with "
                "--corpus/--sentences");
  }

  if (!args.tallies.empty()) {
    levels = read_tallies(args.tallies);
  } else if (!args.pairs.empty()) {
    const auto format = output_format(globals);
    for (const auto& text : args.pairs) {
      const auto spec = parse_level_spec(text);
      levels[spec.level] +=
          compare_files(spec.first, spec.second, format, globals.permissive);
    }
  } else {
    if (args.adapters.empty()) {
      throw Error(ErrorKind::kInvalidArgument, "--corpus and --sentences need --adapters");
    }
    const auto adapter = find_adapter(args.adapters, args.adapter);
    const fs::path root(args.run_dir);
    for (const auto& text : args.corpora) {
      const auto spec = parse_level_spec(text);
      std::vector<ParallelPair> pairs;
      try {
        pairs = io::read_parallel(read_file(spec.first), read_file(spec.second));
      } catch (const Error&) {
        rethrow_at(spec.second);
      }
      levels[spec.level] += run_level(adapter, pairs,
                                      root / fmt::format("level-{}", spec.level),
                                      globals.permissive);
    }
    if (!args.sentences.empty()) {
      if (!globals.seed) {
        throw Error(ErrorKind::kInvalidArgument, "noise generation requires --seed");
      }
      if (args.generate_levels.empty()) {
        throw Error(ErrorKind::kInvalidArgument, "--sentences needs --generate LEVELS");
      }
      const auto sentences = load_sentences(args.sentences);
      for (int level : args.generate_levels) {
        NoiseArgs noise{args.sentences, level, args.ops, args.keyboard, args.dictionary,
                        {}, {}};
        std::vector<ParallelPair> pairs;
        try {
          pairs = make_noisy_corpus(sentences, noise_spec(noise, *globals.seed));
        } catch (const Error&) {
          rethrow_at(args.sentences);
        }
        const fs::path dir = root / fmt::format("level-{}", level);
        std::ostringstream correct, noisy;
        io::write_parallel(correct, noisy, pairs);
        write_file((dir / "correct.txt").string(), correct.str());
        write_file((dir / "noisy.txt").string(), noisy.str());
        levels[level] += run_level(adapter, pairs, dir, globals.permissive);
      }
    }
  }

  const auto result = robustness_scores(levels);
  Report report;
  report.title = "Robustness";
  report.add("levels", Cell::integer(static_cast<std::int64_t>(result.levels.size())));
  const auto pooled = result.pooled();
  report.add("pooled_ur", Cell::ratio(pooled.ur()));
  report.add("pooled_lr", Cell::ratio(pooled.lr()));
  report.add("degradation_ur", Cell::maybe(result.degradation_ur(), 2));
  report.add("degradation_lr", Cell::maybe(result.degradation_lr(), 2));
  auto& table = report.table("levels", {"level", "pairs", "ur", "lr"});
  for (const auto& [level, t] : result.levels) {
    table.add_row({Cell::integer(level), Cell::integer(t.pairs), Cell::ratio(t.ur()),
                   Cell::ratio(t.lr())});
  }
  return report;
}

}  // namespace fepa::cli
