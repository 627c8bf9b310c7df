#include <sstream>

#include <fmt/format.h>

#include "commands.hpp"
#include "fepa/error.hpp"
#include "fepa/robustness.hpp"

namespace fepa::cli {

NoiseSpec noise_spec(const NoiseArgs& args, std::uint64_t seed) {
  NoiseSpec spec;
  spec.seed = seed;
  spec.errors_per_sentence = args.level;
  if (!args.ops.empty()) {
    spec.ops.clear();
    for (const auto& name : args.ops) {
      const auto op = parse_edit_op(name);
      if (!op) {
        throw Error(ErrorKind::kInvalidArgument,
                    fmt::format("unknown edit '{}' (delete, add, transpose)", name));
      }
      spec.ops.insert(*op);
    }
  }
  if (!args.keyboard.empty()) {
    auto in = io::open_input(args.keyboard);
    try {
      spec.keyboard = KeyboardMap::read(*in);
    } catch (const Error&) {
      rethrow_at(args.keyboard);
    }
  }
  if (!args.dictionary.empty()) {
    for (const auto& line : load_sentences(args.dictionary)) {
      for (const auto& word : line) spec.dictionary.insert(word);
    }
  }
  return spec;
}

Report cmd_noise(const NoiseArgs& args, const Globals& globals) {
  if (!globals.seed) {
    throw Error(ErrorKind::kInvalidArgument, "noise generation requires --seed");
  }
  if (args.out_correct.empty() || args.out_noisy.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "noise needs --out-correct and --out-noisy");
  }
  const auto sentences = load_sentences(args.input);
  std::vector<ParallelPair> pairs;
  try {
    pairs = make_noisy_corpus(sentences, noise_spec(args, *globals.seed));
  } catch (const Error&) {
    rethrow_at(args.input);
  }

  std::ostringstream correct, noisy;
  io::write_parallel(correct, noisy, pairs);
  write_file(args.out_correct, correct.str());
  write_file(args.out_noisy, noisy.str());

  Report report;
  report.title = "Noise injection";
  report.add("input", Cell::text(args.input));
  report.add("seed", Cell::text(std::to_string(*globals.seed)));
  report.add("level", Cell::integer(args.level));
  report.add("sentences", Cell::integer(static_cast<std::int64_t>(pairs.size())));
  report.add("correct", Cell::text(args.out_correct));
  report.add("noisy", Cell::text(args.out_noisy));
  auto& table = report.table("edits", {"sentence", "position", "original", "altered"});
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t k = 0; k < pairs[i].correct.size(); ++k) {
      if (pairs[i].correct[k] == pairs[i].noisy[k]) continue;
      table.add_row({Cell::integer(static_cast<std::int64_t>(i + 1)),
                     Cell::integer(static_cast<std::int64_t>(k + 1)),
                     Cell::text(pairs[i].correct[k]), Cell::text(pairs[i].noisy[k])});
    }
  }
  return report;
}

}  // namespace fepa::cli
