#include <sstream>

#include <fmt/format.h>

#include "fepa/error.hpp"
#include "fepa/io.hpp"

namespace fepa::io {
namespace {

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace

std::vector<ParallelPair> read_parallel(std::istream& correct,
                                        std::istream& noisy) {
  const auto good = read_lines(correct);
  const auto bad = read_lines(noisy);
  if (good.size() != bad.size()) {
    throw Error(ErrorKind::kSentenceCountMismatch,
                fmt::format("{} correct sentences but {} noisy ones",
                            good.size(), bad.size()),
                at_sentence(std::min(good.size(), bad.size()) + 1));
  }
  std::vector<ParallelPair> pairs;
  pairs.reserve(good.size());
  for (std::size_t i = 0; i < good.size(); ++i) {
    ParallelPair pair;
    pair.correct = split_ws(good[i]);
    pair.noisy = split_ws(bad[i]);
    if (pair.correct.size() != pair.noisy.size()) {
      throw Error(ErrorKind::kLengthMismatch,
                  fmt::format("{} correct tokens but {} noisy ones",
                              pair.correct.size(), pair.noisy.size()),
                  at_sentence(i + 1));
    }
    for (std::size_t k = 0; k < pair.correct.size(); ++k) {
      if (pair.correct[k] != pair.noisy[k]) ++pair.error_level;
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<ParallelPair> read_parallel(std::string_view correct,
                                        std::string_view noisy) {
  std::istringstream a{std::string(correct)};
  std::istringstream b{std::string(noisy)};
  return read_parallel(a, b);
}

void write_parallel(std::ostream& correct, std::ostream& noisy,
                    const std::vector<ParallelPair>& pairs) {
  for (const auto& pair : pairs) {
    correct << join(pair.correct) << '\n';
    noisy << join(pair.noisy) << '\n';
  }
}

}  // namespace fepa::io
