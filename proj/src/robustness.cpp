#include "fepa/robustness.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include <fmt/format.h>

#include "fepa/error.hpp"

namespace fepa {
namespace {

char lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}
char upper(char c) {
  return static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
}
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)); }

std::string lowered(std::string s) {
  for (char& c : s) c = lower(c);
  return s;
}

// Imposes the case of `original` position by position.
std::string positional_case(const std::string& original, std::string word) {
  for (std::size_t i = 0; i < word.size(); ++i) {
    word[i] = i < original.size() && is_upper(original[i]) ? upper(word[i])
                                                           : lower(word[i]);
  }
  return word;
}

void push_unique(std::vector<std::string>& out, std::string s) {
  if (std::find(out.begin(), out.end(), s) == out.end()) {
    out.push_back(std::move(s));
  }
}

template <typename T>
void check_same_size(const T& a, const T& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kTokenCountMismatch,
                fmt::format("analyses cover {} and {} tokens", a.size(),
                            b.size()));
  }
}

std::vector<Span> bare_spans(const SpanSet& set) {
  std::vector<Span> out;
  out.reserve(set.spans.size());
  for (const auto& s : set.spans) out.push_back(s.span);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LabeledSpan> sorted_spans(const SpanSet& set) {
  auto out = set.spans;
  std::sort(out.begin(), out.end());
  return out;
}

void check_lengths(const SpanSet& a, const SpanSet& b) {
  if (a.length != b.length) {
    throw Error(ErrorKind::kTokenCountMismatch,
                fmt::format("analyses cover {} and {} tokens", a.length,
                            b.length));
  }
}

}  // namespace

KeyboardMap KeyboardMap::qwerty() {
  static const std::array<std::string_view, 3> rows = {"qwertyuiop",
                                                       "asdfghjkl", "zxcvbnm"};
  KeyboardMap map;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < static_cast<int>(rows[r].size()); ++c) {
      std::string near;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const int rr = r + dr;
          const int cc = c + dc;
          if ((dr == 0 && dc == 0) || rr < 0 || rr > 2 || cc < 0 ||
              cc >= static_cast<int>(rows[rr].size()))
            continue;
          near += rows[rr][cc];
        }
      }
      map.adjacent_[rows[r][c]] = near;
    }
  }
  return map;
}

KeyboardMap KeyboardMap::read(std::istream& in) {
  KeyboardMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto colon = line.find(':', 1);
    if (colon != 1) {
      throw Error(ErrorKind::kBadKeyboardMap, "expected 'c: neighbors'",
                  at_line(line_no));
    }
    std::string near;
    for (char c : line.substr(colon + 1)) {
      if (!std::isspace(static_cast<unsigned char>(c)) &&
          near.find(lower(c)) == std::string::npos) {
        near += lower(c);
      }
    }
    if (near.empty()) {
      throw Error(ErrorKind::kBadKeyboardMap,
                  fmt::format("key '{}' has no neighbors", line.front()),
                  at_line(line_no));
    }
    map.adjacent_[lower(line.front())] = near;
  }
  if (map.adjacent_.empty()) {
    throw Error(ErrorKind::kBadKeyboardMap, "keyboard map is empty");
  }
  return map;
}

void KeyboardMap::write(std::ostream& out) const {
  for (const auto& [key, near] : adjacent_) out << key << ": " << near << '\n';
}

const std::string& KeyboardMap::neighbors(char c) const {
  static const std::string none;
  auto it = adjacent_.find(lower(c));
  return it == adjacent_.end() ? none : it->second;
}

std::string_view to_string(EditOp op) {
  switch (op) {
    case EditOp::kDelete: return "delete";
    case EditOp::kAdd: return "add";
    case EditOp::kTranspose: return "transpose";
  }
  return "delete";
}

std::optional<EditOp> parse_edit_op(std::string_view text) {
  if (text == "delete") return EditOp::kDelete;
  if (text == "add") return EditOp::kAdd;
  if (text == "transpose") return EditOp::kTranspose;
  return std::nullopt;
}

bool alterable(const std::string& word) {
  return word.size() >= 2 &&
         std::all_of(word.begin(), word.end(), [](char c) {
           return std::isalpha(static_cast<unsigned char>(c));
         });
}

std::vector<std::string> misspellings(const std::string& word, EditOp op,
                                      const NoiseSpec& spec) {
  // Candidates keep each character's own case; the original case pattern is
  // re-applied afterwards when that still leaves a single edit.
  std::vector<std::string> raw;
  switch (op) {
    case EditOp::kDelete:
      for (std::size_t i = 0; i < word.size(); ++i) {
        std::string s = word;
        s.erase(i, 1);
        push_unique(raw, std::move(s));
      }
      break;
    case EditOp::kAdd:
      for (std::size_t k = 1; k < word.size(); ++k) {
        std::string near = spec.keyboard.neighbors(word[k - 1]);
        near += spec.keyboard.neighbors(word[k]);
        const bool caps = is_upper(word[k - 1]) && is_upper(word[k]);
        for (char c : near) {
          std::string s = word;
          s.insert(k, 1, caps ? upper(c) : c);
          push_unique(raw, std::move(s));
        }
      }
      break;
    case EditOp::kTranspose:
      for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        if (lower(word[i]) == lower(word[i + 1])) continue;
        std::string s = word;
        std::swap(s[i], s[i + 1]);
        push_unique(raw, std::move(s));
      }
      break;
  }
  std::vector<std::string> out;
  for (auto& candidate : raw) {
    std::string styled = positional_case(word, candidate);
    std::string chosen =
        osa_distance(styled, word) == 1 ? std::move(styled) : candidate;
    if (chosen == word || spec.dictionary.count(chosen) ||
        spec.dictionary.count(lowered(chosen))) {
      continue;
    }
    push_unique(out, std::move(chosen));
  }
  return out;
}

NoisySentence inject_noise(std::span<const std::string> sentence,
                           const NoiseSpec& spec, std::mt19937_64& rng) {
  NoisySentence result;
  result.tokens.assign(sentence.begin(), sentence.end());
  const auto level = static_cast<std::size_t>(std::max(0, spec.errors_per_sentence));
  if (level == 0) return result;

  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    if (alterable(sentence[i])) positions.push_back(i);
  }
  if (positions.size() < level) {
    throw Error(ErrorKind::kNotEnoughAlterableWords,
                fmt::format("{} alterable words, {} errors requested",
                            positions.size(), level));
  }
  if (spec.ops.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "no edit operation enabled");
  }
  std::shuffle(positions.begin(), positions.end(), rng);

  std::optional<std::string> stuck;
  for (std::size_t pos : positions) {
    if (result.edits.size() == level) break;
    std::vector<EditOp> ops(spec.ops.begin(), spec.ops.end());
    std::shuffle(ops.begin(), ops.end(), rng);
    bool done = false;
    for (EditOp op : ops) {
      const auto candidates = misspellings(sentence[pos], op, spec);
      if (candidates.empty()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      const auto& altered = candidates[pick(rng)];
      result.edits.push_back({pos, op, sentence[pos], altered});
      result.tokens[pos] = altered;
      done = true;
      break;
    }
    if (!done && !stuck) stuck = sentence[pos];
  }
  if (result.edits.size() < level) {
    throw Error(ErrorKind::kExhaustedCandidates,
                fmt::format("no legal misspelling of '{}'", stuck.value_or("")));
  }
  std::sort(result.edits.begin(), result.edits.end(),
            [](const Misspelling& a, const Misspelling& b) {
              return a.position < b.position;
            });
  return result;
}

std::vector<ParallelPair> make_noisy_corpus(
    const std::vector<std::vector<std::string>>& sentences, NoiseSpec spec) {
  if (spec.dictionary.empty()) {
    for (const auto& s : sentences) {
      for (const auto& w : s) {
        spec.dictionary.insert(w);
        spec.dictionary.insert(lowered(w));
      }
    }
  }
  std::vector<ParallelPair> pairs;
  pairs.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed),
                      static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    NoisySentence noisy;
    try {
      noisy = inject_noise(sentences[i], spec, rng);
    } catch (const Error& e) {
      throw e.at(at_sentence(i + 1));
    }
    ParallelPair pair;
    pair.correct = sentences[i];
    pair.noisy = std::move(noisy.tokens);
    pair.error_level = static_cast<int>(noisy.edits.size());
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::size_t osa_distance(std::string_view a, std::string_view b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
      }
    }
  }
  return d[n][m];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                         prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

bool ulsim(const DepGraph& a, const DepGraph& b) {
  check_same_size(a, b);
  return std::equal(a.heads().begin(), a.heads().end(), b.heads().begin());
}

bool lsim(const DepGraph& a, const DepGraph& b) {
  return ulsim(a, b) &&
         std::equal(a.labels().begin(), a.labels().end(), b.labels().begin());
}

bool ulsim(const SpanSet& a, const SpanSet& b) {
  check_lengths(a, b);
  return bare_spans(a) == bare_spans(b);
}

bool lsim(const SpanSet& a, const SpanSet& b) {
  check_lengths(a, b);
  return sorted_spans(a) == sorted_spans(b);
}

void SimilarityTally::add(bool unlabeled_same, bool labeled_same) {
  ++pairs;
  if (unlabeled_same) ++unlabeled;
  if (unlabeled_same && labeled_same) ++labeled;
}

SimilarityTally& SimilarityTally::operator+=(const SimilarityTally& other) {
  pairs += other.pairs;
  unlabeled += other.unlabeled;
  labeled += other.labeled;
  return *this;
}

template <typename Analysis>
SimilarityTally compare_outputs(
    std::span<const std::optional<Analysis>> correct,
    std::span<const std::optional<Analysis>> noisy) {
  if (correct.size() != noisy.size()) {
    throw Error(ErrorKind::kSentenceCountMismatch,
                fmt::format("{} correct analyses but {} noisy ones",
                            correct.size(), noisy.size()));
  }
  SimilarityTally tally;
  for (std::size_t i = 0; i < correct.size(); ++i) {
    if (!correct[i] || !noisy[i]) {
      tally.add(false, false);
      continue;
    }
    try {
      const bool u = ulsim(*correct[i], *noisy[i]);
      tally.add(u, u && lsim(*correct[i], *noisy[i]));
    } catch (const Error& e) {
      throw e.at(at_sentence(i + 1));
    }
  }
  return tally;
}

template SimilarityTally compare_outputs<DepGraph>(
    std::span<const std::optional<DepGraph>>,
    std::span<const std::optional<DepGraph>>);
template SimilarityTally compare_outputs<SpanSet>(
    std::span<const std::optional<SpanSet>>,
    std::span<const std::optional<SpanSet>>);

std::optional<double> degradation(double first, double last) {
  if (first == 0.0) return std::nullopt;
  return 100.0 * (first - last) / first;
}

std::optional<double> RobustnessReport::degradation_ur() const {
  return degradation(levels.begin()->second.ur().value(),
                     levels.rbegin()->second.ur().value());
}

std::optional<double> RobustnessReport::degradation_lr() const {
  return degradation(levels.begin()->second.lr().value(),
                     levels.rbegin()->second.lr().value());
}

SimilarityTally RobustnessReport::pooled() const {
  SimilarityTally sum;
  for (const auto& [level, tally] : levels) sum += tally;
  return sum;
}

RobustnessReport robustness_scores(std::map<int, SimilarityTally> levels) {
  if (levels.empty()) {
    throw Error(ErrorKind::kEmptyCorpus, "no error levels to score");
  }
  for (const auto& [level, tally] : levels) {
    if (tally.pairs == 0) {
      throw Error(ErrorKind::kEmptyLevel,
                  fmt::format("error level {} has no sentence pairs", level));
    }
  }
  return RobustnessReport{std::move(levels)};
}

double FosterResult::mean() const {
  if (best_f.empty()) return 0.0;
  double sum = 0.0;
  for (double f : best_f) sum += f;
  return sum / static_cast<double>(best_f.size());
}

FosterResult foster_scores(std::span<const FosterItem> items) {
  FosterResult result;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    if (item.corrections.empty()) {
      throw Error(ErrorKind::kNoCorrections, "item has no corrections",
                  at_sentence(i + 1));
    }
    std::optional<ParsevalResult> best;
    std::size_t best_index = 0;
    for (std::size_t c = 0; c < item.corrections.size(); ++c) {
      ParsevalResult r;
      try {
        r = parseval(item.corrections[c], item.noisy, true);
      } catch (const Error& e) {
        throw e.at(at_sentence(i + 1));
      }
      if (!best || r.f() > best->f()) {
        best = r;
        best_index = c;
      }
    }
    result.best_f.push_back(best->f());
    result.best_correction.push_back(best_index);
    result.pooled.matched += best->matched;
    result.pooled.gold += best->gold;
    result.pooled.test += best->test;
    result.pooled.crossing += best->crossing;
  }
  return result;
}

Stability stability(const VerdictTally& tally) {
  Stability s;
  if (tally.total() == 0) return s;
  const double n = static_cast<double>(tally.total());
  s.terminated_pct = 100.0 * static_cast<double>(tally.terminated) / n;
  s.failed_pct = 100.0 * static_cast<double>(tally.failed) / n;
  return s;
}

}  // namespace fepa
