#include "fepa/coverage.hpp"

#include <algorithm>
#include <unordered_map>

#include <fmt/format.h>

#include "fepa/error.hpp"
#include "fepa/io.hpp"

namespace fepa {
namespace {

struct GramStats {
  Gram gram;
  std::int64_t freq_total = 0;
  std::int64_t freq_uncovered = 0;
  std::int64_t sentences = 0;
  std::int64_t covered_sentences = 0;
  std::size_t last_sentence = static_cast<std::size_t>(-1);
};

using GramTable = std::unordered_map<std::string, GramStats>;

constexpr char kSep = '\x1f';

std::string key_of(std::span<const std::string> words) {
  std::string key;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) key += kSep;
    key += words[i];
  }
  return key;
}

// a/b < c/d for non-negative counts with positive denominators.
bool less_ratio(std::int64_t a, std::int64_t b, std::int64_t c,
                std::int64_t d) {
  return static_cast<__int128>(a) * d < static_cast<__int128>(c) * b;
}

GramTable count_grams(const std::vector<std::vector<std::string>>& covered,
                      const std::vector<std::vector<std::string>>& uncovered,
                      std::size_t n) {
  GramTable table;
  std::size_t sentence_id = 0;
  auto visit = [&](const std::vector<std::string>& sentence, bool is_covered) {
    const std::size_t id = sentence_id++;
    if (sentence.size() < n) return;
    for (std::size_t i = 0; i + n <= sentence.size(); ++i) {
      std::span<const std::string> window(sentence.data() + i, n);
      auto& stats = table[key_of(window)];
      if (stats.gram.empty()) stats.gram.assign(window.begin(), window.end());
      ++stats.freq_total;
      if (!is_covered) ++stats.freq_uncovered;
      if (stats.last_sentence != id) {
        stats.last_sentence = id;
        ++stats.sentences;
        if (is_covered) ++stats.covered_sentences;
      }
    }
  };
  for (const auto& s : covered) visit(s, true);
  for (const auto& s : uncovered) visit(s, false);
  return table;
}

}  // namespace

std::vector<VerdictRecord> read_verdicts(std::istream& in) {
  std::vector<VerdictRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab1 = line.find('\t');
    const auto tab2 =
        tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) {
      throw Error(ErrorKind::kBadVerdictLine,
                  "expected verdict<TAB>genre<TAB>text", at_line(line_no));
    }
    const auto verdict = parse_verdict(std::string_view(line).substr(0, tab1));
    if (!verdict) {
      throw Error(ErrorKind::kBadVerdictLine,
                  fmt::format("unknown verdict '{}'", line.substr(0, tab1)),
                  at_line(line_no));
    }
    VerdictRecord record;
    record.verdict = *verdict;
    record.genre = line.substr(tab1 + 1, tab2 - tab1 - 1);
    if (record.genre == "_") record.genre.clear();
    record.tokens = io::split_ws(std::string_view(line).substr(tab2 + 1));
    records.push_back(std::move(record));
  }
  return records;
}

void write_verdicts(std::ostream& out,
                    const std::vector<VerdictRecord>& records) {
  for (const auto& r : records) {
    out << to_string(r.verdict) << '\t' << (r.genre.empty() ? "_" : r.genre)
        << '\t' << io::join(r.tokens) << '\n';
  }
}

void CoverageLedger::add(Verdict verdict, const std::string& genre) {
  total.add(verdict);
  if (!genre.empty()) per_genre[genre].add(verdict);
}

CoverageLedger CoverageLedger::from(const std::vector<VerdictRecord>& records) {
  CoverageLedger ledger;
  for (const auto& r : records) ledger.add(r.verdict, r.genre);
  return ledger;
}

Fraction coverage(const VerdictTally& tally) {
  if (tally.total() == 0) {
    throw Error(ErrorKind::kEmptyCorpus, "coverage of an empty corpus");
  }
  return {static_cast<std::int64_t>(tally.covered),
          static_cast<std::int64_t>(tally.total())};
}

std::map<std::string, double> genre_coverages(const CoverageLedger& ledger) {
  std::map<std::string, double> out;
  for (const auto& [genre, tally] : ledger.per_genre) {
    out[genre] = coverage(tally).value();
  }
  return out;
}

double generalizability(const std::map<std::string, double>& per_genre,
                        const std::string& reference) {
  auto ref = per_genre.find(reference);
  if (ref == per_genre.end()) {
    throw Error(ErrorKind::kMissingReferenceGenre,
                fmt::format("no coverage for reference genre '{}'", reference));
  }
  double lowest = ref->second;
  for (const auto& [genre, value] : per_genre) lowest = std::min(lowest, value);
  if (ref->second == 0.0) return 0.0;
  return 100.0 * lowest / ref->second;
}

std::vector<Gram> extract_ngrams(std::span<const std::string> sentence,
                                 std::size_t n) {
  std::vector<Gram> out;
  if (n == 0 || sentence.size() < n) return out;
  for (std::size_t i = 0; i + n <= sentence.size(); ++i) {
    out.emplace_back(sentence.begin() + i, sentence.begin() + i + n);
  }
  return out;
}

std::string NgramRecord::text() const { return io::join(gram); }

std::vector<NgramRecord> mine_errors(
    const std::vector<std::vector<std::string>>& covered,
    const std::vector<std::vector<std::string>>& uncovered,
    const MiningOptions& options) {
  if (options.max_n == 0) {
    throw Error(ErrorKind::kInvalidArgument, "max_n must be at least 1");
  }
  std::vector<NgramRecord> out;
  GramTable shorter;
  for (std::size_t n = 1; n <= options.max_n; ++n) {
    GramTable table = count_grams(covered, uncovered, n);
    if (table.empty()) break;
    for (const auto& [key, s] : table) {
      if (s.freq_total < options.min_freq) continue;
      if (n >= 2) {
        const std::span<const std::string> words(s.gram);
        const auto& left = shorter.at(key_of(words.first(n - 1)));
        const auto& right = shorter.at(key_of(words.last(n - 1)));
        if (!less_ratio(s.covered_sentences, s.sentences,
                        left.covered_sentences, left.sentences) ||
            !less_ratio(s.covered_sentences, s.sentences,
                        right.covered_sentences, right.sentences)) {
          continue;
        }
      }
      NgramRecord record{s.gram, s.freq_total, s.freq_uncovered, s.sentences,
                         s.covered_sentences};
      if (options.below && !(record.parsability() < *options.below)) continue;
      out.push_back(std::move(record));
    }
    shorter = std::move(table);
  }
  std::sort(out.begin(), out.end(),
            [](const NgramRecord& a, const NgramRecord& b) {
              if (less_ratio(a.covered_sentences, a.sentences,
                             b.covered_sentences, b.sentences)) {
                return true;
              }
              if (less_ratio(b.covered_sentences, b.sentences,
                             a.covered_sentences, a.sentences)) {
                return false;
              }
              if (a.freq_total != b.freq_total) {
                return a.freq_total > b.freq_total;
              }
              return a.gram < b.gram;
            });
  return out;
}

std::vector<NgramRecord> mine_errors(const std::vector<VerdictRecord>& records,
                                     const MiningOptions& options) {
  std::vector<std::vector<std::string>> covered;
  std::vector<std::vector<std::string>> uncovered;
  for (const auto& r : records) {
    (r.verdict == Verdict::kCovered ? covered : uncovered).push_back(r.tokens);
  }
  return mine_errors(covered, uncovered, options);
}

}  // namespace fepa
