#include "fepa/constituency.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "fepa/error.hpp"
#include "fepa/io.hpp"

namespace fepa {
namespace {

void collect_spans(const PhraseTree& node, bool is_root,
                   const SpanOptions& options, std::vector<LabeledSpan>& out) {
  if (node.is_terminal()) return;
  const bool skip = (options.drop_root && is_root) ||
                    (options.drop_width_one && node.span().width() == 1) ||
                    (options.drop_preterminals && node.is_preterminal());
  if (!skip) out.push_back({node.span(), node.label()});
  for (const auto& child : node.children()) {
    collect_spans(child, false, options, out);
  }
}

void check_lengths(const SpanSet& gold, const SpanSet& test) {
  if (gold.length != test.length) {
    throw Error(ErrorKind::kTokenCountMismatch,
                fmt::format("gold has {} tokens, test has {}", gold.length,
                            test.length));
  }
}

bool is_mark(const std::string& symbol) {
  return symbol == kOpenMark || symbol == kCloseMark;
}

void collect_lineages(const PhraseTree& node,
                      std::vector<const PhraseTree*>& path,
                      std::vector<Lineage>& out) {
  if (node.is_terminal()) {
    const int i = node.span().start;
    // path runs root-first; the highest opener/closer is the first match.
    const PhraseTree* opener = nullptr;
    const PhraseTree* closer = nullptr;
    for (const auto* anc : path) {
      if (!opener && anc->span().start == i) opener = anc;
      if (!closer && anc->span().end == i) closer = anc;
    }
    Lineage lineage;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      if (*it == opener) lineage.emplace_back(kOpenMark);
      lineage.push_back((*it)->label());
      if (*it == closer) lineage.emplace_back(kCloseMark);
    }
    out.push_back(std::move(lineage));
    return;
  }
  path.push_back(&node);
  for (const auto& child : node.children()) collect_lineages(child, path, out);
  path.pop_back();
}

}  // namespace

SpanSet extract_spans(const PhraseTree& tree, const SpanOptions& options) {
  SpanSet set;
  set.length = static_cast<int>(tree.terminal_count());
  collect_spans(tree, true, options, set.spans);
  return set;
}

ParsevalResult parseval(const SpanSet& gold, const SpanSet& test,
                        bool labeled) {
  check_lengths(gold, test);
  auto key = [labeled](const LabeledSpan& s) {
    return labeled ? s : LabeledSpan{s.span, {}};
  };
  std::map<LabeledSpan, std::int64_t> available;
  for (const auto& s : gold.spans) ++available[key(s)];

  ParsevalResult result;
  result.gold = static_cast<std::int64_t>(gold.spans.size());
  result.test = static_cast<std::int64_t>(test.spans.size());
  for (const auto& s : test.spans) {
    auto it = available.find(key(s));
    if (it != available.end() && it->second > 0) {
      --it->second;
      ++result.matched;
    }
  }
  result.crossing = crossing_brackets(gold, test);
  return result;
}

std::int64_t crossing_brackets(const SpanSet& gold, const SpanSet& test) {
  check_lengths(gold, test);
  std::int64_t count = 0;
  for (const auto& t : test.spans) {
    const bool crossed =
        std::any_of(gold.spans.begin(), gold.spans.end(),
                    [&](const LabeledSpan& g) { return crosses(g.span, t.span); });
    if (crossed) ++count;
  }
  return count;
}

ParsevalTotals parseval_corpus(const Corpus<PhraseTree>& gold,
                               const Corpus<PhraseTree>& test, bool labeled,
                               const SpanOptions& options) {
  if (gold.size() != test.size()) {
    throw Error(ErrorKind::kSentenceCountMismatch,
                fmt::format("{} gold trees but {} test trees", gold.size(),
                            test.size()));
  }
  ParsevalTotals totals;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ParsevalResult r;
    try {
      r = parseval(extract_spans(gold.sentences[i], options),
                   extract_spans(test.sentences[i], options), labeled);
    } catch (const Error& e) {
      throw e.at(at_sentence(i + 1));
    }
    totals.sum.matched += r.matched;
    totals.sum.gold += r.gold;
    totals.sum.test += r.test;
    totals.sum.crossing += r.crossing;
    totals.sentences.push_back(r);
  }
  return totals;
}

std::vector<Lineage> lineages(const PhraseTree& tree) {
  std::vector<Lineage> out;
  std::vector<const PhraseTree*> path;
  collect_lineages(tree, path, out);
  return out;
}

CostTable::CostTable(double default_cost) : default_cost_(default_cost) {
  if (default_cost < 0.0 || default_cost > 2.0) {
    throw Error(ErrorKind::kBadCostTable,
                fmt::format("default cost {} outside [0, 2]", default_cost));
  }
}

void CostTable::set(const std::string& a, const std::string& b, double cost) {
  if (cost < 0.0 || cost > 2.0) {
    throw Error(ErrorKind::kBadCostTable,
                fmt::format("cost {} for {}/{} outside [0, 2]", cost, a, b));
  }
  if (a == b && cost != 0.0) {
    throw Error(ErrorKind::kBadCostTable,
                fmt::format("replacing {} by itself must cost 0", a));
  }
  costs_[{a, b}] = cost;
  costs_[{b, a}] = cost;
}

double CostTable::cost(const std::string& a, const std::string& b) const {
  if (a == b) return 0.0;
  if (is_mark(a) || is_mark(b)) return 2.0;
  auto it = costs_.find({a, b});
  return it == costs_.end() ? default_cost_ : it->second;
}

CostTable CostTable::read(std::istream& in) {
  CostTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = io::split_ws(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() != 3) {
      throw Error(ErrorKind::kBadCostTable,
                  "expected LABEL_A<TAB>LABEL_B<TAB>cost", at_line(line_no));
    }
    double cost = 0.0;
    try {
      std::size_t used = 0;
      cost = std::stod(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::kBadCostTable,
                  fmt::format("'{}' is not a number", fields[2]),
                  at_line(line_no));
    }
    try {
      table.set(fields[0], fields[1], cost);
    } catch (const Error& e) {
      throw e.at(at_line(line_no));
    }
  }
  return table;
}

double lineage_distance(const Lineage& a, const Lineage& b,
                        const CostTable& costs) {
  std::vector<double> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), 0.0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<double>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1.0, cur[j - 1] + 1.0,
                         prev[j - 1] + costs.cost(a[i - 1], b[j - 1])});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double lineage_similarity(const Lineage& a, const Lineage& b,
                          const CostTable& costs) {
  const double total = static_cast<double>(a.size() + b.size());
  if (total == 0.0) return 1.0;
  return 1.0 - lineage_distance(a, b, costs) / total;
}

LaResult la_score(const PhraseTree& gold, const PhraseTree& test,
                  const CostTable& costs) {
  const auto gold_tokens = gold.tokens();
  const auto test_tokens = test.tokens();
  if (gold_tokens.size() != test_tokens.size()) {
    throw Error(ErrorKind::kTerminalMismatch,
                fmt::format("gold has {} terminals, test has {}",
                            gold_tokens.size(), test_tokens.size()));
  }
  for (std::size_t i = 0; i < gold_tokens.size(); ++i) {
    if (gold_tokens[i].form != test_tokens[i].form) {
      throw Error(ErrorKind::kTerminalMismatch,
                  fmt::format("terminal {} is '{}' in gold but '{}' in test",
                              i + 1, gold_tokens[i].form, test_tokens[i].form));
    }
  }
  const auto g = lineages(gold);
  const auto t = lineages(test);
  LaResult result;
  result.exact_match = g == t;
  for (std::size_t i = 0; i < g.size(); ++i) {
    result.per_word.push_back(lineage_similarity(g[i], t[i], costs));
  }
  if (!result.per_word.empty()) {
    result.sentence =
        std::accumulate(result.per_word.begin(), result.per_word.end(), 0.0) /
        static_cast<double>(result.per_word.size());
  }
  return result;
}

double LaTotals::mean_sentence() const {
  if (sentences.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& s : sentences) sum += s.sentence;
  return sum / static_cast<double>(sentences.size());
}

LaTotals la_corpus(const Corpus<PhraseTree>& gold,
                   const Corpus<PhraseTree>& test, const CostTable& costs) {
  if (gold.size() != test.size()) {
    throw Error(ErrorKind::kSentenceCountMismatch,
                fmt::format("{} gold trees but {} test trees", gold.size(),
                            test.size()));
  }
  LaTotals totals;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    LaResult r;
    try {
      r = la_score(gold.sentences[i], test.sentences[i], costs);
    } catch (const Error& e) {
      throw e.at(at_sentence(i + 1));
    }
    for (double w : r.per_word) totals.word_sum += w;
    totals.words += r.per_word.size();
    if (r.exact_match) ++totals.exact;
    totals.sentences.push_back(std::move(r));
  }
  return totals;
}

}  // namespace fepa
