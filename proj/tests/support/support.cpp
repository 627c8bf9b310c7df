#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace fepa::testing {

namespace fs = std::filesystem;

fs::path fixture(std::string_view name) { return fs::path(FEPA_FIXTURE_DIR) / name; }
fs::path data_file(std::string_view name) { return fs::path(FEPA_DATA_DIR) / name; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TempDir::TempDir() {
  static std::random_device device;
  for (;;) {
    path_ = fs::temp_directory_path() / ("fepa-test-" + std::to_string(device()));
    if (fs::create_directory(path_)) break;
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

namespace {

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

PhraseTree build(Rng& rng, const std::vector<std::string>& words, std::size_t lo,
                 std::size_t hi, const std::vector<std::string>& labels,
                 double preterminal_share, int depth) {
  auto leaf = [&](std::size_t i) {
    PhraseTree t = PhraseTree::terminal(Token{static_cast<int>(i + 1), words[i], {}, {}});
    if (chance(rng, preterminal_share)) t = PhraseTree::node(pick(rng, labels), {std::move(t)});
    return t;
  };
  std::vector<PhraseTree> children;
  const std::size_t n = hi - lo;
  if (n == 1) {
    children.push_back(leaf(lo));
  } else {
    // Split into 2..min(4, n) non-empty parts; sometimes keep a word bare.
    const int parts = uniform(rng, 2, static_cast<int>(std::min<std::size_t>(4, n)));
    std::set<std::size_t> cuts;
    while (cuts.size() < static_cast<std::size_t>(parts - 1)) {
      cuts.insert(lo + static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(n) - 1)));
    }
    std::size_t start = lo;
    cuts.insert(hi);
    for (std::size_t cut : cuts) {
      if (cut - start == 1 && depth > 0 && chance(rng, 0.5)) {
        children.push_back(leaf(start));
      } else {
        children.push_back(build(rng, words, start, cut, labels, preterminal_share, depth + 1));
      }
      start = cut;
    }
  }
  return PhraseTree::node(pick(rng, labels), std::move(children));
}

}  // namespace

std::vector<std::string> random_words(Rng& rng, std::size_t n,
                                      const std::vector<std::string>& vocab) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(pick(rng, vocab));
  return out;
}

PhraseTree random_tree(Rng& rng, const std::vector<std::string>& words,
                       const std::vector<std::string>& labels, double preterminal_share) {
  PhraseTree tree = build(rng, words, 0, words.size(), labels, preterminal_share, 0);
  tree.renumber();
  return tree;
}

DepGraph random_dep_tree(Rng& rng, const std::vector<std::string>& words,
                         const std::vector<std::string>& labels) {
  const int n = static_cast<int>(words.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> heads(n, 0);
  for (int k = 1; k < n; ++k) heads[order[k] - 1] = order[uniform(rng, 0, k - 1)];
  std::vector<Token> tokens;
  std::vector<std::optional<std::string>> labs;
  for (int i = 0; i < n; ++i) {
    tokens.push_back(Token{i + 1, words[i], {}, {}});
    labs.emplace_back(pick(rng, labels));
  }
  return DepGraph(std::move(tokens), std::move(heads), std::move(labs));
}

DepGraph perturb_graph(Rng& rng, const DepGraph& graph,
                       const std::vector<std::string>& labels, double keep_head,
                       double keep_label) {
  DepGraph out = graph;
  const int n = static_cast<int>(graph.size());
  for (int i = 1; i <= n; ++i) {
    if (!chance(rng, keep_head)) out.set_head(i, uniform(rng, 0, n));
    if (!chance(rng, keep_label)) out.set_label(i, pick(rng, labels));
  }
  return out;
}

DepGraph relabel(const DepGraph& graph, const std::map<std::string, std::string>& map) {
  DepGraph out = graph;
  for (int i = 1; i <= static_cast<int>(graph.size()); ++i) {
    if (const auto& l = graph.label(i)) out.set_label(i, map.at(*l));
  }
  return out;
}

PhraseTree relabel(const PhraseTree& tree, const std::map<std::string, std::string>& map) {
  if (tree.is_terminal()) return tree;
  std::vector<PhraseTree> kids;
  for (const auto& c : tree.children()) kids.push_back(relabel(c, map));
  PhraseTree out = PhraseTree::node(map.at(tree.label()), std::move(kids));
  out.renumber();
  return out;
}

namespace {

using Key = std::tuple<int, int, std::string>;

// Collects brackets without using the library's span extraction.
void brackets(const PhraseTree& tree, int& next, std::vector<Key>& out, bool labeled) {
  if (tree.is_terminal()) {
    ++next;
    return;
  }
  const int start = next;
  for (const auto& c : tree.children()) brackets(c, next, out, labeled);
  out.emplace_back(start, next - 1, labeled ? tree.label() : std::string());
}

}  // namespace

OracleBrackets oracle_parseval(const PhraseTree& gold, const PhraseTree& test, bool labeled) {
  std::vector<Key> g, t;
  int next = 1;
  brackets(gold, next, g, labeled);
  next = 1;
  brackets(test, next, t, labeled);
  OracleBrackets r;
  r.gold = static_cast<std::int64_t>(g.size());
  r.test = static_cast<std::int64_t>(t.size());
  std::multiset<Key> pool(g.begin(), g.end());
  for (const auto& k : t) {
    const auto it = pool.find(k);
    if (it != pool.end()) {
      ++r.matched;
      pool.erase(it);
    }
  }
  for (const auto& [ts, te, tl] : t) {
    for (const auto& [gs, ge, gl] : g) {
      if ((ts < gs && gs <= te && te < ge) || (gs < ts && ts <= ge && ge < te)) {
        ++r.crossing;
        break;
      }
    }
  }
  return r;
}

std::size_t oracle_levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

std::size_t oracle_osa(std::string_view a, std::string_view b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
      }
    }
  }
  return d[a.size()][b.size()];
}

std::vector<OracleGram> oracle_mine(const std::vector<VerdictRecord>& records,
                                    std::size_t max_n, std::int64_t min_freq) {
  std::map<std::vector<std::string>, OracleGram> all;
  for (const auto& r : records) {
    const bool covered = r.verdict == Verdict::kCovered;
    std::set<std::vector<std::string>> seen;
    for (std::size_t n = 1; n <= max_n; ++n) {
      for (std::size_t i = 0; i + n <= r.tokens.size(); ++i) {
        std::vector<std::string> gram(r.tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      r.tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
        auto& g = all[gram];
        g.gram = gram;
        ++g.freq_total;
        if (!covered) ++g.freq_uncovered;
        if (seen.insert(gram).second) {
          ++g.sentences;
          if (covered) ++g.covered;
        }
      }
    }
  }
  // a/b < c/d for positive denominators.
  auto below = [](const OracleGram& x, const OracleGram& y) {
    return x.covered * y.sentences < y.covered * x.sentences;
  };
  std::vector<OracleGram> out;
  for (const auto& [gram, g] : all) {
    if (g.freq_total < min_freq) continue;
    if (gram.size() > 1) {
      const std::vector<std::string> left(gram.begin(), gram.end() - 1);
      const std::vector<std::string> right(gram.begin() + 1, gram.end());
      if (!below(g, all.at(left)) || !below(g, all.at(right))) continue;
    }
    out.push_back(g);
  }
  std::sort(out.begin(), out.end(), [&](const OracleGram& x, const OracleGram& y) {
    if (below(x, y)) return true;
    if (below(y, x)) return false;
    if (x.freq_total != y.freq_total) return x.freq_total > y.freq_total;
    return x.gram < y.gram;
  });
  return out;
}

}  // namespace fepa::testing
