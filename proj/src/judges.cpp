#include <numeric>
#include <regex>
#include <sstream>

#include <fmt/format.h>

#include "fepa/dependency.hpp"
#include "fepa/error.hpp"
#include "fepa/harness.hpp"
#include "fepa/io.hpp"

namespace fepa {
namespace {

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c));
  });
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto words = io::split_ws(item);
    if (!words.empty()) out.push_back(words.front());
  }
  return out;
}

std::regex compile(const std::string& pattern, const std::string& judge) {
  try {
    return std::regex(pattern, std::regex::ECMAScript | std::regex::multiline);
  } catch (const std::regex_error& e) {
    throw Error(ErrorKind::kJudgeConfigError,
                fmt::format("{}: bad pattern '{}': {}", judge, pattern,
                            e.what()));
  }
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }
  std::size_t components() {
    std::size_t n = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) n += find(i) == i;
    return n;
  }

 private:
  std::vector<std::size_t> parent_;
};

void check_params(const JudgeSpec& spec,
                  std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : spec.params) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(ErrorKind::kJudgeConfigError,
                  fmt::format("judge '{}' has no parameter '{}'", spec.name,
                              key));
    }
  }
}

std::string param(const JudgeSpec& spec, const std::string& key,
                  const std::string& fallback) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

// Any non-blank output counts as an analysis.
class IdentityJudge : public Judge {
 public:
  Verdict judge(const std::string& output, std::size_t) const override {
    return blank(output) ? Verdict::kFailed : Verdict::kCovered;
  }
};

// Covered when one top-level sentence node spans the whole output.
class SingleRootJudge : public Judge {
 public:
  explicit SingleRootJudge(const JudgeSpec& spec) {
    check_params(spec, {"roots"});
    roots_ = split_list(param(spec, "roots", "S"));
    if (roots_.empty()) {
      throw Error(ErrorKind::kJudgeConfigError,
                  "single-root-ps needs at least one root label");
    }
  }

  Verdict judge(const std::string& output, std::size_t) const override {
    if (blank(output)) return Verdict::kFailed;
    Corpus<PhraseTree> trees;
    try {
      trees = io::read_bracketed(output, {.allow_unlabeled = true});
    } catch (const Error&) {
      return Verdict::kFailed;
    }
    if (trees.empty()) return Verdict::kFailed;
    std::size_t tops = 0;
    std::size_t terminals = 0;
    bool spans_all = false;
    for (const auto& tree : trees.sentences) terminals += tree.terminal_count();
    for (const auto& tree : trees.sentences) {
      count_tops(tree, tops, spans_all, terminals, trees.size() == 1);
    }
    return tops == 1 && spans_all ? Verdict::kCovered : Verdict::kFragmented;
  }

 private:
  void count_tops(const PhraseTree& node, std::size_t& tops, bool& spans_all,
                  std::size_t terminals, bool single_tree) const {
    if (node.is_terminal()) return;
    if (std::find(roots_.begin(), roots_.end(), node.label()) != roots_.end()) {
      ++tops;
      spans_all = single_tree &&
                  static_cast<std::size_t>(node.span().width()) == terminals;
      return;
    }
    for (const auto& child : node.children()) {
      count_tops(child, tops, spans_all, terminals, single_tree);
    }
  }

  std::vector<std::string> roots_;
};

// Covered when the analysis, read as an undirected graph, is connected.
class ConnectedJudge : public Judge {
 public:
  ConnectedJudge(const JudgeSpec& spec, OutputFormat format) : format_(format) {
    check_params(spec, {});
    if (format != OutputFormat::kDepTsv && format != OutputFormat::kGr) {
      throw Error(ErrorKind::kJudgeConfigError,
                  "connected-dep needs dep-tsv or gr output");
    }
    hierarchy_ = GrHierarchy::default_hierarchy();
  }

  Verdict judge(const std::string& output, std::size_t) const override {
    if (blank(output)) return Verdict::kFailed;
    try {
      return format_ == OutputFormat::kDepTsv ? judge_dep(output)
                                              : judge_gr(output);
    } catch (const Error&) {
      return Verdict::kFailed;
    }
  }

 private:
  Verdict judge_dep(const std::string& output) const {
    const auto corpus = io::read_dep_tsv(output, {.permissive = true});
    std::size_t n = 0;
    for (const auto& g : corpus.sentences) n += g.size();
    if (n == 0) return Verdict::kFailed;
    DisjointSets sets(n);
    std::size_t offset = 0;
    for (const auto& g : corpus.sentences) {
      for (int i = 1; i <= static_cast<int>(g.size()); ++i) {
        if (g.head(i) != 0) {
          sets.unite(offset + i - 1, offset + g.head(i) - 1);
        }
      }
      offset += g.size();
    }
    return sets.components() == 1 ? Verdict::kCovered : Verdict::kFragmented;
  }

  Verdict judge_gr(const std::string& output) const {
    const auto corpus = io::read_gr(output);
    std::map<std::string, std::size_t> ids;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    auto id = [&](const GrRef& ref) {
      return ids.emplace(ref.text(), ids.size()).first->second;
    };
    for (const auto& set : corpus.sentences) {
      for (const auto& r : set.relations) {
        const GrSlots s = hierarchy_.slots(r);
        if (s.head.unfilled() || s.dependent.unfilled()) continue;
        edges.emplace_back(id(s.head), id(s.dependent));
      }
    }
    if (ids.empty()) return Verdict::kFailed;
    DisjointSets sets(ids.size());
    for (auto [a, b] : edges) sets.unite(a, b);
    return sets.components() == 1 ? Verdict::kCovered : Verdict::kFragmented;
  }

  OutputFormat format_;
  GrHierarchy hierarchy_;
};

// Verdict from regular expressions over the raw output.
class MarkerJudge : public Judge {
 public:
  explicit MarkerJudge(const JudgeSpec& spec) {
    check_params(spec, {"failed", "fragmented", "covered", "default"});
    for (const char* key : {"failed", "fragmented", "covered"}) {
      auto it = spec.params.find(key);
      if (it != spec.params.end()) {
        markers_.emplace_back(*parse_verdict(key), compile(it->second, "marker"));
      }
    }
    if (markers_.empty()) {
      throw Error(ErrorKind::kJudgeConfigError,
                  "marker judge needs a failed, fragmented or covered pattern");
    }
    const auto fallback = parse_verdict(param(spec, "default", "covered"));
    if (!fallback) {
      throw Error(ErrorKind::kJudgeConfigError,
                  fmt::format("unknown default verdict '{}'",
                              spec.params.at("default")));
    }
    default_ = *fallback;
  }

  Verdict judge(const std::string& output, std::size_t) const override {
    if (blank(output)) return Verdict::kFailed;
    for (const auto& [verdict, pattern] : markers_) {
      if (std::regex_search(output, pattern)) return verdict;
    }
    return default_;
  }

 private:
  std::vector<std::pair<Verdict, std::regex>> markers_;
  Verdict default_ = Verdict::kCovered;
};

// Output lists alternative analyses; covered when one has no null links.
class NoNullLinksJudge : public Judge {
 public:
  explicit NoNullLinksJudge(const JudgeSpec& spec)
      : null_(compile(param(spec, "null", "null"), "no-null-links")),
        separator_(compile(param(spec, "separator", "^\\s*$"),
                           "no-null-links")) {
    check_params(spec, {"null", "separator"});
  }

  Verdict judge(const std::string& output, std::size_t) const override {
    if (blank(output)) return Verdict::kFailed;
    std::vector<std::string> variants(1);
    std::istringstream in(output);
    std::string line;
    while (std::getline(in, line)) {
      if (std::regex_match(line, separator_)) {
        if (!blank(variants.back())) variants.emplace_back();
      } else {
        variants.back() += line + "\n";
      }
    }
    for (const auto& v : variants) {
      if (!blank(v) && !std::regex_search(v, null_)) return Verdict::kCovered;
    }
    return Verdict::kFragmented;
  }

 private:
  std::regex null_;
  std::regex separator_;
};

}  // namespace

std::unique_ptr<Judge> make_judge(const JudgeSpec& spec, OutputFormat format) {
  if (spec.name == "identity") {
    check_params(spec, {});
    return std::make_unique<IdentityJudge>();
  }
  if (spec.name == "single-root-ps") {
    if (format != OutputFormat::kBracketed) {
      throw Error(ErrorKind::kJudgeConfigError,
                  "single-root-ps needs bracketed output");
    }
    return std::make_unique<SingleRootJudge>(spec);
  }
  if (spec.name == "connected-dep") {
    return std::make_unique<ConnectedJudge>(spec, format);
  }
  if (spec.name == "marker") return std::make_unique<MarkerJudge>(spec);
  if (spec.name == "no-null-links") {
    return std::make_unique<NoNullLinksJudge>(spec);
  }
  throw Error(ErrorKind::kJudgeConfigError,
              fmt::format("unknown judge '{}'", spec.name));
}

}  // namespace fepa
