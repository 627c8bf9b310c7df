#include "fepa/dependency.hpp"

#include <algorithm>
#include <sstream>

#include <fmt/format.h>

#include "fepa/error.hpp"
#include "fepa/io.hpp"

namespace fepa {
namespace {

// Same content as data/gr_hierarchy.tsv.
constexpr std::string_view kDefaultHierarchy = R"(mod	dependent
arg_mod	dependent
arg	dependent
aux	dependent
conj	dependent
det	dependent
ncmod	mod
xmod	mod
cmod	mod
subj	arg
comp	arg
ncsubj	subj
xsubj	subj
csubj	subj
obj	comp
clausal	comp
dobj	obj
obj2	obj
iobj	obj
xcomp	clausal
ccomp	clausal
@tolerant	mod
@tolerant	subj
@tolerant	clausal
@tolerant	obj
@open_type	mod
@open_type	iobj
@open_type	clausal
@type_first	arg_mod
@type_first	aux
@type_first	conj
)";

void check_sizes(const DepGraph& gold, const DepGraph& test) {
  if (gold.size() != test.size()) {
    throw Error(ErrorKind::kTokenCountMismatch,
                fmt::format("gold has {} tokens, test has {}", gold.size(),
                            test.size()));
  }
}

}  // namespace

bool is_punctuation(const Token& token, const DepOptions& options) {
  if (!options.punct_tags.empty()) {
    return token.pos && options.punct_tags.count(*token.pos) > 0;
  }
  return !token.form.empty() &&
         std::all_of(token.form.begin(), token.form.end(), [](char c) {
           return std::ispunct(static_cast<unsigned char>(c));
         });
}

DepScorecard& DepScorecard::operator+=(const DepScorecard& other) {
  uas += other.uas;
  las += other.las;
  da += other.da;
  ra += other.ra;
  cm += other.cm;
  labeled_cm += other.labeled_cm;
  return *this;
}

DepScorecard dep_scores(const DepGraph& gold, const DepGraph& test,
                        const DepOptions& options) {
  check_sizes(gold, test);
  DepScorecard card;
  bool all_heads = true;
  bool all_labels = true;
  for (int i = 1; i <= static_cast<int>(gold.size()); ++i) {
    if (options.exclude_punct && is_punctuation(gold.token(i), options)) {
      continue;
    }
    const bool head_ok = gold.head(i) == test.head(i);
    const bool label_ok = gold.label(i) == test.label(i);
    ++card.uas.den;
    ++card.las.den;
    if (head_ok) ++card.uas.num;
    if (head_ok && label_ok) ++card.las.num;
    if (gold.head(i) != 0) {
      ++card.da.den;
      if (head_ok) ++card.da.num;
    }
    all_heads = all_heads && head_ok;
    all_labels = all_labels && label_ok;
  }
  if (gold.is_tree() && test.is_tree()) {
    card.ra = {gold.roots() == test.roots() ? 1 : 0, 1};
    card.cm = {all_heads ? 1 : 0, 1};
    card.labeled_cm = {all_heads && all_labels ? 1 : 0, 1};
  }
  return card;
}

DepCorpusScores dep_scores(const Corpus<DepGraph>& gold,
                           const Corpus<DepGraph>& test,
                           const DepOptions& options) {
  if (gold.size() != test.size()) {
    throw Error(ErrorKind::kSentenceCountMismatch,
                fmt::format("{} gold sentences but {} test sentences",
                            gold.size(), test.size()));
  }
  DepCorpusScores scores;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    DepScorecard card;
    try {
      card = dep_scores(gold.sentences[i], test.sentences[i], options);
    } catch (const Error& e) {
      throw e.at(at_sentence(i + 1));
    }
    scores.total += card;
    scores.sentences.push_back(card);
  }
  return scores;
}

std::string_view to_string(LinkCategory category) {
  switch (category) {
    case LinkCategory::kCorrect: return "correct";
    case LinkCategory::kIncorrect: return "incorrect";
    case LinkCategory::kMissing: return "missing";
    case LinkCategory::kSpurious: return "spurious";
  }
  return "incorrect";
}

LinResult& LinResult::operator+=(const LinResult& other) {
  categories.insert(categories.end(), other.categories.begin(),
                    other.categories.end());
  correct_links += other.correct_links;
  gold_links += other.gold_links;
  test_links += other.test_links;
  return *this;
}

LinResult lin_classify(const DepGraph& gold, const DepGraph& test,
                       bool labeled) {
  check_sizes(gold, test);
  LinResult result;
  for (int i = 1; i <= static_cast<int>(gold.size()); ++i) {
    const bool in_gold = gold.head(i) != 0;
    const bool in_test = test.head(i) != 0;
    if (in_gold) ++result.gold_links;
    if (in_test) ++result.test_links;
    LinkCategory category;
    if (in_gold && in_test) {
      const bool same = gold.head(i) == test.head(i) &&
                        (!labeled || gold.label(i) == test.label(i));
      category = same ? LinkCategory::kCorrect : LinkCategory::kIncorrect;
      if (same) ++result.correct_links;
    } else if (in_gold) {
      category = LinkCategory::kMissing;
    } else if (in_test) {
      category = LinkCategory::kSpurious;
    } else {
      category = LinkCategory::kCorrect;
    }
    result.categories.push_back(category);
  }
  return result;
}

GrHierarchy GrHierarchy::read(std::istream& in) {
  GrHierarchy h;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = io::split_ws(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() != 2) {
      throw Error(ErrorKind::kBadHierarchy, "expected two fields",
                  at_line(line_no));
    }
    const auto& key = fields[0];
    if (key == "@tolerant") {
      h.tolerant_.insert(fields[1]);
    } else if (key == "@open_type") {
      h.open_type_.insert(fields[1]);
    } else if (key == "@type_first") {
      h.type_first_.insert(fields[1]);
    } else if (key.front() == '@') {
      throw Error(ErrorKind::kBadHierarchy,
                  fmt::format("unknown directive '{}'", key), at_line(line_no));
    } else if (key == kRoot) {
      throw Error(ErrorKind::kBadHierarchy, "the root relation has no parent",
                  at_line(line_no));
    } else if (!h.parent_.emplace(key, fields[1]).second) {
      throw Error(ErrorKind::kBadHierarchy,
                  fmt::format("'{}' has two parents", key), at_line(line_no));
    }
  }
  for (const auto& [child, parent] : h.parent_) {
    std::string cur = child;
    std::size_t steps = 0;
    while (cur != kRoot) {
      auto it = h.parent_.find(cur);
      if (it == h.parent_.end()) {
        throw Error(ErrorKind::kBadHierarchy,
                    fmt::format("'{}' does not reach '{}'", child, kRoot));
      }
      if (++steps > h.parent_.size()) {
        throw Error(ErrorKind::kBadHierarchy,
                    fmt::format("cycle through '{}'", child));
      }
      cur = it->second;
    }
  }
  for (const auto* set : {&h.tolerant_, &h.open_type_, &h.type_first_}) {
    for (const auto& name : *set) {
      if (!h.known(name)) {
        throw Error(ErrorKind::kBadHierarchy,
                    fmt::format("directive names unknown relation '{}'", name));
      }
    }
  }
  return h;
}

GrHierarchy GrHierarchy::default_hierarchy() {
  std::istringstream in{std::string(kDefaultHierarchy)};
  return read(in);
}

bool GrHierarchy::known(const std::string& name) const {
  return name == kRoot || parent_.count(name) > 0;
}

std::optional<std::string> GrHierarchy::parent(const std::string& name) const {
  auto it = parent_.find(name);
  if (it == parent_.end()) return std::nullopt;
  return it->second;
}

bool GrHierarchy::in_family(const std::string& name,
                            const std::string& family) const {
  std::optional<std::string> cur = name;
  while (cur) {
    if (*cur == family) return true;
    cur = parent(*cur);
  }
  return false;
}

bool GrHierarchy::tolerant(const std::string& a, const std::string& b) const {
  if (parent(a) != b && parent(b) != a) return false;
  return std::any_of(tolerant_.begin(), tolerant_.end(),
                     [&](const std::string& family) {
                       return in_family(a, family) && in_family(b, family);
                     });
}

bool GrHierarchy::marked(const std::string& name,
                         const std::set<std::string>& set) const {
  return std::any_of(set.begin(), set.end(), [&](const std::string& family) {
    return in_family(name, family);
  });
}

bool GrHierarchy::open_type(const std::string& name) const {
  return marked(name, open_type_);
}

bool GrHierarchy::type_first(const std::string& name) const {
  return open_type(name) || marked(name, type_first_);
}

GrSlots GrHierarchy::slots(const GrRelation& relation) const {
  const auto& args = relation.args;
  if (args.size() >= 3 && type_first(relation.name)) {
    return {args[0], args[1], args[2]};
  }
  return {std::nullopt, args.at(0), args.at(1)};
}

GrMatchResult& GrMatchResult::operator+=(const GrMatchResult& other) {
  matched += other.matched;
  gold += other.gold;
  test += other.test;
  for (const auto& [name, s] : other.per_relation) {
    auto& mine = per_relation[name];
    mine.gold += s.gold;
    mine.test += s.test;
    mine.matched_gold += s.matched_gold;
    mine.matched_test += s.matched_test;
  }
  for (const auto& [key, n] : other.confusion) confusion[key] += n;
  return *this;
}

bool gr_compatible(const GrRelation& gold, const GrRelation& test,
                   const GrHierarchy& hierarchy) {
  if (gold.name != test.name && !hierarchy.tolerant(gold.name, test.name)) {
    return false;
  }
  const GrSlots g = hierarchy.slots(gold);
  const GrSlots t = hierarchy.slots(test);
  if (!g.head.matches(t.head) || !g.dependent.matches(t.dependent)) {
    return false;
  }
  const GrRef unfilled{"_", std::nullopt};
  const GrRef g_type = g.type.value_or(unfilled);
  const GrRef t_type = t.type.value_or(unfilled);
  if (t_type.unfilled() && hierarchy.open_type(test.name)) return true;
  return g_type.matches(t_type);
}

GrMatchResult gr_match(const GrSet& gold, const GrSet& test,
                       const GrHierarchy& hierarchy,
                       const GrMatchOptions& options) {
  if (options.strict) {
    for (const auto* set : {&gold, &test}) {
      for (const auto& r : set->relations) {
        if (!hierarchy.known(r.name)) {
          throw Error(ErrorKind::kUnknownRelation,
                      fmt::format("relation '{}' is not in the hierarchy",
                                  r.name));
        }
      }
    }
  }
  GrMatchResult result;
  result.gold = static_cast<std::int64_t>(gold.relations.size());
  result.test = static_cast<std::int64_t>(test.relations.size());
  for (const auto& r : gold.relations) ++result.per_relation[r.name].gold;
  for (const auto& r : test.relations) ++result.per_relation[r.name].test;

  std::vector<bool> gold_used(gold.relations.size(), false);
  std::vector<bool> test_used(test.relations.size(), false);
  for (std::size_t gi = 0; gi < gold.relations.size(); ++gi) {
    const auto& g = gold.relations[gi];
    std::optional<std::size_t> pick;
    for (int pass = 0; pass < 2 && !pick; ++pass) {
      for (std::size_t ti = 0; ti < test.relations.size(); ++ti) {
        const auto& t = test.relations[ti];
        if (test_used[ti] || (pass == 0) != (g.name == t.name)) continue;
        if (gr_compatible(g, t, hierarchy)) {
          pick = ti;
          break;
        }
      }
    }
    if (!pick) continue;
    const auto& t = test.relations[*pick];
    gold_used[gi] = true;
    test_used[*pick] = true;
    ++result.matched;
    ++result.per_relation[g.name].matched_gold;
    ++result.per_relation[t.name].matched_test;
    ++result.confusion[{g.name, t.name}];
  }

  // Leftovers: pair up relations that at least link the same two words.
  for (std::size_t gi = 0; gi < gold.relations.size(); ++gi) {
    if (gold_used[gi]) continue;
    const auto& g = gold.relations[gi];
    const GrSlots gs = hierarchy.slots(g);
    std::string partner(kNoRelation);
    for (std::size_t ti = 0; ti < test.relations.size(); ++ti) {
      if (test_used[ti]) continue;
      const GrSlots ts = hierarchy.slots(test.relations[ti]);
      if (gs.head.matches(ts.head) && gs.dependent.matches(ts.dependent)) {
        test_used[ti] = true;
        partner = test.relations[ti].name;
        break;
      }
    }
    ++result.confusion[{g.name, partner}];
  }
  for (std::size_t ti = 0; ti < test.relations.size(); ++ti) {
    if (!test_used[ti]) {
      ++result.confusion[{std::string(kNoRelation), test.relations[ti].name}];
    }
  }
  return result;
}

GrMatchResult gr_match(const Corpus<GrSet>& gold, const Corpus<GrSet>& test,
                       const GrHierarchy& hierarchy,
                       const GrMatchOptions& options) {
  if (gold.size() != test.size()) {
    throw Error(ErrorKind::kSentenceCountMismatch,
                fmt::format("{} gold sentences but {} test sentences",
                            gold.size(), test.size()));
  }
  GrMatchResult total;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    try {
      total += gr_match(gold.sentences[i], test.sentences[i], hierarchy,
                        options);
    } catch (const Error& e) {
      throw e.at(at_sentence(i + 1));
    }
  }
  return total;
}

}  // namespace fepa
