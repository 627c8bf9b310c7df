#include <fstream>
#include <set>

#include <fmt/format.h>

#include "commands.hpp"
#include "fepa/constituency.hpp"
#include "fepa/dependency.hpp"
#include "fepa/error.hpp"

namespace fepa::cli {
namespace {

enum class Family { kTrees, kGraphs, kGrs };

Family family_of_metric(const std::string& metric) {
  if (metric == "parseval" || metric == "la") return Family::kTrees;
  if (metric == "dep" || metric == "uas" || metric == "las" || metric == "lin") {
    return Family::kGraphs;
  }
  if (metric == "gr") return Family::kGrs;
  throw Error(ErrorKind::kInvalidArgument,
              fmt::format("unknown metric '{}' (parseval, la, dep, lin, gr)", metric));
}

void check_format(Family family, const std::string& format, const std::string& metric) {
  const bool ok = (family == Family::kTrees && format == "bracketed") ||
                  (family == Family::kGraphs &&
                   (format == "dep-tsv" || format == "conll" || format == "tiger")) ||
                  (family == Family::kGrs && format == "gr");
  if (!ok) {
    throw Error(ErrorKind::kFormatMismatch,
                fmt::format("metric '{}' cannot read '{}' input", metric, format));
  }
}

std::string default_format(Family family) {
  switch (family) {
    case Family::kTrees: return "bracketed";
    case Family::kGraphs: return "dep-tsv";
    case Family::kGrs: return "gr";
  }
  return "bracketed";
}

void check_sizes(std::size_t gold, std::size_t test) {
  if (gold != test) {
    throw Error(ErrorKind::kSentenceCountMismatch,
                fmt::format("gold has {} sentences, test has {}", gold, test),
                at_sentence(std::min(gold, test) + 1));
  }
}

Cell percent_real(double share) { return Cell::real(100.0 * share, 1); }

void add_parseval(Report& report, const std::string& prefix,
                  const ParsevalTotals& totals) {
  const auto& s = totals.sum;
  report.add(prefix + "precision", Cell::ratio(s.precision()));
  report.add(prefix + "recall", Cell::ratio(s.recall()));
  report.add(prefix + "f_score", percent_real(s.f()));
}

Report eval_trees(const EvalArgs& args, const std::string& metric) {
  io::BracketOptions options;
  options.allow_unlabeled = args.unlabeled_brackets;
  options.all_unlabeled = args.all_unlabeled;
  options.square_brackets = args.square_brackets;
  const auto gold = load_trees(args.gold, options);
  const auto test = load_trees(args.test, options);
  check_sizes(gold.size(), test.size());

  Report report;
  report.add("gold", Cell::text(args.gold));
  report.add("test", Cell::text(args.test));
  report.add("sentences", Cell::integer(static_cast<std::int64_t>(gold.size())));

  if (metric == "parseval") {
    report.title = "PARSEVAL";
    SpanOptions spans;
    spans.drop_root = args.drop_root;
    spans.drop_preterminals = args.drop_preterminals;
    const auto unlabeled = parseval_corpus(gold, test, false, spans);
    const auto labeled = parseval_corpus(gold, test, true, spans);
    add_parseval(report, "unlabeled_", unlabeled);
    add_parseval(report, "labeled_", labeled);
    report.add("crossing_brackets", Cell::integer(unlabeled.sum.crossing));
    report.add("mean_crossing", Cell::real(unlabeled.mean_crossing(), 3));

    auto& table = report.table("sentences", {"sentence", "matched", "gold", "test",
                                             "labeled_precision", "labeled_recall",
                                             "unlabeled_precision", "unlabeled_recall",
                                             "crossing"});
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const auto& u = unlabeled.sentences[i];
      const auto& l = labeled.sentences[i];
      table.add_row({Cell::integer(static_cast<std::int64_t>(i + 1)),
                     Cell::integer(l.matched), Cell::integer(l.gold),
                     Cell::integer(l.test), Cell::ratio(l.precision()),
                     Cell::ratio(l.recall()), Cell::ratio(u.precision()),
                     Cell::ratio(u.recall()), Cell::integer(u.crossing)});
    }
    return report;
  }

  report.title = "Leaf-ancestor";
  CostTable costs;
  if (!args.cost_table.empty()) {
    auto in = io::open_input(args.cost_table);
    try {
      costs = CostTable::read(*in);
    } catch (const Error&) {
      rethrow_at(args.cost_table);
    }
  }
  const auto totals = la_corpus(gold, test, costs);
  report.add("mean_sentence_score", Cell::real(totals.mean_sentence(), 3));
  report.add("mean_word_score", Cell::real(totals.mean_word(), 3));
  report.add("exact_match", Cell::ratio({static_cast<std::int64_t>(totals.exact),
                                         static_cast<std::int64_t>(gold.size())}));
  auto& table = report.table("words", {"sentence", "word", "form", "score"});
  for (std::size_t i = 0; i < totals.sentences.size(); ++i) {
    const auto tokens = gold.sentences[i].tokens();
    const auto& per_word = totals.sentences[i].per_word;
    for (std::size_t w = 0; w < per_word.size(); ++w) {
      table.add_row({Cell::integer(static_cast<std::int64_t>(i + 1)),
                     Cell::integer(static_cast<std::int64_t>(w + 1)),
                     Cell::text(tokens[w].form), Cell::real(per_word[w], 3)});
    }
  }
  return report;
}

Report eval_graphs(const EvalArgs& args, const std::string& metric,
                   const std::string& format, const Globals& globals) {
  const auto gold = load_graphs(args.gold, format, globals.permissive);
  const auto test = load_graphs(args.test, format, globals.permissive);
  check_sizes(gold.size(), test.size());

  Report report;
  report.add("gold", Cell::text(args.gold));
  report.add("test", Cell::text(args.test));
  report.add("sentences", Cell::integer(static_cast<std::int64_t>(gold.size())));

  if (metric == "lin") {
    report.title = args.labeled ? "Link categories (labeled)" : "Link categories";
    LinResult total;
    auto& table = report.table("tokens", {"sentence", "token", "form", "category"});
    for (std::size_t i = 0; i < gold.size(); ++i) {
      LinResult r;
      try {
        r = lin_classify(gold.sentences[i], test.sentences[i], args.labeled);
      } catch (const Error& e) {
        throw e.at(at_sentence(i + 1));
      }
      for (std::size_t t = 0; t < r.categories.size(); ++t) {
        table.add_row({Cell::integer(static_cast<std::int64_t>(i + 1)),
                       Cell::integer(static_cast<std::int64_t>(t + 1)),
                       Cell::text(gold.sentences[i].tokens()[t].form),
                       Cell::text(std::string(to_string(r.categories[t])))});
      }
      total += r;
    }
    report.add("precision", Cell::ratio(total.precision()));
    report.add("recall", Cell::ratio(total.recall()));
    report.add("f_score", percent_real(total.f()));
    return report;
  }

  report.title = "Dependency scores";
  DepOptions options;
  options.exclude_punct = args.exclude_punct;
  options.punct_tags.insert(args.punct_tags.begin(), args.punct_tags.end());
  const auto scores = dep_scores(gold, test, options);
  const auto& t = scores.total;
  report.add("uas", Cell::ratio(t.uas));
  report.add("las", Cell::ratio(t.las));
  report.add("da", Cell::ratio(t.da));
  report.add("ra", Cell::ratio(t.ra));
  report.add("cm", Cell::ratio(t.cm));
  report.add("labeled_cm", Cell::ratio(t.labeled_cm));
  auto& table = report.table("sentences", {"sentence", "uas", "las", "da", "ra", "cm"});
  for (std::size_t i = 0; i < scores.sentences.size(); ++i) {
    const auto& s = scores.sentences[i];
    table.add_row({Cell::integer(static_cast<std::int64_t>(i + 1)), Cell::ratio(s.uas),
                   Cell::ratio(s.las), Cell::ratio(s.da), Cell::ratio(s.ra),
                   Cell::ratio(s.cm)});
  }
  for (const auto& w : gold.warnings) report.add("warning", Cell::text(w));
  return report;
}

Report eval_grs(const EvalArgs& args) {
  GrHierarchy hierarchy = GrHierarchy::default_hierarchy();
  if (!args.hierarchy.empty()) {
    auto in = io::open_input(args.hierarchy);
    try {
      hierarchy = GrHierarchy::read(*in);
    } catch (const Error&) {
      rethrow_at(args.hierarchy);
    }
  }
  const auto gold = load_grs(args.gold);
  const auto test = load_grs(args.test);
  check_sizes(gold.size(), test.size());
  const auto result = gr_match(gold, test, hierarchy, GrMatchOptions{args.strict_gr});

  Report report;
  report.title = "Grammatical relations";
  report.add("gold", Cell::text(args.gold));
  report.add("test", Cell::text(args.test));
  report.add("sentences", Cell::integer(static_cast<std::int64_t>(gold.size())));
  report.add("precision", Cell::ratio(result.precision()));
  report.add("recall", Cell::ratio(result.recall()));
  report.add("f_score", percent_real(result.f()));
  auto& table = report.table("relations", {"relation", "gold", "test", "precision", "recall"});
  for (const auto& [name, s] : result.per_relation) {
    table.add_row({Cell::text(name), Cell::integer(s.gold), Cell::integer(s.test),
                   Cell::ratio(s.precision()), Cell::ratio(s.recall())});
  }
  auto& confusion = report.table("confusion", {"gold", "test", "count"});
  for (const auto& [key, n] : result.confusion) {
    confusion.add_row({Cell::text(key.first), Cell::text(key.second), Cell::integer(n)});
  }
  return report;
}

}  // namespace

Report cmd_eval(const EvalArgs& args, const Globals& globals) {
  const Family family = family_of_metric(args.metric);
  const std::string format = globals.format.empty() ? default_format(family) : globals.format;
  check_format(family, format, args.metric);
  switch (family) {
    case Family::kTrees: return eval_trees(args, args.metric);
    case Family::kGraphs: return eval_graphs(args, args.metric, format, globals);
    case Family::kGrs: return eval_grs(args);
  }
  return {};
}

}  // namespace fepa::cli
