#include <charconv>

#include <fmt/format.h>

#include "commands.hpp"
#include "fepa/compare.hpp"
#include "fepa/error.hpp"

namespace fepa::cli {
namespace {

std::pair<Criterion, double> parse_weight(const std::string& text) {
  const auto eq = text.find('=');
  if (eq != std::string::npos) {
    const Criterion c = parse_criterion(std::string_view(text).substr(0, eq));
    const std::string value = text.substr(eq + 1);
    double w = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), w);
    if (ec == std::errc() && ptr == value.data() + value.size()) return {c, w};
  }
  throw Error(ErrorKind::kInvalidArgument,
              fmt::format("expected criterion=weight, got '{}'", text));
}

}  // namespace

Report cmd_compare(const CompareArgs& args, const Globals&) {
  std::vector<ParserProfile> profiles;
  for (const auto& path : args.profiles) {
    auto in = io::open_input(path);
    try {
      profiles.push_back(read_profile(*in));
    } catch (const Error&) {
      rethrow_at(path);
    }
  }
  RankOptions options;
  options.method = parse_rank_method(args.rank_method);
  options.decimals = args.decimals;
  options.robustness_tie_break = !args.no_robustness_tie_break;
  const auto table = rank_criteria(profiles, options);

  std::map<Criterion, double> weights;
  for (const auto& w : args.weights) {
    const auto [c, value] = parse_weight(w);
    weights[c] = value;
  }
  std::vector<Criterion> tie_break;
  for (const auto& name : args.tie_break) tie_break.push_back(parse_criterion(name));
  const auto standings = weighted_compare(table, weights, tie_break, options.method);

  Report report;
  report.title = "Parser comparison";
  report.add("profiles", Cell::integer(static_cast<std::int64_t>(profiles.size())));
  report.add("rank_method", Cell::text(std::string(to_string(options.method))));
  for (Criterion c : table.criteria) {
    const auto it = weights.find(c);
    report.add(fmt::format("weight.{}", to_string(c)),
               Cell::real(it == weights.end() ? 1.0 : it->second, 2));
  }

  std::vector<std::string> columns{"parser"};
  for (Criterion c : table.criteria) columns.emplace_back(to_string(c));
  auto& ranks = report.table("criterion_ranks", columns);
  for (std::size_t i = 0; i < table.parsers.size(); ++i) {
    std::vector<Cell> row{Cell::text(table.parsers[i])};
    for (Criterion c : table.criteria) row.push_back(Cell::integer(table.ranks.at(c)[i]));
    ranks.add_row(std::move(row));
  }

  for (const auto& [c, subs] : table.subranks) {
    std::vector<std::string> cols{"parser"};
    for (const auto& [name, _] : subs) cols.push_back(name);
    cols.insert(cols.end(), {"mean", "rank"});
    auto& t = report.table(fmt::format("{}_subranks", to_string(c)), cols);
    for (std::size_t i = 0; i < table.parsers.size(); ++i) {
      std::vector<Cell> row{Cell::text(table.parsers[i])};
      for (const auto& [name, values] : subs) row.push_back(Cell::integer(values[i]));
      row.push_back(Cell::real(table.values.at(c)[i], 2));
      row.push_back(Cell::integer(table.ranks.at(c)[i]));
      t.add_row(std::move(row));
    }
  }

  auto& overall = report.table("overall", {"rank", "parser", "score", "tied"});
  for (const auto& s : standings) {
    overall.add_row({Cell::integer(s.rank), Cell::text(s.parser), Cell::real(s.score, 3),
                     Cell::text(s.tied ? "yes" : "no")});
  }
  return report;
}

}  // namespace fepa::cli
