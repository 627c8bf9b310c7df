#include "fepa/compare.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include <json.hpp>

#include "fepa/error.hpp"
#include "fepa/io.hpp"

namespace fepa {

double level_detail(std::size_t tagset_size) {
  return tagset_size == 0 ? 0.0 : std::log10(static_cast<double>(tagset_size));
}

double detail_score(std::size_t pos_tagset_size, std::size_t syntax_tagset_size) {
  return level_detail(pos_tagset_size) / 2.0 + level_detail(syntax_tagset_size);
}

OutputSubtlety measure_output_subtlety(std::span<const SentenceAnalyses> outputs,
                                       const std::set<std::string>& markers) {
  OutputSubtlety out;
  for (const auto& sentence : outputs) {
    if (sentence.empty()) continue;
    ++out.sentences;
    out.analyses += sentence.size();
    for (const auto& tag : sentence.front()) {
      if (markers.contains(tag)) ++out.underspecified;
    }
  }
  if (out.sentences > 0) {
    const auto n = static_cast<double>(out.sentences);
    out.underspec_rate = static_cast<double>(out.underspecified) / n;
    out.ambiguity = static_cast<double>(out.analyses) / n;
  }
  return out;
}

double combined_preciseness(double f_score, double detail, double ambiguity,
                            double underspec_rate) {
  return f_score * detail / (ambiguity * (1.0 + underspec_rate));
}

std::string_view to_string(Criterion criterion) {
  switch (criterion) {
    case Criterion::kPreciseness: return "preciseness";
    case Criterion::kCoverage: return "coverage";
    case Criterion::kRobustness: return "robustness";
    case Criterion::kEfficiency: return "efficiency";
    case Criterion::kSubtlety: return "subtlety";
  }
  return "preciseness";
}

Criterion parse_criterion(std::string_view text) {
  for (Criterion c : kAllCriteria) {
    if (to_string(c) == text) return c;
  }
  throw Error(ErrorKind::kInvalidArgument,
              fmt::format("unknown criterion '{}'", text));
}

std::string_view to_string(RankMethod method) {
  return method == RankMethod::kDense ? "dense" : "competition";
}

RankMethod parse_rank_method(std::string_view text) {
  if (text == "dense") return RankMethod::kDense;
  if (text == "competition") return RankMethod::kCompetition;
  throw Error(ErrorKind::kInvalidArgument,
              fmt::format("unknown rank method '{}'", text));
}

namespace {

// Assigns ranks to indices already sorted best first; `same(a, b)` tells
// whether two neighbours tie.
template <typename Same>
std::vector<int> assign_ranks(const std::vector<std::size_t>& order,
                              RankMethod method, Same same) {
  std::vector<int> ranks(order.size(), 0);
  int rank = 0;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    if (pos == 0 || !same(order[pos - 1], order[pos])) {
      rank = method == RankMethod::kCompetition ? static_cast<int>(pos) + 1
                                                : rank + 1;
    }
    ranks[order[pos]] = rank;
  }
  return ranks;
}

std::vector<std::size_t> iota_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

double round_to(double value, std::optional<int> decimals) {
  if (!decimals) return value;
  const double scale = std::pow(10.0, *decimals);
  return std::round(value * scale) / scale;
}

}  // namespace

std::vector<int> rank_values(std::span<const double> values,
                             Orientation orientation, RankMethod method) {
  auto order = iota_order(values.size());
  const bool higher = orientation == Orientation::kHigherBetter;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return higher ? values[a] > values[b] : values[a] < values[b];
  });
  return assign_ranks(order, method, [&](std::size_t a, std::size_t b) {
    return values[a] == values[b];
  });
}

std::vector<int> composite_rank(std::span<const std::vector<int>> columns,
                                RankMethod method,
                                const std::vector<int>* tie_break) {
  if (columns.empty()) return {};
  const std::size_t n = columns.front().size();
  // Every parser has the same number of sub-ranks, so sums order like means.
  std::vector<long> sums(n, 0);
  for (const auto& column : columns) {
    if (column.size() != n) {
      throw Error(ErrorKind::kInvalidArgument, "sub-rank columns differ in length");
    }
    for (std::size_t i = 0; i < n; ++i) sums[i] += column[i];
  }
  auto key = [&](std::size_t i) {
    return std::pair{sums[i], tie_break ? (*tie_break)[i] : 0};
  };
  auto order = iota_order(n);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  return assign_ranks(order, method,
                      [&](std::size_t a, std::size_t b) { return key(a) == key(b); });
}

// ---------------------------------------------------------------------------
// Profiles.

namespace {

using nlohmann::json;

[[noreturn]] void bad_profile(const std::string& message) {
  throw Error(ErrorKind::kConfigError, message);
}

double number(const json& object, const char* key, const std::string& where) {
  const auto it = object.find(key);
  if (it == object.end()) bad_profile(fmt::format("{}: missing '{}'", where, key));
  if (!it->is_number()) bad_profile(fmt::format("{}: '{}' is not a number", where, key));
  return it->get<double>();
}

double number_or(const json& object, const char* key, double fallback,
                 const std::string& where) {
  return object.contains(key) ? number(object, key, where) : fallback;
}

std::size_t count(const json& object, const char* key, const std::string& where) {
  const double v = number(object, key, where);
  if (v < 0 || v != std::floor(v)) {
    bad_profile(fmt::format("{}: '{}' must be a non-negative integer", where, key));
  }
  return static_cast<std::size_t>(v);
}

double detail_from(const json& object, const std::string& where) {
  if (object.contains("detail")) return number(object, "detail", where);
  return detail_score(count(object, "pos_tags", where),
                      count(object, "syntax_tags", where));
}

}  // namespace

ParserProfile parse_profile(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    bad_profile(fmt::format("profile is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object()) bad_profile("profile must be a JSON object");

  ParserProfile p;
  if (!doc.contains("name") || !doc["name"].is_string()) {
    bad_profile("profile needs a string 'name'");
  }
  p.name = doc["name"].get<std::string>();
  const std::string where = fmt::format("profile '{}'", p.name);

  for (const auto& [key, value] : doc.items()) {
    if (key == "name") continue;
    if (key == "preciseness") {
      if (value.is_number()) {
        p.preciseness = value.get<double>();
      } else if (value.is_object()) {
        const std::string at = where + " preciseness";
        p.preciseness = combined_preciseness(
            number(value, "f_score", at), detail_from(value, at),
            number_or(value, "ambiguity", 1.0, at),
            number_or(value, "underspec", 0.0, at));
      } else {
        bad_profile(where + ": 'preciseness' must be a number or an object");
      }
    } else if (key == "coverage" || key == "efficiency") {
      if (!value.is_number()) bad_profile(fmt::format("{}: '{}' is not a number", where, key));
      (key == "coverage" ? p.coverage : p.efficiency) = value.get<double>();
    } else if (key == "robustness") {
      const std::string at = where + " robustness";
      if (!value.is_object()) bad_profile(at + " must be an object");
      p.robustness = RobustnessInputs{number(value, "noisy", at),
                                      number(value, "degradation", at),
                                      number(value, "terminated_pct", at)};
    } else if (key == "subtlety") {
      const std::string at = where + " subtlety";
      if (!value.is_object()) bad_profile(at + " must be an object");
      p.subtlety = SubtletyInputs{detail_from(value, at),
                                  number_or(value, "ambiguity", 1.0, at),
                                  number_or(value, "underspec", 0.0, at)};
    } else if (key == "ranks") {
      if (!value.is_object()) bad_profile(where + ": 'ranks' must be an object");
      for (const auto& [name, rank] : value.items()) {
        Criterion c;
        try {
          c = parse_criterion(name);
        } catch (const Error&) {
          bad_profile(fmt::format("{}: unknown criterion '{}' in ranks", where, name));
        }
        if (!rank.is_number_integer() || rank.get<int>() < 1) {
          bad_profile(fmt::format("{}: rank for '{}' must be a positive integer",
                                  where, name));
        }
        p.ranks[c] = rank.get<int>();
      }
    } else {
      bad_profile(fmt::format("{}: unknown key '{}'", where, key));
    }
  }
  return p;
}

ParserProfile read_profile(std::istream& in) {
  return parse_profile(io::read_all(in));
}

// ---------------------------------------------------------------------------

namespace {

bool has_raw(const ParserProfile& p, Criterion c) {
  switch (c) {
    case Criterion::kPreciseness: return p.preciseness.has_value();
    case Criterion::kCoverage: return p.coverage.has_value();
    case Criterion::kRobustness: return p.robustness.has_value();
    case Criterion::kEfficiency: return p.efficiency.has_value();
    case Criterion::kSubtlety: return p.subtlety.has_value();
  }
  return false;
}

std::vector<double> column(std::span<const ParserProfile> profiles,
                           auto&& get, std::optional<int> decimals) {
  std::vector<double> out;
  out.reserve(profiles.size());
  for (const auto& p : profiles) out.push_back(round_to(get(p), decimals));
  return out;
}

std::vector<double> mean_of(std::span<const std::vector<int>> columns) {
  std::vector<double> out(columns.front().size(), 0.0);
  for (const auto& col : columns) {
    for (std::size_t i = 0; i < col.size(); ++i) out[i] += col[i];
  }
  for (double& v : out) v /= static_cast<double>(columns.size());
  return out;
}

}  // namespace

RankTable rank_criteria(std::span<const ParserProfile> profiles,
                        const RankOptions& options) {
  if (profiles.size() < 2) {
    throw Error(ErrorKind::kTooFewProfiles,
                fmt::format("need at least 2 profiles, got {}", profiles.size()));
  }
  RankTable table;
  for (const auto& p : profiles) table.parsers.push_back(p.name);
  const auto method = options.method;
  const auto dec = options.decimals;

  for (Criterion c : kAllCriteria) {
    const auto explicit_count = std::count_if(
        profiles.begin(), profiles.end(),
        [&](const ParserProfile& p) { return p.ranks.contains(c); });
    const auto raw_count = std::count_if(
        profiles.begin(), profiles.end(),
        [&](const ParserProfile& p) { return has_raw(p, c); });
    const auto n = static_cast<std::ptrdiff_t>(profiles.size());

    if (explicit_count == n) {
      std::vector<int> ranks;
      for (const auto& p : profiles) ranks.push_back(p.ranks.at(c));
      table.ranks[c] = std::move(ranks);
      table.criteria.push_back(c);
      continue;
    }
    if (raw_count != n) {
      if (explicit_count == 0 && raw_count == 0) continue;
      for (const auto& p : profiles) {
        if (!p.ranks.contains(c) && !has_raw(p, c)) {
          bad_profile(fmt::format("profile '{}' has no {} score or rank", p.name,
                                  to_string(c)));
        }
      }
      bad_profile(fmt::format(
          "{}: profiles mix explicit ranks and raw scores", to_string(c)));
    }

    table.criteria.push_back(c);
    switch (c) {
      case Criterion::kPreciseness:
      case Criterion::kCoverage:
      case Criterion::kEfficiency: {
        auto values = column(profiles, [c](const ParserProfile& p) {
          return c == Criterion::kPreciseness ? *p.preciseness
                 : c == Criterion::kCoverage  ? *p.coverage
                                              : *p.efficiency;
        }, dec);
        table.ranks[c] = rank_values(values,
                                     c == Criterion::kEfficiency
                                         ? Orientation::kLowerBetter
                                         : Orientation::kHigherBetter,
                                     method);
        table.values[c] = std::move(values);
        break;
      }
      case Criterion::kRobustness: {
        const auto noisy = rank_values(
            column(profiles, [](const ParserProfile& p) { return p.robustness->noisy_score; }, dec),
            Orientation::kHigherBetter, method);
        const auto degradation = rank_values(
            column(profiles, [](const ParserProfile& p) { return p.robustness->degradation; }, dec),
            Orientation::kLowerBetter, method);
        const auto stability = rank_values(
            column(profiles, [](const ParserProfile& p) { return p.robustness->terminated_pct; }, dec),
            Orientation::kLowerBetter, method);
        const std::vector<std::vector<int>> cols{noisy, degradation, stability};
        table.ranks[c] = composite_rank(
            cols, method, options.robustness_tie_break ? &stability : nullptr);
        table.values[c] = mean_of(cols);
        table.subranks[c] = {{"noisy", noisy},
                             {"degradation", degradation},
                             {"stability", stability}};
        break;
      }
      case Criterion::kSubtlety: {
        const auto detail = rank_values(
            column(profiles, [](const ParserProfile& p) { return p.subtlety->detail; }, dec),
            Orientation::kHigherBetter, method);
        const auto residue = rank_values(
            column(profiles, [](const ParserProfile& p) {
              return p.subtlety->ambiguity * (1.0 + p.subtlety->underspec_rate);
            }, dec),
            Orientation::kLowerBetter, method);
        const std::vector<std::vector<int>> cols{detail, residue};
        table.ranks[c] = composite_rank(cols, method);
        table.values[c] = mean_of(cols);
        table.subranks[c] = {{"detail", detail}, {"ambiguity", residue}};
        break;
      }
    }
  }
  return table;
}

std::vector<Standing> weighted_compare(const RankTable& table,
                                       const std::map<Criterion, double>& weights,
                                       std::span<const Criterion> tie_break,
                                       RankMethod method) {
  for (const auto& [c, w] : weights) {
    if (w < 0 || !std::isfinite(w)) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("weight for {} must be finite and >= 0", to_string(c)));
    }
    if (w > 0 && !table.ranks.contains(c)) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("weight given for {} but no profile ranks it",
                              to_string(c)));
    }
  }
  for (Criterion c : tie_break) {
    if (!table.ranks.contains(c)) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("tie-break criterion {} is not ranked", to_string(c)));
    }
  }

  const std::size_t n = table.parsers.size();
  std::vector<double> weighted(n, 0.0);
  double total = 0.0;
  for (Criterion c : table.criteria) {
    const auto it = weights.find(c);
    const double w = it == weights.end() ? 1.0 : it->second;
    if (w == 0.0) continue;
    total += w;
    const auto& ranks = table.ranks.at(c);
    for (std::size_t i = 0; i < n; ++i) weighted[i] += w * ranks[i];
  }
  if (total == 0.0) {
    throw Error(ErrorKind::kAllZeroWeights, "every criterion has weight 0");
  }
  for (double& v : weighted) v /= total;

  auto near = [](double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  // <0, 0, >0 comparison of two parsers, best first.
  auto compare = [&](std::size_t a, std::size_t b) {
    if (!near(weighted[a], weighted[b])) return weighted[a] < weighted[b] ? -1 : 1;
    for (Criterion c : tie_break) {
      const auto& r = table.ranks.at(c);
      if (r[a] != r[b]) return r[a] < r[b] ? -1 : 1;
    }
    return 0;
  };

  auto order = iota_order(n);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return compare(a, b) < 0; });
  const auto ranks = assign_ranks(order, method, [&](std::size_t a, std::size_t b) {
    return compare(a, b) == 0;
  });

  std::vector<Standing> out;
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t i = order[pos];
    const bool tied = (pos > 0 && compare(order[pos - 1], i) == 0) ||
                      (pos + 1 < n && compare(i, order[pos + 1]) == 0);
    out.push_back({table.parsers[i], weighted[i], ranks[i], tied});
  }
  return out;
}

}  // namespace fepa
