#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "fepa/error.hpp"
#include "fepa/report.hpp"

using namespace fepa;

namespace {

Report sample() {
  Report r;
  r.title = "scores";
  r.add("precision", Cell::ratio({9, 12}));
  r.add("f_score", Cell::real(0.78260869, 3));
  r.add("sentences", Cell::integer(1));
  r.add("note", Cell::text("a, \"quoted\" value"));
  auto& t = r.table("per_sentence", {"id", "uas", "mean", "missing"});
  t.add_row({Cell::integer(1), Cell::ratio({6, 7}), Cell::real(2.0 / 3.0, 2), Cell::empty()});
  t.add_row({Cell::integer(2), Cell::ratio({0, 0}), Cell::maybe(std::nullopt), Cell::text("x")});
  return r;
}

std::string render(const Report& r, ReportFormat f) {
  std::ostringstream out;
  write_report(out, r, f);
  return out.str();
}

}  // namespace

TEST_CASE("cells render") {
  CHECK(Cell::ratio({9, 12}).render() == "9/12 (75.0%)");
  CHECK(Cell::ratio({0, 0}).render() == "0/0 (n/a)");
  CHECK(Cell::real(0.78260869, 3).render() == "0.783");
  CHECK(Cell::real(2.5, 0).render() == "3");
  CHECK(Cell::empty().render() == "-");
  CHECK(Cell::integer(-4).render() == "-4");
  CHECK(round_decimals(44.5839, 2) == doctest::Approx(44.58));
}

TEST_CASE("json report") {
  const auto doc = nlohmann::json::parse(render(sample(), ReportFormat::kJson));
  CHECK(doc["title"] == "scores");
  CHECK(doc["summary"]["precision"]["num"] == 9);
  CHECK(doc["summary"]["precision"]["den"] == 12);
  CHECK(doc["summary"]["precision"]["percent"].get<double>() == doctest::Approx(75.0));
  CHECK(doc["summary"]["f_score"].get<double>() == doctest::Approx(0.783));
  const auto& rows = doc["tables"]["per_sentence"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["mean"].get<double>() == doctest::Approx(0.67));
  CHECK(rows[0]["missing"].is_null());
  CHECK(rows[1]["uas"]["percent"].is_null());
}

TEST_CASE("csv report") {
  const auto text = render(sample(), ReportFormat::kCsv);
  CHECK(text.find("# summary\nkey,value\n") == 0);
  CHECK(text.find("note,\"a, \"\"quoted\"\" value\"") != std::string::npos);
  CHECK(text.find("# per_sentence\nid,uas_num,uas_den,uas_pct,mean,missing\n") != std::string::npos);
  CHECK(text.find("1,6,7,85.7,0.67,\n") != std::string::npos);
  CHECK(text.find("2,0,0,,,x\n") != std::string::npos);
}

TEST_CASE("text report agrees with json numbers") {
  const auto r = sample();
  const auto text = render(r, ReportFormat::kTable);
  const auto doc = nlohmann::json::parse(render(r, ReportFormat::kJson));
  CHECK(text.find("scores\n\n") == 0);
  CHECK(text.find("precision  9/12 (75.0%)") != std::string::npos);
  std::ostringstream f;
  f << doc["summary"]["f_score"].get<double>();
  CHECK(text.find(f.str()) != std::string::npos);
  CHECK(text.find("id  uas          mean  missing\n") != std::string::npos);
  CHECK(text.find(" 1  6/7 (85.7%)  0.67        -\n") != std::string::npos);
  // No line ends in a space.
  CHECK(text.find(" \n") == std::string::npos);
}

TEST_CASE("report format names") {
  CHECK(parse_report_format("json") == ReportFormat::kJson);
  CHECK(parse_report_format("table") == ReportFormat::kTable);
  CHECK_THROWS_AS(parse_report_format("xml"), Error);
}
