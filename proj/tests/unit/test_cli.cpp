#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fepa/cli.hpp"
#include "fepa/io.hpp"
#include "support.hpp"

using namespace fepa;
using nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;

  json doc() const { return json::parse(out); }
};

Outcome fepa_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fepa");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fx(std::string_view name) { return testing::fixture(name).string(); }

std::string write(const testing::TempDir& dir, std::string_view name, const std::string& text) {
  const auto path = dir.path() / name;
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

std::vector<std::string> profile_paths() {
  std::vector<std::string> out;
  for (const char* n : {"app", "candc", "lgp", "minipar", "sp", "statccg"}) {
    out.push_back(fx(std::string("profiles/") + n + ".json"));
  }
  return out;
}

std::map<std::string, int> overall(const json& doc) {
  std::map<std::string, int> out;
  for (const auto& row : doc["tables"]["overall"]) {
    out[row["parser"].get<std::string>()] = row["rank"].get<int>();
  }
  return out;
}

}  // namespace

TEST_CASE("eval parseval on the bracket fixtures") {
  const auto r = fepa_cli({"--report", "json", "eval", "--metric", "parseval", "--all-unlabeled",
                           "--square-brackets", "--gold", fx("parseval_gold.txt"), "--test",
                           fx("parseval_test.txt")});
  REQUIRE(r.code == 0);
  const auto doc = r.doc();
  CHECK(doc["summary"]["unlabeled_precision"]["num"] == 9);
  CHECK(doc["summary"]["unlabeled_precision"]["den"] == 12);
  CHECK(doc["summary"]["unlabeled_recall"]["den"] == 11);
  CHECK(doc["summary"]["crossing_brackets"] == 1);
}

TEST_CASE("eval: gold against itself is perfect") {
  const auto r = fepa_cli({"--report", "json", "--format", "dep-tsv", "eval", "--metric", "dep",
                           "--gold", fx("dep_gold.tsv"), "--test", fx("dep_gold.tsv")});
  REQUIRE(r.code == 0);
  const auto s = r.doc()["summary"];
  for (const char* key : {"uas", "las", "da", "ra", "cm"}) {
    CHECK(s[key]["num"] == s[key]["den"]);
  }
}

TEST_CASE("eval: dependency scores and a dropped token") {
  auto r = fepa_cli({"--report", "json", "--format", "dep-tsv", "eval", "--metric", "las",
                     "--gold", fx("dep_gold.tsv"), "--test", fx("dep_test.tsv")});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["summary"]["las"]["num"] == 3);
  r = fepa_cli({"--format", "dep-tsv", "eval", "--metric", "las", "--gold", fx("dep_gold.tsv"),
                "--test", fx("dep_test_dropped.tsv")});
  CHECK(r.code == 2);
  CHECK(r.err.find("TokenCountMismatch") != std::string::npos);
}

TEST_CASE("eval: bad invocations") {
  CHECK(fepa_cli({"eval", "--gold", "/nonexistent", "--test", "/nonexistent"}).code == 2);
  CHECK(fepa_cli({"eval", "--metric", "bogus", "--gold", fx("dep_gold.tsv"), "--test",
                  fx("dep_gold.tsv")}).code == 2);
  CHECK(fepa_cli({}).code == 2);
  CHECK(fepa_cli({"--format", "gr", "eval", "--metric", "uas", "--gold", fx("gr_gold.txt"),
                  "--test", fx("gr_test.txt")}).code == 2);
  CHECK(fepa_cli({"--help"}).code == 0);
}

TEST_CASE("bench: echo adapter, crash and stored verdicts") {
  testing::TempDir dir;
  std::string corpus;
  for (int i = 1; i <= 100; ++i) {
    corpus += "news\tsentence " + std::to_string(i) + (i == 50 ? " boom" : "") + "\n";
  }
  const auto corpus_path = write(dir, "corpus.txt", corpus);
  const auto config = write(dir, "adapters.ini",
                            "[cat]\ncommand = cat\n\n[crash]\ncommand = /bin/sh " +
                                fx("crash_on_boom.sh") + "\n");
  const auto r = fepa_cli({"--report", "json", "--jobs", "2", "bench", "--corpus", corpus_path,
                           "--adapters", config, "--run-dir", (dir.path() / "runs").string()});
  REQUIRE(r.code == 0);
  const auto rows = r.doc()["tables"]["adapters"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["adapter"] == "cat");
  CHECK(rows[0]["coverage"]["percent"].get<double>() == doctest::Approx(100.0));
  CHECK(rows[1]["terminated"] == 1);
  CHECK(rows[1]["terminated_pct"].get<double>() == doctest::Approx(1.0));

  // Coverage per genre, newspaper first.
  const std::vector<std::pair<std::string, int>> genres{
      {"newspaper", 998}, {"legislation", 989}, {"fiction", 975},
      {"nonfiction", 964}, {"religion", 931}, {"biomedicine", 989}};
  std::string verdicts;
  for (const auto& [genre, covered] : genres) {
    for (int i = 0; i < 1000; ++i) {
      verdicts += std::string(i < covered ? "covered" : "failed") + "\t" + genre + "\tw\n";
    }
  }
  const auto v = write(dir, "verdicts.tsv", verdicts);
  const auto g = fepa_cli({"--report", "json", "bench", "--verdicts", v});
  REQUIRE(g.code == 0);
  CHECK(g.doc()["summary"][v + ".generalizability"].get<double>() == doctest::Approx(93.3));
  CHECK(g.doc()["summary"][v + ".reference_genre"] == "newspaper");
}

TEST_CASE("bench: missing adapter executable") {
  testing::TempDir dir;
  const auto corpus = write(dir, "c.txt", "a b\n");
  const auto config = write(dir, "a.ini", "[gone]\ncommand = /nonexistent/parser\n");
  const auto r = fepa_cli({"bench", "--corpus", corpus, "--adapters", config, "--run-dir",
                           dir.path().string()});
  CHECK(r.code == 3);
}

TEST_CASE("compare: the six rank profiles") {
  auto args = profile_paths();
  args.insert(args.begin(), {"--report", "json", "compare"});
  const auto r = fepa_cli(args);
  REQUIRE(r.code == 0);
  const auto ranks = overall(r.doc());
  CHECK(ranks.at("LGP") == 6);
  CHECK(ranks.at("StatCCG") == 1);

  // Doubling coverage and efficiency puts C&C ahead of SP.
  args.insert(args.end(), {"--weight", "coverage=2", "--weight", "efficiency=2"});
  const auto c = overall(fepa_cli(args).doc());
  CHECK(c.at("C&C") == 1);
  CHECK(c.at("SP") == 2);
}

TEST_CASE("compare: identical profiles tie") {
  testing::TempDir dir;
  const auto text = testing::slurp(testing::fixture("profiles/app.json"));
  const auto a = write(dir, "a.json", text);
  auto other = text;
  other.replace(other.find("\"APP\""), 5, "\"APP2\"");
  const auto b = write(dir, "b.json", other);
  const auto r = fepa_cli({"--report", "json", "compare", a, b});
  REQUIRE(r.code == 0);
  const auto ranks = overall(r.doc());
  CHECK(ranks.at("APP") == 1);
  CHECK(ranks.at("APP2") == 1);
  CHECK(fepa_cli({"compare", a}).code == 2);
}

TEST_CASE("noise then robust on the written corpora") {
  testing::TempDir dir;
  const auto input = write(dir, "in.txt", "the quick brown fox jumps\nplease try again later\n");
  const auto correct = (dir.path() / "c.txt").string();
  const auto noisy = (dir.path() / "n.txt").string();
  auto r = fepa_cli({"noise", input, "--level", "2", "--out-correct", correct, "--out-noisy", noisy});
  CHECK(r.code == 2);  // no seed
  r = fepa_cli({"--seed", "7", "noise", input, "--level", "2", "--out-correct", correct,
                "--out-noisy", noisy});
  REQUIRE(r.code == 0);
  const auto pairs = io::read_parallel(testing::slurp(correct), testing::slurp(noisy));
  REQUIRE(pairs.size() == 2);
  for (const auto& p : pairs) CHECK(p.error_level == 2);

  // Identical analyses on both sides.
  const auto out = write(dir, "out.txt", "(S a b)\n(S c d)\n");
  const auto rob = fepa_cli({"--report", "json", "robust", "--pair", "1:" + out + ":" + out});
  REQUIRE(rob.code == 0);
  const auto s = rob.doc()["summary"];
  CHECK(s["pooled_ur"]["percent"].get<double>() == doctest::Approx(100.0));
  CHECK(s["pooled_lr"]["percent"].get<double>() == doctest::Approx(100.0));
}

TEST_CASE("robust from stored tallies") {
  const auto r = fepa_cli({"--report", "json", "robust", "--tallies", fx("robust_cc_tallies.txt")});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["summary"]["degradation_ur"].get<double>() == doctest::Approx(44.58));
  CHECK(r.doc()["summary"]["degradation_lr"].get<double>() == doctest::Approx(75.49));
}

TEST_CASE("mine and subtlety") {
  auto r = fepa_cli({"--report", "json", "mine", fx("mine_toy.tsv"), "--max-n", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["tables"]["ngrams"][0]["ngram"] == "loudly");

  r = fepa_cli({"--report", "json", "subtlety", "--pos-tags", "45", "--syntax-tags", "1044",
                "--f-score", "84.0"});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["summary"]["combined_preciseness"].get<double>() == doctest::Approx(323.0).epsilon(0.002));
}

TEST_CASE("convert and output files") {
  testing::TempDir dir;
  const auto dest = (dir.path() / "sub" / "out.tsv").string();
  auto r = fepa_cli({"--format", "dep-tsv", "--out", dest, "convert", fx("dep_gold.tsv"), "--to",
                     "dep-tsv"});
  REQUIRE(r.code == 0);
  CHECK(testing::slurp(dest) == testing::slurp(fx("dep_gold.tsv")));
  r = fepa_cli({"--format", "dep-tsv", "convert", fx("dep_gold.tsv"), "--to", "gr"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("(subj promised:2 Pele:1)") != std::string::npos);
}
