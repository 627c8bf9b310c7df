#include <doctest.h>

#include <sstream>

#include "fepa/constituency.hpp"
#include "fepa/error.hpp"
#include "fepa/io.hpp"
#include "support.hpp"

using namespace fepa;
using fepa::testing::Rng;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInvalidArgument;
}

}  // namespace

TEST_CASE("bracketed: labeled tree counts") {
  const auto corpus = io::read_bracketed(
      std::string_view("(S (NP (N Liverpool)) (VP (V is) (VP (V playing) (ADVP (ADV well)))))"));
  REQUIRE(corpus.size() == 1);
  const auto& t = corpus.sentences[0];
  // Preterminals count as nonterminals.
  CHECK(t.nonterminal_count() == 9);
  CHECK(t.terminal_count() == 4);
  CHECK(t.span() == Span{1, 4});
  CHECK(t.label() == "S");
}

TEST_CASE("bracketed: empty stream gives empty corpus") {
  CHECK(io::read_bracketed(std::string_view("")).empty());
  CHECK(io::read_bracketed(std::string_view("  \n\t ")).empty());
}

TEST_CASE("bracketed: unlabeled groups") {
  const auto corpus =
      io::read_bracketed(std::string_view("((He)(ran))"), {.allow_unlabeled = true});
  REQUIRE(corpus.size() == 1);
  const auto spans = extract_spans(corpus.sentences[0]);
  std::vector<std::pair<int, int>> got;
  for (const auto& s : spans.spans) {
    CHECK(s.label == kUnlabeled);
    got.emplace_back(s.span.start, s.span.end);
  }
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}});
  CHECK(kind_of([] { io::read_bracketed(std::string_view("((He)(ran))")); }) ==
        ErrorKind::kUnlabeledNode);
}

TEST_CASE("bracketed: errors carry offsets") {
  try {
    io::read_bracketed(std::string_view("(S (NP a)"));
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUnbalancedBrackets);
    REQUIRE(e.location());
    CHECK(*e.location() == "offset 0");
  }
  CHECK(kind_of([] { io::read_bracketed(std::string_view("(S a))")); }) ==
        ErrorKind::kUnbalancedBrackets);
  CHECK(kind_of([] { io::read_bracketed(std::string_view("(S ())")); }) ==
        ErrorKind::kEmptyNode);
  CHECK(kind_of([] { io::read_bracketed(std::string_view("word (S a)")); }) ==
        ErrorKind::kStrayToken);
}

TEST_CASE("bracketed: mixed children only rejected when strict") {
  const std::string_view text = "(S a (NP b))";
  CHECK_NOTHROW(io::read_bracketed(text));
  CHECK(kind_of([&] { io::read_bracketed(text, {.strict = true}); }) ==
        ErrorKind::kMixedTerminalNonterminal);
}

TEST_CASE("bracketed: square notation of plain bracketings") {
  const auto corpus = io::read_bracketed(
      std::string_view(testing::slurp(testing::fixture("parseval_gold.txt"))),
      {.all_unlabeled = true, .square_brackets = true});
  REQUIRE(corpus.size() == 1);
  CHECK(corpus.sentences[0].terminal_count() == 13);
  CHECK(corpus.sentences[0].nonterminal_count() == 11);
}

TEST_CASE("bracketed: round trip over random trees") {
  Rng rng(11);
  const std::vector<std::string> vocab{"a", "b", "c", "dog", "ran"};
  const std::vector<std::string> labels{"S", "NP", "VP", "PP", "N"};
  for (int i = 0; i < 300; ++i) {
    const auto words = testing::random_words(rng, testing::uniform(rng, 1, 9), vocab);
    const auto tree = testing::random_tree(rng, words, labels);
    const auto text = io::write_bracketed(tree);
    const auto again = io::read_bracketed(std::string_view(text));
    REQUIRE(again.size() == 1);
    CHECK(again.sentences[0] == tree);
    // Spans nest or are disjoint.
    const auto spans = extract_spans(tree);
    for (const auto& a : spans.spans) {
      for (const auto& b : spans.spans) CHECK_FALSE(crosses(a.span, b.span));
    }
  }
}

TEST_CASE("dep-tsv: reads a block and finds the root") {
  const auto corpus = io::read_dep_tsv(std::string_view(
      "1\tLiverpool\t_\tN\t3\tSUBJ\n2\tis\t_\tV\t3\tAUX\n3\tplaying\t_\tV\t0\tMAIN\n"
      "4\twell\t_\tADV\t3\tMAN\n"));
  REQUIRE(corpus.size() == 1);
  const auto& g = corpus.sentences[0];
  CHECK(g.size() == 4);
  CHECK(g.roots() == std::vector<int>{3});
  CHECK(g.label(4) == "MAN");
  CHECK(g.token(1).pos == "N");
  CHECK_FALSE(g.token(1).lemma.has_value());
}

TEST_CASE("dep-tsv: errors") {
  CHECK(kind_of([] {
          io::read_dep_tsv(std::string_view(
              "1\ta\t_\tX\t0\tr\n2\tb\t_\tX\t1\tr\n3\tc\t_\tX\t1\tr\n4\td\t_\tX\t1\tr\n"
              "5\te\t_\tX\t9\tr\n"));
        }) == ErrorKind::kHeadOutOfRange);
  CHECK(kind_of([] { io::read_dep_tsv(std::string_view("1\ta\t_\tX\t1\tr\n")); }) ==
        ErrorKind::kCycleDetected);
  CHECK(kind_of([] { io::read_dep_tsv(std::string_view("1\ta\t_\tX\n")); }) ==
        ErrorKind::kBadColumnCount);
  CHECK(kind_of([] { io::read_dep_tsv(std::string_view("2\ta\t_\tX\t0\tr\n")); }) ==
        ErrorKind::kBadTokenIndex);

  const auto kept = io::read_dep_tsv(std::string_view("1\ta\t_\tX\t1\tr\n"), {.permissive = true});
  REQUIRE(kept.size() == 1);
  CHECK_FALSE(kept.sentences[0].is_tree());
  CHECK_FALSE(kept.warnings.empty());
}

TEST_CASE("dep-tsv: comments and ten-column rows") {
  const auto corpus = io::read_dep_tsv(std::string_view(
      "# sent_id = 1\n1\tHe\the\tPRON\tPRP\t_\t2\tnsubj\t_\t_\n2\tran\trun\tVERB\tVBD\t_\t0\troot\t_\t_\n"));
  REQUIRE(corpus.size() == 1);
  CHECK(corpus.sentences[0].head(1) == 2);
  CHECK(corpus.sentences[0].label(2) == "root");
}

TEST_CASE("dep-tsv: write then read is stable") {
  Rng rng(5);
  const std::vector<std::string> vocab{"x", "y", "z"};
  const std::vector<std::string> labels{"a", "b"};
  std::ostringstream out;
  Corpus<DepGraph> corpus;
  for (int i = 0; i < 50; ++i) {
    corpus.sentences.push_back(testing::random_dep_tree(
        rng, testing::random_words(rng, testing::uniform(rng, 1, 8), vocab), labels));
  }
  io::write_dep_tsv(out, corpus);
  const auto again = io::read_dep_tsv(std::string_view(out.str()));
  CHECK(again.sentences == corpus.sentences);
  std::ostringstream twice;
  io::write_dep_tsv(twice, again);
  CHECK(twice.str() == out.str());
}

TEST_CASE("gr: relations and blocks") {
  const auto corpus = io::read_gr(std::string_view(
      "(ncsubj playing Liverpool _)\n(aux_ playing is)\n\n\n(dobj playing well)\n"));
  REQUIRE(corpus.size() == 3);
  const auto& first = corpus.sentences[0].relations;
  REQUIRE(first.size() == 2);
  CHECK(first[0].name == "ncsubj");
  REQUIRE(first[0].args.size() == 3);
  CHECK(first[0].args[0].form == "playing");
  CHECK(first[0].args[2].unfilled());
  CHECK(first[1].name == "aux_");
  CHECK(first[1].args.size() == 2);
  CHECK(corpus.sentences[1].relations.empty());
  CHECK(kind_of([] { io::read_gr(std::string_view("(dobj playing)\n")); }) ==
        ErrorKind::kMalformedRelation);
  CHECK(kind_of([] { io::read_gr(std::string_view("dobj playing well\n")); }) ==
        ErrorKind::kMalformedRelation);
}

TEST_CASE("gr: positional references") {
  const auto corpus = io::read_gr(std::string_view("(det dog:3 the:2)\n"));
  const auto& r = corpus.sentences.at(0).relations.at(0);
  CHECK(r.args[0].form == "dog");
  CHECK(r.args[0].index == 3);
  CHECK(io::write_gr(r) == "(det dog:3 the:2)");
}

TEST_CASE("tiger: dependency mode") {
  const std::string doc = R"(<corpus><body>
  <s id="s1"><graph root="t2"><terminals>
    <t id="t1" word="Liverpool" pos="N"><edge label="SUBJ" idref="t3"/></t>
    <t id="t2" word="is" pos="V"/>
    <t id="t3" word="playing" pos="V"/>
    <t id="t4" word="well" pos="ADV"/>
  </terminals></graph></s>
  </body></corpus>)";
  // Edges hang from the head terminal.
  const std::string heads = R"(<corpus><s id="s1">
    <t id="a" word="Liverpool" pos="N"/>
    <t id="b" word="is" pos="V"/>
    <t id="c" word="playing" pos="V">
      <edge label="SUBJ" idref="a"/><edge label="AUX" idref="b"/><edge label="MAN" idref="d"/>
    </t>
    <t id="d" word="well" pos="ADV"/>
  </s></corpus>)";
  const auto corpus = io::read_tiger_xml(std::string_view(heads));
  REQUIRE(corpus.size() == 1);
  const auto& g = corpus.sentences[0];
  CHECK(g.size() == 4);
  CHECK(g.roots() == std::vector<int>{3});
  CHECK(g.head(1) == 3);
  CHECK(g.label(4) == "MAN");
  CHECK(g.token(4).pos == "ADV");

  // The first document's edge makes t1 the head of t3; still a forest.
  CHECK(io::read_tiger_xml(std::string_view(doc)).sentences[0].head(3) == 1);
}

TEST_CASE("tiger: errors and empty sentences") {
  CHECK(kind_of([] {
          io::read_tiger_xml(std::string_view(
              R"(<s><t id="a" word="x"><edge label="L" idref="zz"/></t></s>)"));
        }) == ErrorKind::kDanglingEdgeRef);
  CHECK(kind_of([] {
          io::read_tiger_xml(std::string_view(R"(<s><t id="a"/></s>)"));
        }) == ErrorKind::kMissingAttribute);
  const auto empty = io::read_tiger_xml(std::string_view("<corpus><s id=\"x\"></s></corpus>"));
  REQUIRE(empty.size() == 1);
  CHECK(empty.sentences[0].empty());
  CHECK(empty.warnings.size() == 1);
  CHECK(kind_of([] { io::read_tiger_xml(std::string_view("<s><t id=")); }) ==
        ErrorKind::kMalformedXml);
}

TEST_CASE("parallel: error levels") {
  const auto pairs = io::read_parallel(std::string_view("Your username is not logged.\na b\n"),
                                       std::string_view("Yoru username is not logged.\na b\n"));
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].error_level == 1);
  CHECK(pairs[1].error_level == 0);
  CHECK(kind_of([] { io::read_parallel(std::string_view("a b c\n"), std::string_view("a b\n")); }) ==
        ErrorKind::kLengthMismatch);
  CHECK(kind_of([] { io::read_parallel(std::string_view("a\nb\n"), std::string_view("a\n")); }) ==
        ErrorKind::kSentenceCountMismatch);
}

TEST_CASE("parallel: error level is the Hamming distance") {
  Rng rng(3);
  const std::vector<std::string> vocab{"a", "b", "c"};
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<std::size_t>(testing::uniform(rng, 1, 10));
    const auto a = testing::random_words(rng, n, vocab);
    const auto b = testing::random_words(rng, n, vocab);
    int hamming = 0;
    for (std::size_t k = 0; k < n; ++k) hamming += a[k] != b[k];
    const auto pairs = io::read_parallel(io::join(a) + "\n", io::join(b) + "\n");
    CHECK(pairs.at(0).error_level == hamming);
  }
}

TEST_CASE("open_input reports missing files") {
  CHECK(kind_of([] { io::open_input("/nonexistent/file"); }) == ErrorKind::kIoError);
}
