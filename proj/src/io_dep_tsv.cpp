#include <charconv>
#include <sstream>

#include <fmt/format.h>

#include "fepa/error.hpp"
#include "fepa/io.hpp"

namespace fepa::io {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string_view rstrip(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  return s;
}

std::optional<std::string> optional_field(std::string_view field) {
  if (field == "_" || field.empty()) return std::nullopt;
  return std::string(field);
}

std::optional<int> parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

struct Row {
  Token token;
  int head;
  std::optional<std::string> label;
  std::size_t line;
};

class BlockBuilder {
 public:
  BlockBuilder(Corpus<DepGraph>& corpus, const DepReadOptions& options)
      : corpus_(corpus), options_(options) {}

  void add(std::string_view line, std::size_t line_no) {
    const auto cols = split_tabs(line);
    if (cols.size() != 6 && cols.size() != 10) {
      throw Error(ErrorKind::kBadColumnCount,
                  fmt::format("expected 6 or 10 tab-separated columns, got {}",
                              cols.size()),
                  at_line(line_no));
    }
    const bool conll = cols.size() == 10;
    const auto index = parse_int(cols[0]);
    const int expected = static_cast<int>(rows_.size()) + 1;
    if (!index || *index != expected) {
      throw Error(ErrorKind::kBadTokenIndex,
                  fmt::format("token index '{}' where {} was expected", cols[0],
                              expected),
                  at_line(line_no));
    }
    if (cols[1].empty()) {
      throw Error(ErrorKind::kBadColumnCount, "empty FORM column",
                  at_line(line_no));
    }
    const auto head_text = conll ? cols[6] : cols[4];
    const auto head = parse_int(head_text);
    if (!head) {
      throw Error(ErrorKind::kHeadOutOfRange,
                  fmt::format("head '{}' is not a number", head_text),
                  at_line(line_no));
    }
    Row row{Token{*index, std::string(cols[1]), optional_field(cols[2]),
                  optional_field(cols[3])},
            *head, optional_field(conll ? cols[7] : cols[5]), line_no};
    rows_.push_back(std::move(row));
  }

  void finish() {
    if (rows_.empty()) return;
    const int n = static_cast<int>(rows_.size());
    std::vector<Token> tokens;
    std::vector<int> heads;
    std::vector<std::optional<std::string>> labels;
    for (auto& row : rows_) {
      if (row.head < 0 || row.head > n) {
        throw Error(ErrorKind::kHeadOutOfRange,
                    fmt::format("head {} outside 0..{}", row.head, n),
                    at_line(row.line));
      }
      tokens.push_back(std::move(row.token));
      heads.push_back(row.head);
      labels.push_back(std::move(row.label));
    }
    rows_.clear();
    DepGraph graph(std::move(tokens), std::move(heads), std::move(labels));
    const std::size_t sentence = corpus_.sentences.size() + 1;
    if (auto cyclic = graph.find_cycle()) {
      if (!options_.permissive) {
        throw Error(ErrorKind::kCycleDetected,
                    fmt::format("token {} lies on a head cycle", *cyclic),
                    at_sentence(sentence));
      }
      corpus_.warnings.push_back(fmt::format(
          "sentence {}: token {} lies on a head cycle", sentence, *cyclic));
    }
    corpus_.sentences.push_back(std::move(graph));
  }

 private:
  Corpus<DepGraph>& corpus_;
  const DepReadOptions& options_;
  std::vector<Row> rows_;
};

}  // namespace

Corpus<DepGraph> read_dep_tsv(std::istream& in, const DepReadOptions& options) {
  Corpus<DepGraph> corpus;
  BlockBuilder block(corpus, options);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = rstrip(raw);
    if (line.empty()) {
      block.finish();
    } else if (line.front() == '#') {
      continue;
    } else {
      block.add(line, line_no);
    }
  }
  block.finish();
  return corpus;
}

Corpus<DepGraph> read_dep_tsv(std::string_view text,
                              const DepReadOptions& options) {
  std::istringstream in{std::string(text)};
  return read_dep_tsv(in, options);
}

void write_dep_tsv(std::ostream& out, const DepGraph& graph) {
  for (int i = 1; i <= static_cast<int>(graph.size()); ++i) {
    const Token& tok = graph.token(i);
    out << i << '\t' << tok.form << '\t' << tok.lemma.value_or("_") << '\t'
        << tok.pos.value_or("_") << '\t' << graph.head(i) << '\t'
        << graph.label(i).value_or("_") << '\n';
  }
  out << '\n';
}

void write_dep_tsv(std::ostream& out, const Corpus<DepGraph>& corpus) {
  for (const auto& graph : corpus.sentences) write_dep_tsv(out, graph);
}

}  // namespace fepa::io
