#include <sstream>

#include <fmt/format.h>

#include "fepa/error.hpp"
#include "fepa/io.hpp"

namespace fepa::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

GrRelation parse_relation(std::string_view line, std::size_t line_no) {
  if (line.size() < 2 || line.front() != '(' || line.back() != ')') {
    throw Error(ErrorKind::kMalformedRelation,
                fmt::format("expected '(relname arg1 arg2 ...)', got '{}'", line),
                at_line(line_no));
  }
  const auto body = line.substr(1, line.size() - 2);
  if (body.find_first_of("()") != std::string_view::npos) {
    throw Error(ErrorKind::kMalformedRelation, "nested parentheses",
                at_line(line_no));
  }
  auto words = split_ws(body);
  if (words.size() < 3) {
    throw Error(ErrorKind::kMalformedRelation,
                "a relation needs a name and at least two arguments",
                at_line(line_no));
  }
  GrRelation relation;
  relation.name = std::move(words.front());
  for (std::size_t i = 1; i < words.size(); ++i) {
    relation.args.push_back(GrRef::parse(words[i]));
  }
  return relation;
}

}  // namespace

Corpus<GrSet> read_gr(std::istream& in) {
  Corpus<GrSet> corpus;
  std::optional<GrSet> open;
  std::size_t pending_empty = 0;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (!line.empty() && line.front() == '#') continue;
    if (line.empty()) {
      if (open) {
        corpus.sentences.push_back(std::move(*open));
        open.reset();
      } else if (!corpus.sentences.empty()) {
        ++pending_empty;
      }
      continue;
    }
    if (!open) {
      // Extra blank lines between blocks stand for sentences without
      // relations; trailing ones are dropped.
      for (; pending_empty > 0; --pending_empty) corpus.sentences.emplace_back();
      open.emplace();
    }
    open->relations.push_back(parse_relation(line, line_no));
  }
  if (open) corpus.sentences.push_back(std::move(*open));
  return corpus;
}

Corpus<GrSet> read_gr(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_gr(in);
}

std::string write_gr(const GrRelation& relation) {
  std::string out = "(" + relation.name;
  for (const auto& arg : relation.args) {
    out += ' ';
    out += arg.text();
  }
  out += ')';
  return out;
}

void write_gr(std::ostream& out, const Corpus<GrSet>& corpus) {
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    if (i) out << '\n';
    for (const auto& relation : corpus.sentences[i].relations) {
      out << write_gr(relation) << '\n';
    }
  }
}

}  // namespace fepa::io
