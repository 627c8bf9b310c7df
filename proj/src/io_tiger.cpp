#include <map>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fmt/format.h>

#include "fepa/error.hpp"
#include "fepa/io.hpp"

namespace fepa::io {
namespace {

namespace pt = boost::property_tree;

std::optional<std::string> attribute(const pt::ptree& node,
                                     const std::string& name) {
  if (auto value = node.get_optional<std::string>("<xmlattr>." + name)) {
    return *value;
  }
  return std::nullopt;
}

std::string require(const pt::ptree& node, const std::string& element,
                    const std::string& name, std::size_t sentence) {
  auto value = attribute(node, name);
  if (!value || value->empty()) {
    throw Error(ErrorKind::kMissingAttribute,
                fmt::format("<{}> lacks attribute '{}'", element, name),
                at_sentence(sentence));
  }
  return *value;
}

// Collects <t> elements below `node` in document order.
void collect_terminals(const pt::ptree& node,
                       std::vector<const pt::ptree*>& out) {
  for (const auto& [name, child] : node) {
    if (name == "t") {
      out.push_back(&child);
    } else if (name != "<xmlattr>" && name != "nt") {
      collect_terminals(child, out);
    }
  }
}

void collect_sentences(const pt::ptree& node,
                       std::vector<const pt::ptree*>& out) {
  for (const auto& [name, child] : node) {
    if (name == "s") {
      out.push_back(&child);
    } else if (name != "<xmlattr>") {
      collect_sentences(child, out);
    }
  }
}

DepGraph read_sentence(const pt::ptree& s, std::size_t sentence,
                       std::vector<std::string>& warnings) {
  std::vector<const pt::ptree*> terminals;
  collect_terminals(s, terminals);
  if (terminals.empty()) {
    warnings.push_back(fmt::format("sentence {} has no terminals", sentence));
    return {};
  }

  std::map<std::string, int> position;
  std::vector<Token> tokens;
  for (const auto* t : terminals) {
    const auto id = require(*t, "t", "id", sentence);
    Token token;
    token.index = static_cast<int>(tokens.size()) + 1;
    token.form = require(*t, "t", "word", sentence);
    token.lemma = attribute(*t, "lemma");
    token.pos = attribute(*t, "pos");
    if (!position.emplace(id, token.index).second) {
      throw Error(ErrorKind::kMalformedXml,
                  fmt::format("terminal id '{}' declared twice", id),
                  at_sentence(sentence));
    }
    tokens.push_back(std::move(token));
  }

  const std::size_t n = tokens.size();
  std::vector<int> heads(n, 0);
  std::vector<std::optional<std::string>> labels(n);
  std::vector<bool> attached(n, false);
  for (std::size_t h = 0; h < n; ++h) {
    for (const auto& [name, edge] : *terminals[h]) {
      if (name != "edge") continue;
      const auto target = require(edge, "edge", "idref", sentence);
      const auto it = position.find(target);
      if (it == position.end()) {
        throw Error(ErrorKind::kDanglingEdgeRef,
                    fmt::format("edge points at undeclared id '{}'", target),
                    at_sentence(sentence));
      }
      const int dep = it->second;
      if (attached[dep - 1]) {
        throw Error(ErrorKind::kMalformedXml,
                    fmt::format("terminal '{}' has more than one head", target),
                    at_sentence(sentence));
      }
      attached[dep - 1] = true;
      heads[dep - 1] = static_cast<int>(h) + 1;
      labels[dep - 1] = attribute(edge, "label");
    }
  }
  return DepGraph(std::move(tokens), std::move(heads), std::move(labels));
}

}  // namespace

Corpus<DepGraph> read_tiger_xml(std::istream& in,
                                const DepReadOptions& options) {
  pt::ptree doc;
  try {
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorKind::kMalformedXml, e.message(), at_line(e.line()));
  }
  std::vector<const pt::ptree*> sentences;
  collect_sentences(doc, sentences);

  Corpus<DepGraph> corpus;
  for (const auto* s : sentences) {
    const std::size_t index = corpus.sentences.size() + 1;
    DepGraph graph = read_sentence(*s, index, corpus.warnings);
    if (auto cyclic = graph.find_cycle()) {
      if (!options.permissive) {
        throw Error(ErrorKind::kCycleDetected,
                    fmt::format("token {} lies on a head cycle", *cyclic),
                    at_sentence(index));
      }
      corpus.warnings.push_back(fmt::format(
          "sentence {}: token {} lies on a head cycle", index, *cyclic));
    }
    corpus.sentences.push_back(std::move(graph));
  }
  return corpus;
}

Corpus<DepGraph> read_tiger_xml(std::string_view text,
                                const DepReadOptions& options) {
  std::istringstream in{std::string(text)};
  return read_tiger_xml(in, options);
}

}  // namespace fepa::io
