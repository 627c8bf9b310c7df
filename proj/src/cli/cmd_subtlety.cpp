#include <set>
#include <sstream>

#include <fmt/format.h>

#include "commands.hpp"
#include "fepa/compare.hpp"
#include "fepa/error.hpp"

namespace fepa::cli {
namespace {

struct TagInventory {
  std::set<std::string> pos;
  std::set<std::string> syntax;
};

void collect(const PhraseTree& tree, TagSequence& tags, TagInventory& inventory) {
  if (tree.is_terminal()) return;
  if (tree.label() != kUnlabeled) {
    tags.push_back(tree.label());
    (tree.is_preterminal() ? inventory.pos : inventory.syntax).insert(tree.label());
  }
  for (const auto& child : tree.children()) collect(child, tags, inventory);
}

TagSequence tags_of(const DepGraph& graph, TagInventory& inventory) {
  TagSequence tags;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto& tok = graph.tokens()[i];
    if (tok.pos) {
      tags.push_back(*tok.pos);
      inventory.pos.insert(*tok.pos);
    }
    if (const auto& label = graph.labels()[i]) {
      tags.push_back(*label);
      inventory.syntax.insert(*label);
    }
  }
  return tags;
}

// Appends an analysis to the sentence identified by `id`; consecutive
// entries with the same non-empty id are alternatives of one sentence.
void append(std::vector<SentenceAnalyses>& out, std::string& last_id,
            const std::string& id, std::optional<TagSequence> analysis) {
  if (id.empty() || id != last_id || out.empty()) out.emplace_back();
  last_id = id;
  if (analysis) out.back().push_back(std::move(*analysis));
}

// "[id<TAB>]tree" per line; an id with nothing after the tab is a sentence
// without analysis.
std::vector<SentenceAnalyses> read_tree_analyses(const std::string& path,
                                                 TagInventory& inventory) {
  std::istringstream in(read_file(path));
  std::vector<SentenceAnalyses> out;
  std::string line, last_id;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (io::split_ws(line).empty()) continue;
    std::string id;
    std::string_view body = line;
    if (const auto tab = line.find('\t'); tab != std::string::npos) {
      id = line.substr(0, tab);
      body = std::string_view(line).substr(tab + 1);
    }
    if (io::split_ws(body).empty()) {
      append(out, last_id, id, std::nullopt);
      continue;
    }
    try {
      const auto trees = io::read_bracketed(body, {.allow_unlabeled = true});
      for (const auto& tree : trees.sentences) {
        TagSequence tags;
        collect(tree, tags, inventory);
        append(out, last_id, id, std::move(tags));
      }
    } catch (const Error& e) {
      throw e.at(fmt::format("{}, {}", path, at_line(number)));
    }
  }
  return out;
}

std::string comment_id(std::string_view line) {
  for (std::string_view key : {"# sent_id =", "# id ="}) {
    if (line.starts_with(key)) {
      const auto words = io::split_ws(line.substr(key.size()));
      return words.empty() ? std::string() : words.front();
    }
  }
  return {};
}

std::vector<SentenceAnalyses> read_graph_analyses(const std::string& path, bool permissive,
                                                  TagInventory& inventory) {
  std::istringstream in(read_file(path));
  std::vector<SentenceAnalyses> out;
  std::string line, block, id, last_id;
  bool saw_id = false;
  std::size_t blocks = 0;
  auto flush = [&] {
    if (block.empty() && !saw_id) return;
    ++blocks;
    if (io::split_ws(block).empty()) {
      append(out, last_id, id, std::nullopt);
    } else {
      try {
        const auto graphs = io::read_dep_tsv(std::string_view(block), {permissive});
        for (const auto& g : graphs.sentences) append(out, last_id, id, tags_of(g, inventory));
      } catch (const Error& e) {
        throw e.at(fmt::format("{}, block {}", path, blocks));
      }
    }
    block.clear();
    id.clear();
    saw_id = false;
  };
  while (std::getline(in, line)) {
    if (io::split_ws(line).empty()) {
      flush();
    } else if (line.starts_with('#')) {
      if (auto found = comment_id(line); !found.empty()) {
        id = std::move(found);
        saw_id = true;
      }
    } else {
      block += line;
      block += '\n';
    }
  }
  flush();
  return out;
}

}  // namespace

Report cmd_subtlety(const SubtletyArgs& args, const Globals& globals) {
  Report report;
  report.title = "Output subtlety";
  TagInventory inventory;
  std::optional<OutputSubtlety> measured;
  if (!args.outputs.empty()) {
    const std::string format = globals.format.empty() ? "bracketed" : globals.format;
    std::vector<SentenceAnalyses> analyses;
    if (format == "bracketed") {
      analyses = read_tree_analyses(args.outputs, inventory);
    } else if (format == "dep-tsv" || format == "conll") {
      analyses = read_graph_analyses(args.outputs, globals.permissive, inventory);
    } else {
      throw Error(ErrorKind::kFormatMismatch,
                  fmt::format("subtlety reads bracketed or dep-tsv output, not '{}'", format));
    }
    const std::set<std::string> markers(args.markers.begin(), args.markers.end());
    measured = measure_output_subtlety(analyses, markers);
    report.add("outputs", Cell::text(args.outputs));
    report.add("sentences", Cell::integer(static_cast<std::int64_t>(analyses.size())));
    report.add("covered_sentences",
               Cell::integer(static_cast<std::int64_t>(measured->sentences)));
    report.add("analyses", Cell::integer(static_cast<std::int64_t>(measured->analyses)));
    report.add("underspecified_items",
               Cell::integer(static_cast<std::int64_t>(measured->underspecified)));
    report.add("underspec_rate", Cell::real(measured->underspec_rate, 4));
    report.add("ambiguity", Cell::real(measured->ambiguity, 3));
  }

  const std::size_t pos = args.pos_tags.value_or(inventory.pos.size());
  const std::size_t syntax = args.syntax_tags.value_or(inventory.syntax.size());
  if (args.outputs.empty() && !(args.pos_tags && args.syntax_tags)) {
    throw Error(ErrorKind::kInvalidArgument,
                "give --pos-tags and --syntax-tags, or --outputs to count them");
  }
  const double detail = detail_score(pos, syntax);
  report.add("pos_tags", Cell::integer(static_cast<std::int64_t>(pos)));
  report.add("syntax_tags", Cell::integer(static_cast<std::int64_t>(syntax)));
  report.add("detail_score", Cell::real(detail, 3));
  if (args.f_score) {
    const double ambiguity = measured ? measured->ambiguity : 1.0;
    const double underspec = measured ? measured->underspec_rate : 0.0;
    report.add("f_score", Cell::real(*args.f_score, 1));
    report.add("combined_preciseness",
               Cell::real(combined_preciseness(*args.f_score, detail, ambiguity, underspec), 1));
  }
  return report;
}

}  // namespace fepa::cli
