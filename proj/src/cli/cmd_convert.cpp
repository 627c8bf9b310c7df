#include <sstream>

#include <fmt/format.h>

#include "commands.hpp"
#include "fepa/dependency.hpp"
#include "fepa/error.hpp"

namespace fepa::cli {
namespace {

bool is_graph_format(const std::string& f) {
  return f == "dep-tsv" || f == "conll" || f == "tiger";
}

// Every non-root token becomes "(label head:i dependent:j)".
GrSet to_grs(const DepGraph& graph) {
  GrSet set;
  for (int i = 1; i <= static_cast<int>(graph.size()); ++i) {
    const int h = graph.head(i);
    if (h == 0) continue;
    GrRelation r;
    r.name = graph.label(i).value_or(std::string(GrHierarchy::kRoot));
    r.args.push_back({graph.token(h).form, h});
    r.args.push_back({graph.token(i).form, i});
    set.relations.push_back(std::move(r));
  }
  return set;
}

}  // namespace

std::string cmd_convert(const ConvertArgs& args, const Globals& globals) {
  const std::string from = args.from.empty() ? globals.format : args.from;
  if (from.empty() || args.to.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "convert needs --from (or --format) and --to");
  }
  std::ostringstream out;
  if (from == "bracketed" && args.to == "bracketed") {
    io::BracketOptions in_opts;
    in_opts.allow_unlabeled = args.unlabeled_brackets;
    io::BracketOptions out_opts = in_opts;
    out_opts.square_brackets = args.square_brackets;
    io::write_bracketed(out, load_trees(args.input, in_opts), out_opts);
  } else if (is_graph_format(from) && args.to == "dep-tsv") {
    io::write_dep_tsv(out, load_graphs(args.input, from, globals.permissive));
  } else if (is_graph_format(from) && args.to == "gr") {
    const auto graphs = load_graphs(args.input, from, globals.permissive);
    Corpus<GrSet> grs;
    for (const auto& g : graphs.sentences) grs.sentences.push_back(to_grs(g));
    io::write_gr(out, grs);
  } else if (from == "gr" && args.to == "gr") {
    io::write_gr(out, load_grs(args.input));
  } else {
    throw Error(ErrorKind::kFormatMismatch,
                fmt::format("cannot convert {} to {}", from, args.to));
  }
  return out.str();
}

}  // namespace fepa::cli
