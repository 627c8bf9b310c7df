#include <filesystem>
#include <fstream>

#include <fmt/format.h>

#include "commands.hpp"
#include "fepa/error.hpp"

namespace fepa::cli {

void rethrow_at(const std::string& path) {
  try {
    throw;
  } catch (const Error& e) {
    const auto& loc = e.location();
    throw e.at(loc ? fmt::format("{}, {}", path, *loc) : path);
  }
}

std::string read_file(const std::string& path) {
  auto in = io::open_input(path);
  return io::read_all(*in);
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIoError, fmt::format("cannot write '{}'", path));
  out << content;
  if (!out) throw Error(ErrorKind::kIoError, fmt::format("write to '{}' failed", path));
}

Corpus<PhraseTree> load_trees(const std::string& path,
                              const io::BracketOptions& options) {
  const std::string text = read_file(path);
  try {
    auto corpus = io::read_bracketed(std::string_view(text), options);
    corpus.source = path;
    return corpus;
  } catch (const Error&) {
    rethrow_at(path);
  }
}

Corpus<DepGraph> load_graphs(const std::string& path, const std::string& format,
                             bool permissive) {
  const std::string text = read_file(path);
  const io::DepReadOptions options{permissive};
  try {
    Corpus<DepGraph> corpus;
    if (format == "dep-tsv" || format == "conll") {
      corpus = io::read_dep_tsv(std::string_view(text), options);
    } else if (format == "tiger") {
      corpus = io::read_tiger_xml(std::string_view(text), options);
    } else {
      throw Error(ErrorKind::kFormatMismatch,
                  fmt::format("'{}' does not hold dependency graphs", format));
    }
    corpus.source = path;
    return corpus;
  } catch (const Error&) {
    rethrow_at(path);
  }
}

Corpus<GrSet> load_grs(const std::string& path) {
  const std::string text = read_file(path);
  try {
    auto corpus = io::read_gr(std::string_view(text));
    corpus.source = path;
    return corpus;
  } catch (const Error&) {
    rethrow_at(path);
  }
}

std::vector<std::vector<std::string>> load_sentences(const std::string& path) {
  auto in = io::open_input(path);
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(*in, line)) {
    auto words = io::split_ws(line);
    if (!words.empty()) out.push_back(std::move(words));
  }
  return out;
}

}  // namespace fepa::cli
