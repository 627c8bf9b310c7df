#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "fepa/error.hpp"
#include "fepa/io.hpp"

namespace fepa::io {

std::unique_ptr<std::istream, void (*)(std::istream*)> open_input(
    const std::string& path) {
  if (path == "-") {
    return {&std::cin, [](std::istream*) {}};
  }
  auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*file) {
    throw Error(ErrorKind::kIoError, fmt::format("cannot open '{}'", path));
  }
  return {file.release(), [](std::istream* p) { delete p; }};
}

std::string read_all(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join(const std::vector<std::string>& words, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += sep;
    out += words[i];
  }
  return out;
}

}  // namespace fepa::io
