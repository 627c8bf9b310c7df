#include <cctype>
#include <sstream>

#include <fmt/format.h>

#include "fepa/error.hpp"
#include "fepa/io.hpp"

namespace fepa::io {
namespace {

struct Lexeme {
  enum Kind { kOpen, kClose, kAtom } kind;
  std::string text;
  std::size_t offset;
};

std::vector<Lexeme> lex(std::string_view text, char open, char close) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == open) {
      out.push_back({Lexeme::kOpen, {}, i++});
    } else if (c == close) {
      out.push_back({Lexeme::kClose, {}, i++});
    } else {
      std::size_t j = i;
      while (j < text.size() && text[j] != open && text[j] != close &&
             !std::isspace(static_cast<unsigned char>(text[j])))
        ++j;
      out.push_back({Lexeme::kAtom, std::string(text.substr(i, j - i)), i});
      i = j;
    }
  }
  return out;
}

std::string at_offset(std::size_t offset) {
  return fmt::format("offset {}", offset);
}

class TreeParser {
 public:
  TreeParser(std::vector<Lexeme> lexemes, const BracketOptions& options)
      : lx_(std::move(lexemes)), options_(options) {}

  Corpus<PhraseTree> parse_all() {
    Corpus<PhraseTree> corpus;
    while (pos_ < lx_.size()) {
      const Lexeme& cur = lx_[pos_];
      if (cur.kind == Lexeme::kClose) {
        throw Error(ErrorKind::kUnbalancedBrackets, "unexpected closing bracket",
                    at_offset(cur.offset));
      }
      if (cur.kind == Lexeme::kAtom) {
        throw Error(ErrorKind::kStrayToken,
                    fmt::format("token '{}' outside any bracket", cur.text),
                    at_offset(cur.offset));
      }
      PhraseTree tree = parse_group();
      tree.renumber();
      corpus.sentences.push_back(std::move(tree));
    }
    return corpus;
  }

 private:
  const Lexeme* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < lx_.size() ? &lx_[pos_ + ahead] : nullptr;
  }

  [[noreturn]] void unbalanced(std::size_t offset) const {
    throw Error(ErrorKind::kUnbalancedBrackets,
                "bracket opened here is never closed", at_offset(offset));
  }

  PhraseTree parse_group() {
    const std::size_t open_offset = lx_[pos_].offset;
    ++pos_;
    const Lexeme* first = peek();
    if (!first) unbalanced(open_offset);
    if (first->kind == Lexeme::kClose) {
      throw Error(ErrorKind::kEmptyNode, "empty bracket pair",
                  at_offset(open_offset));
    }

    std::string label;
    std::vector<PhraseTree> children;
    if (options_.all_unlabeled) {
      label = std::string(kUnlabeled);
    } else if (first->kind == Lexeme::kAtom) {
      const Lexeme* second = peek(1);
      if (second && second->kind == Lexeme::kClose) {
        // "(X)": a bare word in brackets.
        if (!options_.allow_unlabeled) {
          throw Error(ErrorKind::kEmptyNode,
                      fmt::format("node '{}' has no children", first->text),
                      at_offset(open_offset));
        }
        label = std::string(kUnlabeled);
      } else {
        label = first->text;
        ++pos_;
      }
    } else {
      if (!options_.allow_unlabeled) {
        throw Error(ErrorKind::kUnlabeledNode,
                    "group without a label (enable unlabeled brackets)",
                    at_offset(open_offset));
      }
      label = std::string(kUnlabeled);
    }

    bool saw_terminal = false;
    bool saw_nonterminal = false;
    for (;;) {
      const Lexeme* cur = peek();
      if (!cur) unbalanced(open_offset);
      if (cur->kind == Lexeme::kClose) {
        ++pos_;
        break;
      }
      if (cur->kind == Lexeme::kOpen) {
        children.push_back(parse_group());
        saw_nonterminal = true;
      } else {
        children.push_back(PhraseTree::terminal(Token{0, cur->text, {}, {}}));
        saw_terminal = true;
        ++pos_;
      }
    }
    if (children.empty()) {
      throw Error(ErrorKind::kEmptyNode,
                  fmt::format("node '{}' has no children", label),
                  at_offset(open_offset));
    }
    if (options_.strict && saw_terminal && saw_nonterminal) {
      throw Error(ErrorKind::kMixedTerminalNonterminal,
                  fmt::format("node '{}' mixes words and phrases", label),
                  at_offset(open_offset));
    }
    return PhraseTree::node(std::move(label), std::move(children));
  }

  std::vector<Lexeme> lx_;
  const BracketOptions& options_;
  std::size_t pos_ = 0;
};

void write_node(std::string& out, const PhraseTree& tree,
                const BracketOptions& options, char open, char close) {
  if (tree.is_terminal()) {
    out += tree.token().form;
    return;
  }
  out += open;
  const bool unlabeled = options.all_unlabeled || tree.label() == kUnlabeled;
  if (!unlabeled) out += tree.label();
  bool first = true;
  for (const auto& child : tree.children()) {
    if (!unlabeled || !first) out += ' ';
    write_node(out, child, options, open, close);
    first = false;
  }
  out += close;
}

}  // namespace

Corpus<PhraseTree> read_bracketed(std::string_view text,
                                  const BracketOptions& options) {
  const char open = options.square_brackets ? '[' : '(';
  const char close = options.square_brackets ? ']' : ')';
  TreeParser parser(lex(text, open, close), options);
  return parser.parse_all();
}

Corpus<PhraseTree> read_bracketed(std::istream& in,
                                  const BracketOptions& options) {
  return read_bracketed(read_all(in), options);
}

std::string write_bracketed(const PhraseTree& tree,
                            const BracketOptions& options) {
  std::string out;
  write_node(out, tree, options, options.square_brackets ? '[' : '(',
             options.square_brackets ? ']' : ')');
  return out;
}

void write_bracketed(std::ostream& out, const Corpus<PhraseTree>& corpus,
                     const BracketOptions& options) {
  for (const auto& tree : corpus.sentences) {
    out << write_bracketed(tree, options) << '\n';
  }
}

}  // namespace fepa::io
