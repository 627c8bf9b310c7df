#ifndef FEPA_TYPES_HPP_
#define FEPA_TYPES_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fepa {

struct Token {
  int index = 0;  // 1-based position in the sentence
  std::string form;
  std::optional<std::string> lemma;
  std::optional<std::string> pos;

  friend bool operator==(const Token&, const Token&) = default;
};

// Inclusive token interval, 1-based.
struct Span {
  int start = 0;
  int end = 0;

  int width() const { return end - start + 1; }
  bool contains(const Span& other) const {
    return start <= other.start && other.end <= end;
  }
  friend auto operator<=>(const Span&, const Span&) = default;
};

// Two spans cross when they overlap without either containing the other.
inline bool crosses(const Span& a, const Span& b) {
  return (a.start < b.start && b.start <= a.end && a.end < b.end) ||
         (b.start < a.start && a.start <= b.end && b.end < a.end);
}

// Label given to bracket groups that carry no category.
inline constexpr std::string_view kUnlabeled = "—";

// Labeled ordered tree over a token sequence. A node is either a terminal
// (holding one token) or a nonterminal with a label and at least one child.
// Spans are computed when the tree is built and never change afterwards.
class PhraseTree {
 public:
  static PhraseTree terminal(Token token);
  static PhraseTree node(std::string label, std::vector<PhraseTree> children);

  bool is_terminal() const { return token_.has_value(); }
  // A nonterminal whose only child is a terminal.
  bool is_preterminal() const;
  const std::string& label() const { return label_; }
  const Token& token() const { return *token_; }
  std::span<const PhraseTree> children() const { return children_; }
  Span span() const { return span_; }

  // Terminals in surface order.
  std::vector<Token> tokens() const;
  std::size_t terminal_count() const;
  std::size_t nonterminal_count() const;

  // Renumbers terminals 1..n in surface order and recomputes spans.
  void renumber();

  friend bool operator==(const PhraseTree&, const PhraseTree&) = default;

 private:
  PhraseTree() = default;
  int assign_indices(int next);

  std::string label_;
  std::optional<Token> token_;
  std::vector<PhraseTree> children_;
  Span span_;
};

// Per-token head index (0 = root) plus an optional dependency label.
class DepGraph {
 public:
  DepGraph() = default;
  // Checks head ranges; throws HeadOutOfRange. Cycles are not checked here,
  // see find_cycle().
  DepGraph(std::vector<Token> tokens, std::vector<int> heads,
           std::vector<std::optional<std::string>> labels = {});

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  std::span<const Token> tokens() const { return tokens_; }
  std::span<const int> heads() const { return heads_; }
  std::span<const std::optional<std::string>> labels() const {
    return labels_;
  }
  // 1-based accessors.
  int head(int index) const { return heads_[index - 1]; }
  const std::optional<std::string>& label(int index) const {
    return labels_[index - 1];
  }
  const Token& token(int index) const { return tokens_[index - 1]; }

  std::vector<int> roots() const;
  // Index of a token lying on a cycle, or nullopt for a forest.
  std::optional<int> find_cycle() const;
  bool is_tree() const { return !find_cycle().has_value(); }

  void set_head(int index, int head);
  void set_label(int index, std::optional<std::string> label);

  friend bool operator==(const DepGraph&, const DepGraph&) = default;

 private:
  std::vector<Token> tokens_;
  std::vector<int> heads_;
  std::vector<std::optional<std::string>> labels_;
};

// Reference to a sentence token in a grammatical relation: a surface form,
// optionally disambiguated by its position ("form:index").
struct GrRef {
  std::string form;
  std::optional<int> index;

  bool unfilled() const { return form == "_" && !index; }
  bool matches(const GrRef& other) const;
  std::string text() const;
  static GrRef parse(std::string_view text);

  friend bool operator==(const GrRef&, const GrRef&) = default;
};

// One relation as written, e.g. "(ncsubj playing Liverpool _)". Slot
// interpretation (which argument is the head) depends on the relation
// hierarchy, see GrHierarchy::slots().
struct GrRelation {
  std::string name;
  std::vector<GrRef> args;

  friend bool operator==(const GrRelation&, const GrRelation&) = default;
};

struct GrSet {
  std::vector<GrRelation> relations;

  friend bool operator==(const GrSet&, const GrSet&) = default;
};

// A sequence of analyses of one kind plus provenance. Warnings are
// non-fatal oddities noticed while reading (e.g. an empty sentence).
template <typename Analysis>
struct Corpus {
  std::vector<Analysis> sentences;
  std::string source;
  std::optional<std::string> genre;
  std::vector<std::string> warnings;

  std::size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }
};

struct ParallelPair {
  std::vector<std::string> correct;
  std::vector<std::string> noisy;
  int error_level = 0;
  std::vector<std::vector<std::string>> corrections;
};

enum class Verdict { kCovered, kFragmented, kFailed, kTerminated };

std::string_view to_string(Verdict verdict);
std::optional<Verdict> parse_verdict(std::string_view text);

struct VerdictTally {
  std::size_t covered = 0;
  std::size_t fragmented = 0;
  std::size_t failed = 0;
  std::size_t terminated = 0;

  void add(Verdict verdict);
  std::size_t total() const {
    return covered + fragmented + failed + terminated;
  }
  VerdictTally& operator+=(const VerdictTally& other);
  friend bool operator==(const VerdictTally&, const VerdictTally&) = default;
};

}  // namespace fepa

#endif  // FEPA_TYPES_HPP_
