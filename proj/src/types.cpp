#include "fepa/types.hpp"

#include <charconv>

#include <fmt/format.h>

#include "fepa/error.hpp"

namespace fepa {

PhraseTree PhraseTree::terminal(Token token) {
  PhraseTree tree;
  tree.span_ = {token.index, token.index};
  tree.token_ = std::move(token);
  return tree;
}

PhraseTree PhraseTree::node(std::string label,
                            std::vector<PhraseTree> children) {
  if (children.empty()) {
    throw Error(ErrorKind::kEmptyNode,
                fmt::format("nonterminal '{}' has no children", label));
  }
  PhraseTree tree;
  tree.label_ = std::move(label);
  tree.children_ = std::move(children);
  tree.span_ = {tree.children_.front().span_.start,
                tree.children_.back().span_.end};
  return tree;
}

bool PhraseTree::is_preterminal() const {
  return !is_terminal() && children_.size() == 1 &&
         children_.front().is_terminal();
}

std::vector<Token> PhraseTree::tokens() const {
  std::vector<Token> out;
  if (is_terminal()) {
    out.push_back(*token_);
    return out;
  }
  for (const auto& child : children_) {
    auto sub = child.tokens();
    out.insert(out.end(), std::make_move_iterator(sub.begin()),
               std::make_move_iterator(sub.end()));
  }
  return out;
}

std::size_t PhraseTree::terminal_count() const {
  if (is_terminal()) return 1;
  std::size_t n = 0;
  for (const auto& child : children_) n += child.terminal_count();
  return n;
}

std::size_t PhraseTree::nonterminal_count() const {
  if (is_terminal()) return 0;
  std::size_t n = 1;
  for (const auto& child : children_) n += child.nonterminal_count();
  return n;
}

void PhraseTree::renumber() { assign_indices(1); }

int PhraseTree::assign_indices(int next) {
  if (is_terminal()) {
    token_->index = next;
    span_ = {next, next};
    return next + 1;
  }
  for (auto& child : children_) next = child.assign_indices(next);
  span_ = {children_.front().span_.start, children_.back().span_.end};
  return next;
}

DepGraph::DepGraph(std::vector<Token> tokens, std::vector<int> heads,
                   std::vector<std::optional<std::string>> labels)
    : tokens_(std::move(tokens)),
      heads_(std::move(heads)),
      labels_(std::move(labels)) {
  if (labels_.empty()) labels_.resize(tokens_.size());
  if (heads_.size() != tokens_.size() || labels_.size() != tokens_.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "tokens, heads and labels must have equal length");
  }
  const int n = static_cast<int>(tokens_.size());
  for (int i = 0; i < n; ++i) {
    if (heads_[i] < 0 || heads_[i] > n) {
      throw Error(ErrorKind::kHeadOutOfRange,
                  fmt::format("token {} has head {} outside 0..{}", i + 1,
                              heads_[i], n));
    }
  }
}

std::vector<int> DepGraph::roots() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < heads_.size(); ++i) {
    if (heads_[i] == 0) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

std::optional<int> DepGraph::find_cycle() const {
  // 0 = unvisited, 1 = on current path, 2 = known to reach a root.
  const int n = static_cast<int>(heads_.size());
  std::vector<int> state(n + 1, 0);
  for (int start = 1; start <= n; ++start) {
    std::vector<int> path;
    int cur = start;
    while (cur != 0 && state[cur] == 0) {
      state[cur] = 1;
      path.push_back(cur);
      cur = heads_[cur - 1];
    }
    if (cur != 0 && state[cur] == 1) return cur;
    for (int v : path) state[v] = 2;
  }
  return std::nullopt;
}

void DepGraph::set_head(int index, int head) {
  if (head < 0 || head > static_cast<int>(size())) {
    throw Error(ErrorKind::kHeadOutOfRange,
                fmt::format("head {} outside 0..{}", head, size()));
  }
  heads_.at(index - 1) = head;
}

void DepGraph::set_label(int index, std::optional<std::string> label) {
  labels_.at(index - 1) = std::move(label);
}

bool GrRef::matches(const GrRef& other) const {
  if (form != other.form) return false;
  if (index && other.index) return *index == *other.index;
  return true;
}

std::string GrRef::text() const {
  return index ? fmt::format("{}:{}", form, *index) : form;
}

GrRef GrRef::parse(std::string_view text) {
  GrRef ref;
  const auto colon = text.rfind(':');
  if (colon != std::string_view::npos && colon > 0 &&
      colon + 1 < text.size()) {
    const auto digits = text.substr(colon + 1);
    int value = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec == std::errc() && ptr == digits.data() + digits.size() &&
        value > 0) {
      ref.form = std::string(text.substr(0, colon));
      ref.index = value;
      return ref;
    }
  }
  ref.form = std::string(text);
  return ref;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kCovered: return "covered";
    case Verdict::kFragmented: return "fragmented";
    case Verdict::kFailed: return "failed";
    case Verdict::kTerminated: return "terminated";
  }
  return "failed";
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  if (text == "covered") return Verdict::kCovered;
  if (text == "fragmented") return Verdict::kFragmented;
  if (text == "failed") return Verdict::kFailed;
  if (text == "terminated") return Verdict::kTerminated;
  return std::nullopt;
}

void VerdictTally::add(Verdict verdict) {
  switch (verdict) {
    case Verdict::kCovered: ++covered; break;
    case Verdict::kFragmented: ++fragmented; break;
    case Verdict::kFailed: ++failed; break;
    case Verdict::kTerminated: ++terminated; break;
  }
}

VerdictTally& VerdictTally::operator+=(const VerdictTally& other) {
  covered += other.covered;
  fragmented += other.fragmented;
  failed += other.failed;
  terminated += other.terminated;
  return *this;
}

}  // namespace fepa
