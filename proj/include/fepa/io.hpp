#ifndef FEPA_IO_HPP_
#define FEPA_IO_HPP_

#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "fepa/types.hpp"

namespace fepa::io {

// Opens `path` for reading; "-" means standard input. Throws IoError.
std::unique_ptr<std::istream, void (*)(std::istream*)> open_input(
    const std::string& path);
std::string read_all(std::istream& in);

// ---------------------------------------------------------------------------
// Bracketed (PTB-style) trees.
//
//   (S (NP (N Liverpool)) (VP (V is) ...))
//
// Each top-level balanced group is one tree. Inside a group the first atom is
// the label unless the group is unlabeled; all other atoms are terminals.

struct BracketOptions {
  // Accept groups without a category, "( (S ...))" or "((He) (ran))"; they
  // get the label kUnlabeled.
  bool allow_unlabeled = false;
  // Treat every group as unlabeled and every atom as a terminal. This is the
  // notation of plain bracketings such as "[[He [hit [the post]]] ...]".
  bool all_unlabeled = false;
  // Use '[' and ']' instead of '(' and ')'.
  bool square_brackets = false;
  // Reject nodes that mix terminal and nonterminal children.
  bool strict = false;
};

Corpus<PhraseTree> read_bracketed(std::istream& in,
                                  const BracketOptions& options = {});
Corpus<PhraseTree> read_bracketed(std::string_view text,
                                  const BracketOptions& options = {});
std::string write_bracketed(const PhraseTree& tree,
                            const BracketOptions& options = {});
void write_bracketed(std::ostream& out, const Corpus<PhraseTree>& corpus,
                     const BracketOptions& options = {});

// ---------------------------------------------------------------------------
// Dependency TSV: INDEX FORM LEMMA POS HEAD DEPREL, "_" for absent values,
// blank line between sentences, "#" comment lines. Ten-column CoNLL-X rows
// are accepted too (CPOSTAG is used as the POS, HEAD/DEPREL from columns 7/8).

struct DepReadOptions {
  // Keep cyclic graphs instead of throwing CycleDetected.
  bool permissive = false;
};

Corpus<DepGraph> read_dep_tsv(std::istream& in,
                              const DepReadOptions& options = {});
Corpus<DepGraph> read_dep_tsv(std::string_view text,
                              const DepReadOptions& options = {});
void write_dep_tsv(std::ostream& out, const DepGraph& graph);
void write_dep_tsv(std::ostream& out, const Corpus<DepGraph>& corpus);

// ---------------------------------------------------------------------------
// Grammatical relations, one per line: "(relname arg1 arg2 [args...])".
// Blank lines separate sentences; each additional blank line yields an empty
// sentence. "_" marks an unfilled slot, "form:3" pins a token position.

Corpus<GrSet> read_gr(std::istream& in);
Corpus<GrSet> read_gr(std::string_view text);
std::string write_gr(const GrRelation& relation);
void write_gr(std::ostream& out, const Corpus<GrSet>& corpus);

// ---------------------------------------------------------------------------
// Minimal TIGER-XML in dependency mode: terminals <t id word pos> carry
// <edge label idref> children pointing from the head terminal to its
// dependent. Terminals that no edge points at are roots.

Corpus<DepGraph> read_tiger_xml(std::istream& in,
                                const DepReadOptions& options = {});
Corpus<DepGraph> read_tiger_xml(std::string_view text,
                                const DepReadOptions& options = {});

// ---------------------------------------------------------------------------
// Parallel correct/noisy corpora, one whitespace-tokenized sentence per line.

std::vector<ParallelPair> read_parallel(std::istream& correct,
                                        std::istream& noisy);
std::vector<ParallelPair> read_parallel(std::string_view correct,
                                        std::string_view noisy);
void write_parallel(std::ostream& correct, std::ostream& noisy,
                    const std::vector<ParallelPair>& pairs);

// Splits on ASCII whitespace.
std::vector<std::string> split_ws(std::string_view line);
std::string join(const std::vector<std::string>& words, std::string_view sep = " ");

}  // namespace fepa::io

#endif  // FEPA_IO_HPP_
