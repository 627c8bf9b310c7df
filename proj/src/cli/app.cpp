#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "fepa/cli.hpp"
#include "fepa/error.hpp"

namespace fepa::cli {

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    return is_adapter_failure(err->kind()) ? kExitAdapter : kExitInput;
  }
  if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) return kExitInput;
  return kExitInternal;
}

namespace {

const std::vector<std::string> kFormats = {"bracketed", "dep-tsv", "conll", "tiger", "gr"};

void check_inputs(const std::vector<std::string>& paths) {
  for (const auto& p : paths) {
    if (p.empty() || p == "-") continue;
    if (!std::filesystem::exists(p)) {
      throw Error(ErrorKind::kIoError, fmt::format("input '{}' does not exist", p));
    }
  }
}

void emit(const std::string& text, const Globals& globals, std::ostream& out) {
  if (globals.out == "-") {
    out << text;
  } else {
    write_file(globals.out, text);
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parser evaluation toolkit", "fepa"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Input format")
      ->check(CLI::IsMember(kFormats));
  app.add_option("--out", g.out, "Report or output file ('-' for stdout)");
  app.add_option("--report", g.report, "Report format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--jobs", g.jobs, "Parallel adapter runs")->check(CLI::PositiveNumber);
  app.add_flag("--permissive", g.permissive, "Keep cyclic dependency graphs");

  EvalArgs eval;
  auto* c_eval = app.add_subcommand("eval", "Score test analyses against a gold standard");
  c_eval->add_option("--gold", eval.gold, "Gold file")->required();
  c_eval->add_option("--test", eval.test, "Test file")->required();
  c_eval->add_option("--metric", eval.metric, "parseval, la, dep (uas, las), lin, gr")
      ->check(CLI::IsMember({"parseval", "la", "dep", "uas", "las", "lin", "gr"}));
  c_eval->add_flag("--unlabeled-brackets", eval.unlabeled_brackets,
                   "Accept groups without a category");
  c_eval->add_flag("--all-unlabeled", eval.all_unlabeled,
                   "Read every group as unlabeled and every atom as a word");
  c_eval->add_flag("--square-brackets", eval.square_brackets, "Trees use [ ]");
  c_eval->add_flag("--drop-root", eval.drop_root, "Ignore the root span");
  c_eval->add_flag("--drop-preterminals", eval.drop_preterminals,
                   "Ignore part-of-speech spans");
  c_eval->add_option("--cost-table", eval.cost_table, "Label replacement costs");
  c_eval->add_flag("--exclude-punct", eval.exclude_punct, "Skip punctuation tokens");
  c_eval->add_option("--punct-tags", eval.punct_tags, "POS tags counted as punctuation")
      ->delimiter(',');
  c_eval->add_option("--hierarchy", eval.hierarchy, "Relation hierarchy file");
  c_eval->add_flag("--strict-gr", eval.strict_gr, "Match relation names exactly");
  c_eval->add_flag("--labeled", eval.labeled, "Link categories also compare labels");

  MineArgs mine;
  auto* c_mine = app.add_subcommand("mine", "List n-grams that parse badly");
  c_mine->add_option("verdicts", mine.verdicts, "Verdict file")->required();
  c_mine->add_option("--max-n", mine.max_n, "Longest n-gram")->check(CLI::PositiveNumber);
  c_mine->add_option("--min-freq", mine.min_freq, "Minimum occurrences");
  c_mine->add_option("--below", mine.below, "Keep parsability strictly below this");

  RobustArgs robust;
  auto* c_robust = app.add_subcommand("robust", "Similarity of analyses on noisy input");
  c_robust->add_option("--tallies", robust.tallies,
                       "Stored counts: level pairs unlabeled-same labeled-same");
  c_robust->add_option("--pair", robust.pairs, "LEVEL:CORRECT_OUT:NOISY_OUT analyses");
  c_robust->add_option("--corpus", robust.corpora, "LEVEL:CORRECT_TXT:NOISY_TXT text");
  c_robust->add_option("--sentences", robust.sentences, "Clean sentences to add noise to");
  c_robust->add_option("--generate", robust.generate_levels, "Noise levels to generate")
      ->delimiter(',');
  c_robust->add_option("--ops", robust.ops, "delete, add, transpose")->delimiter(',');
  c_robust->add_option("--keyboard", robust.keyboard, "Keyboard adjacency map");
  c_robust->add_option("--dictionary", robust.dictionary, "Known words");
  c_robust->add_option("--adapters", robust.adapters, "Adapter config");
  c_robust->add_option("--adapter", robust.adapter, "Adapter name");
  c_robust->add_option("--run-dir", robust.run_dir, "Where adapter runs are kept");

  NoiseArgs noise;
  auto* c_noise = app.add_subcommand("noise", "Make a misspelled twin of a corpus");
  c_noise->add_option("input", noise.input, "One sentence per line")->required();
  c_noise->add_option("--level", noise.level, "Misspelled words per sentence")
      ->check(CLI::PositiveNumber);
  c_noise->add_option("--ops", noise.ops, "delete, add, transpose")->delimiter(',');
  c_noise->add_option("--keyboard", noise.keyboard, "Keyboard adjacency map");
  c_noise->add_option("--dictionary", noise.dictionary, "Known words");
  c_noise->add_option("--out-correct", noise.out_correct, "Correct side")->required();
  c_noise->add_option("--out-noisy", noise.out_noisy, "Noisy side")->required();

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "Run parsers over a corpus");
  c_bench->add_option("--corpus", bench.corpus, "Sentences, optionally genre<TAB>text");
  c_bench->add_option("--adapters", bench.adapters, "Adapter config");
  c_bench->add_option("--adapter", bench.adapter_names, "Adapters to run (default all)");
  c_bench->add_option("--run-dir", bench.run_dir, "Ledger directory");
  c_bench->add_option("--verdicts", bench.verdicts, "Score stored verdicts instead");
  c_bench->add_flag("--tagged", bench.tagged, "Corpus tokens are form/POS");
  c_bench->add_option("--tag-separator", bench.tag_separator, "Separator for --tagged");
  c_bench->add_flag("--no-resume", bench.no_resume, "Start runs from scratch");
  c_bench->add_option("--reference-genre", bench.reference_genre,
                      "Genre generalizability is relative to");
  c_bench->add_option("--bucket-width", bench.bucket_width, "Sentence length bucket size")
      ->check(CLI::PositiveNumber);
  c_bench->add_option("--max-consecutive-failures", bench.max_consecutive_failures,
                      "Give up after this many terminated sentences in a row");

  SubtletyArgs subtle;
  auto* c_subtle = app.add_subcommand("subtlety", "Detail, ambiguity and underspecification");
  c_subtle->add_option("--outputs", subtle.outputs, "Parser output with alternatives");
  c_subtle->add_option("--pos-tags", subtle.pos_tags, "Word-level tagset size");
  c_subtle->add_option("--syntax-tags", subtle.syntax_tags, "Syntactic tagset size");
  c_subtle->add_option("--markers", subtle.markers, "Tags marking underspecification")
      ->delimiter(',');
  c_subtle->add_option("--f-score", subtle.f_score, "F-score (percent) to combine");

  CompareArgs compare;
  auto* c_compare = app.add_subcommand("compare", "Rank parsers over all criteria");
  c_compare->add_option("profiles", compare.profiles, "Profile JSON files")->required();
  c_compare->add_option("--weight", compare.weights, "criterion=weight");
  c_compare->add_option("--tie-break", compare.tie_break, "Criteria that break ties")
      ->delimiter(',');
  c_compare->add_option("--rank-method", compare.rank_method, "competition or dense")
      ->check(CLI::IsMember({"competition", "dense"}));
  c_compare->add_option("--decimals", compare.decimals, "Round scores before ranking");
  c_compare->add_flag("--no-robustness-tie-break", compare.no_robustness_tie_break,
                      "Keep robustness ties instead of splitting them by stability");

  ConvertArgs convert;
  auto* c_convert = app.add_subcommand("convert", "Rewrite a corpus in another format");
  c_convert->add_option("input", convert.input, "Input file")->required();
  c_convert->add_option("--from", convert.from, "Input format")->check(CLI::IsMember(kFormats));
  c_convert->add_option("--to", convert.to, "Output format")
      ->required()
      ->check(CLI::IsMember({"bracketed", "dep-tsv", "gr"}));
  c_convert->add_flag("--square-brackets", convert.square_brackets, "Write [ ]");
  c_convert->add_flag("--unlabeled-brackets", convert.unlabeled_brackets,
                      "Accept groups without a category");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fepa: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (c_convert->parsed()) {
      check_inputs({convert.input});
      emit(cmd_convert(convert, g), g, out);
      return kExitOk;
    }
    Report report;
    if (c_eval->parsed()) {
      check_inputs({eval.gold, eval.test, eval.cost_table, eval.hierarchy});
      report = cmd_eval(eval, g);
    } else if (c_mine->parsed()) {
      check_inputs({mine.verdicts});
      report = cmd_mine(mine, g);
    } else if (c_robust->parsed()) {
      check_inputs({robust.tallies, robust.sentences, robust.keyboard, robust.dictionary,
                    robust.adapters});
      report = cmd_robust(robust, g);
    } else if (c_noise->parsed()) {
      check_inputs({noise.input, noise.keyboard, noise.dictionary});
      report = cmd_noise(noise, g);
    } else if (c_bench->parsed()) {
      check_inputs({bench.corpus, bench.adapters, bench.verdicts});
      report = cmd_bench(bench, g);
    } else if (c_subtle->parsed()) {
      check_inputs({subtle.outputs});
      report = cmd_subtlety(subtle, g);
    } else if (c_compare->parsed()) {
      check_inputs(compare.profiles);
      report = cmd_compare(compare, g);
    }
    std::ostringstream text;
    write_report(text, report, parse_report_format(g.report));
    emit(text.str(), g, out);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "fepa: error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace fepa::cli
