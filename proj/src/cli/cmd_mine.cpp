#include "commands.hpp"
#include "fepa/coverage.hpp"
#include "fepa/error.hpp"

namespace fepa::cli {

Report cmd_mine(const MineArgs& args, const Globals&) {
  std::vector<VerdictRecord> records;
  {
    auto in = io::open_input(args.verdicts);
    try {
      records = read_verdicts(*in);
    } catch (const Error&) {
      rethrow_at(args.verdicts);
    }
  }
  MiningOptions options;
  options.max_n = args.max_n;
  options.min_freq = args.min_freq;
  options.below = args.below;
  const auto mined = mine_errors(records, options);

  Report report;
  report.title = "Suspect n-grams";
  report.add("verdicts", Cell::text(args.verdicts));
  const auto ledger = CoverageLedger::from(records);
  report.add("sentences", Cell::integer(static_cast<std::int64_t>(ledger.total.total())));
  if (ledger.total.total() > 0) report.add("coverage", Cell::ratio(coverage(ledger.total)));
  report.add("max_n", Cell::integer(static_cast<std::int64_t>(args.max_n)));
  report.add("min_freq", Cell::integer(args.min_freq));
  report.add("suspects", Cell::integer(static_cast<std::int64_t>(mined.size())));

  auto& table = report.table("ngrams", {"ngram", "n", "parsability", "covered_sentences",
                                        "freq_total", "freq_uncovered"});
  for (const auto& r : mined) {
    table.add_row({Cell::text(r.text()),
                   Cell::integer(static_cast<std::int64_t>(r.gram.size())),
                   Cell::real(r.parsability(), 3), Cell::ratio(r.parsability_fraction()),
                   Cell::integer(r.freq_total), Cell::integer(r.freq_uncovered)});
  }
  return report;
}

}  // namespace fepa::cli
