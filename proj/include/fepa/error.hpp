#ifndef FEPA_ERROR_HPP_
#define FEPA_ERROR_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fepa {

enum class ErrorKind {
  // corpus-io
  kUnbalancedBrackets,
  kEmptyNode,
  kUnlabeledNode,
  kMixedTerminalNonterminal,
  kStrayToken,
  kBadColumnCount,
  kBadTokenIndex,
  kHeadOutOfRange,
  kCycleDetected,
  kMalformedRelation,
  kMissingAttribute,
  kDanglingEdgeRef,
  kMalformedXml,
  kLengthMismatch,
  kSentenceCountMismatch,
  kIoError,
  // metrics
  kTokenCountMismatch,
  kTerminalMismatch,
  kUnknownRelation,
  kBadHierarchy,
  kBadCostTable,
  // coverage-mining
  kEmptyCorpus,
  kMissingReferenceGenre,
  kBadVerdictLine,
  // robustness
  kNotEnoughAlterableWords,
  kExhaustedCandidates,
  kEmptyLevel,
  kNoCorrections,
  kBadKeyboardMap,
  // bench-harness
  kAdapterNotFound,
  kAllSentencesTerminated,
  kJudgeConfigError,
  kConfigError,
  // profile-compare
  kTooFewProfiles,
  kAllZeroWeights,
  // cli / generic
  kFormatMismatch,
  kInvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// True for failures that originate in an external parser adapter rather than
// in the evaluation inputs.
bool is_adapter_failure(ErrorKind kind);

// Every failure raised by the library. `location` is a human readable
// position ("line 12", "sentence 3", "offset 40") when one is known.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::string> location = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<std::string>& location() const noexcept {
    return location_;
  }
  // The message without kind and location decoration.
  const std::string& message() const noexcept { return message_; }

  // Same error, re-anchored at `location` (e.g. the sentence being scored).
  Error at(std::string location) const {
    return Error(kind_, message_, std::move(location));
  }

 private:
  ErrorKind kind_;
  std::string message_;
  std::optional<std::string> location_;
};

std::string at_line(std::size_t line);
std::string at_sentence(std::size_t index);

}  // namespace fepa

#endif  // FEPA_ERROR_HPP_
