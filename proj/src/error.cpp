#include "fepa/error.hpp"

#include <fmt/format.h>

namespace fepa {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnbalancedBrackets: return "UnbalancedBrackets";
    case ErrorKind::kEmptyNode: return "EmptyNode";
    case ErrorKind::kUnlabeledNode: return "UnlabeledNode";
    case ErrorKind::kMixedTerminalNonterminal: return "MixedTerminalNonterminal";
    case ErrorKind::kStrayToken: return "StrayToken";
    case ErrorKind::kBadColumnCount: return "BadColumnCount";
    case ErrorKind::kBadTokenIndex: return "BadTokenIndex";
    case ErrorKind::kHeadOutOfRange: return "HeadOutOfRange";
    case ErrorKind::kCycleDetected: return "CycleDetected";
    case ErrorKind::kMalformedRelation: return "MalformedRelation";
    case ErrorKind::kMissingAttribute: return "MissingAttribute";
    case ErrorKind::kDanglingEdgeRef: return "DanglingEdgeRef";
    case ErrorKind::kMalformedXml: return "MalformedXml";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kSentenceCountMismatch: return "SentenceCountMismatch";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kTokenCountMismatch: return "TokenCountMismatch";
    case ErrorKind::kTerminalMismatch: return "TerminalMismatch";
    case ErrorKind::kUnknownRelation: return "UnknownRelation";
    case ErrorKind::kBadHierarchy: return "BadHierarchy";
    case ErrorKind::kBadCostTable: return "BadCostTable";
    case ErrorKind::kEmptyCorpus: return "EmptyCorpus";
    case ErrorKind::kMissingReferenceGenre: return "MissingReferenceGenre";
    case ErrorKind::kBadVerdictLine: return "BadVerdictLine";
    case ErrorKind::kNotEnoughAlterableWords: return "NotEnoughAlterableWords";
    case ErrorKind::kExhaustedCandidates: return "ExhaustedCandidates";
    case ErrorKind::kEmptyLevel: return "EmptyLevel";
    case ErrorKind::kNoCorrections: return "NoCorrections";
    case ErrorKind::kBadKeyboardMap: return "BadKeyboardMap";
    case ErrorKind::kAdapterNotFound: return "AdapterNotFound";
    case ErrorKind::kAllSentencesTerminated: return "AllSentencesTerminated";
    case ErrorKind::kJudgeConfigError: return "JudgeConfigError";
    case ErrorKind::kConfigError: return "ConfigError";
    case ErrorKind::kTooFewProfiles: return "TooFewProfiles";
    case ErrorKind::kAllZeroWeights: return "AllZeroWeights";
    case ErrorKind::kFormatMismatch: return "FormatMismatch";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_adapter_failure(ErrorKind kind) {
  return kind == ErrorKind::kAdapterNotFound ||
         kind == ErrorKind::kAllSentencesTerminated;
}

namespace {

std::string compose(ErrorKind kind, const std::string& message,
                    const std::optional<std::string>& location) {
  if (location) {
    return fmt::format("{} ({}): {}", to_string(kind), *location, message);
  }
  return fmt::format("{}: {}", to_string(kind), message);
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::string> location)
    : std::runtime_error(compose(kind, message, location)),
      kind_(kind),
      message_(message),
      location_(std::move(location)) {}

std::string at_line(std::size_t line) { return fmt::format("line {}", line); }

std::string at_sentence(std::size_t index) {
  return fmt::format("sentence {}", index);
}

}  // namespace fepa
