#include "delcheck/errors.hpp"

namespace delcheck {

namespace {

std::string at(SourcePos pos) {
  return "line " + std::to_string(pos.line) + ", column " +
         std::to_string(pos.column);
}

std::string parse_message(SourcePos pos, const std::string& expected,
                          const std::string& found) {
  return at(pos) + ": expected " + expected + ", found '" + found + "'";
}

}  // namespace

ParseError::ParseError(SourcePos pos, std::string expected, std::string found)
    : Error(parse_message(pos, expected, found)),
      pos(pos),
      expected(std::move(expected)),
      found(std::move(found)) {}

ParseError::ParseError(SourcePos pos, std::string expected, std::string found,
                       const std::string& message)
    : Error(message),
      pos(pos),
      expected(std::move(expected)),
      found(std::move(found)) {}

DuplicatePropositionError::DuplicatePropositionError(SourcePos pos, int id)
    : ParseError(pos, "distinct proposition id", std::to_string(id),
                 at(pos) + ": duplicate proposition " + std::to_string(id)),
      id(id) {}

DuplicateAgentError::DuplicateAgentError(SourcePos pos, std::string agent)
    : ParseError(pos, "distinct agent name", agent,
                 at(pos) + ": agent '" + agent + "' declared twice in OBS"),
      agent(std::move(agent)) {}

MissingSectionError::MissingSectionError(SourcePos pos, std::string section,
                                         std::string found)
    : ParseError(pos, "section " + section, found,
                 at(pos) + ": expected section " + section + ", found '" +
                     found + "'"),
      section(std::move(section)) {}

UndeclaredPropositionError::UndeclaredPropositionError(int id)
    : ValidationError("proposition " + std::to_string(id) +
                      " is not declared in VARS"),
      id(id) {}

UndeclaredAgentError::UndeclaredAgentError(std::string agent)
    : ValidationError("agent '" + agent + "' has no OBS declaration"),
      agent(std::move(agent)) {}

EpistemicLawError::EpistemicLawError()
    : ValidationError(
          "LAW must be a Boolean formula (no knowledge or announcement "
          "operators)") {}

UnknownVariableError::UnknownVariableError(int id)
    : Error("variable " + std::to_string(id) +
            " is outside the manager's vocabulary"),
      id(id) {}

ManagerMismatchError::ManagerMismatchError()
    : Error("operands belong to different BDD managers") {}

VocabularyTooLargeError::VocabularyTooLargeError(std::size_t size,
                                                 std::size_t limit)
    : Error("vocabulary size " + std::to_string(size) +
            " exceeds the explicit-state limit of " + std::to_string(limit)),
      size(size),
      limit(limit) {}

MalformedRecordError::MalformedRecordError(int line, const std::string& detail)
    : Error("line " + std::to_string(line) + ": malformed record: " + detail),
      line(line) {}

MissingFieldError::MissingFieldError(int line, std::string field)
    : Error("line " + std::to_string(line) + ": missing field '" + field +
            "'"),
      line(line),
      field(std::move(field)) {}

UnparsableLabelError::UnparsableLabelError(int line, const std::string& value)
    : Error("line " + std::to_string(line) + ": unparsable label value '" +
            value + "'"),
      line(line) {}

InsufficientClassError::InsufficientClassError(bool label, std::size_t have,
                                               std::size_t need)
    : Error(std::string("not enough ") + (label ? "true" : "false") +
            "-labeled records: need " + std::to_string(need) + ", have " +
            std::to_string(have)),
      label(label) {}

UnknownPlaceholderError::UnknownPlaceholderError(std::string name)
    : Error("unknown placeholder {" + name + "}"), name(std::move(name)) {}

UnboundPlaceholderError::UnboundPlaceholderError(std::string name)
    : Error("placeholder {" + name + "} is not bound in this setting"),
      name(std::move(name)) {}

BackendUnavailableError::BackendUnavailableError(const std::string& detail)
    : BackendError("backend unavailable: " + detail) {}

FixtureMissError::FixtureMissError(std::string id)
    : BackendError("no replay fixture entry for record '" + id + "'"),
      id(std::move(id)) {}

MissingApiKeyError::MissingApiKeyError(std::string variable)
    : BackendError("environment variable " + variable + " is not set"),
      variable(std::move(variable)) {}

MissingGoldFormulationError::MissingGoldFormulationError(std::string id)
    : Error("record '" + id + "' has no gold formulation"),
      id(std::move(id)) {}

EmptyRunError::EmptyRunError() : Error("no outcomes to aggregate") {}

SingleClassError::SingleClassError()
    : Error("AUC needs outcomes from both label classes") {}

WriteFailureError::WriteFailureError(const std::string& path)
    : Error("cannot write '" + path + "'") {}

}  // namespace delcheck
