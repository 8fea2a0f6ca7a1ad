#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace delcheck {

// Base class for every domain error raised by the library. The CLI maps
// these to exit code 1, except ConfigError which is a usage error (exit 2).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SourcePos {
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  auto operator<=>(const SourcePos&) const = default;
};

// Syntax violation. `expected` names the token class the parser wanted,
// `found` is the offending lexeme ("end of input" at EOF).
struct ParseError : Error {
  ParseError(SourcePos pos, std::string expected, std::string found);

  SourcePos pos;
  std::string expected;
  std::string found;

 protected:
  ParseError(SourcePos pos, std::string expected, std::string found,
             const std::string& message);
};

struct DuplicatePropositionError : ParseError {
  DuplicatePropositionError(SourcePos pos, int id);
  int id;
};

struct DuplicateAgentError : ParseError {
  DuplicateAgentError(SourcePos pos, std::string agent);
  std::string agent;
};

// A VARS/LAW/OBS/VALID? section is absent or out of order.
struct MissingSectionError : ParseError {
  MissingSectionError(SourcePos pos, std::string section, std::string found);
  std::string section;
};

// Scene structure violations.
struct ValidationError : Error {
  using Error::Error;
};

struct UndeclaredPropositionError : ValidationError {
  explicit UndeclaredPropositionError(int id);
  int id;
};

struct UndeclaredAgentError : ValidationError {
  explicit UndeclaredAgentError(std::string agent);
  std::string agent;
};

struct EpistemicLawError : ValidationError {
  EpistemicLawError();
};

// BDD engine errors.
struct UnknownVariableError : Error {
  explicit UnknownVariableError(int id);
  int id;
};

struct ManagerMismatchError : Error {
  ManagerMismatchError();
};

struct PartialAssignmentError : Error {
  using Error::Error;
};

struct VocabularyTooLargeError : Error {
  VocabularyTooLargeError(std::size_t size, std::size_t limit);
  std::size_t size;
  std::size_t limit;
};

// Dataset ingestion errors.
struct MalformedRecordError : Error {
  MalformedRecordError(int line, const std::string& detail);
  int line;
};

struct MissingFieldError : Error {
  MissingFieldError(int line, std::string field);
  int line;
  std::string field;
};

struct UnparsableLabelError : Error {
  UnparsableLabelError(int line, const std::string& value);
  int line;
};

struct InsufficientClassError : Error {
  InsufficientClassError(bool label, std::size_t have, std::size_t need);
  bool label;
};

// Prompt template errors.
struct UnknownPlaceholderError : Error {
  explicit UnknownPlaceholderError(std::string name);
  std::string name;
};

struct UnboundPlaceholderError : Error {
  explicit UnboundPlaceholderError(std::string name);
  std::string name;
};

// Backend errors.
struct BackendError : Error {
  using Error::Error;
};

struct BackendUnavailableError : BackendError {
  explicit BackendUnavailableError(const std::string& detail);
};

struct FixtureMissError : BackendError {
  explicit FixtureMissError(std::string id);
  std::string id;
};

struct MissingApiKeyError : BackendError {
  explicit MissingApiKeyError(std::string variable);
  std::string variable;
};

struct MissingGoldFormulationError : Error {
  explicit MissingGoldFormulationError(std::string id);
  std::string id;
};

// Metrics errors.
struct EmptyRunError : Error {
  EmptyRunError();
};

struct SingleClassError : Error {
  SingleClassError();
};

struct WriteFailureError : Error {
  explicit WriteFailureError(const std::string& path);
};

// Invalid configuration (bad mode/field combinations, unusable settings).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace delcheck
