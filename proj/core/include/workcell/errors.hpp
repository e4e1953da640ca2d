#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace workcell {

enum class Errc {
  UnknownTask,
  TooFar,
  AlreadyHeld,
  NothingHeld,
  OutOfLimits,
  Unreachable,
  TooFast,
  IkFailure,
  UnknownObject,
  UnknownAnnotation,
  UnknownAgent,
  UnknownSkill,
  ParseError,
  CategoryMismatch,
  BindingError,
  SchemaError,
  PlannerExhausted,
  RemoteError,
  InternalInconsistency,
  DivergenceDetected,
  EmptyInput,
  IoError,
  IndexOutOfRange,
  UnboundObject,
  InvalidConfig,
  PlacementFailed,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// Sentence did not match any grammar template.
class SentenceParseError : public Error {
 public:
  SentenceParseError(std::string sentence, std::size_t span, std::vector<std::string> expected);

  std::string sentence;
  std::size_t span;  // byte offset up to which a prefix could be matched
  std::vector<std::string> expected;
};

class IkError : public Error {
 public:
  IkError(Errc code, const std::string& what, int agent_id, int waypoint_index)
      : Error(code, what), agent_id(agent_id), waypoint_index(waypoint_index) {}

  int agent_id;
  int waypoint_index;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int tick)
      : Error(Errc::DivergenceDetected, what), tick(tick) {}

  int tick;
};

}  // namespace workcell
