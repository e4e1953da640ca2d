#include "workcell/errors.hpp"

namespace workcell {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::UnknownTask: return "UnknownTask";
    case Errc::TooFar: return "TooFar";
    case Errc::AlreadyHeld: return "AlreadyHeld";
    case Errc::NothingHeld: return "NothingHeld";
    case Errc::OutOfLimits: return "OutOfLimits";
    case Errc::Unreachable: return "Unreachable";
    case Errc::TooFast: return "TooFast";
    case Errc::IkFailure: return "IkFailure";
    case Errc::UnknownObject: return "UnknownObject";
    case Errc::UnknownAnnotation: return "UnknownAnnotation";
    case Errc::UnknownAgent: return "UnknownAgent";
    case Errc::UnknownSkill: return "UnknownSkill";
    case Errc::ParseError: return "ParseError";
    case Errc::CategoryMismatch: return "CategoryMismatch";
    case Errc::BindingError: return "BindingError";
    case Errc::SchemaError: return "SchemaError";
    case Errc::PlannerExhausted: return "PlannerExhausted";
    case Errc::RemoteError: return "RemoteError";
    case Errc::InternalInconsistency: return "InternalInconsistency";
    case Errc::DivergenceDetected: return "DivergenceDetected";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::IoError: return "IoError";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::UnboundObject: return "UnboundObject";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::PlacementFailed: return "PlacementFailed";
  }
  return "UnknownError";
}

namespace {

std::string parse_error_message(const std::string& sentence, std::size_t span,
                                const std::vector<std::string>& expected) {
  std::string msg = "no grammar template matches \"" + sentence + "\" (matched prefix length " +
                    std::to_string(span) + "); expected one of:";
  for (const auto& name : expected) {
    msg += " " + name;
  }
  return msg;
}

}  // namespace

SentenceParseError::SentenceParseError(std::string sentence_in, std::size_t span_in,
                                       std::vector<std::string> expected_in)
    : Error(Errc::ParseError, parse_error_message(sentence_in, span_in, expected_in)),
      sentence(std::move(sentence_in)),
      span(span_in),
      expected(std::move(expected_in)) {}

}  // namespace workcell
