#include "vsd/error.hpp"

namespace vsd {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::Io: return "Io";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::MalformedRecord: return "MalformedRecord";
    case Errc::ClassTooSmall: return "ClassTooSmall";
    case Errc::EmptyTrainingSet: return "EmptyTrainingSet";
    case Errc::BadHeader: return "BadHeader";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::SingleClass: return "SingleClass";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::Corrupt: return "Corrupt";
    case Errc::EmptyTestSet: return "EmptyTestSet";
    case Errc::FeaturizerMismatch: return "FeaturizerMismatch";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnresolvedRule: return "UnresolvedRule";
    case Errc::CyclicRule: return "CyclicRule";
    case Errc::UnknownRule: return "UnknownRule";
    case Errc::LimitZero: return "LimitZero";
  }
  return "Unknown";
}

namespace {

std::string decorate(Errc code, const std::string& message, std::size_t line,
                     std::size_t column) {
  std::string out(to_string(code));
  if (line != 0) {
    out += " at line " + std::to_string(line);
    if (column != 0) out += ", column " + std::to_string(column);
  }
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(Errc code, const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(decorate(code, message, line, column)),
      code_(code),
      line_(line),
      column_(column) {}

}  // namespace vsd
