#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vsd {

enum class Errc {
  Io,
  InvalidArgument,
  // corpus
  MalformedRecord,
  ClassTooSmall,
  // featurize
  EmptyTrainingSet,
  BadHeader,
  DimensionMismatch,
  // smote / svm
  TooFewSamples,
  DimMismatch,
  SingleClass,
  VersionMismatch,
  Corrupt,
  // eval
  EmptyTestSet,
  FeaturizerMismatch,
  // jsgf
  SyntaxError,
  UnresolvedRule,
  CyclicRule,
  UnknownRule,
  LimitZero,
};

std::string_view to_string(Errc code);

// Every failure raised by the library. `line`/`column` are 1-based and zero
// when they do not apply.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::size_t line = 0, std::size_t column = 0);

  Errc code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  Errc code_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace vsd
