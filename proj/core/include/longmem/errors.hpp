#pragma once

#include <stdexcept>
#include <string>

namespace longmem {

// Every failure mode the library reports. CLI and battery slots key off these.
enum class Errc {
  MalformedRow,
  ZeroSize,
  TooShort,
  LabelMismatch,
  DegenerateSeries,
  LagOutOfRange,
  MixedLags,
  ZeroVariance,
  EmptyGrid,
  NonPositiveVariance,
  WindowTooLarge,
  InsufficientPoints,
  TooFewFrequencies,
  OutOfRange,
  SegmentTooShort,
  LongMemoryBase,
  EmbeddingFailure,
  InvalidParameter,
  IoFailure,
};

const char* errc_name(Errc code);
Errc errc_from_name(const std::string& name);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& msg);

}  // namespace longmem
