#include "longmem/errors.hpp"

#include <array>
#include <utility>

namespace longmem {

namespace {

constexpr std::array<std::pair<Errc, const char*>, 19> kNames{{
    {Errc::MalformedRow, "MalformedRow"},
    {Errc::ZeroSize, "ZeroSize"},
    {Errc::TooShort, "TooShort"},
    {Errc::LabelMismatch, "LabelMismatch"},
    {Errc::DegenerateSeries, "DegenerateSeries"},
    {Errc::LagOutOfRange, "LagOutOfRange"},
    {Errc::MixedLags, "MixedLags"},
    {Errc::ZeroVariance, "ZeroVariance"},
    {Errc::EmptyGrid, "EmptyGrid"},
    {Errc::NonPositiveVariance, "NonPositiveVariance"},
    {Errc::WindowTooLarge, "WindowTooLarge"},
    {Errc::InsufficientPoints, "InsufficientPoints"},
    {Errc::TooFewFrequencies, "TooFewFrequencies"},
    {Errc::OutOfRange, "OutOfRange"},
    {Errc::SegmentTooShort, "SegmentTooShort"},
    {Errc::LongMemoryBase, "LongMemoryBase"},
    {Errc::EmbeddingFailure, "EmbeddingFailure"},
    {Errc::InvalidParameter, "InvalidParameter"},
    {Errc::IoFailure, "IoFailure"},
}};

}  // namespace

const char* errc_name(Errc code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "UnknownError";
}

Errc errc_from_name(const std::string& name) {
  for (const auto& [c, n] : kNames) {
    if (name == n) return c;
  }
  throw Error(Errc::InvalidParameter, "unknown error code name: " + name);
}

Error::Error(Errc code, const std::string& msg)
    : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

void raise(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace longmem
