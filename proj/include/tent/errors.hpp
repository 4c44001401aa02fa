#pragma once

#include <stdexcept>
#include <string>

namespace tent {

// Every failure the library can signal. The CLI maps InfeasibleK to exit
// code 3 and everything else to exit code 2.
enum class Errc {
  NegativeEntry,
  SumNotOne,
  SumExceedsOne,
  ParameterOutOfRange,
  LengthMismatch,
  SampleOutsideSupport,
  InvalidThresholds,
  InfeasibleK,
  TooManyCombinations,
  InvalidConfig,
  EmptyCluster,
  NonConvergence,
  MalformedHeader,
  TruncatedPixelData,
  UnsupportedMaxval,
  RaggedRows,
  NonNumericCell,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::SumNotOne: return "SumNotOne";
    case Errc::SumExceedsOne: return "SumExceedsOne";
    case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::SampleOutsideSupport: return "SampleOutsideSupport";
    case Errc::InvalidThresholds: return "InvalidThresholds";
    case Errc::InfeasibleK: return "InfeasibleK";
    case Errc::TooManyCombinations: return "TooManyCombinations";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::EmptyCluster: return "EmptyCluster";
    case Errc::NonConvergence: return "NonConvergence";
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::TruncatedPixelData: return "TruncatedPixelData";
    case Errc::UnsupportedMaxval: return "UnsupportedMaxval";
    case Errc::RaggedRows: return "RaggedRows";
    case Errc::NonNumericCell: return "NonNumericCell";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        message_(message) {}

  Errc code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }  // unprefixed

 private:
  Errc code_;
  std::string message_;
};

}  // namespace tent
