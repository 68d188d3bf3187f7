// Error taxonomy shared by every module. Each error carries a code so the
// command-line layer can map failures onto its exit-code contract
// (config -> 2, data -> 3, numerical -> 4).
#pragma once

#include <stdexcept>
#include <string>

namespace volstudy {

enum class Err {
  // configuration
  InvalidConfig,
  InvalidWindowSpec,
  // data
  IoFailure,
  MalformedInput,
  NonPositivePrice,
  TooShortSeries,
  EmptyIntersection,
  WindowOutOfRange,
  OutcomeDateBeyondData,
  InsufficientHistory,
  DegenerateData,
  TooFewCases,
  EmptyWindow,
  NoEligibleDates,
  ZeroPreEventVariance,
  TooShortWindow,
  MissingFeature,
  InsufficientObservations,
  // numerical
  NonStationaryParams,
  NonPositiveVariance,
  NonConvergence,
  SingularDesign,
};

enum class ErrClass { config, data, numerical };

constexpr ErrClass classify(Err code) {
  switch (code) {
    case Err::InvalidConfig:
    case Err::InvalidWindowSpec:
      return ErrClass::config;
    case Err::NonStationaryParams:
    case Err::NonPositiveVariance:
    case Err::NonConvergence:
    case Err::SingularDesign:
      return ErrClass::numerical;
    default:
      return ErrClass::data;
  }
}

constexpr const char* err_name(Err code) {
  switch (code) {
    case Err::InvalidConfig: return "InvalidConfig";
    case Err::InvalidWindowSpec: return "InvalidWindowSpec";
    case Err::IoFailure: return "IoFailure";
    case Err::MalformedInput: return "MalformedInput";
    case Err::NonPositivePrice: return "NonPositivePrice";
    case Err::TooShortSeries: return "TooShortSeries";
    case Err::EmptyIntersection: return "EmptyIntersection";
    case Err::WindowOutOfRange: return "WindowOutOfRange";
    case Err::OutcomeDateBeyondData: return "OutcomeDateBeyondData";
    case Err::InsufficientHistory: return "InsufficientHistory";
    case Err::DegenerateData: return "DegenerateData";
    case Err::TooFewCases: return "TooFewCases";
    case Err::EmptyWindow: return "EmptyWindow";
    case Err::NoEligibleDates: return "NoEligibleDates";
    case Err::ZeroPreEventVariance: return "ZeroPreEventVariance";
    case Err::TooShortWindow: return "TooShortWindow";
    case Err::MissingFeature: return "MissingFeature";
    case Err::InsufficientObservations: return "InsufficientObservations";
    case Err::NonStationaryParams: return "NonStationaryParams";
    case Err::NonPositiveVariance: return "NonPositiveVariance";
    case Err::NonConvergence: return "NonConvergence";
    case Err::SingularDesign: return "SingularDesign";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& message)
      : std::runtime_error(std::string(err_name(code)) + ": " + message),
        code_(code) {}

  Err code() const { return code_; }
  ErrClass error_class() const { return classify(code_); }

 private:
  Err code_;
};

}  // namespace volstudy
