#pragma once

#include <stdexcept>
#include <string>

namespace wulff {

enum class Errc {
  InvalidArgument,
  InvalidLune,
  Degenerate,
  NotOnBoundary,
  NotHemispherical,
  NotSupporting,
  InvalidIntegrand,
  InvalidBody,
  SolverFailure,
  ToleranceNotMet,
  CensusFailure,
  Schema,
};

const char* to_string(Errc code);

/// Library-wide exception; the code lets front ends map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace wulff
