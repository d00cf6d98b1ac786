#pragma once

#include <stdexcept>
#include <string>

namespace mazu {

enum class ErrorCode {
  kOk = 0,
  kMalformedSpec,
  kResolutionTooCoarse,
  kWindowEmpty,
  kNotBoundary,
  kDisconnected,
  kBudgetExceeded,
  kQueryInObstacle,
  kNotFinitelyConnected,
  kUnknownExample,
  kPayloadTooLarge,
  kInvalidArgument,
  kIo,
};

const char* errorCodeName(ErrorCode code);

// All library failures are reported through this type; the C API maps the
// code onto its integer status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mazu
