#pragma once

#include <stdexcept>
#include <string>

namespace qfr {

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kNoRoot,
  kNotSquarefree,
  kUnsupportedDiscriminant,
  kNotPrincipal,
  kNotRepresentable,
  kNotInTable,
  kPrecision,
  kInconsistent,
  kUnsupported,
  kWrongGenerator,
  kNoSolution,
  kWrongClass,
  kIndeterminate,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qfr
