#pragma once

#include <stdexcept>
#include <string>

namespace packlab {

/// Failure categories. Each maps onto one stable CLI exit code.
enum class ErrorKind {
  invalid_input,      // exit 2
  overflow,           // exit 3
  degenerate,         // exit 4
  insufficient_data,  // exit 5
};

enum class ErrorCode {
  invalid_input,
  degenerate_quadruple,
  zero_curvature,
  unbounded_root,
  overflow,
  frontier_overflow,
  insufficient_data,
  insufficient_resolution,
  no_loxodromics,
  empty_denominator,
  not_loxodromic,
  insufficient_concyclic,
  mismatched_pairing,
  not_schottky,
};

const char* to_string(ErrorCode code);
ErrorKind kind_of(ErrorCode code);
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorKind kind() const noexcept { return kind_of(code_); }

 private:
  ErrorCode code_;
};

}  // namespace packlab
