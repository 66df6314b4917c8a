#pragma once

#include <stdexcept>
#include <string>

namespace focalkit {

enum class ErrorCode {
  degenerate_flag,
  convergence_failure,
  singular_system,
  out_of_domain,
  order_unsupported,
  invalid_profile,
  non_orthonormal_frame,
  bad_parameters,
  reduced_order,
  division_guard,
  not_generic,
  regularity_failure,
  focal_not_regular,
  quadrature_failure,
  parse_error,
};

const char* to_string(ErrorCode code);

// Single exception type for the library. `index()` carries the failing
// position where one exists (the Gram-Schmidt step for degenerate_flag and
// reduced_order, the grid row for per-row failures), otherwise -1.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what, int index = -1)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  int index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  int index_;
};

}  // namespace focalkit
