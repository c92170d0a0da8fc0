#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace relcalc {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kRankTol = 1e-10;
inline constexpr double kEqualTol = 1e-8;

enum class ErrorCode {
  DimensionMismatch,
  InvalidArgument,
  NotAnIsometry,
  NotAnExtension,
  ClassMismatch,
  NotFormallyDomainTight,
  OrthogonalRefused,
  DegenerateSegment,
  BisectionFailure,
  Precondition,
  UnknownLaw,
  Parse,
  Type,
  UnknownName,
  Io,
  Numeric,  // overflow or other non-finite intermediate
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<Vec> witness = std::nullopt)
      : std::runtime_error(what), code_(code), witness_(std::move(witness)) {}
  ErrorCode code() const { return code_; }
  const std::optional<Vec>& witness() const { return witness_; }

 private:
  ErrorCode code_;
  std::optional<Vec> witness_;
};

inline const cplx I1{0.0, 1.0};

}  // namespace relcalc
