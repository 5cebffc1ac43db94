#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sympos {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

// Base tolerance; verdicts scale it by the 2-norm of the inputs so the
// same policy works for badly scaled instances.
inline constexpr double kDefaultTol = 1e-9;

// A linear system counts as singular when smallest/largest singular value
// drops below this ratio. Kept fixed so verdicts are reproducible across
// BLAS-level reorderings.
inline constexpr double kSingularRatio = 1e-8;

inline double scaled_tol(double base, double scale) {
  return base * std::max(1.0, scale);
}

// Errors carry the offending quantity (typically a singular value or a
// determinant modulus); there are no pseudo-inverse fallbacks anywhere.
class Error : public std::runtime_error {
 public:
  Error(const std::string& what, double offending = 0.0)
      : std::runtime_error(what), offending_(offending) {}
  double offending_value() const { return offending_; }

 private:
  double offending_;
};

#define SYMPOS_DEFINE_ERROR(Name)                        \
  class Name : public Error {                            \
   public:                                               \
    using Error::Error;                                  \
  }

SYMPOS_DEFINE_ERROR(DimensionMismatch);
SYMPOS_DEFINE_ERROR(NotSymplectic);
SYMPOS_DEFINE_ERROR(NotLagrangian);
SYMPOS_DEFINE_ERROR(SingularLeviForm);
SYMPOS_DEFINE_ERROR(FiberNotTransversal);
SYMPOS_DEFINE_ERROR(NoGeneratingFunction);
SYMPOS_DEFINE_ERROR(EigenvalueTwo);
SYMPOS_DEFINE_ERROR(CayleySingular);
SYMPOS_DEFINE_ERROR(SingularHessianBlock);
SYMPOS_DEFINE_ERROR(SingularMixedBlock);
SYMPOS_DEFINE_ERROR(DegenerateCriticalPoint);
SYMPOS_DEFINE_ERROR(DegeneratePhase);
SYMPOS_DEFINE_ERROR(DivergentIntegral);
SYMPOS_DEFINE_ERROR(BranchTrackingFailure);
SYMPOS_DEFINE_ERROR(QuadratureFailure);
SYMPOS_DEFINE_ERROR(InvalidInstance);

#undef SYMPOS_DEFINE_ERROR

// Realification convention, used everywhere: C^n ∋ x ↔ (Re x, Im x) ∈ R^2n
// in that block order.
RVector realify(const CVector& x);
CVector complexify(const RVector& z);

}  // namespace sympos
