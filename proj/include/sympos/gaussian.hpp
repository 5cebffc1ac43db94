#pragma once

#include "sympos/types.hpp"

namespace sympos {

// f(t) = (1/2) tᵀ H t + bᵀ t + c with complex coefficients, t ∈ R^d.
struct ComplexQuadExpr {
  CMatrix H;
  CVector b;
  Complex c{0.0, 0.0};

  int dim() const { return static_cast<int>(H.rows()); }
  Complex operator()(const RVector& t) const;
  static ComplexQuadExpr zero(int d);
};

struct GaussianReduction {
  // (d/2) log 2π − (1/2) log det(−M), square-root branch tracked by homotopy
  // from the principal real branch at Re M.
  Complex log_amplitude{0.0, 0.0};
  // Completed-square quadratic in the retained parameters.
  ComplexQuadExpr reduced;
  // Critical point of the integrated variables: t*(p) = map · p + offset.
  CMatrix critical_point_map;
  CVector critical_offset;
};

// Exact Gaussian integral of e^{f} over the first `integrated` (real)
// variables of f; the rest are carried as parameters. Throws
// DivergentIntegral when Re of the integrated Hessian block is not negative
// definite, BranchTrackingFailure when the branch homotopy hits a zero
// determinant.
GaussianReduction gaussian_reduce(const ComplexQuadExpr& f, int integrated);

// log det(−M) for complex symmetric M with Re M ≺ 0, branch tracked along
// M_t = Re M + t·i·Im M from the principal real branch at t = 0.
Complex log_det_negated(const CMatrix& M);

// Continuous sqrt(det(−H_ref)/det(−H)) along the straight-line homotopy
// H_s = (1−s) H_ref + s H. The branch chosen at s = 0 cancels in the ratio.
Complex sqrt_det_ratio(const CMatrix& H_ref, const CMatrix& H);

}  // namespace sympos
