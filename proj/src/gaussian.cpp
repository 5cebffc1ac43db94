#include "sympos/gaussian.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace sympos {

namespace {

Complex det_of(const CMatrix& M) { return Eigen::PartialPivLU<CMatrix>(M).determinant(); }

// Continuous log of s ↦ det(−M(s)) along a matrix path, by adaptive argument
// unwrapping. Returns log at s = 1 relative to the principal value at s = 0.
Complex track_log_det(const std::function<CMatrix(double)>& path) {
  const Complex d0 = det_of(-path(0.0));
  if (std::abs(d0) == 0.0)
    throw BranchTrackingFailure("branch tracking: zero determinant at the start");
  double arg = std::arg(d0);
  Complex prev = d0;
  double mag_max = std::abs(d0), mag_min = std::abs(d0);

  const int base_steps = 16;
  const int max_depth = 48;
  // Recursively subdivide until the per-step argument jump is small.
  std::function<void(double, double, Complex, int)> advance =
      [&](double s0, double s1, Complex dprev, int depth) {
        const Complex d1 = det_of(-path(s1));
        const double m = std::abs(d1);
        if (m == 0.0)
          throw BranchTrackingFailure("branch tracking: determinant vanished on the path");
        const double jump = std::arg(d1 / dprev);
        if (std::abs(jump) > 0.5 * std::numbers::pi) {
          if (depth >= max_depth)
            throw BranchTrackingFailure(
                "branch tracking: argument jump did not settle (zero on the path)", m);
          const double mid = 0.5 * (s0 + s1);
          advance(s0, mid, dprev, depth + 1);
          advance(mid, s1, prev, depth + 1);
          return;
        }
        arg += jump;
        prev = d1;
        mag_max = std::max(mag_max, m);
        mag_min = std::min(mag_min, m);
      };

  for (int i = 0; i < base_steps; ++i) {
    const double s0 = static_cast<double>(i) / base_steps;
    const double s1 = static_cast<double>(i + 1) / base_steps;
    advance(s0, s1, prev, 0);
  }
  if (mag_min < 1e-14 * mag_max)
    throw BranchTrackingFailure("branch tracking: determinant collapsed on the path", mag_min);
  return Complex(std::log(std::abs(prev)), arg);
}

}  // namespace

Complex ComplexQuadExpr::operator()(const RVector& t) const {
  const CVector tc = t.cast<Complex>();
  const Complex quad = 0.5 * (tc.transpose() * H * tc)(0, 0);
  const Complex lin = (b.transpose() * tc)(0, 0);
  return quad + lin + c;
}

ComplexQuadExpr ComplexQuadExpr::zero(int d) {
  return {CMatrix::Zero(d, d), CVector::Zero(d), Complex(0, 0)};
}

Complex log_det_negated(const CMatrix& M) {
  const RMatrix ReM = 0.5 * (M.real() + M.real().transpose().eval());
  Eigen::SelfAdjointEigenSolver<RMatrix> es(ReM, Eigen::EigenvaluesOnly);
  const double max_eig = es.eigenvalues()(es.eigenvalues().size() - 1);
  if (max_eig >= 0.0)
    throw DivergentIntegral("gaussian: Re of the integrated Hessian is not negative definite",
                            max_eig);
  const CMatrix ImM = kI * M.imag().cast<Complex>();
  const CMatrix Re = ReM.cast<Complex>();
  return track_log_det([&](double s) { return CMatrix(Re + s * ImM); });
}

Complex sqrt_det_ratio(const CMatrix& H_ref, const CMatrix& H) {
  if (H_ref.rows() != H.rows())
    throw DimensionMismatch("sqrt_det_ratio: shape mismatch between path endpoints");
  const Complex log1 = track_log_det(
      [&](double s) { return CMatrix((1.0 - s) * H_ref + s * H); });
  // track_log_det is normalized to the principal argument at s = 0, so the
  // endpoint choice cancels in the ratio.
  const Complex log0 = std::log(det_of(-H_ref));
  return std::exp(0.5 * (log0 - log1));
}

GaussianReduction gaussian_reduce(const ComplexQuadExpr& f, int integrated) {
  const int d = integrated;
  const int p = f.dim() - d;
  if (d <= 0 || p < 0) throw DimensionMismatch("gaussian_reduce: bad split");

  const CMatrix M = f.H.topLeftCorner(d, d);
  const CMatrix B = f.H.topRightCorner(d, p);
  const CMatrix C = f.H.bottomRightCorner(p, p);
  const CVector bt = f.b.head(d);
  const CVector bp = f.b.tail(p);

  GaussianReduction out;
  out.log_amplitude = 0.5 * d * std::log(2.0 * std::numbers::pi) - 0.5 * log_det_negated(M);

  Eigen::PartialPivLU<CMatrix> lu(M);
  out.critical_point_map = -lu.solve(B);
  out.critical_offset = -lu.solve(bt);

  CMatrix Hred = C + B.transpose() * out.critical_point_map;
  Hred = 0.5 * (Hred + Hred.transpose().eval());
  CVector bred = bp + B.transpose() * out.critical_offset;
  const Complex cred = f.c + 0.5 * (bt.transpose() * out.critical_offset)(0, 0);
  out.reduced = {std::move(Hred), std::move(bred), cred};
  return out;
}

}  // namespace sympos
