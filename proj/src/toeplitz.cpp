#include "sympos/toeplitz.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "sympos/gaussian.hpp"

namespace sympos {

namespace {

// q scaled by a complex factor; used to realify Im q through (−i q).
ComplexQuadraticSymbolExponent scale_q(const ComplexQuadraticSymbolExponent& q, Complex s) {
  return {s * q.q1(), s * q.q2(), s * q.q3()};
}

// Complex symmetric 2n×2n matrix S with q(x) = (1/2) zᵀ S z on z = (Re x, Im x).
CMatrix realify_complex_quadratic(const ComplexQuadraticSymbolExponent& q) {
  const RMatrix Sre = q.real_part().realified();
  const RMatrix Sim = scale_q(q, -kI).real_part().realified();
  return Sre.cast<Complex>() + kI * Sim.cast<Complex>();
}

}  // namespace

Complex GaussianSymbol::value_on_graph(const CVector& x) const {
  const CVector z = realify(x).cast<Complex>();
  return amplitude * std::exp(0.5 * (z.transpose() * lambda_exponent * z)(0, 0));
}

AdmissibilityReport admissibility(const ComplexQuadraticSymbolExponent& q,
                                  const QuadraticWeight& phi0, double tol) {
  if (q.dim() != phi0.dim()) throw DimensionMismatch("admissibility: dimension mismatch");
  AdmissibilityReport out;
  const auto [herm, plh] = split_herm_plh(phi0);
  const QuadraticWeight two_re_q = q.real_part().scaled(2.0);

  const FormComparison dense = compare_weights(herm, two_re_q, tol);
  out.densely_defined = dense.pd;
  out.dense_margin = dense.min_eigenvalue;

  const FormComparison conv = compare_weights(herm.scaled(4.0), two_re_q, tol);
  out.convolution_convergent = conv.pd;
  out.convolution_margin = conv.min_eigenvalue;

  const CMatrix D = 0.5 * phi0.levi() - q.q2();
  const Complex det = Eigen::PartialPivLU<CMatrix>(D).determinant();
  out.det_abs = std::abs(det);
  const double threshold =
      1e-10 * std::pow(std::max(1e-300, 0.5 * phi0.levi().norm()), phi0.dim());
  out.marginal = out.det_abs < threshold;
  out.nondegenerate = !out.marginal;
  return out;
}

GaussianSymbol weyl_symbol(const ComplexQuadraticSymbolExponent& q,
                           const QuadraticWeight& phi0) {
  const int n = phi0.dim();
  if (q.dim() != n) throw DimensionMismatch("weyl_symbol: dimension mismatch");
  const auto [herm, plh] = split_herm_plh(phi0);

  // Joint exponent over (z_y | z_x) realified: −4Φ_herm(x−y) + 2q(y).
  const RMatrix Sh = herm.realified();
  const CMatrix Sq = realify_complex_quadratic(q);
  ComplexQuadExpr f = ComplexQuadExpr::zero(4 * n);
  f.H.topLeftCorner(2 * n, 2 * n) = (-4.0 * Sh).cast<Complex>() + 2.0 * Sq;
  f.H.topRightCorner(2 * n, 2 * n) = (4.0 * Sh).cast<Complex>();
  f.H.bottomLeftCorner(2 * n, 2 * n) = (4.0 * Sh).cast<Complex>();
  f.H.bottomRightCorner(2 * n, 2 * n) = (-4.0 * Sh).cast<Complex>();

  const GaussianReduction red = gaussian_reduce(f, 2 * n);

  const Complex detL = Eigen::PartialPivLU<CMatrix>(phi0.levi()).determinant();
  const double c_phi0 = std::pow(2.0 / std::numbers::pi, n) * detL.real();

  GaussianSymbol out;
  out.amplitude = std::exp(red.log_amplitude) * c_phi0;
  out.lambda_exponent = 0.5 * (red.reduced.H + red.reduced.H.transpose().eval());

  // F(x,ξ) = −i G(x, x̄) after x̄ = L0⁻¹(iξ − 2A0 x). First move G from the
  // realified variable to (x, x̄), then substitute.
  CMatrix T(2 * n, 2 * n);
  T.topLeftCorner(n, n) = 0.5 * CMatrix::Identity(n, n);
  T.topRightCorner(n, n) = 0.5 * CMatrix::Identity(n, n);
  T.bottomLeftCorner(n, n) = Complex(0, -0.5) * CMatrix::Identity(n, n);
  T.bottomRightCorner(n, n) = Complex(0, 0.5) * CMatrix::Identity(n, n);
  const CMatrix Gc = T.transpose() * out.lambda_exponent * T;  // over (x, x̄)

  const CMatrix Linv = Eigen::PartialPivLU<CMatrix>(phi0.levi()).inverse();
  CMatrix Sub = CMatrix::Zero(2 * n, 2 * n);
  Sub.topLeftCorner(n, n) = CMatrix::Identity(n, n);
  Sub.bottomLeftCorner(n, n) = -2.0 * Linv * phi0.holomorphic_part();
  Sub.bottomRightCorner(n, n) = kI * Linv;
  CMatrix F = -kI * (Sub.transpose() * Gc * Sub);
  F = 0.5 * (F + F.transpose().eval());
  out.phase = HolomorphicQuadraticForm(std::move(F));
  return out;
}

NondegeneratePhase toeplitz_phase(const ComplexQuadraticSymbolExponent& q,
                                  const QuadraticWeight& phi0) {
  const int n = phi0.dim();
  const CMatrix& A0 = phi0.holomorphic_part();
  const CMatrix& L0 = phi0.levi();
  CMatrix Q = CMatrix::Zero(3 * n, 3 * n);
  auto blk = [&](int a, int b) { return Eigen::Block<CMatrix>(Q, a * n, b * n, n, n); };
  blk(0, 0) = A0;
  blk(0, 2) = 0.5 * L0;
  blk(2, 0) = 0.5 * L0.transpose();
  blk(1, 1) = -A0 + 2.0 * q.q1();
  blk(1, 2) = -0.5 * L0 + q.q2().transpose();
  blk(2, 1) = -0.5 * L0.transpose() + q.q2();
  blk(2, 2) = 2.0 * q.q3();
  Q *= (2.0 / kI);
  return NondegeneratePhase(n, n, n, HolomorphicQuadraticForm(std::move(Q)));
}

ComplexCanonicalMap toeplitz_map(const ComplexQuadraticSymbolExponent& q,
                                 const QuadraticWeight& phi0) {
  const AdmissibilityReport adm = admissibility(q, phi0);
  if (!adm.nondegenerate)
    throw SingularMixedBlock("toeplitz_map: ∂x∂x̄(Φ0 − q) is singular", adm.det_abs);
  const ComplexCanonicalMap kappa = canonical_map_of_phase(toeplitz_phase(q, phi0));

  // Appendix-B cross-check through the Weyl phase; a gross mismatch means a
  // pipeline bug, not a property of the instance.
  if (adm.convolution_convergent) {
    const GaussianSymbol sym = weyl_symbol(q, phi0);
    const ComplexCanonicalMap cayley = cayley_map(sym.phase);
    const double resid = (kappa.matrix() - cayley.matrix()).norm();
    if (resid > 1e-6 * std::max(1.0, kappa.matrix().norm()))
      throw Error("toeplitz_map: phase and Cayley routes disagree", resid);
  }
  return kappa;
}

ToeplitzReport analyze(const ComplexQuadraticSymbolExponent& q, const QuadraticWeight& phi0,
                       double tol) {
  ToeplitzReport rep;
  rep.admissible = admissibility(q, phi0, tol);
  if (!rep.admissible.convolution_convergent) return rep;

  const int n = phi0.dim();
  rep.weyl = weyl_symbol(q, phi0);

  if (rep.admissible.nondegenerate) {
    rep.kappa = canonical_map_of_phase(toeplitz_phase(q, phi0));
    const ComplexCanonicalMap cayley = cayley_map(rep.weyl->phase);
    rep.kappa_cayley_residual = (rep.kappa->matrix() - cayley.matrix()).norm();
  }

  // Boundedness: Im F|_Λ = −Re G as a real form on R^2n.
  PositivityVerdict bounded;
  const RMatrix minus_re_g = -rep.weyl->lambda_exponent.real();
  const FormComparison cmp = classify_real_form(0.5 * (minus_re_g + minus_re_g.transpose()), tol);
  bounded.direct.ok = true;
  bounded.direct.min_eigenvalue = cmp.min_eigenvalue;
  bounded.direct.tol = cmp.tol;
  bounded.direct.status = classify(cmp.min_eigenvalue, cmp.tol);
  bounded.status = bounded.direct.status;
  bounded.min_eigenvalue = cmp.min_eigenvalue;
  bounded.witness = complexify(cmp.witness);
  if (rep.kappa) {
    const PositivityVerdict via_map = map_positivity(*rep.kappa, phi0, phi0, tol);
    bounded.characterization = via_map.direct;
  } else {
    bounded.characterization.ok = false;
    bounded.characterization.error = "NondegeneracyMarginal";
  }
  if (bounded.direct.ok && bounded.characterization.ok) {
    auto gate = [](const RouteOutput& r) {
      return std::abs(r.min_eigenvalue) <= kAgreementGate ? Positivity::DegeneratePositive
                                                          : r.status;
    };
    bounded.route_agreement = gate(bounded.direct) == gate(bounded.characterization);
  }
  rep.bounded = bounded;
  rep.trace_class = bounded.status == Positivity::StrictlyPositive;

  // Unitarity up to phase: Im F|_Λ ≡ 0 and |c| = |det(I − F/2)|^{1/2}.
  const double re_g_norm = rep.weyl->lambda_exponent.real().norm();
  const double g_scale = std::max(1.0, rep.weyl->lambda_exponent.norm());
  const bool flat = re_g_norm <= scaled_tol(tol, g_scale) * 10;
  const CMatrix Fm = fundamental_matrix(rep.weyl->phase);
  const Complex det_half =
      Eigen::PartialPivLU<CMatrix>(CMatrix::Identity(2 * n, 2 * n) - 0.5 * Fm).determinant();
  rep.unitary_amplitude_defect =
      std::abs(std::abs(rep.weyl->amplitude) - std::sqrt(std::abs(det_half)));
  rep.unitary_up_to_phase = flat && rep.unitary_amplitude_defect <= 1e-9 * std::max(
      1.0, std::abs(rep.weyl->amplitude));

  // Trace over Λ_Φ0: (1/(2π)ⁿ) ∫ a (σ|_Λ)ⁿ/n! = c·det(L0)/πⁿ ∫ e^G L(dx).
  if (rep.trace_class) {
    const Complex detL = Eigen::PartialPivLU<CMatrix>(phi0.levi()).determinant();
    ComplexQuadExpr g{rep.weyl->lambda_exponent, CVector::Zero(2 * n), Complex(0, 0)};
    const GaussianReduction red = gaussian_reduce(g, 2 * n);
    rep.trace = rep.weyl->amplitude * detL.real() / std::pow(std::numbers::pi, n) *
                std::exp(red.log_amplitude);
  }
  return rep;
}

}  // namespace sympos
