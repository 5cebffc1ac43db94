#include "sympos/positivity.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace sympos {

namespace {

Positivity gated(const RouteOutput& r) {
  if (std::abs(r.min_eigenvalue) <= kAgreementGate) return Positivity::DegeneratePositive;
  return r.status;
}

void finish_agreement(PositivityVerdict& v) {
  if (v.direct.ok && v.characterization.ok) {
    v.route_agreement = gated(v.direct) == gated(v.characterization);
    v.inconsistent = false;
  } else {
    // Positive planes and maps are transversal to the fiber, so a failed
    // characterization with a positive direct verdict is a contradiction.
    v.route_agreement = false;
    v.inconsistent = v.direct.ok && gated(v.direct) != Positivity::NotPositive;
  }
}

RouteOutput hermitian_route(const CMatrix& H, double tol) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (H + H.adjoint()));
  RouteOutput out;
  out.min_eigenvalue = es.eigenvalues()(0);
  const double scale =
      std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(es.eigenvalues().size() - 1)));
  out.tol = scaled_tol(tol, scale);
  out.status = classify(out.min_eigenvalue, out.tol);
  out.ok = true;
  return out;
}

}  // namespace

const char* to_string(Positivity p) {
  switch (p) {
    case Positivity::StrictlyPositive: return "StrictlyPositive";
    case Positivity::DegeneratePositive: return "DegeneratePositive";
    case Positivity::NotPositive: return "NotPositive";
  }
  return "?";
}

Positivity classify(double min_eigenvalue, double tol) {
  if (min_eigenvalue > tol) return Positivity::StrictlyPositive;
  if (min_eigenvalue < -tol) return Positivity::NotPositive;
  return Positivity::DegeneratePositive;
}

CLagrangianPlane::CLagrangianPlane(CMatrix basis, double tol) : basis_(std::move(basis)) {
  if (basis_.rows() != 2 * basis_.cols())
    throw DimensionMismatch("CLagrangianPlane: basis must be 2n x n");
  Eigen::JacobiSVD<CMatrix> svd(basis_);
  const auto& s = svd.singularValues();
  if (s(0) <= 0.0 || s(s.size() - 1) < kSingularRatio * s(0))
    throw NotLagrangian("CLagrangianPlane: basis is rank deficient", s(s.size() - 1));
  const CMatrix J = symplectic_j(static_cast<int>(basis_.cols()));
  const double defect = (basis_.transpose() * J * basis_).norm();
  if (defect > scaled_tol(tol, basis_.norm() * basis_.norm()))
    throw NotLagrangian("CLagrangianPlane: sigma does not vanish on the span", defect);
}

PositivityVerdict lagrangian_positivity(const CLagrangianPlane& plane,
                                        const QuadraticWeight& phi0, double tol) {
  const int n = plane.dim();
  if (phi0.dim() != n) throw DimensionMismatch("lagrangian_positivity: dimension mismatch");

  PositivityVerdict v;
  const HermitianFormOnPhase b = hermitian_b(phi0);
  const CMatrix restricted = plane.basis().adjoint() * b.matrix() * plane.basis();
  v.direct = hermitian_route(restricted, tol);

  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (restricted + restricted.adjoint()));
  v.witness = plane.basis() * es.eigenvectors().col(0);
  v.status = v.direct.status;
  v.min_eigenvalue = v.direct.min_eigenvalue;

  // Characterization: transversal planes are graphs ξ = φ''x with Λ = Λ_{−Im φ}.
  const CMatrix X = plane.basis().topRows(n);
  const CMatrix Xi = plane.basis().bottomRows(n);
  Eigen::JacobiSVD<CMatrix> svd(X);
  const auto& s = svd.singularValues();
  if (s(0) <= 0.0 || s(s.size() - 1) < kSingularRatio * s(0)) {
    v.characterization.ok = false;
    v.characterization.error = "NotTransversalToFiber";
  } else {
    CMatrix S = Xi * Eigen::PartialPivLU<CMatrix>(X).inverse();
    S = 0.5 * (S + S.transpose().eval());
    const QuadraticWeight psi = QuadraticWeight::pluriharmonic_from(S);
    const FormComparison cmp = compare_weights(phi0, psi, tol);
    v.characterization.ok = true;
    v.characterization.min_eigenvalue = cmp.min_eigenvalue;
    v.characterization.tol = cmp.tol;
    v.characterization.status = classify(cmp.min_eigenvalue, cmp.tol);
  }
  finish_agreement(v);
  return v;
}

PositivityVerdict map_positivity(const ComplexCanonicalMap& M, const QuadraticWeight& phi1,
                                 const QuadraticWeight& phi2, double tol) {
  const int n = phi1.dim();
  if (phi2.dim() != n || M.dim() != n)
    throw DimensionMismatch("map_positivity: dimension mismatch");

  PositivityVerdict v;
  const CMatrix B1 = hermitian_b(phi1).matrix();
  const CMatrix B2 = hermitian_b(phi2).matrix();
  const CMatrix D = M.matrix().adjoint() * B1 * M.matrix() - B2;
  v.direct = hermitian_route(D, tol);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (D + D.adjoint()));
  v.witness = es.eigenvectors().col(0);
  v.status = v.direct.status;
  v.min_eigenvalue = v.direct.min_eigenvalue;

  try {
    const QuadraticWeight pushed = push_weight(M, phi2);
    v.characterization.ok = true;
    if (!pushed.strictly_plurisubharmonic(tol)) {
      // The image has a generating weight but it is not strictly psh, which
      // already rules positivity out.
      v.characterization.status = Positivity::NotPositive;
      v.characterization.min_eigenvalue = pushed.levi_min_eigenvalue();
      v.characterization.tol = scaled_tol(tol, pushed.levi().norm());
      v.characterization.error = "ImageWeightNotPlurisubharmonic";
    } else {
      const FormComparison cmp = compare_weights(phi1, pushed, tol);
      v.characterization.min_eigenvalue = cmp.min_eigenvalue;
      v.characterization.tol = cmp.tol;
      v.characterization.status = classify(cmp.min_eigenvalue, cmp.tol);
    }
  } catch (const FiberNotTransversal& e) {
    v.characterization.ok = false;
    v.characterization.error = std::string("FiberNotTransversal: ") + e.what();
  }
  finish_agreement(v);
  return v;
}

ComplexCanonicalMap map_of_generating(const HolomorphicQuadraticForm& phi) {
  if (phi.dim() % 2 != 0) throw DimensionMismatch("map_of_generating: odd dimension");
  const int n = phi.dim() / 2;
  const CMatrix P = phi.block(0, n, 0, n);
  const CMatrix Q = phi.block(0, n, n, n);
  const CMatrix R = phi.block(n, n, n, n);
  Eigen::JacobiSVD<CMatrix> svd(Q);
  const auto& s = svd.singularValues();
  if (s(0) <= 0.0 || s(s.size() - 1) < kSingularRatio * s(0))
    throw SingularMixedBlock("map_of_generating: mixed block of the phase is singular",
                             s(s.size() - 1));
  const CMatrix Qinvt = Eigen::PartialPivLU<CMatrix>(Q.transpose()).inverse();
  CMatrix M(2 * n, 2 * n);
  M.topLeftCorner(n, n) = Qinvt;
  M.topRightCorner(n, n) = -Qinvt * R;
  M.bottomLeftCorner(n, n) = P * Qinvt;
  M.bottomRightCorner(n, n) = Q - P * Qinvt * R;
  return ComplexCanonicalMap(std::move(M));
}

PositivityVerdict positivity_via_generating(const HolomorphicQuadraticForm& phi,
                                            const QuadraticWeight& phi1, double tol) {
  if (phi.dim() != 2 * phi1.dim())
    throw DimensionMismatch("positivity_via_generating: phase/weight mismatch");
  const int n = phi1.dim();
  const CMatrix P = phi.block(0, n, 0, n);
  const CMatrix Q = phi.block(0, n, n, n);
  const CMatrix R = phi.block(n, n, n, n);
  const CMatrix& L = phi1.levi();
  const CMatrix& A = phi1.holomorphic_part();

  // w = φ'_x + 2iAx = (P + 2iA)x + Qθ,  φ'_θ = Qᵀx + Rθ.
  CMatrix V(n, 2 * n), U(n, 2 * n);
  V.leftCols(n) = P + 2.0 * kI * A;
  V.rightCols(n) = Q;
  U.leftCols(n) = Q.transpose();
  U.rightCols(n) = R;

  CMatrix H = CMatrix::Zero(2 * n, 2 * n);
  H.topLeftCorner(n, n) = L.transpose();
  H.bottomRightCorner(n, n) = CMatrix::Identity(n, n);
  const CMatrix Linv = Eigen::PartialPivLU<CMatrix>(L).inverse();
  H -= V.adjoint() * Linv * V;
  H -= U.adjoint() * U;

  PositivityVerdict v;
  v.direct = hermitian_route(H, tol);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (H + H.adjoint()));
  v.witness = es.eigenvectors().col(0);
  v.status = v.direct.status;
  v.min_eigenvalue = v.direct.min_eigenvalue;

  try {
    const ComplexCanonicalMap kappa = map_of_generating(phi);
    const PositivityVerdict mp = map_positivity(kappa, phi1, QuadraticWeight::model(n), tol);
    v.characterization = mp.direct;
  } catch (const Error& e) {
    v.characterization.ok = false;
    v.characterization.error = e.what();
  }
  finish_agreement(v);
  return v;
}

}  // namespace sympos
