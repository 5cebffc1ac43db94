#include "sympos/symplectic.hpp"

#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace sympos {

namespace {

// Smallest/largest singular value; used for the fixed transversality policy.
std::pair<double, double> sv_extremes(const CMatrix& M) {
  Eigen::JacobiSVD<CMatrix> svd(M);
  const auto& s = svd.singularValues();
  return {s(s.size() - 1), s(0)};
}

CMatrix solve_right(const CMatrix& A, const CMatrix& rhs, const char* what,
                    double* smin_out = nullptr) {
  auto [smin, smax] = sv_extremes(A);
  if (smin_out) *smin_out = smin;
  if (smax <= 0.0 || smin < kSingularRatio * smax)
    throw Error(std::string(what) + ": singular system", smin);
  return Eigen::PartialPivLU<CMatrix>(A).solve(rhs);
}

}  // namespace

CMatrix symplectic_j(int n) {
  CMatrix J = CMatrix::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = CMatrix::Identity(n, n);
  J.bottomLeftCorner(n, n) = -CMatrix::Identity(n, n);
  return J;
}

Complex sigma_form(const CVector& t, const CVector& s) {
  const auto n = t.size() / 2;
  if (t.size() != s.size() || t.size() % 2 != 0)
    throw DimensionMismatch("sigma: vectors must share an even dimension");
  const Complex a = (t.segment(n, n).transpose() * s.segment(0, n))(0, 0);
  const Complex b = (t.segment(0, n).transpose() * s.segment(n, n))(0, 0);
  return a - b;  // ξ·y − x·η
}

CVector gamma_conjugation(const CVector& v) {
  const auto n = v.size() / 2;
  CVector out(v.size());
  out.head(n) = v.head(n).conjugate();
  out.tail(n) = -v.tail(n).conjugate();
  return out;
}

SymplecticContext::SymplecticContext(int dim) : n(dim), J(symplectic_j(dim)) {}

Complex SymplecticContext::sigma(const CVector& t, const CVector& s) const {
  return sigma_form(t, s);
}

CVector SymplecticContext::gamma(const CVector& v) const { return gamma_conjugation(v); }

ComplexCanonicalMap::ComplexCanonicalMap(CMatrix M, double tol)
    : n_(static_cast<int>(M.rows()) / 2), M_(std::move(M)) {
  if (M_.rows() != M_.cols() || M_.rows() % 2 != 0)
    throw DimensionMismatch("ComplexCanonicalMap: need even square matrix");
  const CMatrix J = symplectic_j(n_);
  const double defect = (M_.transpose() * J * M_ - J).norm();
  const double scale = std::max(1.0, M_.norm() * M_.norm());
  if (defect > scaled_tol(tol, scale))
    throw NotSymplectic("ComplexCanonicalMap: MᵀJM != J", defect);
}

ComplexCanonicalMap ComplexCanonicalMap::identity(int n) {
  return ComplexCanonicalMap(CMatrix::Identity(2 * n, 2 * n));
}

ComplexCanonicalMap ComplexCanonicalMap::inverse() const {
  const CMatrix J = symplectic_j(n_);
  return ComplexCanonicalMap(-J * M_.transpose() * J);
}

ComplexCanonicalMap ComplexCanonicalMap::compose(const ComplexCanonicalMap& rhs) const {
  return ComplexCanonicalMap(M_ * rhs.M_);
}

double ComplexCanonicalMap::symplectic_defect() const {
  const CMatrix J = symplectic_j(n_);
  return (M_.transpose() * J * M_ - J).norm();
}

AntilinearInvolution::AntilinearInvolution(CMatrix K, double tol) : K_(std::move(K)) {
  if (K_.rows() != K_.cols()) throw DimensionMismatch("AntilinearInvolution: not square");
  const double defect =
      (K_ * K_.conjugate() - CMatrix::Identity(K_.rows(), K_.cols())).norm();
  if (defect > scaled_tol(tol, K_.norm() * K_.norm()))
    throw Error("AntilinearInvolution: K conj(K) != I", defect);
}

AntilinearInvolution AntilinearInvolution::conjugated_by(const ComplexCanonicalMap& kappa) const {
  const CMatrix inv = kappa.inverse().matrix();
  return AntilinearInvolution(inv * K_ * kappa.matrix().conjugate());
}

AntilinearInvolution involution_of(const QuadraticWeight& phi) {
  const int n = phi.dim();
  auto [smin, smax] = sv_extremes(phi.levi());
  if (smax <= 0.0 || smin < kSingularRatio * smax)
    throw SingularLeviForm("involution_of: Levi form is singular", smin);

  // Λ_Φ = {(x, Gx + Hx̄)}; the fixed-point equations K conj(graph) = graph
  // determine K block by block through conj(H)⁻¹.
  const CMatrix G = phi.graph_g();
  const CMatrix H = phi.graph_h();
  const CMatrix Hc = H.conjugate();
  const CMatrix K12 = solve_right(Hc, CMatrix::Identity(n, n), "involution_of");
  const CMatrix K11 = -K12 * G.conjugate();
  const CMatrix K22 = G * K12;
  const CMatrix K21 = H - K22 * G.conjugate();
  CMatrix K(2 * n, 2 * n);
  K.topLeftCorner(n, n) = K11;
  K.topRightCorner(n, n) = K12;
  K.bottomLeftCorner(n, n) = K21;
  K.bottomRightCorner(n, n) = K22;
  return AntilinearInvolution(std::move(K));
}

HermitianFormOnPhase::HermitianFormOnPhase(CMatrix B, double tol) : B_(std::move(B)) {
  if (B_.rows() != B_.cols()) throw DimensionMismatch("HermitianFormOnPhase: not square");
  const double defect = (B_ - B_.adjoint()).norm();
  if (defect > scaled_tol(tol, B_.norm()))
    throw Error("HermitianFormOnPhase: matrix is not Hermitian", defect);
  B_ = 0.5 * (B_ + B_.adjoint().eval());
}

HermitianFormOnPhase hermitian_b(const QuadraticWeight& phi) {
  const AntilinearInvolution iota = involution_of(phi);
  const CMatrix J = symplectic_j(phi.dim());
  // b(μ,μ) = (1/i) σ(μ, ι(μ)) = μ* [(1/i) Kᵀ J] μ.
  const CMatrix B0 = (1.0 / kI) * iota.matrix().transpose() * J;
  return HermitianFormOnPhase(0.5 * (B0 + B0.adjoint()));
}

QuadraticWeight push_weight(const ComplexCanonicalMap& M, const QuadraticWeight& phi) {
  const int n = phi.dim();
  if (M.dim() != n) throw DimensionMismatch("push_weight: dimension mismatch");
  const CMatrix G = phi.graph_g();
  const CMatrix H = phi.graph_h();
  const CMatrix P = M.block(0, 0) + M.block(0, 1) * G;
  const CMatrix Q = M.block(0, 1) * H;
  const CMatrix R = M.block(1, 0) + M.block(1, 1) * G;
  const CMatrix S = M.block(1, 1) * H;

  // x' = Px + Qx̄ must be an invertible real-linear map of x.
  CMatrix W(2 * n, 2 * n);
  W.topLeftCorner(n, n) = P;
  W.topRightCorner(n, n) = Q;
  W.bottomLeftCorner(n, n) = Q.conjugate();
  W.bottomRightCorner(n, n) = P.conjugate();
  auto [smin, smax] = sv_extremes(W);
  if (smax <= 0.0 || smin < kSingularRatio * smax)
    throw FiberNotTransversal("push_weight: image is not transversal to the fiber", smin);

  CMatrix RS(n, 2 * n);
  RS.leftCols(n) = R;
  RS.rightCols(n) = S;
  const CMatrix GH = Eigen::PartialPivLU<CMatrix>(W).solve(CMatrix::Identity(2 * n, 2 * n));
  const CMatrix GHp = RS * GH;
  const CMatrix Gp = GHp.leftCols(n);
  const CMatrix Hp = GHp.rightCols(n);

  CMatrix Ap = Complex(0, 0.5) * Gp;
  CMatrix Lp = kI * Hp;
  const double scale = std::max(1.0, std::max(Ap.norm(), Lp.norm()));
  if ((Ap - Ap.transpose()).norm() > scaled_tol(kDefaultTol, scale) * 10 ||
      (Lp - Lp.adjoint()).norm() > scaled_tol(kDefaultTol, scale) * 10)
    throw Error("push_weight: image weight failed the symmetry assertions");
  Ap = 0.5 * (Ap + Ap.transpose().eval());
  Lp = 0.5 * (Lp + Lp.adjoint().eval());
  QuadraticWeight out(std::move(Ap), std::move(Lp));

  // Spot-check: pushed graph points of Λ_Φ land on Λ_Φ'.
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> dist;
  for (int k = 0; k < 20; ++k) {
    CVector x(n);
    for (int j = 0; j < n; ++j) x(j) = Complex(dist(rng), dist(rng));
    CVector point(2 * n);
    point.head(n) = x;
    point.tail(n) = phi.graph_momentum(x);
    const CVector img = M.apply(point);
    const CVector expect = out.graph_momentum(img.head(n));
    const double err = (img.tail(n) - expect).norm();
    if (err > 1e-10 * std::max(1.0, img.norm()) * std::max(1.0, (double)M.matrix().norm()))
      throw Error("push_weight: pushed graph point left the image graph", err);
  }
  return out;
}

ComplexCanonicalMap shear_map(const QuadraticWeight& phi) {
  const int n = phi.dim();
  CMatrix M = CMatrix::Identity(2 * n, 2 * n);
  M.bottomLeftCorner(n, n) = (2.0 / kI) * phi.holomorphic_part();
  return ComplexCanonicalMap(std::move(M));
}

ModelReduction reduce_to_model(const QuadraticWeight& phi) {
  const int n = phi.dim();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(phi.levi());
  const double lmin = es.eigenvalues()(0);
  if (lmin <= kSingularRatio * std::abs(es.eigenvalues()(n - 1)))
    throw SingularLeviForm("reduce_to_model: weight is not strictly plurisubharmonic", lmin);

  // Hermitian square roots of L; the variable-change factor is C = conj(L^{-1/2}),
  // which gives Φ_herm(Cx) = |x|²/2 under this artifact's evaluation convention.
  const CMatrix U = es.eigenvectors();
  const CVector d = es.eigenvalues().cast<Complex>();
  const CMatrix sqrtL = U * d.cwiseSqrt().asDiagonal() * U.adjoint();
  const CMatrix invSqrtL = U * d.cwiseSqrt().cwiseInverse().asDiagonal() * U.adjoint();

  CMatrix KC = CMatrix::Zero(2 * n, 2 * n);
  KC.topLeftCorner(n, n) = sqrtL.conjugate();  // C⁻¹ with C = conj(L^{-1/2})
  KC.bottomRightCorner(n, n) = invSqrtL;       // Cᵀ
  const ComplexCanonicalMap kappa_c(std::move(KC));

  const ComplexCanonicalMap kappa_a_inv = shear_map(phi).inverse();
  ModelReduction out{kappa_c.compose(kappa_a_inv), invSqrtL.conjugate(),
                     (2.0 / kI) * phi.holomorphic_part()};
  return out;
}

HolomorphicQuadraticForm generating_function(const ComplexCanonicalMap& M) {
  const int n = M.dim();
  const CMatrix a = M.block(0, 0);
  const CMatrix b = M.block(0, 1);
  const CMatrix c = M.block(1, 0);

  auto [smin, smax] = sv_extremes(a);
  if (smax <= 0.0 || smin < kSingularRatio * smax)
    throw NoGeneratingFunction("generating_function: graph projection to (x,η) is singular",
                               smin);
  Eigen::PartialPivLU<CMatrix> lu(a);
  const CMatrix ainv = lu.solve(CMatrix::Identity(n, n));
  CMatrix P = c * ainv;                  // φ''_xx
  CMatrix Q = ainv.transpose();          // φ''_xη
  CMatrix R = -ainv * b;                 // φ''_ηη
  const double scale = std::max({1.0, P.norm(), R.norm()});
  if ((P - P.transpose()).norm() > scaled_tol(kDefaultTol, scale) * 10 ||
      (R - R.transpose()).norm() > scaled_tol(kDefaultTol, scale) * 10)
    throw Error("generating_function: recovered Hessian blocks are not symmetric");
  CMatrix F(2 * n, 2 * n);
  F.topLeftCorner(n, n) = 0.5 * (P + P.transpose().eval());
  F.topRightCorner(n, n) = Q;
  F.bottomLeftCorner(n, n) = Q.transpose();
  F.bottomRightCorner(n, n) = 0.5 * (R + R.transpose().eval());
  return HolomorphicQuadraticForm(std::move(F));
}

CMatrix fundamental_matrix(const HolomorphicQuadraticForm& F) {
  if (F.dim() % 2 != 0) throw DimensionMismatch("fundamental_matrix: odd dimension");
  return symplectic_j(F.dim() / 2) * F.hessian();
}

ComplexCanonicalMap cayley_map(const HolomorphicQuadraticForm& F) {
  const int m = F.dim();
  const CMatrix Fm = fundamental_matrix(F);
  const CMatrix plus = CMatrix::Identity(m, m) + 0.5 * Fm;
  const CMatrix minus = CMatrix::Identity(m, m) - 0.5 * Fm;
  auto [smin_p, smax_p] = sv_extremes(plus);
  if (smax_p <= 0.0 || smin_p < kSingularRatio * smax_p)
    throw EigenvalueTwo("cayley_map: fundamental matrix has eigenvalue -2", smin_p);
  auto [smin_m, smax_m] = sv_extremes(minus);
  if (smin_m < kSingularRatio * smax_m)
    throw EigenvalueTwo("cayley_map: fundamental matrix has eigenvalue +2", smin_m);
  return ComplexCanonicalMap(minus * Eigen::PartialPivLU<CMatrix>(plus).inverse());
}

HolomorphicQuadraticForm cayley_phase(const ComplexCanonicalMap& M) {
  const int m = 2 * M.dim();
  const CMatrix plus = M.matrix() + CMatrix::Identity(m, m);
  auto [smin, smax] = sv_extremes(plus);
  if (smax <= 0.0 || smin < kSingularRatio * smax)
    throw CayleySingular("cayley_phase: -1 is an eigenvalue of the map", smin);
  const CMatrix Fm =
      2.0 * Eigen::PartialPivLU<CMatrix>(plus).solve(CMatrix::Identity(m, m) - M.matrix());
  CMatrix F = -symplectic_j(M.dim()) * Fm;
  const double defect = (F - F.transpose()).norm();
  if (defect > scaled_tol(kDefaultTol, std::max(1.0, F.norm())) * 10)
    throw Error("cayley_phase: recovered Hessian is not symmetric", defect);
  return HolomorphicQuadraticForm(0.5 * (F + F.transpose().eval()));
}

}  // namespace sympos
