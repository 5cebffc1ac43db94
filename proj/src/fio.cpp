#include "sympos/fio.hpp"

#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "sympos/gaussian.hpp"

namespace sympos {

namespace {

// Accumulate src at the target indices given by map (one target per source
// variable).
void embed(CMatrix& target, const CMatrix& src, const std::vector<int>& map, Complex scale) {
  for (int i = 0; i < src.rows(); ++i)
    for (int j = 0; j < src.cols(); ++j) target(map[i], map[j]) += scale * src(i, j);
}

void embed_real(RMatrix& target, const RMatrix& src, const std::vector<int>& map) {
  for (int i = 0; i < src.rows(); ++i)
    for (int j = 0; j < src.cols(); ++j) target(map[i], map[j]) += src(i, j);
}

std::pair<double, double> sv_extremes(const CMatrix& M) {
  Eigen::JacobiSVD<CMatrix> svd(M);
  const auto& s = svd.singularValues();
  return {s(s.size() - 1), s(0)};
}

// κ_Ψ: (θ, −(2/i)∂_θΨ(y,θ)) ↦ (y, (2/i)∂_yΨ(y,θ)).
CMatrix kappa_of_kernel_weight(const HolomorphicQuadraticForm& Psi) {
  const int n = Psi.dim() / 2;
  const CMatrix P = Psi.block(0, n, 0, n);
  const CMatrix Q = Psi.block(0, n, n, n);
  const CMatrix R = Psi.block(n, n, n, n);
  auto [smin, smax] = sv_extremes(Q);
  if (smax <= 0.0 || smin < kSingularRatio * smax)
    throw SingularMixedBlock("kernel weight: mixed block is singular", smin);
  const CMatrix Qinvt = Eigen::PartialPivLU<CMatrix>(Q.transpose()).inverse();
  CMatrix M(2 * n, 2 * n);
  M.topLeftCorner(n, n) = -Qinvt * R;
  M.topRightCorner(n, n) = Complex(0, -0.5) * Qinvt;
  M.bottomLeftCorner(n, n) = 2.0 * kI * (P * Qinvt * R - Q);
  M.bottomRightCorner(n, n) = -P * Qinvt;
  return M;
}

}  // namespace

Complex BergmanKernel::evaluate(const CVector& x, const CVector& z) const {
  CVector w(x.size() + z.size());
  w << x, z;
  return amplitude * std::exp(2.0 * Psi(w));
}

NondegeneratePhase::NondegeneratePhase(int n_x, int n_y, int n_theta,
                                       HolomorphicQuadraticForm total, double tol)
    : nx_(n_x), ny_(n_y), nt_(n_theta), total_(std::move(total)) {
  if (total_.dim() != nx_ + ny_ + nt_ || nt_ <= 0)
    throw DimensionMismatch("NondegeneratePhase: block sizes do not add up");
  // Hörmander non-degeneracy: the ∂θ-gradient rows have full rank.
  const CMatrix rows = total_.hessian().bottomRows(nt_);
  Eigen::JacobiSVD<CMatrix> svd(rows);
  const auto& s = svd.singularValues();
  if (s(0) <= 0.0 || s(s.size() - 1) < std::max(kSingularRatio, tol) * s(0))
    throw DegeneratePhase("NondegeneratePhase: ∂θ-differentials are dependent",
                          s(s.size() - 1));
}

int NondegeneratePhase::offset(int g) const {
  switch (g) {
    case 0: return 0;
    case 1: return nx_;
    default: return nx_ + ny_;
  }
}

int NondegeneratePhase::size(int g) const {
  switch (g) {
    case 0: return nx_;
    case 1: return ny_;
    default: return nt_;
  }
}

CMatrix NondegeneratePhase::block(int a, int b) const {
  return total_.block(offset(a), size(a), offset(b), size(b));
}

NondegeneratePhase projection_phase(const QuadraticWeight& phi2) {
  const int n = phi2.dim();
  const HolomorphicQuadraticForm psi2 = polarize(phi2);
  CMatrix Q = CMatrix::Zero(3 * n, 3 * n);
  std::vector<int> xmap(2 * n), ymap(2 * n);
  for (int i = 0; i < n; ++i) {
    xmap[i] = i;          // Ψ₂(x, θ)
    xmap[n + i] = 2 * n + i;
    ymap[i] = n + i;      // Ψ₂(y, θ)
    ymap[n + i] = 2 * n + i;
  }
  const Complex s = 2.0 / kI;
  embed(Q, psi2.hessian(), xmap, s);
  embed(Q, psi2.hessian(), ymap, -s);
  return NondegeneratePhase(n, n, n, HolomorphicQuadraticForm(std::move(Q)));
}

ImageWeightResult image_weight(const NondegeneratePhase& phase, const QuadraticWeight& phi2) {
  const int nx = phase.nx(), ny = phase.ny(), nt = phase.ntheta();
  if (phi2.dim() != ny) throw DimensionMismatch("image_weight: Φ2 dimension mismatch");
  const int m = nx + ny + nt;

  // −Im φ is pluriharmonic on C^m; add Φ2 on the y block, all realified.
  RMatrix S = QuadraticWeight::pluriharmonic_from(phase.total().hessian()).realified();
  std::vector<int> yidx(2 * ny);
  for (int i = 0; i < ny; ++i) {
    yidx[i] = nx + i;
    yidx[ny + i] = m + nx + i;
  }
  embed_real(S, phi2.realified(), yidx);

  // Reorder as (Re x, Im x | Re y, Re θ, Im y, Im θ) and eliminate the tail.
  std::vector<int> perm;
  perm.reserve(2 * m);
  for (int i = 0; i < nx; ++i) perm.push_back(i);
  for (int i = 0; i < nx; ++i) perm.push_back(m + i);
  for (int i = nx; i < m; ++i) perm.push_back(i);
  for (int i = nx; i < m; ++i) perm.push_back(m + i);
  RMatrix Sp(2 * m, 2 * m);
  for (int i = 0; i < 2 * m; ++i)
    for (int j = 0; j < 2 * m; ++j) Sp(i, j) = S(perm[i], perm[j]);

  const int r = 2 * nx, k = 2 * (ny + nt);
  const RMatrix S11 = Sp.topLeftCorner(r, r);
  const RMatrix S12 = Sp.topRightCorner(r, k);
  const RMatrix S22 = Sp.bottomRightCorner(k, k);

  Eigen::SelfAdjointEigenSolver<RMatrix> es(S22);
  const RVector ev = es.eigenvalues();
  const double emax = std::max(std::abs(ev(0)), std::abs(ev(k - 1)));
  double emin = std::abs(ev(0));
  for (int i = 0; i < k; ++i) emin = std::min(emin, std::abs(ev(i)));
  if (emax <= 0.0 || emin < kSingularRatio * emax)
    throw DegenerateCriticalPoint("image_weight: critical point is not unique", emin);

  const RMatrix S22inv =
      es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  RMatrix Sred = S11 - S12 * S22inv * S12.transpose();
  Sred = 0.5 * (Sred + Sred.transpose().eval());

  ImageWeightResult out{QuadraticWeight::from_realified(Sred)};
  const double sig_tol = scaled_tol(kDefaultTol, emax);
  for (int i = 0; i < k; ++i) {
    if (ev(i) > sig_tol)
      ++out.eliminated_positive;
    else if (ev(i) < -sig_tol)
      ++out.eliminated_negative;
    else
      ++out.eliminated_zero;
  }
  return out;
}

BergmanKernel kernel_from_phase(const NondegeneratePhase& phase, const QuadraticWeight& phi2) {
  const int nx = phase.nx(), ny = phase.ny(), nt = phase.ntheta();
  if (phi2.dim() != ny) throw DimensionMismatch("kernel_from_phase: Φ2 dimension mismatch");
  const HolomorphicQuadraticForm psi2 = polarize(phi2);

  // Total holomorphic form over (x, z, ỹ, θ): iφ(x,ỹ,θ) + 2Ψ₂(ỹ,z).
  const int total_dim = nx + ny + ny + nt;
  CMatrix Q = CMatrix::Zero(total_dim, total_dim);
  std::vector<int> phimap(nx + ny + nt), psimap(2 * ny);
  for (int i = 0; i < nx; ++i) phimap[i] = i;
  for (int i = 0; i < ny; ++i) phimap[nx + i] = nx + ny + i;        // y → ỹ slot
  for (int i = 0; i < nt; ++i) phimap[nx + ny + i] = nx + 2 * ny + i;
  for (int i = 0; i < ny; ++i) {
    psimap[i] = nx + ny + i;  // first argument of Ψ₂ is ỹ
    psimap[ny + i] = nx + i;  // second argument is z
  }
  embed(Q, phase.total().hessian(), phimap, kI);
  embed(Q, psi2.hessian(), psimap, Complex(2.0, 0.0));

  const int retained = nx + ny;
  const HolomorphicQuadraticForm total(std::move(Q));
  const CriticalValueResult cv = critical_value_hol(total, retained);

  BergmanKernel out;
  out.n = nx;
  out.Psi = HolomorphicQuadraticForm(0.5 * cv.reduced.hessian());

  // Amplitude: the Π_{Φ₂} constant times the square-root ratio of the
  // fluctuation determinants, branch tracked from the projection phase.
  const double a2 = projection_kernel(phi2).amplitude.real();
  const CMatrix H = total.block(retained, ny + nt, retained, ny + nt);
  if (nt == ny) {
    CMatrix Href = CMatrix::Zero(2 * ny, 2 * ny);
    Href.topRightCorner(ny, ny) = -phi2.levi();
    Href.bottomLeftCorner(ny, ny) = -phi2.levi().transpose();
    out.amplitude = a2 * sqrt_det_ratio(Href, H);
  } else {
    // No canonical reference at this θ-dimension: fall back to the plain
    // homotopy, which needs Re H negative definite.
    out.amplitude = a2 * std::exp(-0.5 * log_det_negated(H));
  }
  return out;
}

ComplexCanonicalMap map_from_kernel(const HolomorphicQuadraticForm& Psi,
                                    const HolomorphicQuadraticForm& Psi2) {
  if (Psi.dim() != Psi2.dim() || Psi.dim() % 2 != 0)
    throw DimensionMismatch("map_from_kernel: kernel weights must share an even dimension");
  const CMatrix kpsi = kappa_of_kernel_weight(Psi);
  const ComplexCanonicalMap kpsi2(kappa_of_kernel_weight(Psi2));
  return ComplexCanonicalMap(kpsi * kpsi2.inverse().matrix());
}

HolomorphicQuadraticForm kernel_weight_of_map(const ComplexCanonicalMap& M,
                                              const QuadraticWeight& phi2) {
  const int n = M.dim();
  if (phi2.dim() != n) throw DimensionMismatch("kernel_weight_of_map: dimension mismatch");
  const CMatrix T = M.matrix() * kappa_of_kernel_weight(polarize(phi2));
  const CMatrix T11 = T.topLeftCorner(n, n);
  const CMatrix T12 = T.topRightCorner(n, n);
  const CMatrix T22 = T.bottomRightCorner(n, n);
  auto [smin, smax] = sv_extremes(T12);
  if (smax <= 0.0 || smin < kSingularRatio * smax)
    throw SingularMixedBlock("kernel_weight_of_map: mixed block is singular", smin);
  // Invert κ_Ψ block by block: T12 = −(i/2)Q⁻ᵀ, T11 = −Q⁻ᵀR, T22 = −PQ⁻ᵀ.
  const CMatrix Qt_inv = 2.0 * kI * T12;  // Q⁻ᵀ
  const CMatrix Qt = Eigen::PartialPivLU<CMatrix>(Qt_inv).inverse();  // Qᵀ
  const CMatrix Q = Qt.transpose();
  const CMatrix R = -Qt * T11;
  const CMatrix P = -T22 * Qt;
  const double scale = std::max({1.0, P.norm(), R.norm()});
  if ((P - P.transpose()).norm() > scaled_tol(kDefaultTol, scale) * 100 ||
      (R - R.transpose()).norm() > scaled_tol(kDefaultTol, scale) * 100)
    throw Error("kernel_weight_of_map: recovered blocks are not symmetric");
  CMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = 0.5 * (P + P.transpose().eval());
  out.topRightCorner(n, n) = Q;
  out.bottomLeftCorner(n, n) = Q.transpose();
  out.bottomRightCorner(n, n) = 0.5 * (R + R.transpose().eval());
  return HolomorphicQuadraticForm(std::move(out));
}

ComplexCanonicalMap canonical_map_of_phase(const NondegeneratePhase& phase) {
  const int n = phase.nx(), nt = phase.ntheta();
  if (phase.ny() != n)
    throw DimensionMismatch("canonical_map_of_phase: need n_x = n_y");

  // Solve φ'_θ = 0 and −φ'_y = η for (x, θ) as linear functions of (y, η).
  CMatrix W(nt + n, n + nt);
  W.topLeftCorner(nt, n) = phase.block(2, 0);
  W.topRightCorner(nt, nt) = phase.block(2, 2);
  W.bottomLeftCorner(n, n) = -phase.block(1, 0);
  W.bottomRightCorner(n, nt) = -phase.block(1, 2);
  auto [smin, smax] = sv_extremes(W);
  if (smax <= 0.0 || smin < kSingularRatio * smax)
    throw SingularMixedBlock("canonical_map_of_phase: relation is not a graph", smin);

  CMatrix rhs = CMatrix::Zero(nt + n, 2 * n);
  rhs.topLeftCorner(nt, n) = -phase.block(2, 1);
  rhs.bottomLeftCorner(n, n) = phase.block(1, 1);
  rhs.bottomRightCorner(n, n) = CMatrix::Identity(n, n);
  const CMatrix U = Eigen::PartialPivLU<CMatrix>(W).solve(rhs);  // rows: x then θ

  const CMatrix X = U.topRows(n);
  const CMatrix Th = U.bottomRows(nt);
  CMatrix M(2 * n, 2 * n);
  M.topRows(n) = X;
  CMatrix Y = CMatrix::Zero(n, 2 * n);
  Y.leftCols(n) = CMatrix::Identity(n, n);
  M.bottomRows(n) = phase.block(0, 0) * X + phase.block(0, 1) * Y + phase.block(0, 2) * Th;
  return ComplexCanonicalMap(std::move(M));
}

DominationReport kernel_domination_check(const HolomorphicQuadraticForm& Psi,
                                         const QuadraticWeight& phi,
                                         const QuadraticWeight& phi2, double tol) {
  if (Psi.dim() != phi.dim() + phi2.dim())
    throw DimensionMismatch("kernel_domination_check: dimension mismatch");
  const QuadraticWeight big =
      QuadraticWeight::direct_sum(phi, phi2.conjugate_argument());
  // 2Re Ψ(x,y) is the pluriharmonic weight with holomorphic part Ψ''.
  const QuadraticWeight twoRe(Psi.hessian(), CMatrix::Zero(Psi.dim(), Psi.dim()));
  const RMatrix S = big.realified() - twoRe.realified();
  const FormComparison cmp = classify_real_form(S, tol);

  DominationReport out;
  out.min_eigenvalue = cmp.min_eigenvalue;
  out.psd = cmp.psd;
  out.witness = cmp.witness;
  // Kernel dimension relative to the spectral scale.
  Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (S + S.transpose()),
                                            Eigen::EigenvaluesOnly);
  const RVector ev = es.eigenvalues();
  const double emax = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) <= std::max(cmp.tol, 1e-7 * std::max(1.0, emax))) ++out.kernel_dim;
  return out;
}

TriEquivalence positivity_tri_equivalence(const ComplexCanonicalMap& M, const QuadraticWeight& phi1,
                                const QuadraticWeight& phi2, double tol) {
  const int n = M.dim();
  TriEquivalence out;

  const PositivityVerdict direct = map_positivity(M, phi1, phi2, tol);
  out.direct = direct.direct.status;
  out.margins[0] = direct.direct.min_eigenvalue;

  const HolomorphicQuadraticForm Psi = kernel_weight_of_map(M, phi2);

  // (ii): Λ_{2ReΨ(x,y)} is C-Lagrangian in the doubled space; test it against
  // Φ₁(x) + Φ₂*(y).
  CMatrix basis(4 * n, 2 * n);
  basis.topRows(2 * n) = CMatrix::Identity(2 * n, 2 * n);
  basis.bottomRows(2 * n) = (2.0 / kI) * Psi.hessian();
  const QuadraticWeight doubled =
      QuadraticWeight::direct_sum(phi1, phi2.conjugate_argument());
  const PositivityVerdict lag =
      lagrangian_positivity(CLagrangianPlane(std::move(basis)), doubled, tol);
  out.lagrangian = lag.direct.status;
  out.margins[1] = lag.direct.min_eigenvalue;

  // (iii): Φ₁(x) + Φ₂(y) − 2ReΨ(x,ȳ) psd, with the ȳ-substituted weight.
  const CMatrix P = Psi.block(0, n, 0, n);
  const CMatrix Q = Psi.block(0, n, n, n);
  const CMatrix R = Psi.block(n, n, n, n);
  CMatrix A = CMatrix::Zero(2 * n, 2 * n), L = CMatrix::Zero(2 * n, 2 * n);
  A.topLeftCorner(n, n) = P;
  A.bottomRightCorner(n, n) = R.conjugate();
  L.topRightCorner(n, n) = 2.0 * Q;
  L.bottomLeftCorner(n, n) = 2.0 * Q.adjoint();
  const QuadraticWeight twoRePsiBar(std::move(A), std::move(L));
  const FormComparison cmp =
      compare_weights(QuadraticWeight::direct_sum(phi1, phi2), twoRePsiBar, tol);
  out.sign_check = classify(cmp.min_eigenvalue, cmp.tol);
  out.margins[2] = cmp.min_eigenvalue;

  auto gate = [](Positivity p, double margin) {
    return std::abs(margin) <= kAgreementGate ? Positivity::DegeneratePositive : p;
  };
  const Positivity a = gate(out.direct, out.margins[0]);
  const Positivity b = gate(out.lagrangian, out.margins[1]);
  const Positivity c = gate(out.sign_check, out.margins[2]);
  out.agree = (a == b) && (b == c);
  return out;
}

BergmanKernel projection_kernel(const QuadraticWeight& phi) {
  const int n = phi.dim();
  if (!phi.strictly_plurisubharmonic())
    throw SingularLeviForm("projection_kernel: weight is not strictly plurisubharmonic",
                           phi.levi_min_eigenvalue());
  BergmanKernel out;
  out.n = n;
  out.Psi = polarize(phi);
  const Complex detL = Eigen::PartialPivLU<CMatrix>(phi.levi()).determinant();
  out.amplitude = detL.real() / std::pow(std::numbers::pi, n);
  return out;
}

}  // namespace sympos
