#include "sympos/forms.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace sympos {

namespace {

double spectral_norm_sym(const RMatrix& S) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(S, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

void require_square(const CMatrix& M, const char* what) {
  if (M.rows() != M.cols())
    throw DimensionMismatch(std::string(what) + ": matrix is not square");
}

}  // namespace

RVector realify(const CVector& x) {
  RVector z(2 * x.size());
  z.head(x.size()) = x.real();
  z.tail(x.size()) = x.imag();
  return z;
}

CVector complexify(const RVector& z) {
  if (z.size() % 2 != 0) throw DimensionMismatch("complexify: odd-sized vector");
  const auto n = z.size() / 2;
  CVector x(n);
  x.real() = z.head(n);
  x.imag() = z.tail(n);
  return x;
}

QuadraticWeight::QuadraticWeight(CMatrix A, CMatrix L, double tol)
    : n_(static_cast<int>(A.rows())), A_(std::move(A)), L_(std::move(L)) {
  require_square(A_, "QuadraticWeight A");
  require_square(L_, "QuadraticWeight L");
  if (L_.rows() != n_) throw DimensionMismatch("QuadraticWeight: A and L sizes differ");
  const double scale = std::max(A_.norm(), L_.norm());
  const double t = scaled_tol(tol, scale);
  if ((A_ - A_.transpose()).norm() > t)
    throw InvalidInstance("QuadraticWeight: A is not symmetric",
                          (A_ - A_.transpose()).norm());
  if ((L_ - L_.adjoint()).norm() > t)
    throw InvalidInstance("QuadraticWeight: L is not Hermitian",
                          (L_ - L_.adjoint()).norm());
  A_ = 0.5 * (A_ + A_.transpose().eval());
  L_ = 0.5 * (L_ + L_.adjoint().eval());
}

QuadraticWeight QuadraticWeight::model(int n) {
  return {CMatrix::Zero(n, n), CMatrix::Identity(n, n)};
}

QuadraticWeight QuadraticWeight::zero(int n) {
  return {CMatrix::Zero(n, n), CMatrix::Zero(n, n)};
}

QuadraticWeight QuadraticWeight::pluriharmonic_from(const CMatrix& phi_hessian) {
  // −Im((1/2) xᵀ S x) = Re((1/2) xᵀ (iS) x), so A = (i/2) S, L = 0.
  return {Complex(0, 0.5) * phi_hessian, CMatrix::Zero(phi_hessian.rows(), phi_hessian.cols())};
}

double QuadraticWeight::operator()(const CVector& x) const {
  const Complex hol = x.transpose() * A_ * x;
  const Complex mix = x.transpose() * L_ * x.conjugate();
  return hol.real() + 0.5 * mix.real();
}

CVector QuadraticWeight::graph_momentum(const CVector& x) const {
  return Complex(0, -2) * (A_ * x + 0.5 * L_ * x.conjugate());
}

double QuadraticWeight::levi_min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(L_, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool QuadraticWeight::strictly_plurisubharmonic(double tol) const {
  return levi_min_eigenvalue() > scaled_tol(tol, L_.norm());
}

bool QuadraticWeight::is_pluriharmonic(double tol) const {
  return L_.norm() <= scaled_tol(tol, A_.norm());
}

RMatrix QuadraticWeight::realified() const {
  const RMatrix Ar = A_.real(), Ai = A_.imag();
  const RMatrix Lr = L_.real(), Li = L_.imag();
  RMatrix S(2 * n_, 2 * n_);
  S.topLeftCorner(n_, n_) = 2.0 * Ar + Lr;
  S.topRightCorner(n_, n_) = -2.0 * Ai + Li;
  S.bottomLeftCorner(n_, n_) = (-2.0 * Ai + Li).transpose();
  S.bottomRightCorner(n_, n_) = -2.0 * Ar + Lr;
  return S;
}

QuadraticWeight QuadraticWeight::from_realified(const RMatrix& S) {
  if (S.rows() != S.cols() || S.rows() % 2 != 0)
    throw DimensionMismatch("from_realified: need even square matrix");
  const auto n = S.rows() / 2;
  RMatrix Ss = 0.5 * (S + S.transpose());
  const RMatrix S11 = Ss.topLeftCorner(n, n);
  const RMatrix S12 = Ss.topRightCorner(n, n);
  const RMatrix S22 = Ss.bottomRightCorner(n, n);
  const RMatrix Ar = (S11 - S22) / 4.0;
  const RMatrix Lr = (S11 + S22) / 2.0;
  const RMatrix Ai = -(S12 + S12.transpose()) / 4.0;
  const RMatrix Li = (S12 - S12.transpose()) / 2.0;
  CMatrix A = Ar.cast<Complex>() + kI * Ai.cast<Complex>();
  CMatrix L = Lr.cast<Complex>() + kI * Li.cast<Complex>();
  return {std::move(A), std::move(L)};
}

QuadraticWeight QuadraticWeight::conjugate_argument() const {
  return {A_.conjugate(), L_.transpose()};
}

QuadraticWeight operator+(const QuadraticWeight& a, const QuadraticWeight& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("weight +: dimension mismatch");
  return {a.A_ + b.A_, a.L_ + b.L_};
}

QuadraticWeight operator-(const QuadraticWeight& a, const QuadraticWeight& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("weight -: dimension mismatch");
  return {a.A_ - b.A_, a.L_ - b.L_};
}

QuadraticWeight QuadraticWeight::direct_sum(const QuadraticWeight& a, const QuadraticWeight& b) {
  const int n = a.dim(), m = b.dim();
  CMatrix A = CMatrix::Zero(n + m, n + m), L = CMatrix::Zero(n + m, n + m);
  A.topLeftCorner(n, n) = a.A_;
  A.bottomRightCorner(m, m) = b.A_;
  L.topLeftCorner(n, n) = a.L_;
  L.bottomRightCorner(m, m) = b.L_;
  return {std::move(A), std::move(L)};
}

HolomorphicQuadraticForm::HolomorphicQuadraticForm(CMatrix Q, double tol) : Q_(std::move(Q)) {
  require_square(Q_, "HolomorphicQuadraticForm");
  const double defect = (Q_ - Q_.transpose()).norm();
  if (defect > scaled_tol(tol, Q_.norm()))
    throw InvalidInstance("HolomorphicQuadraticForm: Hessian is not symmetric", defect);
  Q_ = 0.5 * (Q_ + Q_.transpose().eval());
}

HolomorphicQuadraticForm HolomorphicQuadraticForm::zero(int m) {
  return HolomorphicQuadraticForm(CMatrix::Zero(m, m));
}

Complex HolomorphicQuadraticForm::operator()(const CVector& z) const {
  return 0.5 * (z.transpose() * Q_ * z)(0, 0);
}

ComplexQuadraticSymbolExponent::ComplexQuadraticSymbolExponent(CMatrix Q1, CMatrix Q2,
                                                               CMatrix Q3, double tol)
    : n_(static_cast<int>(Q1.rows())), Q1_(std::move(Q1)), Q2_(std::move(Q2)), Q3_(std::move(Q3)) {
  require_square(Q1_, "q Q1");
  require_square(Q2_, "q Q2");
  require_square(Q3_, "q Q3");
  if (Q2_.rows() != n_ || Q3_.rows() != n_)
    throw DimensionMismatch("ComplexQuadraticSymbolExponent: block sizes differ");
  const double scale = std::max({Q1_.norm(), Q2_.norm(), Q3_.norm()});
  const double t = scaled_tol(tol, scale);
  if ((Q1_ - Q1_.transpose()).norm() > t || (Q3_ - Q3_.transpose()).norm() > t)
    throw InvalidInstance("ComplexQuadraticSymbolExponent: Q1/Q3 not symmetric");
  Q1_ = 0.5 * (Q1_ + Q1_.transpose().eval());
  Q3_ = 0.5 * (Q3_ + Q3_.transpose().eval());
}

ComplexQuadraticSymbolExponent ComplexQuadraticSymbolExponent::zero(int n) {
  return {CMatrix::Zero(n, n), CMatrix::Zero(n, n), CMatrix::Zero(n, n)};
}

ComplexQuadraticSymbolExponent ComplexQuadraticSymbolExponent::radial(int n, Complex lambda) {
  return {CMatrix::Zero(n, n), 0.5 * lambda * CMatrix::Identity(n, n), CMatrix::Zero(n, n)};
}

Complex ComplexQuadraticSymbolExponent::operator()(const CVector& y) const {
  const Complex t1 = y.transpose() * Q1_ * y;
  const Complex t2 = y.conjugate().transpose() * Q2_ * y;
  const Complex t3 = y.conjugate().transpose() * Q3_ * y.conjugate();
  return t1 + t2 + t3;
}

QuadraticWeight ComplexQuadraticSymbolExponent::real_part() const {
  // Re q = Re(yᵀ(Q1 + conj(Q3))y) + (1/2) yᵀ (Q2ᵀ + conj(Q2)) ȳ.
  CMatrix A = Q1_ + Q3_.conjugate();
  CMatrix L = Q2_.transpose() + Q2_.conjugate();
  return {std::move(A), std::move(L)};
}

HolomorphicQuadraticForm ComplexQuadraticSymbolExponent::polarized() const {
  CMatrix Q(2 * n_, 2 * n_);
  Q.topLeftCorner(n_, n_) = 2.0 * Q1_;
  Q.topRightCorner(n_, n_) = Q2_.transpose();
  Q.bottomLeftCorner(n_, n_) = Q2_;
  Q.bottomRightCorner(n_, n_) = 2.0 * Q3_;
  return HolomorphicQuadraticForm(std::move(Q));
}

bool ComplexQuadraticSymbolExponent::is_radial(double tol) const {
  const double scale = std::max({Q1_.norm(), Q2_.norm(), Q3_.norm(), 1.0});
  const double t = scaled_tol(tol, scale);
  const CMatrix D = Q2_ - Q2_(0, 0) * CMatrix::Identity(n_, n_);
  return Q1_.norm() <= t && Q3_.norm() <= t && D.norm() <= t;
}

std::pair<QuadraticWeight, QuadraticWeight> split_herm_plh(const QuadraticWeight& phi) {
  const int n = phi.dim();
  QuadraticWeight herm(CMatrix::Zero(n, n), phi.levi());
  QuadraticWeight plh(phi.holomorphic_part(), CMatrix::Zero(n, n));
  return {herm, plh};
}

HolomorphicQuadraticForm polarize(const QuadraticWeight& phi) {
  const int n = phi.dim();
  const CMatrix& A = phi.holomorphic_part();
  const CMatrix& L = phi.levi();
  CMatrix Q(2 * n, 2 * n);
  Q.topLeftCorner(n, n) = A;
  Q.topRightCorner(n, n) = 0.5 * L;
  Q.bottomLeftCorner(n, n) = 0.5 * L.transpose();
  Q.bottomRightCorner(n, n) = A.conjugate();
  return HolomorphicQuadraticForm(std::move(Q));
}

FormComparison classify_real_form(const RMatrix& S, double tol) {
  RMatrix Ss = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> es(Ss);
  const RVector ev = es.eigenvalues();
  FormComparison cmp;
  cmp.tol = scaled_tol(tol, spectral_norm_sym(Ss));
  cmp.min_eigenvalue = ev(0);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cmp.tol)
      ++cmp.positive;
    else if (ev(i) < -cmp.tol)
      ++cmp.negative;
    else
      ++cmp.zero;
  }
  cmp.psd = cmp.min_eigenvalue >= -cmp.tol;
  cmp.pd = cmp.min_eigenvalue > cmp.tol;
  cmp.witness = es.eigenvectors().col(0);
  return cmp;
}

FormComparison compare_weights(const QuadraticWeight& a, const QuadraticWeight& b, double tol) {
  if (a.dim() != b.dim()) throw DimensionMismatch("compare_weights: dimension mismatch");
  const RMatrix Sa = a.realified(), Sb = b.realified();
  const double scale = std::max(spectral_norm_sym(Sa), spectral_norm_sym(Sb));
  FormComparison cmp = classify_real_form(Sa - Sb, tol);
  cmp.tol = scaled_tol(tol, scale);
  cmp.psd = cmp.min_eigenvalue >= -cmp.tol;
  cmp.pd = cmp.min_eigenvalue > cmp.tol;
  // Recount the signature against the input-scaled tolerance.
  cmp.positive = cmp.negative = cmp.zero = 0;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(Sa - Sb, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()(i);
    if (v > cmp.tol)
      ++cmp.positive;
    else if (v < -cmp.tol)
      ++cmp.negative;
    else
      ++cmp.zero;
  }
  return cmp;
}

CriticalValueResult critical_value_hol(const HolomorphicQuadraticForm& q, int retained) {
  const int m = retained;
  const int k = q.dim() - m;
  if (m < 0 || k <= 0) throw DimensionMismatch("critical_value_hol: bad split");
  const CMatrix P = q.block(0, m, 0, m);
  const CMatrix R = q.block(m, k, 0, m);
  const CMatrix T = q.block(m, k, m, k);

  Eigen::JacobiSVD<CMatrix> svd(T, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  const double smax = svd.singularValues()(0);
  if (smax <= 0.0 || smin < kSingularRatio * smax)
    throw SingularHessianBlock("critical_value_hol: eliminated Hessian block is singular", smin);

  const CMatrix map = -svd.solve(R);            // critical point = map · retained
  CMatrix red = P + R.transpose() * map;        // P − Rᵀ T⁻¹ R
  red = 0.5 * (red + red.transpose().eval());
  return {HolomorphicQuadraticForm(std::move(red)), map};
}

}  // namespace sympos
