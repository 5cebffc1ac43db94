#include "sympos/validate.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "sympos/gaussian.hpp"

namespace sympos {

namespace {

constexpr int kMaxTruncation = 200;

struct ScalarSymbol {
  Complex q1, q2, q3;  // q(y) = q1 y² + q2 |y|² + q3 ȳ²
};

ScalarSymbol scalarize(const ComplexQuadraticSymbolExponent& q) {
  if (q.dim() != 1)
    throw DimensionMismatch("validate: the truncation oracle is n = 1 only");
  return {q.q1()(0, 0), q.q2()(0, 0), q.q3()(0, 0)};
}

void require_integrable(const ComplexQuadraticSymbolExponent& q) {
  const QuadraticWeight decay =
      QuadraticWeight::model(q.dim()).scaled(2.0) - q.real_part().scaled(2.0);
  // 2Re q − |y|² ≺ 0 ⇔ |y|² − 2Re q ≻ 0.
  const FormComparison cmp = compare_weights(decay, QuadraticWeight::zero(q.dim()));
  if (!cmp.pd)
    throw DivergentIntegral("truncated_matrix: 2Re q − |y|² is not negative definite",
                            cmp.min_eigenvalue);
}

// Normalized moments m_{k,j} = (1/(π √(k! j!))) ∫ y^k ȳ^j e^{2q(y) − |y|²} L(dy)
// by Wirtinger integration by parts; T_{jk} = m_{k,j}.
CMatrix analytic_entries(const ScalarSymbol& s, int N) {
  const Complex a = 4.0 * s.q1;
  const Complex b = 2.0 * s.q2 - 1.0;
  const Complex c = 4.0 * s.q3;
  const Complex det = a * c - b * b;
  if (std::abs(det) < 1e-12 * std::max(1.0, std::norm(b)))
    throw SingularHessianBlock("analytic path: moment recursion matrix is singular",
                               std::abs(det));

  // Base moment from the exact 2D Gaussian integral.
  ComplexQuadExpr base = ComplexQuadExpr::zero(2);
  // 2q(y) − |y|² at y = u + iv: collect the real-variable Hessian.
  const Complex huu = 2.0 * (s.q1 + s.q2 + s.q3) - 1.0;
  const Complex hvv = 2.0 * (-s.q1 + s.q2 - s.q3) - 1.0;
  const Complex huv = 4.0 * kI * (s.q1 - s.q3);
  base.H << 2.0 * huu, huv, huv, 2.0 * hvv;
  const Complex m00 = std::exp(gaussian_reduce(base, 2).log_amplitude) / std::numbers::pi;

  const int M = 2 * N;  // need anti-diagonals up to k + j = 2(N−1)
  CMatrix m = CMatrix::Zero(M + 2, M + 2);
  m(0, 0) = m00;
  for (int d = 0; d <= 2 * (N - 1); ++d) {
    for (int k = 0; k <= d; ++k) {
      const int j = d - k;
      if (k > M || j > M) continue;
      // Solve for (m_{k+1,j}, m_{k,j+1}) from the two IBP identities.
      Eigen::Matrix2cd A;
      A << a * std::sqrt(k + 1.0), b * std::sqrt(j + 1.0),
           b * std::sqrt(k + 1.0), c * std::sqrt(j + 1.0);
      Eigen::Vector2cd rhs;
      rhs << (k > 0 ? -std::sqrt(double(k)) * m(k - 1, j) : Complex(0, 0)),
             (j > 0 ? -std::sqrt(double(j)) * m(k, j - 1) : Complex(0, 0));
      const Eigen::Vector2cd sol = A.partialPivLu().solve(rhs);
      m(k + 1, j) = sol(0);
      m(k, j + 1) = sol(1);
    }
  }
  CMatrix T(N, N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) T(j, k) = m(k, j);
  return T;
}

// Radial shortcut: diagonal entries (1 − λ)^{−(k+1)}.
CMatrix radial_entries(Complex lambda, int N) {
  CMatrix T = CMatrix::Zero(N, N);
  const Complex r = 1.0 / (1.0 - lambda);
  Complex acc = r;
  for (int k = 0; k < N; ++k) {
    T(k, k) = acc;
    acc *= r;
  }
  return T;
}

struct PolarGrid {
  RVector r, wr, th, wth;
};

PolarGrid polar_grid(const ScalarSymbol& s, int N, int nr, int nth) {
  // Decay rate: Re(2q − |y|²) ≤ −δ |y|²; radius cut so the integrand tail is
  // below 1e−12 relative to its peak for every monomial order ≤ 2N.
  const double delta =
      1.0 - 2.0 * (s.q2.real() + std::abs(s.q1) + std::abs(s.q3));
  if (delta <= 0.0)
    throw DivergentIntegral("polar quadrature: no uniform radial decay", delta);
  const double p = 2.0 * N + 1.0;
  double R = std::sqrt(p / (2.0 * delta)) + 1.0;
  auto log_tail = [&](double r) { return p * std::log(r) - delta * r * r; };
  const double log_peak = log_tail(std::sqrt(p / (2.0 * delta)));
  while (log_tail(R) > log_peak - 40.0) R *= 1.12;

  PolarGrid g;
  std::tie(g.r, g.wr) = gauss_legendre(nr, 0.0, R);
  std::tie(g.th, g.wth) = gauss_legendre(nth, 0.0, 2.0 * std::numbers::pi);
  return g;
}

CMatrix quadrature_entries_at(const ScalarSymbol& s, int N, const PolarGrid& g) {
  const int nr = static_cast<int>(g.r.size());
  const int nth = static_cast<int>(g.th.size());

  // A_m(r) = ∫ e^{imθ} exp(r² g(θ)) dθ with g(θ) = 2q1 e^{2iθ} + 2q2 − 1 + 2q3 e^{−2iθ}.
  CMatrix A(nr, 2 * N - 1);
  for (int ir = 0; ir < nr; ++ir) {
    const double r2 = g.r(ir) * g.r(ir);
    std::vector<Complex> row(2 * N - 1, Complex(0, 0));
    for (int it = 0; it < nth; ++it) {
      const double th = g.th(it);
      const Complex e2 = std::exp(2.0 * kI * th);
      const Complex gt = 2.0 * s.q1 * e2 + 2.0 * s.q2 - 1.0 + 2.0 * s.q3 / e2;
      const Complex base = g.wth(it) * std::exp(r2 * gt);
      const Complex em = std::exp(kI * th);
      Complex pw = std::exp(-kI * th * double(N - 1));
      for (int m = 0; m < 2 * N - 1; ++m) {
        row[m] += base * pw;  // m-index shifted: actual harmonic m − (N−1)
        pw *= em;
      }
    }
    for (int m = 0; m < 2 * N - 1; ++m) A(ir, m) = row[m];
  }

  CMatrix T(N, N);
  std::vector<double> lg(2 * N + 1);
  for (int k = 0; k <= 2 * N; ++k) lg[k] = std::lgamma(k + 1.0);
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < N; ++k) {
      Complex acc(0, 0);
      const double lnorm = 0.5 * (lg[j] + lg[k]) + std::log(std::numbers::pi);
      for (int ir = 0; ir < nr; ++ir) {
        const double lr = (k + j + 1.0) * std::log(g.r(ir)) - lnorm;
        acc += g.wr(ir) * std::exp(lr) * A(ir, (k - j) + (N - 1));
      }
      T(j, k) = acc;
    }
  }
  return T;
}

CMatrix quadrature_entries(const ScalarSymbol& s, int N) {
  const int nr = 2 * N + 48, nth = 4 * N + 64;
  const CMatrix T1 = quadrature_entries_at(s, N, polar_grid(s, N, nr, nth));
  const CMatrix T2 = quadrature_entries_at(s, N, polar_grid(s, N, nr + 24, nth + 32));
  const double err = (T1 - T2).cwiseAbs().maxCoeff();
  if (err > 1e-8)
    throw QuadratureFailure("truncated_matrix: quadrature did not converge", err);
  return T2;
}

}  // namespace

std::pair<RVector, RVector> gauss_legendre(int n, double a, double b) {
  RVector x(n), w(n);
  // Newton iteration on P_n with the usual Chebyshev initial guesses.
  for (int i = 0; i < n; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x(i) = 0.5 * (b - a) * t + 0.5 * (a + b);
    w(i) = (b - a) / ((1.0 - t * t) * dp * dp);
  }
  return {x, w};
}

TruncatedOperator truncated_matrix(const ComplexQuadraticSymbolExponent& q, int N,
                                   std::optional<EntryMethod> force) {
  if (N <= 0 || N > kMaxTruncation)
    throw InvalidInstance("truncated_matrix: truncation order out of range", N);
  const ScalarSymbol s = scalarize(q);
  require_integrable(q);

  TruncatedOperator out;
  out.N = N;
  if (force && *force == EntryMethod::Quadrature) {
    out.method = EntryMethod::Quadrature;
    out.entries = quadrature_entries(s, N);
    return out;
  }
  out.method = EntryMethod::Analytic;
  if (q.is_radial()) {
    out.entries = radial_entries(2.0 * s.q2, N);
    return out;
  }
  const Complex det = 16.0 * s.q1 * s.q3 - (2.0 * s.q2 - 1.0) * (2.0 * s.q2 - 1.0);
  if (!force && std::abs(det) < 1e-8) {
    out.method = EntryMethod::Quadrature;
    out.entries = quadrature_entries(s, N);
    return out;
  }
  out.entries = analytic_entries(s, N);
  return out;
}

SpectralReport spectral_report(const TruncatedOperator& T) {
  SpectralReport rep;
  Eigen::JacobiSVD<CMatrix> svd(T.entries);
  rep.singular_values = svd.singularValues();
  rep.operator_norm = rep.singular_values.size() ? rep.singular_values(0) : 0.0;
  rep.trace_partial = T.entries.trace();
  rep.unitary_defect =
      (T.entries.adjoint() * T.entries - CMatrix::Identity(T.N, T.N)).norm();

  // Least-squares slope of log s_j against j over the numerically visible range.
  int m = 0;
  while (m < rep.singular_values.size() &&
         rep.singular_values(m) > 1e-14 * rep.operator_norm)
    ++m;
  if (m >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int j = 0; j < m; ++j) {
      const double y = std::log(rep.singular_values(j));
      sx += j;
      sy += y;
      sxx += double(j) * j;
      sxy += j * y;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    rep.decay_ratio = std::exp(slope);
  }
  return rep;
}

double projection_idempotence(int N, double a2) {
  if (N <= 0 || N > kMaxTruncation)
    throw InvalidInstance("projection_idempotence: order out of range", N);
  // P_{jk} = a2 π (π √(j!k!))⁻¹ ∫ ȳ^j y^k e^{−|y|²} L(dy), assembled in polar
  // coordinates; the x-side integral is resolved by monomial orthogonality.
  const int nr = 2 * N + 48, nth = 4 * N + 32;
  const double R = std::sqrt(2.0 * N + 60.0);
  auto [r, wr] = gauss_legendre(nr, 0.0, R);
  auto [th, wth] = gauss_legendre(nth, 0.0, 2.0 * std::numbers::pi);

  std::vector<double> lg(N + 1);
  for (int k = 0; k <= N; ++k) lg[k] = std::lgamma(k + 1.0);

  // Angular integrals A_m = ∫ e^{imθ} dθ and radial moments, both by
  // quadrature; the kernel is separable in polar coordinates.
  CVector Am = CVector::Zero(2 * N - 1);
  for (int it = 0; it < nth; ++it)
    for (int m = -(N - 1); m <= N - 1; ++m)
      Am(m + N - 1) += wth(it) * std::exp(kI * th(it) * double(m));

  CMatrix P = CMatrix::Zero(N, N);
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < N; ++k) {
      double radial = 0.0;
      for (int ir = 0; ir < nr; ++ir) {
        const double rr = r(ir);
        radial += wr(ir) * std::exp((j + k + 1.0) * std::log(rr) - rr * rr -
                                    0.5 * (lg[j] + lg[k]));
      }
      P(j, k) = a2 * radial * Am(k - j + N - 1);
    }
  }
  const CMatrix I = CMatrix::Identity(N, N);
  return (P * P - P).norm() + (P - I).norm();
}

}  // namespace sympos
