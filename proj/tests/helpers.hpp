#pragma once

#include <random>

#include "sympos/forms.hpp"
#include "sympos/positivity.hpp"
#include "sympos/symplectic.hpp"

namespace sympos::testing {

inline CVector random_cvector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(d(rng), d(rng));
  return v;
}

inline CMatrix random_cmatrix(int r, int c, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> d;
  CMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = scale * Complex(d(rng), d(rng));
  return m;
}

inline CMatrix random_symmetric(int n, std::mt19937_64& rng, double scale = 1.0) {
  const CMatrix m = random_cmatrix(n, n, rng, scale);
  return 0.5 * (m + m.transpose().eval());
}

inline CMatrix random_hermitian_pd(int n, std::mt19937_64& rng, double lo = 0.5,
                                   double hi = 2.0) {
  const CMatrix m = random_cmatrix(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(m);
  const CMatrix u = qr.householderQ();
  std::uniform_real_distribution<double> d(lo, hi);
  CVector ev(n);
  for (int i = 0; i < n; ++i) ev(i) = Complex(d(rng), 0.0);
  return u * ev.asDiagonal() * u.adjoint();
}

// Strictly plurisubharmonic weight with a nontrivial pluriharmonic part.
inline QuadraticWeight random_psh_weight(int n, std::mt19937_64& rng,
                                         double plh_scale = 0.5) {
  return QuadraticWeight(random_symmetric(n, rng, plh_scale),
                         random_hermitian_pd(n, rng));
}

// Real quadratic form G on R^2n lifted to a holomorphic F on C^2n with
// Im F|_{Λ_model} = G; positive definite G gives a strictly positive Cayley
// map relative to the model pair.
inline HolomorphicQuadraticForm weyl_phase_with_lambda_imag(const QuadraticWeight& g) {
  const int n = g.dim();
  const CMatrix& Ag = g.holomorphic_part();
  const CMatrix& Lg = g.levi();
  CMatrix F(2 * n, 2 * n);
  F.topLeftCorner(n, n) = kI * Ag;
  F.topRightCorner(n, n) = -0.5 * Lg;
  F.bottomLeftCorner(n, n) = -0.5 * Lg.transpose();
  F.bottomRightCorner(n, n) = -kI * Ag.conjugate();
  return HolomorphicQuadraticForm(std::move(F));
}

// Random map that is strictly positive relative to (model, model): Cayley map
// of a phase whose Λ-restricted imaginary part is forced positive definite.
inline ComplexCanonicalMap random_strictly_positive_model_map(int n, std::mt19937_64& rng) {
  for (;;) {
    CMatrix W = random_cmatrix(n, n, rng);
    CMatrix Lg = W * W.adjoint() + 0.3 * CMatrix::Identity(n, n);
    const QuadraticWeight g(0.3 * random_symmetric(n, rng).real().cast<Complex>(), Lg);
    if (!compare_weights(g, QuadraticWeight::zero(n)).pd) continue;
    try {
      return cayley_map(weyl_phase_with_lambda_imag(g));
    } catch (const EigenvalueTwo&) {
      continue;  // resample away from the ±2 spectrum
    }
  }
}

// Random symplectic matrix of unknown positivity status.
inline ComplexCanonicalMap random_symplectic(int n, std::mt19937_64& rng,
                                             double scale = 0.7) {
  for (;;) {
    try {
      return cayley_map(HolomorphicQuadraticForm(random_symmetric(2 * n, rng, scale)));
    } catch (const EigenvalueTwo&) {
      continue;
    }
  }
}

}  // namespace sympos::testing
