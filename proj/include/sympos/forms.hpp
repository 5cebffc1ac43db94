#pragma once

#include <utility>

#include "sympos/types.hpp"

namespace sympos {

// Real-valued quadratic form on C^n,
//
//   Φ(x) = Re(xᵀ A x) + (1/2) Σ_{jk} L_{jk} x_j conj(x_k),
//
// with A complex symmetric (A = Φ''_{xx}) and L Hermitian (L = 2 Φ''_{x x̄}).
// Strict plurisubharmonicity is L ≻ 0, pluriharmonicity is L = 0.
class QuadraticWeight {
 public:
  QuadraticWeight(CMatrix A, CMatrix L, double tol = kDefaultTol);

  static QuadraticWeight model(int n);  // |x|²/2
  static QuadraticWeight zero(int n);
  // The pluriharmonic weight −Im φ for holomorphic φ(x) = (1/2) xᵀ S x.
  static QuadraticWeight pluriharmonic_from(const CMatrix& phi_hessian);

  int dim() const { return n_; }
  const CMatrix& holomorphic_part() const { return A_; }
  const CMatrix& levi() const { return L_; }

  double operator()(const CVector& x) const;

  // Momentum of the graph point of Λ_Φ over x: ξ(x) = (2/i)(A x + L x̄ / 2).
  CVector graph_momentum(const CVector& x) const;
  CMatrix graph_g() const { return Complex(0, -2) * A_; }  // x-coefficient
  CMatrix graph_h() const { return Complex(0, -1) * L_; }  // x̄-coefficient

  double levi_min_eigenvalue() const;
  bool strictly_plurisubharmonic(double tol = kDefaultTol) const;
  bool is_pluriharmonic(double tol = kDefaultTol) const;

  // Real symmetric 2n×2n matrix S with Φ(x) = (1/2) zᵀ S z, z = (Re x, Im x).
  RMatrix realified() const;
  static QuadraticWeight from_realified(const RMatrix& S);

  // Φ*(y) = Φ(ȳ).
  QuadraticWeight conjugate_argument() const;
  QuadraticWeight scaled(double s) const { return {s * A_, s * L_}; }

  friend QuadraticWeight operator+(const QuadraticWeight& a, const QuadraticWeight& b);
  friend QuadraticWeight operator-(const QuadraticWeight& a, const QuadraticWeight& b);
  // Φ(x) + Ψ(y) as a weight on C^{n+m}.
  static QuadraticWeight direct_sum(const QuadraticWeight& a, const QuadraticWeight& b);

 private:
  int n_;
  CMatrix A_;
  CMatrix L_;
};

// Holomorphic quadratic form q(z) = (1/2) zᵀ Q z on C^m, Q symmetric.
class HolomorphicQuadraticForm {
 public:
  explicit HolomorphicQuadraticForm(CMatrix Q, double tol = kDefaultTol);
  static HolomorphicQuadraticForm zero(int m);

  int dim() const { return static_cast<int>(Q_.rows()); }
  const CMatrix& hessian() const { return Q_; }

  Complex operator()(const CVector& z) const;
  CVector gradient(const CVector& z) const { return Q_ * z; }

  CMatrix block(int row0, int rows, int col0, int cols) const {
    return Q_.block(row0, col0, rows, cols);
  }

 private:
  CMatrix Q_;
};

// Complex-valued quadratic form q(y) = yᵀ Q1 y + ȳᵀ Q2 y + ȳᵀ Q3 ȳ on C^n.
// Houses Toeplitz exponents; q''_{x̄x} = Q2.
class ComplexQuadraticSymbolExponent {
 public:
  ComplexQuadraticSymbolExponent(CMatrix Q1, CMatrix Q2, CMatrix Q3,
                                 double tol = kDefaultTol);
  static ComplexQuadraticSymbolExponent zero(int n);
  // The radial family q(y) = (λ/2)|y|².
  static ComplexQuadraticSymbolExponent radial(int n, Complex lambda);

  int dim() const { return n_; }
  const CMatrix& q1() const { return Q1_; }
  const CMatrix& q2() const { return Q2_; }
  const CMatrix& q3() const { return Q3_; }

  Complex operator()(const CVector& y) const;

  // Re q as a QuadraticWeight (checked against evaluation in the tests).
  QuadraticWeight real_part() const;

  // Polarization ȳ ↦ θ: q_pol(y,θ) = yᵀ Q1 y + θᵀ Q2 y + θᵀ Q3 θ on C^{2n},
  // so q_pol(y, ȳ) = q(y).
  HolomorphicQuadraticForm polarized() const;

  bool is_radial(double tol = kDefaultTol) const;

 private:
  int n_;
  CMatrix Q1_, Q2_, Q3_;
};

// Spectral verdict on the realified difference of two weights.
struct FormComparison {
  double min_eigenvalue = 0.0;
  int positive = 0, negative = 0, zero = 0;
  bool psd = false, pd = false;
  RVector witness;  // realified 2n-vector attaining the min eigenvalue
  double tol = 0.0;
};

// Φ_herm (A = 0) and Φ_plh (L = 0), summing back to the input exactly.
std::pair<QuadraticWeight, QuadraticWeight> split_herm_plh(const QuadraticWeight& phi);

// The unique holomorphic quadratic Ψ on C^{2n} with Ψ(x, x̄) = Φ(x).
HolomorphicQuadraticForm polarize(const QuadraticWeight& phi);

// Spectrum of Φa − Φb realified on R^2n; psd means Φa ≥ Φb everywhere.
FormComparison compare_weights(const QuadraticWeight& a, const QuadraticWeight& b,
                               double tol = kDefaultTol);

// Realified psd verdict of an arbitrary real symmetric matrix (shared by the
// weight comparison and the generating-function criterion).
FormComparison classify_real_form(const RMatrix& S, double tol = kDefaultTol);

struct CriticalValueResult {
  HolomorphicQuadraticForm reduced;  // Schur complement on the retained block
  CMatrix critical_point_map;        // eliminated = map · retained
};

// Holomorphic critical value: eliminate the trailing k = dim−retained
// variables of Q by stationarity. Requires the eliminated Hessian block to
// be invertible.
CriticalValueResult critical_value_hol(const HolomorphicQuadraticForm& q, int retained);

}  // namespace sympos
