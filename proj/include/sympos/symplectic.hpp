#pragma once

#include "sympos/forms.hpp"
#include "sympos/types.hpp"

namespace sympos {

// The complex symplectic phase space C^2n with σ((x,ξ),(y,η)) = ξ·y − x·η
// (the dξ ∧ dx convention; every sign downstream derives from this choice)
// and the fixed antilinear map Γ(y,η) = (ȳ, −η̄).
struct SymplecticContext {
  explicit SymplecticContext(int dim);
  int n;
  CMatrix J;  // [[0, I], [−I, 0]], so σ(t,s) = (Jt)ᵀ s

  Complex sigma(const CVector& t, const CVector& s) const;
  CVector gamma(const CVector& v) const;
};

CMatrix symplectic_j(int n);
Complex sigma_form(const CVector& t, const CVector& s);
CVector gamma_conjugation(const CVector& v);

// 2n×2n complex matrix with MᵀJM = J, block-indexed as (x,ξ)-output of
// (y,η)-input.
class ComplexCanonicalMap {
 public:
  explicit ComplexCanonicalMap(CMatrix M, double tol = kDefaultTol);
  static ComplexCanonicalMap identity(int n);

  int dim() const { return n_; }
  const CMatrix& matrix() const { return M_; }
  CMatrix block(int i, int j) const { return M_.block(i * n_, j * n_, n_, n_); }

  CVector apply(const CVector& v) const { return M_ * v; }
  ComplexCanonicalMap inverse() const;                      // −J Mᵀ J, exact
  ComplexCanonicalMap compose(const ComplexCanonicalMap& rhs) const;  // this ∘ rhs
  double symplectic_defect() const;

 private:
  int n_;
  CMatrix M_;
};

// Antilinear map ρ ↦ K conj(ρ) with K conj(K) = I.
class AntilinearInvolution {
 public:
  explicit AntilinearInvolution(CMatrix K, double tol = kDefaultTol);
  const CMatrix& matrix() const { return K_; }
  CVector apply(const CVector& v) const { return K_ * v.conjugate(); }

  // κ⁻¹ ∘ ι ∘ κ for linear κ; antilinear maps compose through conjugated
  // matrices, so the result has matrix κ⁻¹ K conj(κ).
  AntilinearInvolution conjugated_by(const ComplexCanonicalMap& kappa) const;

  // ι₁ ∘ ι₂ is linear with matrix K₁ conj(K₂).
  CMatrix compose(const AntilinearInvolution& rhs) const {
    return K_ * rhs.K_.conjugate();
  }

 private:
  CMatrix K_;
};

// Hermitian form b(ν,μ) = ν* B μ with b(μ,μ) = (1/i) σ(μ, ι_Φ(μ)).
class HermitianFormOnPhase {
 public:
  explicit HermitianFormOnPhase(CMatrix B, double tol = kDefaultTol);
  const CMatrix& matrix() const { return B_; }
  Complex operator()(const CVector& nu, const CVector& mu) const {
    return (nu.adjoint() * B_ * mu)(0, 0);
  }
  double quad(const CVector& mu) const { return (*this)(mu, mu).real(); }

 private:
  CMatrix B_;
};

// The unique antilinear involution fixing Λ_Φ pointwise, solved from the
// graph matrices of Λ_Φ. Requires L invertible.
AntilinearInvolution involution_of(const QuadraticWeight& phi);

HermitianFormOnPhase hermitian_b(const QuadraticWeight& phi);

// Φ' with M(Λ_Φ) = Λ_{Φ'}; throws FiberNotTransversal when the image has no
// generating weight. Spot-verified on random graph points internally.
QuadraticWeight push_weight(const ComplexCanonicalMap& M, const QuadraticWeight& phi);

// κ_A(y,η) = (y, η + (2/i) A_Φ y) with κ_A(Λ_{Φ_herm}) = Λ_Φ.
ComplexCanonicalMap shear_map(const QuadraticWeight& phi);

struct ModelReduction {
  ComplexCanonicalMap map;  // push_weight(map, Φ) = |x|²/2
  CMatrix scale_factor;     // the C of the variable change κ_C
  CMatrix shear;            // the (2/i) A_Φ of the undone shear
};
ModelReduction reduce_to_model(const QuadraticWeight& phi);

// φ(x,η) with κ: (φ'_η(x,η), η) ↦ (x, φ'_x(x,η)); needs the (x,η)-projection
// of the graph bijective (block M₁₁ invertible).
HolomorphicQuadraticForm generating_function(const ComplexCanonicalMap& M);

// Fundamental matrix F = J F'' of a holomorphic quadratic form on C^2n.
CMatrix fundamental_matrix(const HolomorphicQuadraticForm& F);

// κ = (1 − F/2)(1 + F/2)⁻¹; requires F to avoid the eigenvalues ±2.
ComplexCanonicalMap cayley_map(const HolomorphicQuadraticForm& F);

// Inverse of cayley_map; requires −1 to not be an eigenvalue of M.
HolomorphicQuadraticForm cayley_phase(const ComplexCanonicalMap& M);

}  // namespace sympos
