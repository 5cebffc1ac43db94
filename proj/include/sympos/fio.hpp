#pragma once

#include "sympos/forms.hpp"
#include "sympos/positivity.hpp"
#include "sympos/symplectic.hpp"

namespace sympos {

// Kernel of a metaplectic FIO against the weight Φ₂:
// K(x, ȳ) = amplitude · e^{2Ψ(x,ȳ)}, acting as
// (Au)(x) = ∫ K(x,ȳ) u(y) e^{−2Φ₂(y)} L(dy).
struct BergmanKernel {
  Complex amplitude{0.0, 0.0};
  HolomorphicQuadraticForm Psi = HolomorphicQuadraticForm::zero(0);  // on C^{2n}, (x, z)
  int n = 0;

  Complex evaluate(const CVector& x, const CVector& z) const;
};

// Holomorphic quadratic phase φ(x,y,θ), stored jointly over (x,y,θ) so the
// Hörmander non-degeneracy is a single rank check on the ∂θ-gradient rows.
class NondegeneratePhase {
 public:
  NondegeneratePhase(int n_x, int n_y, int n_theta, HolomorphicQuadraticForm total,
                     double tol = kDefaultTol);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int ntheta() const { return nt_; }
  const HolomorphicQuadraticForm& total() const { return total_; }

  // Hessian blocks by variable group: 0 = x, 1 = y, 2 = θ.
  CMatrix block(int a, int b) const;

 private:
  int offset(int g) const;
  int size(int g) const;
  int nx_, ny_, nt_;
  HolomorphicQuadraticForm total_;
};

// Phase of the Bergman projection Π_{Φ₂}: (2/i)(Ψ₂(x,θ) − Ψ₂(y,θ)).
NondegeneratePhase projection_phase(const QuadraticWeight& phi2);

struct ImageWeightResult {
  QuadraticWeight weight;
  // Real signature of the eliminated form (y,θ) ↦ −Im φ(0,y,θ) + Φ₂(y);
  // (n+N, n+N) for graph-type positive instances.
  int eliminated_positive = 0;
  int eliminated_negative = 0;
  int eliminated_zero = 0;
};

// Φ(x) = vc_{y,θ}(−Im φ(x,y,θ) + Φ₂(y)) by real Schur complement.
ImageWeightResult image_weight(const NondegeneratePhase& phase, const QuadraticWeight& phi2);

// 2Ψ(x,z) = vc_{ỹ,θ}(iφ(x,ỹ,θ) + 2Ψ₂(ỹ,z)); the amplitude normalizes the
// projection phase to Π_{Φ₂} itself and follows the square-root branch along
// the straight-line homotopy between the two Hessians.
BergmanKernel kernel_from_phase(const NondegeneratePhase& phase, const QuadraticWeight& phi2);

// κ = κ_Ψ ∘ κ_{Ψ₂}⁻¹ from the kernel weights (both on C^{2n}).
ComplexCanonicalMap map_from_kernel(const HolomorphicQuadraticForm& Psi,
                                    const HolomorphicQuadraticForm& Psi2);

// The kernel weight Ψ of the map M against Φ₂ (inverse of map_from_kernel
// with Ψ₂ = polarize(Φ₂)).
HolomorphicQuadraticForm kernel_weight_of_map(const ComplexCanonicalMap& M,
                                              const QuadraticWeight& phi2);

// Canonical transformation generated by a graph-type phase:
// (y, −φ'_y) ↦ (x, φ'_x) on φ'_θ = 0.
ComplexCanonicalMap canonical_map_of_phase(const NondegeneratePhase& phase);

struct DominationReport {
  double min_eigenvalue = 0.0;
  int kernel_dim = 0;
  bool psd = false;
  RVector witness;
};

// F(x,y) = Φ(x) + Φ₂*(y) − 2Re Ψ(x,y) realified on R^{4n}: psd with a 2n-dim
// kernel along the projected graph. A negative eigenvalue is a finding.
DominationReport kernel_domination_check(const HolomorphicQuadraticForm& Psi,
                                         const QuadraticWeight& phi,
                                         const QuadraticWeight& phi2,
                                         double tol = kDefaultTol);

struct TriEquivalence {
  Positivity direct;          // (i)  positivity of the map
  Positivity lagrangian;      // (ii) positivity of Λ_{2ReΨ} in the doubled space
  Positivity sign_check;      // (iii) 2ReΨ(x,ȳ) ≤ Φ₁(x) + Φ₂(y)
  double margins[3] = {0, 0, 0};
  bool agree = false;
};

TriEquivalence positivity_tri_equivalence(const ComplexCanonicalMap& M, const QuadraticWeight& phi1,
                                const QuadraticWeight& phi2, double tol = kDefaultTol);

// Π_Φ itself: Ψ = polarize(Φ), amplitude det(L)/πⁿ (fixed by idempotence).
BergmanKernel projection_kernel(const QuadraticWeight& phi);

}  // namespace sympos
