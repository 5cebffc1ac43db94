#pragma once

#include <optional>

#include "sympos/fio.hpp"
#include "sympos/forms.hpp"
#include "sympos/positivity.hpp"
#include "sympos/symplectic.hpp"

namespace sympos {

// Weyl symbol a = c · e^{iF} of a Gaussian Toeplitz operator. The restriction
// to Λ_Φ0 is kept as a complex quadratic in the realified variable,
// a|_Λ(x) = c · exp((1/2) zᵀ G z), z = (Re x, Im x).
struct GaussianSymbol {
  Complex amplitude{0.0, 0.0};
  HolomorphicQuadraticForm phase = HolomorphicQuadraticForm::zero(0);  // F on C^{2n}
  CMatrix lambda_exponent;  // G, complex symmetric 2n×2n over (Re x, Im x)

  Complex value_on_graph(const CVector& x) const;
};

struct AdmissibilityReport {
  bool densely_defined = false;   // Φ_herm − 2Re q ≻ 0
  double dense_margin = 0.0;
  bool convolution_convergent = false;  // 4Φ_herm − 2Re q ≻ 0 (weaker)
  double convolution_margin = 0.0;
  bool nondegenerate = false;     // det(L0/2 − Q2) away from zero
  double det_abs = 0.0;
  bool marginal = false;          // |det| under the relative threshold
};

AdmissibilityReport admissibility(const ComplexQuadraticSymbolExponent& q,
                                  const QuadraticWeight& phi0, double tol = kDefaultTol);

// Exact Gaussian convolution C_{Φ0} ∫ e^{−4Φ_herm(x−y)} e^{2q(y)} L(dy),
// normalized so that q = 0 gives a ≡ 1; the Weyl phase F(x,ξ) comes from
// substituting x̄ = L0⁻¹(iξ − 2A0 x).
GaussianSymbol weyl_symbol(const ComplexQuadraticSymbolExponent& q,
                           const QuadraticWeight& phi0);

// Canonical transformation of Top(e^{2q}) extracted from the polarized phase
// (2/i)(Ψ0(x,θ) − Ψ0(y,θ) + q(y,θ)); cross-checked internally against the
// Cayley map of the Weyl phase.
ComplexCanonicalMap toeplitz_map(const ComplexQuadraticSymbolExponent& q,
                                 const QuadraticWeight& phi0);

NondegeneratePhase toeplitz_phase(const ComplexQuadraticSymbolExponent& q,
                                  const QuadraticWeight& phi0);

struct ToeplitzReport {
  AdmissibilityReport admissible;
  std::optional<GaussianSymbol> weyl;
  std::optional<ComplexCanonicalMap> kappa;
  double kappa_cayley_residual = 0.0;
  // Status of Im F|_{Λ_Φ0} ≥ 0; characterization route is map_positivity of
  // the extracted map against (Φ0, Φ0).
  std::optional<PositivityVerdict> bounded;
  bool trace_class = false;
  bool unitary_up_to_phase = false;
  double unitary_amplitude_defect = 0.0;
  std::optional<Complex> trace;
};

ToeplitzReport analyze(const ComplexQuadraticSymbolExponent& q, const QuadraticWeight& phi0,
                       double tol = kDefaultTol);

}  // namespace sympos
