#pragma once

#include <optional>
#include <string>

#include "sympos/forms.hpp"
#include "sympos/symplectic.hpp"

namespace sympos {

enum class Positivity { StrictlyPositive, DegeneratePositive, NotPositive };

const char* to_string(Positivity p);
Positivity classify(double min_eigenvalue, double tol);

// Margin below which the two routes of a verdict are both read as degenerate
// before being compared.
inline constexpr double kAgreementGate = 1e-7;

// Complex n-dimensional subspace of C^2n on which σ vanishes.
class CLagrangianPlane {
 public:
  explicit CLagrangianPlane(CMatrix basis, double tol = kDefaultTol);
  const CMatrix& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.cols()); }

 private:
  CMatrix basis_;
};

struct RouteOutput {
  Positivity status = Positivity::NotPositive;
  double min_eigenvalue = 0.0;
  double tol = 0.0;
  bool ok = false;           // false when this route errored
  std::string error;
};

struct PositivityVerdict {
  Positivity status = Positivity::NotPositive;  // from the direct route
  double min_eigenvalue = 0.0;
  CVector witness;
  bool route_agreement = false;
  bool inconsistent = false;  // direct says positive while the characterization errored
  RouteOutput direct;
  RouteOutput characterization;
};

// Positivity of Λ relative to Λ_Φ0: the direct route restricts the Hermitian
// form b to Λ; the characterization route extracts the pluriharmonic Ψ with
// Λ = Λ_Ψ and compares Φ0 against it.
PositivityVerdict lagrangian_positivity(const CLagrangianPlane& plane,
                                        const QuadraticWeight& phi0,
                                        double tol = kDefaultTol);

// Positivity of M relative to (Λ_Φ1, Λ_Φ2): the direct route is the spectrum
// of M*B₁M − B₂; the characterization pushes Φ2 through M and compares with
// Φ1 (the two agree by the weight-pair characterization theorem).
PositivityVerdict map_positivity(const ComplexCanonicalMap& M, const QuadraticWeight& phi1,
                                 const QuadraticWeight& phi2, double tol = kDefaultTol);

// Criterion in terms of a generating function φ(x,θ) against Φ1 with the
// model second weight: L x̄·x + |θ|² − |φ'_x + 2iAx|²_{L⁻¹} − |φ'_θ|² psd.
// Cross-checked against map_positivity of the induced map.
PositivityVerdict positivity_via_generating(const HolomorphicQuadraticForm& phi,
                                            const QuadraticWeight& phi1,
                                            double tol = kDefaultTol);

// The canonical map with generating function φ(x,θ), model second weight.
ComplexCanonicalMap map_of_generating(const HolomorphicQuadraticForm& phi);

}  // namespace sympos
