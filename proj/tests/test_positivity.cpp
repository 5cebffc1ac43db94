#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "sympos/positivity.hpp"

using namespace sympos;
using namespace sympos::testing;

namespace {

// Negative-instance generator: one flipped eigendirection in the forced
// Λ-imaginary part.
ComplexCanonicalMap random_not_positive_model_map(int n, std::mt19937_64& rng) {
  for (;;) {
    CMatrix W = random_cmatrix(n, n, rng);
    CMatrix L = W * W.adjoint() + 0.3 * CMatrix::Identity(n, n);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(L);
    CVector ev = es.eigenvalues().cast<Complex>();
    ev(0) = -0.7;  // flip one direction
    L = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    const QuadraticWeight g(0.3 * random_symmetric(n, rng), L);
    try {
      return cayley_map(weyl_phase_with_lambda_imag(g));
    } catch (const EigenvalueTwo&) {
      continue;
    }
  }
}

ComplexCanonicalMap diag_map(Complex a) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = 1.0 / a;
  return ComplexCanonicalMap(std::move(m));
}

}  // namespace

TEST_CASE("lagrangian_positivity: base plane, fiber, boundary graph") {
  const QuadraticWeight model = QuadraticWeight::model(1);

  CMatrix base(2, 1);
  base << 1.0, 0.0;  // {ξ = 0}
  const PositivityVerdict vb = lagrangian_positivity(CLagrangianPlane(base), model);
  CHECK(vb.status == Positivity::StrictlyPositive);
  CHECK(vb.route_agreement);

  CMatrix fiber(2, 1);
  fiber << 0.0, 1.0;
  const PositivityVerdict vf = lagrangian_positivity(CLagrangianPlane(fiber), model);
  CHECK(vf.status == Positivity::NotPositive);
  CHECK(vf.min_eigenvalue == doctest::Approx(-1.0));  // b = −|ξ|²
  CHECK(!vf.characterization.ok);                     // fiber is not a graph
  CHECK(!vf.inconsistent);                            // consistent with the theorem

  CMatrix graph(2, 1);
  graph << 1.0, 1.0;  // φ(x) = x²/2, ‖φ''‖ = 1 boundary
  const PositivityVerdict vg = lagrangian_positivity(CLagrangianPlane(graph), model);
  CHECK(vg.status == Positivity::DegeneratePositive);
  CHECK(vg.route_agreement);
}

TEST_CASE("lagrangian_positivity: status is invariant under basis change") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const QuadraticWeight phi = random_psh_weight(n, rng);
    const ComplexCanonicalMap M = (trial % 2) ? random_strictly_positive_model_map(n, rng)
                                              : random_symplectic(n, rng);
    // Image of the base plane under M is C-Lagrangian.
    CMatrix basis = M.matrix().leftCols(n);
    const PositivityVerdict v1 = lagrangian_positivity(CLagrangianPlane(basis), phi);
    CMatrix g = random_cmatrix(n, n, rng);
    while (std::abs(Eigen::PartialPivLU<CMatrix>(g).determinant()) < 0.1)
      g = random_cmatrix(n, n, rng);
    const PositivityVerdict v2 = lagrangian_positivity(CLagrangianPlane(basis * g), phi);
    if (std::abs(v1.min_eigenvalue) > kAgreementGate &&
        std::abs(v2.min_eigenvalue) > kAgreementGate)
      CHECK(v1.status == v2.status);
  }
}

TEST_CASE("map_positivity: identity, dilation, contraction") {
  const QuadraticWeight model = QuadraticWeight::model(1);

  const PositivityVerdict vid =
      map_positivity(ComplexCanonicalMap::identity(1), model, model);
  CHECK(vid.status == Positivity::DegeneratePositive);
  CHECK(vid.route_agreement);

  const PositivityVerdict vdil = map_positivity(diag_map(2.0), model, model);
  CHECK(vdil.status == Positivity::StrictlyPositive);
  CHECK(vdil.route_agreement);
  // The pushed weight is |x|²/8 < |x|²/2.
  const QuadraticWeight pushed = push_weight(diag_map(2.0), model);
  CHECK((pushed.levi() - 0.25 * CMatrix::Identity(1, 1)).norm() < 1e-13);

  const PositivityVerdict vcon = map_positivity(diag_map(0.6), model, model);
  CHECK(vcon.status == Positivity::NotPositive);
  CHECK(vcon.route_agreement);
}

TEST_CASE("map_positivity: fiber-tangent image forces a negative direct verdict") {
  // push_weight fails on this shear, and the theorem then demands the direct
  // route be negative; anything else would be flagged inconsistent.
  CMatrix M = CMatrix::Identity(2, 2);
  M(0, 1) = 1.0;
  const QuadraticWeight model = QuadraticWeight::model(1);
  const PositivityVerdict v = map_positivity(ComplexCanonicalMap(M), model, model);
  CHECK(!v.characterization.ok);
  CHECK(v.status == Positivity::NotPositive);
  CHECK(v.min_eigenvalue == doctest::Approx((1.0 - std::sqrt(5.0)) / 2.0));
  CHECK(!v.inconsistent);
}

TEST_CASE("map_positivity: route agreement over a mixed corpus") {
  std::mt19937_64 rng(43);
  for (int n = 1; n <= 3; ++n) {
    int contradictions = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const QuadraticWeight phi1 = random_psh_weight(n, rng);
      const QuadraticWeight phi2 = random_psh_weight(n, rng);
      const ModelReduction r1 = reduce_to_model(phi1);
      const ModelReduction r2 = reduce_to_model(phi2);

      ComplexCanonicalMap core = [&] {
        switch (trial % 3) {
          case 0: return random_strictly_positive_model_map(n, rng);
          case 1: return random_not_positive_model_map(n, rng);
          default: return random_symplectic(n, rng);
        }
      }();
      const ComplexCanonicalMap M = r1.map.inverse().compose(core).compose(r2.map);
      const PositivityVerdict v = map_positivity(M, phi1, phi2);

      if (!v.characterization.ok) {
        CHECK(!v.inconsistent);
        continue;
      }
      if (std::abs(v.direct.min_eigenvalue) > kAgreementGate &&
          std::abs(v.characterization.min_eigenvalue) > kAgreementGate &&
          !v.route_agreement)
        ++contradictions;
      // Ground truth for the constructed signs.
      if (trial % 3 == 0 && std::abs(v.direct.min_eigenvalue) > kAgreementGate)
        CHECK(v.status == Positivity::StrictlyPositive);
      if (trial % 3 == 1 && std::abs(v.direct.min_eigenvalue) > kAgreementGate)
        CHECK(v.status == Positivity::NotPositive);
    }
    CHECK(contradictions == 0);
  }
}

TEST_CASE("map_positivity: shear reduction invariance") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 2;
    const QuadraticWeight phi1 = random_psh_weight(n, rng);
    const QuadraticWeight phi2 = random_psh_weight(n, rng);
    const ComplexCanonicalMap M = random_symplectic(n, rng, 0.5);
    const PositivityVerdict base = map_positivity(M, phi1, phi2);

    const auto [h2, p2] = split_herm_plh(phi2);
    const ComplexCanonicalMap shear = shear_map(phi2);
    const ComplexCanonicalMap conj = shear.inverse().compose(M).compose(shear);
    const QuadraticWeight phi1_shift = phi1 - p2;
    const PositivityVerdict red = map_positivity(conj, phi1_shift, h2);
    if (std::abs(base.direct.min_eigenvalue) > kAgreementGate &&
        std::abs(red.direct.min_eigenvalue) > kAgreementGate)
      CHECK(base.status == red.status);
  }
}

TEST_CASE("map_positivity: composition of positives is positive") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 2;
    const QuadraticWeight phi1 = random_psh_weight(n, rng);
    const QuadraticWeight phi = random_psh_weight(n, rng);
    const QuadraticWeight phi2 = random_psh_weight(n, rng);
    const ModelReduction r1 = reduce_to_model(phi1);
    const ModelReduction rm = reduce_to_model(phi);
    const ModelReduction r2 = reduce_to_model(phi2);
    const ComplexCanonicalMap m1 =
        r1.map.inverse().compose(random_strictly_positive_model_map(n, rng)).compose(rm.map);
    const ComplexCanonicalMap m2 =
        rm.map.inverse().compose(random_strictly_positive_model_map(n, rng)).compose(r2.map);
    CHECK(map_positivity(m1, phi1, phi).status == Positivity::StrictlyPositive);
    CHECK(map_positivity(m2, phi, phi2).status == Positivity::StrictlyPositive);
    CHECK(map_positivity(m1.compose(m2), phi1, phi2).status ==
          Positivity::StrictlyPositive);
  }
}

TEST_CASE("positivity_via_generating: the three scalar phases") {
  const QuadraticWeight model = QuadraticWeight::model(1);
  auto phase = [](Complex coeff) {
    CMatrix Q(2, 2);
    Q << 0.0, coeff, coeff, 0.0;  // φ(x,θ) = coeff · xθ
    return HolomorphicQuadraticForm(Q);
  };
  const PositivityVerdict vid = positivity_via_generating(phase(1.0), model);
  CHECK(vid.status == Positivity::DegeneratePositive);
  CHECK(vid.route_agreement);

  const PositivityVerdict vgood = positivity_via_generating(phase(0.5), model);
  CHECK(vgood.status == Positivity::StrictlyPositive);
  CHECK(vgood.route_agreement);
  // Margin oracle: min of |x|² + |θ|² − |x/2|² − |θ/2|² on the unit sphere.
  CHECK(vgood.min_eigenvalue == doctest::Approx(0.75));

  const PositivityVerdict vbad = positivity_via_generating(phase(2.0), model);
  CHECK(vbad.status == Positivity::NotPositive);
  CHECK(vbad.route_agreement);
}

TEST_CASE("positivity_via_generating: agrees with map_positivity on random maps") {
  std::mt19937_64 rng(59);
  int done = 0;
  while (done < 40) {
    const int n = 1 + done % 2;
    const QuadraticWeight phi1 = random_psh_weight(n, rng);
    const ComplexCanonicalMap M = (done % 2) ? random_strictly_positive_model_map(n, rng)
                                             : random_symplectic(n, rng);
    try {
      const HolomorphicQuadraticForm gen = generating_function(M);
      const PositivityVerdict v = positivity_via_generating(gen, phi1);
      if (v.characterization.ok && std::abs(v.direct.min_eigenvalue) > kAgreementGate &&
          std::abs(v.characterization.min_eigenvalue) > kAgreementGate)
        CHECK(v.route_agreement);
    } catch (const NoGeneratingFunction&) {
      continue;
    }
    ++done;
  }
}
