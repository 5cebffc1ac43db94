#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "sympos/symplectic.hpp"

using namespace sympos;
using namespace sympos::testing;

TEST_CASE("symplectic context: J, sigma and Gamma") {
  const SymplecticContext ctx(2);
  CHECK((ctx.J * ctx.J + CMatrix::Identity(4, 4)).norm() == 0.0);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 100; ++k) {
    const CVector t = random_cvector(4, rng), s = random_cvector(4, rng);
    CHECK(std::abs(ctx.sigma(t, s) + ctx.sigma(s, t)) < 1e-13);
    // σ(Γt, Γs) = −conj(σ(t,s)).
    CHECK(std::abs(ctx.sigma(ctx.gamma(t), ctx.gamma(s)) + std::conj(ctx.sigma(t, s))) <
          1e-13);
    // Matrix and block forms agree.
    const Complex via_j = ((ctx.J * t).transpose() * s)(0, 0);
    CHECK(std::abs(via_j - ctx.sigma(t, s)) < 1e-13);
  }
}

TEST_CASE("involution: model weight formula") {
  const AntilinearInvolution iota = involution_of(QuadraticWeight::model(1));
  CMatrix expect(2, 2);
  expect << 0.0, -kI, -kI, 0.0;
  CHECK((iota.matrix() - expect).norm() < 1e-14);
}

TEST_CASE("involution: fixes the graph and squares to the identity") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 1 + trial % 3;
    const QuadraticWeight phi = random_psh_weight(n, rng);
    const AntilinearInvolution iota = involution_of(phi);
    CHECK((iota.matrix() * iota.matrix().conjugate() - CMatrix::Identity(2 * n, 2 * n)).norm() <
          1e-10);
    for (int k = 0; k < 20; ++k) {
      const CVector x = random_cvector(n, rng);
      CVector p(2 * n);
      p << x, phi.graph_momentum(x);
      CHECK((iota.apply(p) - p).norm() < 1e-10 * (1.0 + p.norm()));
    }
  }
}

TEST_CASE("involution: shear conjugation identity") {
  std::mt19937_64 rng(5);
  const QuadraticWeight phi = random_psh_weight(2, rng);
  const auto [herm, plh] = split_herm_plh(phi);
  const ComplexCanonicalMap shear = shear_map(phi);
  const AntilinearInvolution lhs = involution_of(herm);
  const AntilinearInvolution rhs = involution_of(phi).conjugated_by(shear);
  CHECK((lhs.matrix() - rhs.matrix()).norm() < 1e-10);
}

TEST_CASE("involution: antilinear composition rule") {
  std::mt19937_64 rng(101);
  const QuadraticWeight phi1 = random_psh_weight(2, rng);
  const QuadraticWeight phi2 = random_psh_weight(2, rng);
  const AntilinearInvolution i1 = involution_of(phi1);
  const AntilinearInvolution i2 = involution_of(phi2);
  // ι∘ι = id through the composition rule K₁ conj(K₂).
  CHECK((i1.compose(i1) - CMatrix::Identity(4, 4)).norm() < 1e-10);
  // The composite of two involutions acts linearly: compare on random points.
  const CMatrix comp = i1.compose(i2);
  for (int k = 0; k < 20; ++k) {
    const CVector v = random_cvector(4, rng);
    CHECK((comp * v - i1.apply(i2.apply(v))).norm() < 1e-11 * (1.0 + v.norm()));
  }
}

TEST_CASE("hermitian_b: model gives |x|^2 - |xi|^2") {
  const HermitianFormOnPhase b = hermitian_b(QuadraticWeight::model(1));
  CMatrix expect(2, 2);
  expect << 1.0, 0.0, 0.0, -1.0;
  CHECK((b.matrix() - expect).norm() < 1e-14);
}

TEST_CASE("hermitian_b: reality, graph nullity, fiber negativity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 1 + trial % 3;
    const QuadraticWeight phi = random_psh_weight(n, rng);
    const HermitianFormOnPhase b = hermitian_b(phi);
    const AntilinearInvolution iota = involution_of(phi);
    const SymplecticContext ctx(n);
    for (int k = 0; k < 20; ++k) {
      const CVector mu = random_cvector(2 * n, rng);
      const Complex quad = b(mu, mu);
      CHECK(std::abs(quad.imag()) < 1e-12 * (1.0 + mu.squaredNorm()));
      const Complex via_sigma = ctx.sigma(mu, iota.apply(mu)) / kI;
      CHECK(std::abs(quad - via_sigma) < 1e-11 * (1.0 + mu.squaredNorm()));
    }
    // Graph points of Λ_Φ are fixed by ι, so b vanishes along Λ_Φ.
    for (int k = 0; k < 10; ++k) {
      const CVector x = random_cvector(n, rng);
      CVector p(2 * n);
      p << x, phi.graph_momentum(x);
      CHECK(std::abs(b(p, p)) < 1e-10 * (1.0 + p.squaredNorm()));
    }
    // The fiber is strictly negative.
    for (int k = 0; k < 10; ++k) {
      CVector p = CVector::Zero(2 * n);
      p.tail(n) = random_cvector(n, rng);
      CHECK(b(p, p).real() < 0.0);
    }
  }
}

TEST_CASE("push_weight: identity and diagonal rescaling") {
  const QuadraticWeight model = QuadraticWeight::model(1);
  const QuadraticWeight same = push_weight(ComplexCanonicalMap::identity(1), model);
  CHECK((same.levi() - model.levi()).norm() < 1e-14);
  CHECK(same.holomorphic_part().norm() < 1e-14);

  CMatrix D = CMatrix::Zero(2, 2);
  D(0, 0) = 2.0;
  D(1, 1) = 0.5;
  const QuadraticWeight pushed = push_weight(ComplexCanonicalMap(D), model);
  // Hand substitution ξ = η/2, y = x/2 in the graph relation gives |x|²/8.
  CHECK((pushed.levi() - 0.25 * CMatrix::Identity(1, 1)).norm() < 1e-13);
  CHECK(pushed.holomorphic_part().norm() < 1e-13);
}

TEST_CASE("push_weight: shear adds the pluriharmonic part back") {
  std::mt19937_64 rng(11);
  const QuadraticWeight phi = random_psh_weight(2, rng);
  const auto [herm, plh] = split_herm_plh(phi);
  const QuadraticWeight pushed = push_weight(shear_map(phi), herm);
  CHECK((pushed.holomorphic_part() - phi.holomorphic_part()).norm() < 1e-12);
  CHECK((pushed.levi() - phi.levi()).norm() < 1e-12);
}

TEST_CASE("push_weight: non-transversal image is a hard error") {
  // The horizontal shear sends the model graph to {(x − ix̄, −ix̄)}, whose
  // base projection (u,v) ↦ (u−v, v−u) is singular.
  CMatrix M = CMatrix::Identity(2, 2);
  M(0, 1) = 1.0;
  CHECK_THROWS_AS(push_weight(ComplexCanonicalMap(M), QuadraticWeight::model(1)),
                  FiberNotTransversal);
  // The 90-degree rotation J keeps the model graph transversal.
  CHECK_NOTHROW(push_weight(ComplexCanonicalMap(symplectic_j(1)), QuadraticWeight::model(1)));
}

TEST_CASE("involution_of: singular Levi form is a hard error") {
  CHECK_THROWS_AS(involution_of(QuadraticWeight::zero(1)), SingularLeviForm);
  CHECK_THROWS_AS(involution_of(QuadraticWeight(CMatrix::Identity(1, 1), CMatrix::Zero(1, 1))),
                  SingularLeviForm);
}

TEST_CASE("push_weight: functoriality") {
  std::mt19937_64 rng(13);
  int done = 0;
  while (done < 50) {
    const int n = 1 + done % 3;
    const QuadraticWeight phi = random_psh_weight(n, rng);
    const ComplexCanonicalMap m1 = random_symplectic(n, rng, 0.5);
    const ComplexCanonicalMap m2 = random_symplectic(n, rng, 0.5);
    try {
      const QuadraticWeight lhs = push_weight(m2, push_weight(m1, phi));
      const QuadraticWeight rhs = push_weight(m2.compose(m1), phi);
      CHECK((lhs.holomorphic_part() - rhs.holomorphic_part()).norm() < 1e-9);
      CHECK((lhs.levi() - rhs.levi()).norm() < 1e-9);
      ++done;
    } catch (const FiberNotTransversal&) {
      continue;  // resample; not part of the property
    }
  }
}

TEST_CASE("shear_map: matrix form and symplecticity") {
  CHECK((shear_map(QuadraticWeight::model(2)).matrix() - CMatrix::Identity(4, 4)).norm() ==
        0.0);
  const QuadraticWeight phi(CMatrix::Identity(1, 1), CMatrix::Identity(1, 1));
  CMatrix expect = CMatrix::Identity(2, 2);
  expect(1, 0) = 2.0 / kI;
  CHECK((shear_map(phi).matrix() - expect).norm() < 1e-15);
  CHECK(shear_map(phi).symplectic_defect() < 1e-15);
}

TEST_CASE("reduce_to_model") {
  SUBCASE("model input reduces with C = I") {
    const ModelReduction red = reduce_to_model(QuadraticWeight::model(2));
    CHECK((red.map.matrix() - CMatrix::Identity(4, 4)).norm() < 1e-14);
    CHECK((red.scale_factor - CMatrix::Identity(2, 2)).norm() < 1e-14);
  }
  SUBCASE("scalar Cholesky case |x|^2") {
    const QuadraticWeight phi(CMatrix::Zero(1, 1), 2.0 * CMatrix::Identity(1, 1));
    const ModelReduction red = reduce_to_model(phi);
    CHECK(std::abs(red.scale_factor(0, 0) - 1.0 / std::sqrt(2.0)) < 1e-14);
    const QuadraticWeight pushed = push_weight(red.map, phi);
    CHECK((pushed.levi() - CMatrix::Identity(1, 1)).norm() < 1e-12);
    CHECK(pushed.holomorphic_part().norm() < 1e-12);
  }
  SUBCASE("random weights round-trip through the model") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
      const QuadraticWeight phi = random_psh_weight(2, rng);
      const ModelReduction red = reduce_to_model(phi);
      const QuadraticWeight pushed = push_weight(red.map, phi);
      CHECK((pushed.levi() - CMatrix::Identity(2, 2)).norm() < 1e-10);
      CHECK(pushed.holomorphic_part().norm() < 1e-10);
    }
  }
}

TEST_CASE("generating_function: identity, diagonal, and random positive maps") {
  const HolomorphicQuadraticForm id_phi = generating_function(ComplexCanonicalMap::identity(1));
  CMatrix expect(2, 2);
  expect << 0.0, 1.0, 1.0, 0.0;  // φ = x·η
  CHECK((id_phi.hessian() - expect).norm() < 1e-14);

  CMatrix D = CMatrix::Zero(2, 2);
  D(0, 0) = 2.0;
  D(1, 1) = 0.5;
  const HolomorphicQuadraticForm d_phi = generating_function(ComplexCanonicalMap(D));
  expect << 0.0, 0.5, 0.5, 0.0;  // φ = x·η/2
  CHECK((d_phi.hessian() - expect).norm() < 1e-14);

  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 2;
    const ComplexCanonicalMap M = random_strictly_positive_model_map(n, rng);
    const HolomorphicQuadraticForm phi = generating_function(M);
    // Defining relation: κ(φ'_η, η) = (x, φ'_x) on random (x, η).
    for (int k = 0; k < 10; ++k) {
      const CVector x = random_cvector(n, rng), eta = random_cvector(n, rng);
      CVector xe(2 * n);
      xe << x, eta;
      const CVector grad = phi.gradient(xe);
      CVector in(2 * n), out(2 * n);
      in << grad.tail(n), eta;
      out << x, grad.head(n);
      CHECK((M.apply(in) - out).norm() < 1e-10 * (1.0 + out.norm()));
    }
  }
}

TEST_CASE("generating_function: singular projection is NoGeneratingFunction") {
  CHECK_THROWS_AS(generating_function(ComplexCanonicalMap(symplectic_j(1))),
                  NoGeneratingFunction);
}

TEST_CASE("cayley: lambda family and zero phase") {
  CHECK((cayley_map(HolomorphicQuadraticForm::zero(2)).matrix() - CMatrix::Identity(2, 2))
            .norm() < 1e-14);

  const Complex lambda(-1.0, 0.0);
  const Complex c = 2.0 * lambda / (2.0 - lambda);
  CMatrix F(2, 2);
  F << 0.0, c, c, 0.0;  // F(x,ξ) = c·x·ξ
  const CMatrix Fm = fundamental_matrix(HolomorphicQuadraticForm(F));
  CHECK(std::abs(Fm(0, 0) - c) < 1e-15);
  CHECK(std::abs(Fm(1, 1) + c) < 1e-15);
  const ComplexCanonicalMap kappa = cayley_map(HolomorphicQuadraticForm(F));
  CHECK(std::abs(kappa.matrix()(0, 0) - (1.0 - lambda)) < 1e-14);
  CHECK(std::abs(kappa.matrix()(1, 1) - 1.0 / (1.0 - lambda)) < 1e-14);
}

TEST_CASE("cayley: phase of diag(2, 1/2) and round trips") {
  CMatrix D = CMatrix::Zero(2, 2);
  D(0, 0) = 2.0;
  D(1, 1) = 0.5;
  const HolomorphicQuadraticForm F = cayley_phase(ComplexCanonicalMap(D));
  CHECK(std::abs(F.hessian()(0, 1) + 2.0 / 3.0) < 1e-14);  // −(2/3)x·ξ

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 3;
    const HolomorphicQuadraticForm F0(random_symmetric(2 * n, rng, 0.6));
    ComplexCanonicalMap M = [&] {
      try {
        return cayley_map(F0);
      } catch (const EigenvalueTwo&) {
        return ComplexCanonicalMap::identity(n);
      }
    }();
    if ((M.matrix() - CMatrix::Identity(2 * n, 2 * n)).norm() == 0.0) continue;
    const HolomorphicQuadraticForm back = cayley_phase(M);
    CHECK((back.hessian() - F0.hessian()).norm() < 1e-10);
    CHECK((back.hessian() - back.hessian().transpose()).norm() < 1e-12);
    const ComplexCanonicalMap again = cayley_map(back);
    CHECK((again.matrix() - M.matrix()).norm() < 1e-10);
  }
}

TEST_CASE("cayley: identity phase and eigenvalue guards") {
  CHECK(cayley_phase(ComplexCanonicalMap::identity(2)).hessian().norm() < 1e-14);
  CMatrix F(2, 2);
  F << 0.0, 2.0, 2.0, 0.0;  // fundamental matrix diag(2, −2)
  CHECK_THROWS_AS(cayley_map(HolomorphicQuadraticForm(F)), EigenvalueTwo);
  CHECK_THROWS_AS(cayley_phase(ComplexCanonicalMap(-CMatrix::Identity(2, 2))),
                  CayleySingular);
}

TEST_CASE("canonical map: symplectic validation and inverse") {
  std::mt19937_64 rng(29);
  const ComplexCanonicalMap M = random_symplectic(2, rng);
  CHECK(M.symplectic_defect() < 1e-10);
  CHECK((M.compose(M.inverse()).matrix() - CMatrix::Identity(4, 4)).norm() < 1e-10);
  CMatrix bad = CMatrix::Identity(4, 4);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(ComplexCanonicalMap{bad}, NotSymplectic);
}
