#pragma once

#include <optional>
#include <utility>

#include "sympos/forms.hpp"

namespace sympos {

// Truncated matrix of Top(e^{2q}) in the orthonormal monomial basis
// e_k = z^k/√(π k!) of the model space H_{|x|²/2}(C), k = 0..N−1. n = 1 only.
enum class EntryMethod { Analytic, Quadrature };

struct TruncatedOperator {
  int N = 0;
  CMatrix entries;
  EntryMethod method = EntryMethod::Analytic;
};

// Entries T_{jk} = ⟨e^{2q} e_k, e_j⟩: normalized Gaussian moment recursion
// (analytic) or tensor Gauss–Legendre quadrature in polar coordinates.
// Requires 2Re q − |y|² negative definite and N ≤ 200.
TruncatedOperator truncated_matrix(const ComplexQuadraticSymbolExponent& q, int N,
                                   std::optional<EntryMethod> force = std::nullopt);

struct SpectralReport {
  double operator_norm = 0.0;
  RVector singular_values;
  Complex trace_partial{0.0, 0.0};
  double unitary_defect = 0.0;
  double decay_ratio = 0.0;  // geometric ratio fitted to log s_j
};

SpectralReport spectral_report(const TruncatedOperator& T);

// Assembles the truncated Bergman projection from the kernel amplitude by
// quadrature and returns ‖P² − P‖ + ‖P − I‖; near zero only for the correct
// normalization a2 = 1/π (model weight, n = 1).
double projection_idempotence(int N, double a2);

// Gauss–Legendre nodes and weights on [a, b].
std::pair<RVector, RVector> gauss_legendre(int n, double a, double b);

}  // namespace sympos
