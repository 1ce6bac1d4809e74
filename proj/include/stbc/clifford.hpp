#pragma once

// Matrix representations of real Clifford algebra generators built from
// Kronecker products of the 2x2 Pauli-type matrices.

#include <vector>

#include "stbc/linalg.hpp"

namespace stbc {

inline constexpr int kMaxCliffordOrder = 5;  // n = 2^a <= 32

/// Hurwitz-Radon generators plus a Hermitian matrix commuting with all of them.
struct GeneratorFamily {
  int a = 0;
  std::vector<CMatrix> generators;  // 2a-1 skew-Hermitian, pairwise anticommuting
  CMatrix companion_hermitian;      // Hermitian, unitary, commutes with every generator
};

/// R(gamma_k) of the irreducible 2^a-dimensional representation of CA_{2a+1},
/// k in [1, 2a+1]. R(gamma_1) = +j sigma3^{(x)a}.
CMatrix clifford_generator(int a, int k);

/// All 2a+1 generators ordered [R(gamma_2), ..., R(gamma_{2a+1}), R(gamma_1)].
std::vector<CMatrix> ca_generators(int a);

/// The first 2a-1 generators with companion j sigma1 (x) I_2^{(x)(a-1)}.
GeneratorFamily hurwitz_radon_family(int a);

/// R(gamma_k), k in [0, 2a-1], of the 2^{a-1}-dimensional irreducible
/// representation of CA_{2a-1}; k = 0 is the identity.
CMatrix odd_clifford_generator(int a, int k);

/// The 2a matrices I_2 (x) R(gamma_{i-1}), i = 1..2a (the first is I_n).
std::vector<CMatrix> reducible_generators(int a);

}  // namespace stbc
