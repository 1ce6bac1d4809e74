#pragma once

// Exhaustive search for single-symbol-decodable unitary-weight codes whose
// weights are drawn from the generalized Pauli group on a qubits. Feasible
// for a <= 2 only; the result is a statement about that group, not about all
// unitary matrices.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stbc/codes.hpp"

namespace stbc {

/// phase * (factor_1 (x) ... (x) factor_a); factor 0 = I, 1..3 = sigma1..3.
struct PauliGroupElement {
  int phase = 0;  // power of j, 0..3
  std::vector<int> factors;

  CMatrix materialize() const;
  std::string to_string() const;
};

/// The group modulo sign: phases {1, j} times every factor word, 2 * 4^a
/// elements, identity first.
std::vector<PauliGroupElement> pauli_universe(int a);

inline constexpr const char* kBoundRestriction =
    "search restricted to the generalized Pauli group (phases 1, j modulo sign); "
    "this is an in-group check, not a bound over all unitary matrices";

struct MaxFamilyResult {
  int a = 0;
  int k_max = 0;
  std::optional<LinearDispersionCode> witness;  // lexicographically least UW-SSD clique of size k_max
  std::vector<std::pair<int, int>> witness_elements;  // (I, Q) universe indices per symbol
  std::int64_t vertices = 0;
  std::int64_t edges = 0;
  std::int64_t nodes_visited = 0;
};

/// Largest K such that some K-symbol code over the universe satisfies the
/// pairwise cross conditions. Every code normalizes to one with A_1I = I, so
/// only those are enumerated. a must be 1 or 2.
MaxFamilyResult max_ssd_family(int a);

struct ClaimCheck {
  int K = 0;                       // code size ruled out
  int family_size = 0;             // anticommuting skew-Hermitian family size (K - 1)
  std::int64_t families = 0;       // families examined (modulo sign)
  std::int64_t completions = 0;    // families that extend to a full code
};

struct ClaimsReport {
  int a = 0;
  std::int64_t universe_size = 0;
  ClaimCheck k_2a_plus_2;
  ClaimCheck k_2a_plus_1;
  std::int64_t examined() const { return k_2a_plus_2.families + k_2a_plus_1.families; }
  bool confirmed() const { return k_2a_plus_2.completions == 0 && k_2a_plus_1.completions == 0; }
};

/// For K = 2a+2 and K = 2a+1: enumerates every pairwise anticommuting
/// skew-Hermitian family of size K-1 in the universe and tries every choice
/// of quadrature weights; reports how many families admit a completion.
ClaimsReport verify_claims(int a);

}  // namespace stbc
