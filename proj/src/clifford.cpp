#include "stbc/clifford.hpp"

#include <string>

namespace stbc {
namespace {

void require_order(int a, int lo, const char* what) {
  if (a < lo || a > kMaxCliffordOrder) {
    throw precondition_error(std::string(what) + ": a must be in [" + std::to_string(lo) + ", " +
                             std::to_string(kMaxCliffordOrder) + "], got " + std::to_string(a));
  }
}

// I_2^{(x)lead} (x) core (x) sigma3^{(x)tail}
CMatrix padded(int lead, const CMatrix& core, int tail) {
  return kron(kron(kron_power(pauli::identity2(), lead), core), kron_power(pauli::sigma3(), tail));
}

}  // namespace

CMatrix clifford_generator(int a, int k) {
  require_order(a, 1, "clifford_generator");
  if (k < 1 || k > 2 * a + 1) throw precondition_error("clifford_generator: k out of range");
  if (k == 1) return kJ * kron_power(pauli::sigma3(), a);
  const int half = k / 2;  // k = 2*half or 2*half + 1
  const CMatrix& core = (k % 2 == 0) ? pauli::sigma1() : pauli::sigma2();
  return padded(a - half, core, half - 1);
}

std::vector<CMatrix> ca_generators(int a) {
  require_order(a, 1, "ca_generators");
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(2 * a + 1));
  for (int k = 2; k <= 2 * a + 1; ++k) out.push_back(clifford_generator(a, k));
  out.push_back(clifford_generator(a, 1));
  return out;
}

GeneratorFamily hurwitz_radon_family(int a) {
  require_order(a, 1, "hurwitz_radon_family");
  GeneratorFamily family;
  family.a = a;
  for (int k = 2; k <= 2 * a; ++k) family.generators.push_back(clifford_generator(a, k));
  family.companion_hermitian = kron(kJ * pauli::sigma1(), kron_power(pauli::identity2(), a - 1));
  return family;
}

CMatrix odd_clifford_generator(int a, int k) {
  require_order(a, 2, "odd_clifford_generator");
  if (k < 0 || k > 2 * a - 1) throw precondition_error("odd_clifford_generator: k out of range");
  if (k == 0) return kron_power(pauli::identity2(), a - 1);
  if (k == 1) return kJ * kron_power(pauli::sigma3(), a - 1);
  const int half = k / 2;
  const CMatrix& core = (k % 2 == 0) ? pauli::sigma1() : pauli::sigma2();
  return padded(a - half - 1, core, half - 1);
}

std::vector<CMatrix> reducible_generators(int a) {
  require_order(a, 2, "reducible_generators");
  std::vector<CMatrix> out;
  for (int i = 1; i <= 2 * a; ++i) out.push_back(kron(pauli::identity2(), odd_clifford_generator(a, i - 1)));
  return out;
}

}  // namespace stbc
