#pragma once

// Linear dispersion codes S = sum_i (x_iI A_iI + x_iQ A_iQ), the families
// built from Clifford generators, and the orthogonality-condition classifier.

#include <string>
#include <vector>

#include "stbc/linalg.hpp"

namespace stbc {

class LinearDispersionCode {
 public:
  /// Throws precondition_error when the weight lists are empty or of unequal
  /// length, a matrix is not n x n, or some pair (A_iI, A_iQ) is real-collinear.
  LinearDispersionCode(std::vector<CMatrix> weights_I, std::vector<CMatrix> weights_Q,
                       std::string label = {});

  int n() const { return n_; }
  int K() const { return static_cast<int>(wI_.size()); }
  const std::vector<CMatrix>& weights_I() const { return wI_; }
  const std::vector<CMatrix>& weights_Q() const { return wQ_; }
  const CMatrix& I(int i) const { return wI_.at(static_cast<std::size_t>(i)); }
  const CMatrix& Q(int i) const { return wQ_.at(static_cast<std::size_t>(i)); }
  const std::string& label() const { return label_; }

  /// Weight matrix of real coordinate r: r = 2i is A_iI, r = 2i+1 is A_iQ.
  const CMatrix& weight(int r) const { return (r % 2 == 0) ? I(r / 2) : Q(r / 2); }

 private:
  int n_ = 0;
  std::vector<CMatrix> wI_;
  std::vector<CMatrix> wQ_;
  std::string label_;
};

/// True when a and b, seen as real vectors of length 2*rows*cols, span a
/// two-dimensional space.
bool real_independent(const CMatrix& a, const CMatrix& b);

enum class CodeClass { COD, UW_SSD, PSSD, NU_COD, NOT_SSD };
std::string to_string(CodeClass c);
CodeClass code_class_from_string(const std::string& s);

struct ConditionViolation {
  std::string condition;  // "eq4-I", "eq4-Q", "eq5-IQ", "eq5-II", "eq5-QQ", "eq6"
  int i = 0;
  int j = 0;              // equal to i for single-index conditions
  double residual = 0.0;  // max entry modulus of the defining expression
};

struct CodeClassification {
  bool satisfies_eq4 = false;  // every weight unitary
  bool satisfies_eq5 = false;  // cross conditions, i != j
  bool satisfies_eq6 = false;  // same-index I/Q condition
  CodeClass class_name = CodeClass::NOT_SSD;
  std::vector<ConditionViolation> violations;
};

CodeClass class_from_conditions(bool eq4, bool eq5, bool eq6);

/// Residuals <= tol count as satisfied. Library-built codes have integer
/// entries, so tol = 0 is meaningful for them.
CodeClassification classify(const LinearDispersionCode& code, double tol = 0.0);

/// Largest residual among the pairwise cross conditions (0 for an SSD code).
double ssd_residual(const LinearDispersionCode& code);

/// The five sufficient relations on a normalized unitary-weight code:
/// A_1I = I, A_iI skew-Hermitian and pairwise anticommuting for i >= 2,
/// A_1Q Hermitian and commuting with every A_iI, A_iQ = A_1Q A_iI.
/// Returns a list of failed relation descriptions (empty when all hold).
std::vector<std::string> cuw_condition_failures(const LinearDispersionCode& code, double tol = 0.0);
inline bool satisfies_cuw_conditions(const LinearDispersionCode& code, double tol = 0.0) {
  return cuw_condition_failures(code, tol).empty();
}

/// Relations for the Minkowski-type family with intermediate matrix a_hat:
/// every A_iI skew-Hermitian, pairwise anticommuting, a_hat Hermitian and
/// anticommuting with each A_iI, A_iQ = a_hat A_iI.
std::vector<std::string> mcuw_condition_failures(const LinearDispersionCode& code, const CMatrix& a_hat,
                                                 double tol = 0.0);

/// K = 2a, n = 2^a; A_1I = I, A_iI = R(gamma_i), A_1Q = j sigma1 (x) I, A_iQ = A_1Q A_iI.
LinearDispersionCode cuw_ssd(int a);

/// A_1I = j sigma3^{(x)a}, A_iI = R(gamma_{i+1}), A_iQ = a_hat A_iI.
LinearDispersionCode mcuw_ssd(int a);
/// I_2^{(x)(a-1)} (x) j sigma1, the intermediate matrix of mcuw_ssd.
CMatrix mcuw_intermediate(int a);

/// Left-multiplies every weight by A_1I^H. Requires unitary weights within tol.
LinearDispersionCode normalize(const LinearDispersionCode& code, double tol = 1e-9);

/// T_iI = alpha A_iI + beta A_iQ, T_iQ = alpha A_iI - beta A_iQ.
/// Requires non-zero alpha, beta and a code satisfying the CUW relations within tol.
LinearDispersionCode tnu_transform(const LinearDispersionCode& code, double alpha, double beta,
                                   double tol = 1e-12);

/// The UW-SSD code on the reducible family: A_iI = I_2 (x) R(gamma_{i-1}),
/// A_1Q = sigma (x) I, A_iQ = A_1Q A_iI. sigma must be 2x2 Hermitian unitary.
LinearDispersionCode reducible_uw_ssd(int a, const CMatrix& sigma);

/// Coordinate-interleaved design for 2 <= a <= 4. With p_variables = true the
/// weights are those of the intermediate p-variable code (before the pairwise
/// coordinate permutation); otherwise they act directly on the x symbols.
LinearDispersionCode ciod(int a, bool p_variables = false);

/// (x1, x2; -x2*, x1*).
LinearDispersionCode alamouti();

/// Doubles a COD: A'_u = diag(A_u, A_u), A'_{u+K} = diag(B_u, B_u) and
/// B'_u = B'_1 A'_u with B'_1 = [[0,-I],[-I,0]].
LinearDispersionCode ygt_extend(const LinearDispersionCode& od);

/// sum_i (Re x_i A_iI + Im x_i A_iQ).
CMatrix instantiate(const LinearDispersionCode& code, const std::vector<cplx>& symbols);

}  // namespace stbc
