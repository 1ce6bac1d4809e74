#include "stbc/codes.hpp"

#include <cmath>
#include <sstream>

#include "stbc/clifford.hpp"

namespace stbc {
namespace {

std::string idx(const char* what, int i) { return std::string(what) + "[" + std::to_string(i + 1) + "]"; }

CMatrix hsum(const CMatrix& a, const CMatrix& b) { return a.adjoint() * b + b.adjoint() * a; }

void require_cuw_order(int a, const char* what) {
  if (a < 1 || a > kMaxCliffordOrder) {
    throw precondition_error(std::string(what) + ": a must be in [1, " + std::to_string(kMaxCliffordOrder) +
                             "], got " + std::to_string(a));
  }
}

}  // namespace

bool real_independent(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "real_independent");
  double aa = 0.0, bb = 0.0, ab = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const cplx x = a.data()[k], y = b.data()[k];
    aa += std::norm(x);
    bb += std::norm(y);
    ab += x.real() * y.real() + x.imag() * y.imag();
  }
  // Gram determinant of the two real vectors, relative to its scale.
  const double gram = aa * bb - ab * ab;
  return aa > 0.0 && bb > 0.0 && gram > 1e-12 * aa * bb;
}

LinearDispersionCode::LinearDispersionCode(std::vector<CMatrix> weights_I, std::vector<CMatrix> weights_Q,
                                           std::string label)
    : wI_(std::move(weights_I)), wQ_(std::move(weights_Q)), label_(std::move(label)) {
  if (wI_.empty()) throw precondition_error("code: at least one symbol required");
  if (wI_.size() != wQ_.size()) throw precondition_error("code: weights_I and weights_Q differ in length");
  n_ = static_cast<int>(wI_.front().rows());
  if (n_ <= 0) throw precondition_error("code: empty weight matrix");
  for (std::size_t i = 0; i < wI_.size(); ++i) {
    for (const CMatrix* m : {&wI_[i], &wQ_[i]}) {
      if (m->rows() != n_ || m->cols() != n_) throw precondition_error("code: weight matrices must all be n x n");
      for (Eigen::Index k = 0; k < m->size(); ++k) {
        if (!std::isfinite(m->data()[k].real()) || !std::isfinite(m->data()[k].imag())) {
          throw precondition_error("code: non-finite weight entry");
        }
      }
    }
    if (!real_independent(wI_[i], wQ_[i])) {
      throw precondition_error("code: A_I and A_Q of symbol " + std::to_string(i + 1) +
                               " are real multiples of each other");
    }
  }
}

std::string to_string(CodeClass c) {
  switch (c) {
    case CodeClass::COD: return "COD";
    case CodeClass::UW_SSD: return "UW-SSD";
    case CodeClass::PSSD: return "PSSD";
    case CodeClass::NU_COD: return "NU-COD";
    case CodeClass::NOT_SSD: return "NOT-SSD";
  }
  return "NOT-SSD";
}

CodeClass code_class_from_string(const std::string& s) {
  for (CodeClass c : {CodeClass::COD, CodeClass::UW_SSD, CodeClass::PSSD, CodeClass::NU_COD, CodeClass::NOT_SSD}) {
    if (to_string(c) == s) return c;
  }
  throw precondition_error("unknown code class '" + s + "'");
}

CodeClass class_from_conditions(bool eq4, bool eq5, bool eq6) {
  if (!eq5) return CodeClass::NOT_SSD;
  if (eq4) return eq6 ? CodeClass::COD : CodeClass::UW_SSD;
  return eq6 ? CodeClass::NU_COD : CodeClass::PSSD;
}

CodeClassification classify(const LinearDispersionCode& code, double tol) {
  CodeClassification out;
  const int K = code.K();
  const CMatrix eye = identity(static_cast<std::size_t>(code.n()));
  auto record = [&](const char* cond, int i, int j, double r) {
    if (r > tol) out.violations.push_back({cond, i, j, r});
    return r <= tol;
  };

  bool eq4 = true, eq5 = true, eq6 = true;
  for (int i = 0; i < K; ++i) {
    eq4 &= record("eq4-I", i, i, max_abs(code.I(i).adjoint() * code.I(i) - eye));
    eq4 &= record("eq4-Q", i, i, max_abs(code.Q(i).adjoint() * code.Q(i) - eye));
  }
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      if (i == j) continue;
      eq5 &= record("eq5-IQ", i, j, max_abs(hsum(code.I(i), code.Q(j))));
      if (i < j) {
        eq5 &= record("eq5-II", i, j, max_abs(hsum(code.I(i), code.I(j))));
        eq5 &= record("eq5-QQ", i, j, max_abs(hsum(code.Q(i), code.Q(j))));
      }
    }
  }
  for (int i = 0; i < K; ++i) eq6 &= record("eq6", i, i, max_abs(hsum(code.I(i), code.Q(i))));

  out.satisfies_eq4 = eq4;
  out.satisfies_eq5 = eq5;
  out.satisfies_eq6 = eq6;
  out.class_name = class_from_conditions(eq4, eq5, eq6);
  return out;
}

double ssd_residual(const LinearDispersionCode& code) {
  double r = 0.0;
  for (int i = 0; i < code.K(); ++i) {
    for (int j = 0; j < code.K(); ++j) {
      if (i == j) continue;
      r = std::max(r, max_abs(hsum(code.I(i), code.Q(j))));
      r = std::max(r, max_abs(hsum(code.I(i), code.I(j))));
      r = std::max(r, max_abs(hsum(code.Q(i), code.Q(j))));
    }
  }
  return r;
}

std::vector<std::string> cuw_condition_failures(const LinearDispersionCode& code, double tol) {
  std::vector<std::string> fails;
  const int K = code.K();
  const CMatrix& a1q = code.Q(0);
  if (!approx_equal(code.I(0), identity(static_cast<std::size_t>(code.n())), tol)) fails.push_back("A_1I != I");
  for (int i = 1; i < K; ++i) {
    if (!is_skew_hermitian(code.I(i), tol)) fails.push_back(idx("A_I", i) + " not skew-Hermitian");
    for (int j = i + 1; j < K; ++j) {
      if (!anticommutes(code.I(i), code.I(j), tol)) {
        fails.push_back(idx("A_I", i) + " and " + idx("A_I", j) + " do not anticommute");
      }
    }
  }
  if (!is_hermitian(a1q, tol)) fails.push_back("A_1Q not Hermitian");
  for (int i = 1; i < K; ++i) {
    if (!approx_equal(code.Q(i), a1q * code.I(i), tol)) fails.push_back(idx("A_Q", i) + " != A_1Q A_iI");
  }
  for (int j = 0; j < K; ++j) {
    if (!commutes(a1q, code.I(j), tol)) fails.push_back("A_1Q does not commute with " + idx("A_I", j));
  }
  return fails;
}

std::vector<std::string> mcuw_condition_failures(const LinearDispersionCode& code, const CMatrix& a_hat,
                                                 double tol) {
  std::vector<std::string> fails;
  const int K = code.K();
  require_same_shape(a_hat, code.I(0), "mcuw_condition_failures");
  for (int i = 0; i < K; ++i) {
    if (!is_skew_hermitian(code.I(i), tol)) fails.push_back(idx("A_I", i) + " not skew-Hermitian");
    for (int j = i + 1; j < K; ++j) {
      if (!anticommutes(code.I(i), code.I(j), tol)) {
        fails.push_back(idx("A_I", i) + " and " + idx("A_I", j) + " do not anticommute");
      }
    }
    if (!anticommutes(a_hat, code.I(i), tol)) fails.push_back("a_hat does not anticommute with " + idx("A_I", i));
    if (!approx_equal(code.Q(i), a_hat * code.I(i), tol)) fails.push_back(idx("A_Q", i) + " != a_hat A_iI");
  }
  if (!is_hermitian(a_hat, tol)) fails.push_back("a_hat not Hermitian");
  return fails;
}

LinearDispersionCode cuw_ssd(int a) {
  require_cuw_order(a, "cuw_ssd");
  const GeneratorFamily fam = hurwitz_radon_family(a);
  const CMatrix& a1q = fam.companion_hermitian;
  std::vector<CMatrix> wI{identity(std::size_t{1} << a)};
  for (const CMatrix& g : fam.generators) wI.push_back(g);  // R(gamma_2) .. R(gamma_2a)
  std::vector<CMatrix> wQ;
  for (const CMatrix& m : wI) wQ.push_back(a1q * m);
  return LinearDispersionCode(std::move(wI), std::move(wQ), "cuw-ssd(a=" + std::to_string(a) + ")");
}

CMatrix mcuw_intermediate(int a) {
  require_cuw_order(a, "mcuw_intermediate");
  return kron(kron_power(pauli::identity2(), a - 1), kJ * pauli::sigma1());
}

LinearDispersionCode mcuw_ssd(int a) {
  require_cuw_order(a, "mcuw_ssd");
  const CMatrix a_hat = mcuw_intermediate(a);
  std::vector<CMatrix> wI{clifford_generator(a, 1)};
  for (int i = 2; i <= 2 * a; ++i) wI.push_back(clifford_generator(a, i + 1));
  std::vector<CMatrix> wQ;
  for (const CMatrix& m : wI) wQ.push_back(a_hat * m);
  return LinearDispersionCode(std::move(wI), std::move(wQ), "mcuw-ssd(a=" + std::to_string(a) + ")");
}

LinearDispersionCode normalize(const LinearDispersionCode& code, double tol) {
  for (int i = 0; i < code.K(); ++i) {
    if (!is_unitary(code.I(i), tol)) throw precondition_error("normalize: " + idx("A_I", i) + " is not unitary");
    if (!is_unitary(code.Q(i), tol)) throw precondition_error("normalize: " + idx("A_Q", i) + " is not unitary");
  }
  const CMatrix left = code.I(0).adjoint();
  std::vector<CMatrix> wI, wQ;
  for (int i = 0; i < code.K(); ++i) {
    wI.push_back(left * code.I(i));
    wQ.push_back(left * code.Q(i));
  }
  return LinearDispersionCode(std::move(wI), std::move(wQ), "normalized " + code.label());
}

LinearDispersionCode tnu_transform(const LinearDispersionCode& code, double alpha, double beta, double tol) {
  if (alpha == 0.0 || beta == 0.0) throw precondition_error("tnu_transform: alpha and beta must be non-zero");
  const auto fails = cuw_condition_failures(code, tol);
  if (!fails.empty()) throw precondition_error("tnu_transform: input violates " + fails.front());
  std::vector<CMatrix> wI, wQ;
  for (int i = 0; i < code.K(); ++i) {
    wI.push_back(alpha * code.I(i) + beta * code.Q(i));
    wQ.push_back(alpha * code.I(i) - beta * code.Q(i));
  }
  std::ostringstream label;
  label << "tnu(" << code.label() << ", alpha=" << alpha << ", beta=" << beta << ")";
  return LinearDispersionCode(std::move(wI), std::move(wQ), label.str());
}

LinearDispersionCode reducible_uw_ssd(int a, const CMatrix& sigma) {
  if (sigma.rows() != 2 || sigma.cols() != 2 || !is_hermitian(sigma, 1e-12) || !is_unitary(sigma, 1e-12)) {
    throw precondition_error("reducible_uw_ssd: sigma must be a 2x2 Hermitian unitary matrix");
  }
  std::vector<CMatrix> wI = reducible_generators(a);
  const CMatrix a1q = kron(sigma, identity(std::size_t{1} << (a - 1)));
  std::vector<CMatrix> wQ;
  for (const CMatrix& m : wI) wQ.push_back(a1q * m);
  return LinearDispersionCode(std::move(wI), std::move(wQ), "reducible-uw-ssd(a=" + std::to_string(a) + ")");
}

LinearDispersionCode ciod(int a, bool p_variables) {
  if (a < 2 || a > 4) throw precondition_error("ciod: a must be in [2, 4], got " + std::to_string(a));
  const LinearDispersionCode t = tnu_transform(reducible_uw_ssd(a, pauli::sigma3()), 0.5, 0.5);
  const std::string name = "ciod(a=" + std::to_string(a) + ")";
  if (p_variables) return LinearDispersionCode(t.weights_I(), t.weights_Q(), name + " p-variables");
  // Per pair (i, i+1): p_iI = x_iI, p_iQ = x_{i+1}I, p_{i+1}I = x_{i+1}Q,
  // p_{i+1}Q = x_iQ. Collecting the coefficient of each x coordinate:
  std::vector<CMatrix> wI(t.weights_I().size()), wQ(t.weights_Q().size());
  for (int i = 0; i + 1 < t.K(); i += 2) {
    wI[i] = t.I(i);
    wQ[i] = t.Q(i + 1);
    wI[i + 1] = t.Q(i);
    wQ[i + 1] = t.I(i + 1);
  }
  return LinearDispersionCode(std::move(wI), std::move(wQ), name);
}

LinearDispersionCode alamouti() {
  return LinearDispersionCode({pauli::identity2(), pauli::sigma1()}, {kJ * pauli::sigma3(), pauli::sigma2()},
                              "alamouti");
}

LinearDispersionCode ygt_extend(const LinearDispersionCode& od) {
  const CodeClassification c = classify(od, 1e-9);
  if (c.class_name != CodeClass::COD) {
    throw precondition_error("ygt_extend: input is " + to_string(c.class_name) + ", not a COD");
  }
  const CMatrix eye2 = pauli::identity2();
  const CMatrix b1 = kron(kJ * pauli::sigma2(), identity(static_cast<std::size_t>(od.n())));
  std::vector<CMatrix> wI, wQ;
  for (int u = 0; u < od.K(); ++u) wI.push_back(kron(eye2, od.I(u)));
  for (int u = 0; u < od.K(); ++u) wI.push_back(kron(eye2, od.Q(u)));
  for (const CMatrix& m : wI) wQ.push_back(b1 * m);
  return LinearDispersionCode(std::move(wI), std::move(wQ), "ygt(" + od.label() + ")");
}

CMatrix instantiate(const LinearDispersionCode& code, const std::vector<cplx>& symbols) {
  if (static_cast<int>(symbols.size()) != code.K()) {
    throw precondition_error("instantiate: expected " + std::to_string(code.K()) + " symbols, got " +
                             std::to_string(symbols.size()));
  }
  CMatrix s = CMatrix::Zero(code.n(), code.n());
  for (int i = 0; i < code.K(); ++i) {
    s += symbols[static_cast<std::size_t>(i)].real() * code.I(i) + symbols[static_cast<std::size_t>(i)].imag() * code.Q(i);
  }
  return s;
}

}  // namespace stbc
