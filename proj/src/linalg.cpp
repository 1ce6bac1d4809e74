#include "stbc/linalg.hpp"

#include <cmath>
#include <sstream>

namespace stbc {

namespace pauli {
CMatrix sigma1() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, -1.0, 0.0;
  return m;
}
CMatrix sigma2() {
  CMatrix m(2, 2);
  m << 0.0, kJ, kJ, 0.0;
  return m;
}
CMatrix sigma3() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
CMatrix identity2() { return identity(2); }
}  // namespace pauli

CMatrix identity(std::size_t n) {
  return CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix kron_power(const CMatrix& a, int m) {
  if (m < 0) throw precondition_error("kron_power: negative exponent");
  CMatrix out = identity(1);
  for (int i = 0; i < m; ++i) out = kron(out, a);
  return out;
}

double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i]));
  return m;
}

void require_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw precondition_error(std::string(what) + ": matrix must be square and non-empty");
  }
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw precondition_error(std::string(what) + ": dimension mismatch");
  }
}

bool is_hermitian(const CMatrix& a, double tol) {
  require_square(a, "is_hermitian");
  return max_abs(a - a.adjoint()) <= tol;
}

bool is_skew_hermitian(const CMatrix& a, double tol) {
  require_square(a, "is_skew_hermitian");
  return max_abs(a + a.adjoint()) <= tol;
}

bool is_unitary(const CMatrix& a, double tol) {
  require_square(a, "is_unitary");
  return max_abs(a.adjoint() * a - identity(static_cast<std::size_t>(a.rows()))) <= tol;
}

bool anticommutes(const CMatrix& a, const CMatrix& b, double tol) {
  require_square(a, "anticommutes");
  require_same_shape(a, b, "anticommutes");
  return max_abs(a * b + b * a) <= tol;
}

bool commutes(const CMatrix& a, const CMatrix& b, double tol) {
  require_square(a, "commutes");
  require_same_shape(a, b, "commutes");
  return max_abs(a * b - b * a) <= tol;
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double tol) {
  require_same_shape(a, b, "approx_equal");
  return max_abs(a - b) <= tol;
}

Signature hermitian_unitary_signature(const CMatrix& a, double tol) {
  require_square(a, "hermitian_unitary_signature");
  if (!is_hermitian(a, tol) || !is_unitary(a, tol)) {
    throw precondition_error("hermitian_unitary_signature: input is not Hermitian and unitary");
  }
  const Eigen::MatrixXcd dense = a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
  if (solver.info() != Eigen::Success) {
    throw precondition_error("hermitian_unitary_signature: eigen-solver failed");
  }
  Signature sig;
  for (double ev : solver.eigenvalues()) {
    if (std::abs(ev - 1.0) <= tol) {
      ++sig.plus;
    } else if (std::abs(ev + 1.0) <= tol) {
      ++sig.minus;
    } else {
      throw precondition_error("hermitian_unitary_signature: eigenvalue not +-1");
    }
  }
  return sig;
}

cplx det(const CMatrix& a) {
  require_square(a, "det");
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(Eigen::MatrixXcd(a)).determinant();
}

std::string to_string(const CMatrix& a) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    os << "[";
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) os << ", ";
      os << a(i, j).real() << (a(i, j).imag() < 0 ? "-" : "+") << std::abs(a(i, j).imag()) << "j";
    }
    os << "]\n";
  }
  return os.str();
}

}  // namespace stbc
