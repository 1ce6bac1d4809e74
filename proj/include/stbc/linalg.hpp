#pragma once

// Dense complex matrix kernel shared by every module.
//
// Constructed weight matrices carry Gaussian-integer entries (0, +-1, +-j,
// possibly scaled by one real factor), so the predicates below are exact
// when called with tol = 0. Spectral and determinant routines are floating
// point and use their own tolerances.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace stbc {

using cplx = std::complex<double>;
using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr cplx kJ{0.0, 1.0};

/// Raised when an operation's precondition does not hold (bad dimensions,
/// out-of-range parameters, a code outside the class an operation accepts).
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace pauli {
// sigma1 and sigma2 follow the skew-Hermitian convention used by the
// constructions: sigma1 = [[0,1],[-1,0]], sigma2 = [[0,j],[j,0]].
CMatrix sigma1();
CMatrix sigma2();
CMatrix sigma3();
CMatrix identity2();
}  // namespace pauli

CMatrix identity(std::size_t n);
CMatrix kron(const CMatrix& a, const CMatrix& b);
/// m-fold Kronecker power; m = 0 is the 1x1 identity.
CMatrix kron_power(const CMatrix& a, int m);

/// Largest entry modulus; the residual measure used by every predicate.
double max_abs(const CMatrix& a);

bool is_hermitian(const CMatrix& a, double tol = 0.0);
bool is_skew_hermitian(const CMatrix& a, double tol = 0.0);
bool is_unitary(const CMatrix& a, double tol = 0.0);
bool anticommutes(const CMatrix& a, const CMatrix& b, double tol = 0.0);
bool commutes(const CMatrix& a, const CMatrix& b, double tol = 0.0);
bool approx_equal(const CMatrix& a, const CMatrix& b, double tol = 0.0);

struct Signature {
  int plus = 0;
  int minus = 0;
  bool operator==(const Signature&) const = default;
};

/// Counts of +1 / -1 eigenvalues of a Hermitian unitary matrix.
Signature hermitian_unitary_signature(const CMatrix& a, double tol = 1e-9);

/// Determinant via LU with partial pivoting.
cplx det(const CMatrix& a);

void require_square(const CMatrix& a, const char* what);
void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what);

std::string to_string(const CMatrix& a);

}  // namespace stbc
