#pragma once

#include <random>

#include "stbc/linalg.hpp"

namespace testutil {

using stbc::CMatrix;
using stbc::cplx;

inline CMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline CMatrix random_matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = cplx(g(rng), g(rng));
  return m;
}

// Haar-ish unitary from the QR factor of a Gaussian matrix.
inline CMatrix random_unitary(std::mt19937_64& rng, int n) {
  Eigen::MatrixXcd z = random_matrix(rng, n);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  return q;
}

}  // namespace testutil
