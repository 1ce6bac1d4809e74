#include "stbc/gain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

namespace stbc {

std::string to_string(Normalization n) {
  switch (n) {
    case Normalization::SumEnergy1: return "sum-energy-1";
    case Normalization::AvgEnergy1: return "avg-energy-1";
    case Normalization::Raw: return "raw";
  }
  return "raw";
}

Normalization normalization_from_string(const std::string& s) {
  for (Normalization n : {Normalization::SumEnergy1, Normalization::AvgEnergy1, Normalization::Raw}) {
    if (to_string(n) == s) return n;
  }
  throw precondition_error("unknown normalization '" + s + "'");
}

SignalSet::SignalSet(std::vector<cplx> points, Normalization normalization, std::string label)
    : points_(std::move(points)), norm_(normalization), label_(std::move(label)) {
  if (points_.size() < 2) throw precondition_error("signal set: at least two points required");
  for (const cplx& p : points_) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) throw precondition_error("signal set: non-finite point");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if (std::abs(points_[i] - points_[j]) <= 1e-12) throw precondition_error("signal set: duplicate points");
    }
  }
  double target = 0.0;
  if (norm_ == Normalization::SumEnergy1) target = 1.0;
  if (norm_ == Normalization::AvgEnergy1) target = static_cast<double>(points_.size());
  if (target > 0.0) {
    const double e = total_energy();
    if (e <= 0.0) throw precondition_error("signal set: zero energy cannot be normalized");
    const double scale = std::sqrt(target / e);
    for (cplx& p : points_) p *= scale;
  }
}

double SignalSet::total_energy() const {
  double e = 0.0;
  for (const cplx& p : points_) e += std::norm(p);
  return e;
}

SignalSet SignalSet::transformed(const Real2x2& m, Normalization n, std::string label) const {
  std::vector<cplx> out;
  out.reserve(points_.size());
  for (const cplx& p : points_) {
    out.emplace_back(m[0] * p.real() + m[1] * p.imag(), m[2] * p.real() + m[3] * p.imag());
  }
  return SignalSet(std::move(out), n, std::move(label));
}

DiscriminantReport discriminant_of(const LinearDispersionCode& code) {
  const LinearDispersionCode nc = normalize(code);
  const auto fails = cuw_condition_failures(nc, 1e-9);
  if (!fails.empty()) throw precondition_error("discriminant_of: normalized code violates " + fails.front());
  DiscriminantReport r;
  r.discriminant = nc.Q(0);
  const Signature sig = hermitian_unitary_signature(r.discriminant);
  r.m_plus = sig.plus;
  r.m_minus = sig.minus;
  r.traceless = sig.plus == sig.minus;
  return r;
}

std::vector<cplx> difference_set(const SignalSet& s) {
  std::vector<cplx> d;
  const auto& p = s.points();
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i != j) d.push_back(p[i] - p[j]);
    }
  }
  return d;
}

double diversity_product_closed(const SignalSet& s, int n, int m_plus) {
  if (n < 1 || m_plus < 0 || m_plus > n) throw precondition_error("diversity_product_closed: bad signature");
  const double ep = static_cast<double>(m_plus) / n;
  const double em = static_cast<double>(n - m_plus) / n;
  double best = std::numeric_limits<double>::infinity();
  for (const cplx& d : difference_set(s)) {
    double plus = std::abs(d.real() + d.imag());
    double minus = std::abs(d.real() - d.imag());
    if (plus <= kDiagonalTol) plus = 0.0;
    if (minus <= kDiagonalTol) minus = 0.0;
    // pow(0, 0) == 1: a factor with zero multiplicity does not contribute.
    best = std::min(best, std::pow(plus, ep) * std::pow(minus, em));
  }
  return best / (2.0 * std::sqrt(static_cast<double>(n)));
}

namespace {

// |det G|^{1/(2n)} for G = D^H D, via the eigenvalues of G. Eigenvalues below
// 1e-12 of the largest are treated as zero so singular differences give 0.
double root_det(const CMatrix& d) {
  const Eigen::MatrixXcd g = Eigen::MatrixXcd(d.adjoint() * d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double top = ev.maxCoeff();
  if (top <= 0.0) return 0.0;
  double log_sum = 0.0;
  for (double v : ev) {
    if (v <= 1e-12 * top) return 0.0;
    log_sum += std::log(v);
  }
  return std::exp(log_sum / (2.0 * static_cast<double>(d.rows())));
}

double diversity_product_brute(const LinearDispersionCode& code, const SignalSet& s) {
  const std::size_t q = s.size();
  std::size_t count = 1;
  for (int i = 0; i < code.K(); ++i) {
    if (count > kMaxBruteForceCodewords / q) {
      throw precondition_error("diversity_product: too many codewords for brute force");
    }
    count *= q;
  }
  std::vector<CMatrix> words;
  words.reserve(count);
  std::vector<cplx> sym(static_cast<std::size_t>(code.K()));
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t rest = c;
    for (auto& x : sym) {
      x = s.points()[rest % q];
      rest /= q;
    }
    words.push_back(instantiate(code, sym));
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) best = std::min(best, root_det(words[a] - words[b]));
  }
  return best / (2.0 * std::sqrt(static_cast<double>(code.n())));
}

}  // namespace

double diversity_product(const LinearDispersionCode& code, const SignalSet& s, DpMethod method) {
  if (method == DpMethod::BruteForce) return diversity_product_brute(code, s);
  const DiscriminantReport r = discriminant_of(code);
  return diversity_product_closed(s, code.n(), r.m_plus);
}

FullDiversityReport full_diversity_check(const SignalSet& s) {
  FullDiversityReport r;
  const auto& p = s.points();
  for (std::size_t i = 0; i < p.size() && r.full; ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i == j) continue;
      const cplx d = p[i] - p[j];
      if (std::abs(d.real() + d.imag()) <= kDiagonalTol || std::abs(d.real() - d.imag()) <= kDiagonalTol) {
        r.full = false;
        r.witness = std::make_pair(p[i], p[j]);
        break;
      }
    }
  }
  return r;
}

double cpd(const SignalSet& s) {
  double best = std::numeric_limits<double>::infinity();
  for (const cplx& d : difference_set(s)) best = std::min(best, std::abs(d.real() * d.imag()));
  return best;
}

SignalSet rect_qam(int n1p, int n2p, double d) {
  if (n1p < 1 || n2p < 1 || !(d > 0.0)) throw precondition_error("rect_qam: need N1', N2' >= 1 and d > 0");
  std::vector<cplx> pts;
  for (int b = -(2 * n2p - 1); b <= 2 * n2p - 1; b += 2) {
    for (int a = -(2 * n1p - 1); a <= 2 * n1p - 1; a += 2) pts.emplace_back(a * d / 2.0, b * d / 2.0);
  }
  return SignalSet(std::move(pts), Normalization::Raw,
                   "rect-qam(" + std::to_string(2 * n1p) + "x" + std::to_string(2 * n2p) + ")");
}

SignalSet square_derived_qam(int q) {
  if (q < 2) throw precondition_error("square_derived_qam: q must be >= 2");
  int side = 1;
  while (side * side < q) ++side;
  struct Cand {
    cplx p;
    double energy;
    double angle;
  };
  std::vector<Cand> c;
  for (int b = 0; b < side; ++b) {
    for (int a = 0; a < side; ++a) {
      const cplx p(2.0 * a - (side - 1), 2.0 * b - (side - 1));
      double ang = std::atan2(p.imag(), p.real());
      if (ang < 0.0) ang += 2.0 * std::numbers::pi;
      c.push_back({p, std::norm(p), ang});
    }
  }
  // Deletion order: highest energy first, then larger angle.
  std::stable_sort(c.begin(), c.end(), [](const Cand& x, const Cand& y) {
    if (x.energy != y.energy) return x.energy > y.energy;
    return x.angle > y.angle;
  });
  c.erase(c.begin(), c.begin() + (side * side - q));
  cplx centroid = 0.0;
  for (const Cand& x : c) centroid += x.p;
  centroid /= static_cast<double>(c.size());
  std::vector<cplx> pts;
  for (const Cand& x : c) pts.push_back(x.p - centroid);
  std::sort(pts.begin(), pts.end(), [](cplx x, cplx y) {
    return x.imag() != y.imag() ? x.imag() < y.imag() : x.real() < y.real();
  });
  return SignalSet(std::move(pts), Normalization::Raw, "square-derived-qam(" + std::to_string(q) + ")");
}

Real2x2 wwx_rotation(int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw precondition_error("wwx_rotation: N1, N2 must be >= 1");
  const double a = 2.0 * n1 * n1, b = 2.0 * n2 * n2;
  const double e1 = (a - 1.0) / (2.0 * (a + b - 1.0));
  const double e2 = (b - 1.0) / (2.0 * (a + b - 1.0));
  const double alpha = std::atan(1.0 / std::sqrt(e1 * e2));
  const double t1 = std::atan((std::sqrt(5.0) - 1.0) / 2.0 * std::sqrt(e1 / e2));
  const double t2 = alpha - t1;
  const double s1 = std::sqrt(2.0 * e1), s2 = std::sqrt(2.0 * e2);
  return {std::cos(t1) / s1, std::sin(t1) / s2, -std::sin(t2) / s1, std::cos(t2) / s2};
}

Real2x2 energy_balanced_rotation(double energy_re, double energy_im) {
  if (!(energy_re > 0.0) || !(energy_im > 0.0)) throw precondition_error("energy_balanced_rotation: energies must be > 0");
  const double th = std::atan((std::sqrt(5.0) - 1.0) / 2.0);
  const double c = std::cos(th), s = std::sin(th);
  const double r1 = 1.0 / std::sqrt(c * c * energy_re + s * s * energy_im);
  const double r2 = 1.0 / std::sqrt(s * s * energy_re + c * c * energy_im);
  return {r1 * c, r1 * s, -r2 * s, r2 * c};
}

Real2x2 t_inverse() {
  const double h = 1.0 / std::sqrt(2.0);
  return {h, h, h, -h};
}

int even_square_side(int size) {
  if (size < 1) throw precondition_error("even_square_side: size must be >= 1");
  int n = 2;
  while (n * n < size) n += 2;
  return n;
}

std::string to_string(TableKind k) { return k == TableKind::SquareDerived ? "square-derived" : "rectangular"; }

TableKind table_kind_from_string(const std::string& s) {
  if (s == "square-derived") return TableKind::SquareDerived;
  if (s == "rectangular" || s == "rect") return TableKind::Rectangular;
  throw precondition_error("unknown constellation kind '" + s + "'");
}

namespace {

void require_table_q(int q) {
  if (q != 4 && q != 8 && q != 32) throw precondition_error("table1: size must be 4, 8 or 32, got " + std::to_string(q));
}

double grid_axis_energy(int levels) { return (static_cast<double>(levels) * levels - 1.0) / 3.0; }

}  // namespace

std::pair<int, int> rect_dims(int q) {
  require_table_q(q);
  if (q == 4) return {1, 1};
  if (q == 8) return {2, 1};
  return {4, 2};
}

SignalSet table_base(TableKind kind, int q) {
  require_table_q(q);
  if (kind == TableKind::SquareDerived) return square_derived_qam(q);
  const auto [n1, n2] = rect_dims(q);
  return rect_qam(n1, n2);
}

SignalSet table_x_set(TableKind kind, int q, Normalization n) {
  const SignalSet base = table_base(kind, q);
  double e_re = 1.0, e_im = 1.0;
  if (kind == TableKind::Rectangular) {
    const auto [n1, n2] = rect_dims(q);
    e_re = grid_axis_energy(2 * n1);
    e_im = grid_axis_energy(2 * n2);
  }
  const SignalSet y = base.transformed(energy_balanced_rotation(e_re, e_im), n, base.label() + " rotated");
  return y.transformed(t_inverse(), n, base.label() + " x-set");
}

const EnergyCalibration& energy_calibration() {
  static const EnergyCalibration cal = [] {
    EnergyCalibration c;
    const LinearDispersionCode code = cuw_ssd(2);
    const double target = table1_target(TableKind::SquareDerived, 4);
    c.sum_energy_value = diversity_product(code, table_x_set(TableKind::SquareDerived, 4, Normalization::SumEnergy1));
    c.avg_energy_value = diversity_product(code, table_x_set(TableKind::SquareDerived, 4, Normalization::AvgEnergy1));
    if (std::abs(c.sum_energy_value - target) <= 5e-4) {
      c.chosen = Normalization::SumEnergy1;
      c.matched = true;
    } else if (std::abs(c.avg_energy_value - target) <= 5e-4) {
      c.chosen = Normalization::AvgEnergy1;
      c.matched = true;
    }
    return c;
  }();
  return cal;
}

SignalSet table_x_set(TableKind kind, int q) { return table_x_set(kind, q, energy_calibration().chosen); }

double table1_pipeline(TableKind kind, int q, int code_a) {
  return diversity_product(cuw_ssd(code_a), table_x_set(kind, q));
}

double table1_target(TableKind kind, int q) {
  require_table_q(q);
  if (q == 4) return 0.1672;
  if (kind == TableKind::SquareDerived) return q == 8 ? 0.0757 : 0.0187;
  return q == 8 ? 0.0699 : 0.0167;
}

std::vector<TableRow> table1(int code_a) {
  const LinearDispersionCode cuw = cuw_ssd(code_a);
  const LinearDispersionCode mdc = ygt_extend(alamouti());
  const Normalization norm = energy_calibration().chosen;
  std::vector<TableRow> rows;
  for (TableKind kind : {TableKind::SquareDerived, TableKind::Rectangular}) {
    for (int q : {4, 8, 32}) {
      TableRow r;
      r.kind = kind;
      r.q = q;
      const SignalSet x = table_x_set(kind, q);
      r.dp_cuw = diversity_product(cuw, x);
      r.dp_mdc_qod = diversity_product(mdc, x);
      int n1 = 0, n2 = 0;
      if (kind == TableKind::SquareDerived) {
        n1 = n2 = even_square_side(q);
      } else {
        std::tie(n1, n2) = rect_dims(q);
      }
      const SignalSet base = table_base(kind, q);
      const SignalSet y = base.transformed(wwx_rotation(n1, n2), norm, base.label() + " literal-U");
      r.dp_literal_u = diversity_product(cuw, y.transformed(t_inverse(), norm, y.label()));
      r.target = table1_target(kind, q);
      rows.push_back(r);
    }
  }
  return rows;
}

std::vector<double> signature_sweep(const SignalSet& s, int n) {
  std::vector<double> out;
  for (int m = 0; m <= n; ++m) out.push_back(diversity_product_closed(s, n, m));
  return out;
}

}  // namespace stbc
