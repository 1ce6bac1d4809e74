#pragma once

// Diversity product, full-diversity test, constellations and the transform
// pipeline that maps a QAM grid onto code variables.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stbc/codes.hpp"

namespace stbc {

enum class Normalization { SumEnergy1, AvgEnergy1, Raw };
std::string to_string(Normalization n);
Normalization normalization_from_string(const std::string& s);

class SignalSet {
 public:
  /// Rescales points to the requested convention (Raw keeps them as given).
  /// Throws on fewer than two points, duplicate points, or non-finite values.
  SignalSet(std::vector<cplx> points, Normalization normalization = Normalization::Raw, std::string label = {});

  const std::vector<cplx>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  Normalization normalization() const { return norm_; }
  const std::string& label() const { return label_; }
  double total_energy() const;
  double average_energy() const { return total_energy() / static_cast<double>(points_.size()); }

  SignalSet renormalized(Normalization n) const { return SignalSet(points_, n, label_); }
  /// Applies a real 2x2 map to (Re, Im) of every point.
  SignalSet transformed(const std::array<double, 4>& m, Normalization n, std::string label) const;

 private:
  std::vector<cplx> points_;
  Normalization norm_;
  std::string label_;
};

struct DiscriminantReport {
  CMatrix discriminant;
  int m_plus = 0;
  int m_minus = 0;
  bool traceless = false;
};

/// Normalizes the code (unitary weights required) and reads the signature of
/// A_1Q. Throws when the normalized code misses the CUW relations.
DiscriminantReport discriminant_of(const LinearDispersionCode& code);

/// Tolerance used to decide that a difference lies on a +-45 degree line.
inline constexpr double kDiagonalTol = 1e-12;

/// Nonzero differences a - b of the set, a != b, ordered pairs.
std::vector<cplx> difference_set(const SignalSet& s);

enum class DpMethod { ClosedForm, BruteForce };

/// (1/(2 sqrt n)) min |det(dS^H dS)|^{1/(2n)} over distinct codewords.
/// ClosedForm uses the discriminant signature and single-symbol differences
/// (code must be CUW after normalization). BruteForce enumerates every pair of
/// codewords; at most kMaxBruteForceCodewords codewords.
double diversity_product(const LinearDispersionCode& code, const SignalSet& s, DpMethod method = DpMethod::ClosedForm);
inline constexpr std::size_t kMaxBruteForceCodewords = 4096;

/// Closed form for a given discriminant split: m eigenvalues +1 out of n.
double diversity_product_closed(const SignalSet& s, int n, int m_plus);

struct FullDiversityReport {
  bool full = true;
  std::optional<std::pair<cplx, cplx>> witness;  // (a, b) with a - b on a +-45 degree line
};
FullDiversityReport full_diversity_check(const SignalSet& s);

/// Min over nonzero differences of |dRe * dIm|.
double cpd(const SignalSet& s);

/// The (2 N1p) x (2 N2p) grid with odd coordinates scaled by d/2.
SignalSet rect_qam(int n1p, int n2p, double d = 2.0);

/// Smallest square grid with at least q points, minus its q - p highest
/// energy points (larger polar angle removed first on ties), re-centred.
SignalSet square_derived_qam(int q);

/// Row-major 2x2 real matrix.
using Real2x2 = std::array<double, 4>;

/// The transform with eps_i, alpha, theta_1, theta_2 taken literally for
/// the rectangular grid with parameters N1, N2.
Real2x2 wwx_rotation(int n1, int n2);

/// Rotation by atan((sqrt5 - 1)/2) followed by a row scaling that equalizes
/// the energies of the two output coordinates, given the per-axis input
/// energies of the grid.
Real2x2 energy_balanced_rotation(double energy_re, double energy_im);

/// The unitary T^{-1} = T = [[1, 1], [1, -1]] / sqrt 2.
Real2x2 t_inverse();

/// Smallest even N with N^2 >= size.
int even_square_side(int size);

enum class TableKind { SquareDerived, Rectangular };
std::string to_string(TableKind k);
TableKind table_kind_from_string(const std::string& s);

/// Grid parameters (N1p, N2p) used for rectangular sizes 4, 8, 32.
std::pair<int, int> rect_dims(int q);

struct TableRow {
  TableKind kind;
  int q = 0;
  double dp_cuw = 0.0;        // cuw_ssd(a) with the balanced-rotation x set
  double dp_mdc_qod = 0.0;    // ygt_extend(alamouti) with the same x set
  double dp_literal_u = 0.0;  // cuw_ssd(a) with the literal wwx_rotation
  double target = 0.0;        // reference diversity product
};

/// Base constellation for a table row (raw, unnormalized).
SignalSet table_base(TableKind kind, int q);
/// The x-variable set: balanced rotation, energy convention, then T^{-1}.
SignalSet table_x_set(TableKind kind, int q, Normalization n);
SignalSet table_x_set(TableKind kind, int q);  // calibrated convention

double table1_pipeline(TableKind kind, int q, int code_a = 2);
std::vector<TableRow> table1(int code_a = 2);
double table1_target(TableKind kind, int q);

struct EnergyCalibration {
  Normalization chosen = Normalization::SumEnergy1;
  double sum_energy_value = 0.0;
  double avg_energy_value = 0.0;
  bool matched = false;
};
/// Evaluates the 4-point square row under both conventions and picks the one
/// within 5e-4 of its target. Cached after the first call.
const EnergyCalibration& energy_calibration();

/// DP for every discriminant split m = 0..n of an n x n CUW code. Data only.
std::vector<double> signature_sweep(const SignalSet& s, int n);

}  // namespace stbc
