// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "stbc/bound.hpp"
#include "stbc/codes.hpp"
#include "stbc/gain.hpp"
#include "stbc/sim.hpp"

using namespace stbc;

namespace {

// Pinned tolerances and budgets.
constexpr double kTableTol = 5e-4;
constexpr double kTableSeconds = 10.0;
constexpr double kDpOracleTol = 1e-9;
constexpr double kDpOracleSeconds = 60.0;
constexpr double kInvarianceDpTol = 1e-9;
constexpr double kInvarianceClassTol = 1e-9;
constexpr int kInvarianceCodes = 20;
constexpr int kDecoderDraws = 10000;
constexpr double kDecoderSeconds = 300.0;
constexpr double kConstructionSeconds = 1.0;
constexpr double kBoundSeconds = 600.0;
constexpr std::int64_t kParityTrials = 100000;
constexpr double kParitySeconds = 1800.0;
constexpr int kFullDiversitySets = 10;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SignalSet rotated_qam4() { return table_x_set(TableKind::Rectangular, 4); }

LinearDispersionCode conjugated(const LinearDispersionCode& c, const CMatrix& u, const CMatrix& v) {
  std::vector<CMatrix> wi, wq;
  for (int i = 0; i < c.K(); ++i) {
    wi.push_back(u * c.I(i) * v);
    wq.push_back(u * c.Q(i) * v);
  }
  return LinearDispersionCode(wi, wq);
}

CMatrix gaussian(std::mt19937_64& rng, int r, int c, double sd) {
  std::normal_distribution<double> g(0.0, sd);
  CMatrix m(r, c);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = cplx(g(rng), g(rng));
  return m;
}

CMatrix haar(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Eigen::MatrixXcd(gaussian(rng, n, n, 1.0)));
  Eigen::MatrixXcd q = qr.householderQ();
  return q;
}

Outcome construction() {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream os;
  bool ok = true;
  for (int a = 1; a <= 4; ++a) {
    const LinearDispersionCode c = cuw_ssd(a);
    const bool relations = satisfies_cuw_conditions(c, 0.0);
    const bool eq5 = classify(c, 0.0).satisfies_eq5 && ssd_residual(c) == 0.0;
    const bool shape = c.K() == 2 * a && c.n() == (1 << a);
    const bool rate = static_cast<double>(c.K()) / c.n() == a / std::pow(2.0, a - 1);
    ok = ok && relations && eq5 && shape && rate;
    os << "a=" << a << (relations && eq5 && shape && rate ? " ok" : " bad") << "; ";
  }
  const double s = elapsed(t0);
  os << "time " << s << " s (budget " << kConstructionSeconds << ")";
  return {ok && s < kConstructionSeconds, os.str()};
}

Outcome taxonomy() {
  const std::vector<double> grid{2, 1, 0.5, -0.5, -1, -2};
  int checked = 0, wrong = 0;
  for (int a = 1; a <= 3; ++a) {
    const LinearDispersionCode c = cuw_ssd(a);
    for (double al : grid) {
      for (double be : grid) {
        const CodeClass want = std::abs(al) == std::abs(be) ? CodeClass::NU_COD : CodeClass::PSSD;
        ++checked;
        if (classify(tnu_transform(c, al, be), 0.0).class_name != want) ++wrong;
      }
    }
  }
  return {wrong == 0, std::to_string(checked) + " (a, alpha, beta) cases, " + std::to_string(wrong) + " misclassified"};
}

Outcome table() {
  const auto t0 = std::chrono::steady_clock::now();
  const EnergyCalibration& cal = energy_calibration();
  std::ostringstream os;
  os << "calibration " << to_string(cal.chosen) << (cal.matched ? "" : " (unmatched)") << "; ";
  bool ok = cal.matched;
  for (TableKind k : {TableKind::SquareDerived, TableKind::Rectangular}) {
    for (int q : {4, 8, 32}) {
      const double v = table1_pipeline(k, q), t = table1_target(k, q);
      const bool good = std::abs(v - t) <= kTableTol;
      ok = ok && good;
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s-%d %.6f vs %.4f%s; ", to_string(k).c_str(), q, v, t, good ? "" : " OUT");
      os << buf;
    }
  }
  const double s = elapsed(t0);
  os << "time " << s << " s";
  return {ok && s < kTableSeconds, os.str()};
}

Outcome dp_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  // 4-PAM on the real axis stands in for the pair of BPSK levels per axis.
  const std::vector<std::pair<std::string, SignalSet>> sets{
      {"rotated", rotated_qam4()},
      {"unrotated", rect_qam(1, 1).renormalized(Normalization::SumEnergy1)},
      {"bpsk-pair", SignalSet({-3.0, -1.0, 1.0, 3.0}, Normalization::SumEnergy1)}};
  double worst = 0.0;
  for (int a = 1; a <= 2; ++a) {
    for (const auto& [name, s] : sets) {
      const double d = std::abs(diversity_product(cuw_ssd(a), s, DpMethod::ClosedForm) -
                                diversity_product(cuw_ssd(a), s, DpMethod::BruteForce));
      worst = std::max(worst, d);
    }
  }
  const double s = elapsed(t0);
  std::ostringstream os;
  os << "max |closed - brute| = " << worst << " over 6 cases (tol " << kDpOracleTol << ")";
  return {worst <= kDpOracleTol && s < kDpOracleSeconds, os.str()};
}

Outcome invariance() {
  std::mt19937_64 rng(2024);
  const std::vector<LinearDispersionCode> base{cuw_ssd(1), cuw_ssd(2), mcuw_ssd(1), mcuw_ssd(2), alamouti()};
  const SignalSet s = rotated_qam4();
  int class_bad = 0;
  double worst = 0.0;
  for (int t = 0; t < kInvarianceCodes; ++t) {
    const LinearDispersionCode& c = base[static_cast<std::size_t>(t) % base.size()];
    const LinearDispersionCode d = conjugated(c, haar(rng, c.n()), haar(rng, c.n()));
    const LinearDispersionCode nd = normalize(d);
    if (classify(d, kInvarianceClassTol).class_name != classify(nd, kInvarianceClassTol).class_name) ++class_bad;
    if (classify(d, kInvarianceClassTol).class_name != classify(c).class_name) ++class_bad;
    worst = std::max(worst, std::abs(diversity_product(d, s, DpMethod::BruteForce) -
                                     diversity_product(nd, s, DpMethod::BruteForce)));
  }
  std::ostringstream os;
  os << kInvarianceCodes << " conjugated codes: " << class_bad << " class changes, max DP change " << worst;
  return {class_bad == 0 && worst <= kInvarianceDpTol, os.str()};
}

Outcome decoders() {
  const auto t0 = std::chrono::steady_clock::now();
  const SignalSet s = rotated_qam4();
  const std::vector<std::pair<std::string, LinearDispersionCode>> codes{
      {"cuw1", cuw_ssd(1)}, {"cuw2", cuw_ssd(2)}, {"ciod2", ciod(2)}, {"ygt", ygt_extend(alamouti())}};
  std::ostringstream os;
  int total_bad = 0;
  std::uint64_t seed = 100;
  for (const auto& [name, code] : codes) {
    const double scale = power_scale(code, s);
    const SsdDecoder ssd(code, s, scale);
    const ExhaustiveDecoder ex(code, s, scale);
    std::mt19937_64 rng(seed++);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(s.size()) - 1);
    std::uniform_real_distribution<double> snr_db(-5.0, 25.0);
    int bad = 0;
    for (int t = 0; t < kDecoderDraws; ++t) {
      std::vector<cplx> x;
      for (int i = 0; i < code.K(); ++i) x.push_back(s.points()[static_cast<std::size_t>(pick(rng))]);
      const double sigma2 = code.n() / std::pow(10.0, snr_db(rng) / 10.0);
      const CMatrix h = gaussian(rng, code.n(), 1, std::sqrt(0.5));
      const CMatrix y = scale * instantiate(code, x) * h + gaussian(rng, code.n(), 1, std::sqrt(sigma2 / 2));
      if (ssd.decode(y, h) != ex.decode(y, h)) ++bad;
    }
    total_bad += bad;
    os << name << " " << bad << "/" << kDecoderDraws << "; ";
  }
  const double secs = elapsed(t0);
  os << "mismatches total " << total_bad;
  return {total_bad == 0 && secs < kDecoderSeconds, os.str()};
}

Outcome unification() {
  std::ostringstream os;
  bool ok = true;
  for (int a = 1; a <= 3; ++a) {
    const bool good = satisfies_cuw_conditions(normalize(mcuw_ssd(a)), 0.0);
    ok = ok && good;
    os << "a=" << a << (good ? " ok" : " bad") << "; ";
  }
  os << "exact (tol 0)";
  return {ok, os.str()};
}

// Cell pattern per block: each cell lists the coordinates (symbol, 'I'/'Q')
// appearing there. Upper and lower blocks swap the roles of paired symbols.
using Cell = std::set<std::pair<int, char>>;

std::vector<std::vector<Cell>> ciod_pattern(int a) {
  const int n = 1 << a, h = n / 2;
  std::vector<std::vector<Cell>> p(static_cast<std::size_t>(n), std::vector<Cell>(static_cast<std::size_t>(n)));
  // Letters A, B, C (0, 1, 2) placed in the h x h block.
  std::vector<std::vector<int>> letters;
  if (a == 2) letters = {{0, 1}, {1, 0}};
  else letters = {{0, 1, 2, -1}, {1, 0, -1, 2}, {2, -1, 0, 1}, {-1, 2, 1, 0}};
  for (int blk = 0; blk < 2; ++blk) {
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < h; ++c) {
        const int l = letters[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        if (l < 0) continue;
        const int odd = 2 * l + 1, even = 2 * l + 2;  // symbols 1,2 / 3,4 / 5,6
        Cell cell = blk == 0 ? Cell{{odd, 'I'}, {even, 'Q'}} : Cell{{even, 'I'}, {odd, 'Q'}};
        p[static_cast<std::size_t>(blk * h + r)][static_cast<std::size_t>(blk * h + c)] = cell;
      }
    }
  }
  return p;
}

Outcome ciod_structure() {
  std::ostringstream os;
  bool ok = true;
  for (int a = 2; a <= 3; ++a) {
    const LinearDispersionCode c = ciod(a);
    const auto pat = ciod_pattern(a);
    int bad = 0;
    for (int i = 0; i < c.K(); ++i) {
      for (char part : {'I', 'Q'}) {
        const CMatrix& w = part == 'I' ? c.I(i) : c.Q(i);
        for (int r = 0; r < c.n(); ++r) {
          for (int k = 0; k < c.n(); ++k) {
            const bool want = pat[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)].count({i + 1, part}) > 0;
            if ((w(r, k) != cplx(0.0, 0.0)) != want) ++bad;
          }
        }
      }
    }
    ok = ok && bad == 0;
    os << "ciod(" << a << ") " << bad << " support mismatches; ";
  }
  return {ok, os.str()};
}

Outcome rate_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  const MaxFamilyResult r1 = max_ssd_family(1);
  const MaxFamilyResult r2 = max_ssd_family(2);
  const double secs = elapsed(t0);
  auto uw = [](const MaxFamilyResult& r) {
    return r.witness && classify(*r.witness).class_name == CodeClass::UW_SSD && r.witness->K() == r.k_max;
  };
  std::ostringstream os;
  os << "K_max(a=1) = " << r1.k_max << ", K_max(a=2) = " << r2.k_max << ", witnesses "
     << (uw(r1) && uw(r2) ? "UW-SSD" : "missing") << "; in-group exhaustive check over the Pauli group "
     << "(not a bound over all unitary matrices)";
  return {r1.k_max == 2 && r2.k_max == 4 && uw(r1) && uw(r2) && secs < kBoundSeconds, os.str()};
}

Outcome parity() {
  const auto t0 = std::chrono::steady_clock::now();
  const SignalSet s = rotated_qam4();
  const LinearDispersionCode a = cuw_ssd(2), b = ygt_extend(alamouti());
  const std::vector<double> snr = parse_snr_range("0:2:20");
  const SimulationResult ra = run_montecarlo(a, s, make_config(a, s, snr, kParityTrials, 0x5eed0001));
  const SimulationResult rb = run_montecarlo(b, s, make_config(b, s, snr, kParityTrials, 0x5eed0002));
  int disjoint = 0;
  std::ostringstream os;
  for (std::size_t k = 0; k < snr.size(); ++k) {
    const SnrPoint& p = ra.per_snr[k];
    const SnrPoint& q = rb.per_snr[k];
    if (p.ser_hi < q.ser_lo || q.ser_hi < p.ser_lo) {
      ++disjoint;
      os << "disjoint at " << p.snr_db << " dB; ";
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "SER at 0/10/20 dB: cuw %.3g/%.3g/%.3g, ygt %.3g/%.3g/%.3g; ", ra.per_snr[0].ser,
                ra.per_snr[5].ser, ra.per_snr[10].ser, rb.per_snr[0].ser, rb.per_snr[5].ser, rb.per_snr[10].ser);
  os << buf << disjoint << " of " << snr.size() << " points with disjoint Wilson intervals";
  return {disjoint == 0 && elapsed(t0) < kParitySeconds, os.str()};
}

Outcome full_diversity() {
  const SignalSet q4 = rect_qam(1, 1).renormalized(Normalization::SumEnergy1);
  auto rot = [](const SignalSet& s, double th) {
    return s.transformed({std::cos(th), -std::sin(th), std::sin(th), std::cos(th)}, Normalization::Raw, "rot");
  };
  const std::vector<SignalSet> sets{q4,
                                    rot(q4, 0.2),
                                    rotated_qam4(),
                                    rect_qam(2, 1),
                                    table_x_set(TableKind::Rectangular, 8),
                                    square_derived_qam(8),
                                    table_x_set(TableKind::SquareDerived, 32),
                                    SignalSet({cplx(0, 0), cplx(1, 2), cplx(-1, 3)}),
                                    SignalSet({cplx(0, 0), cplx(1, 2), cplx(2, 1)}),
                                    SignalSet({-3.0, -1.0, 1.0, 3.0})};
  static_assert(kFullDiversitySets == 10);
  int bad = 0, zero = 0;
  for (const SignalSet& s : sets) {
    const bool full = full_diversity_check(s).full;
    const double dp = diversity_product(cuw_ssd(2), s);
    if (dp == 0.0) ++zero;
    if ((dp == 0.0) == full) ++bad;
  }
  std::ostringstream os;
  os << sets.size() << " sets, " << zero << " with DP = 0, " << bad << " disagreements";
  return {bad == 0 && static_cast<int>(sets.size()) == kFullDiversitySets && zero > 0 && zero < kFullDiversitySets,
          os.str()};
}

}  // namespace

int main() {
  report(1, "construction correctness", construction);
  report(2, "taxonomy dichotomies", taxonomy);
  report(3, "diversity product table", table);
  report(4, "closed-form vs brute-force DP", dp_oracle);
  report(5, "normalization invariances", invariance);
  report(6, "decoder oracle equivalence", decoders);
  report(7, "MCUW/CUW unification", unification);
  report(8, "CIOD structure", ciod_structure);
  report(9, "in-group rate bound", rate_bound);
  report(10, "simulation parity", parity);
  report(11, "full-diversity biconditional", full_diversity);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
