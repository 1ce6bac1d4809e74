#pragma once

// Rayleigh block-fading Monte-Carlo engine and the two ML decoders.
//
// Model: Y = s * S H + N, S = sum_i (x_iI A_iI + x_iQ A_iQ) (n x n), H is
// n x m with i.i.d. CN(0,1) entries held for one codeword, N is CN(0, sigma^2).
// s (power_scale) makes E[tr S S^H] = n^2, so the received signal power per
// receive antenna per channel use is n and SNR = n / sigma^2.

#include <cstdint>
#include <string>
#include <vector>

#include "stbc/codes.hpp"
#include "stbc/gain.hpp"

namespace stbc {

/// Single-symbol decoder. Expands ||Y - sSH||^2 and keeps, for each symbol,
/// only the terms in (x_iI, x_iQ); the cross terms between symbols vanish
/// when the pairwise conditions hold, which the constructor checks.
class SsdDecoder {
 public:
  SsdDecoder(const LinearDispersionCode& code, const SignalSet& set, double scale = 1.0, double tol = 1e-9);
  /// Symbol indices into the signal set, one per code symbol.
  std::vector<int> decode(const CMatrix& received, const CMatrix& channel) const;

 private:
  LinearDispersionCode code_;
  std::vector<cplx> points_;
  double scale_;
};

/// Exhaustive ML over all |A|^K codewords; ties go to the lexicographically
/// smallest index vector (first symbol most significant).
class ExhaustiveDecoder {
 public:
  static constexpr double kMaxBits = 20.0;
  ExhaustiveDecoder(const LinearDispersionCode& code, const SignalSet& set, double scale = 1.0);
  std::vector<int> decode(const CMatrix& received, const CMatrix& channel) const;

 private:
  LinearDispersionCode code_;
  std::vector<cplx> points_;
  double scale_;
};

/// ||Y - s S(x) H||_F^2.
double ml_metric(const LinearDispersionCode& code, const std::vector<cplx>& symbols, const CMatrix& received,
                 const CMatrix& channel, double scale = 1.0);

struct BitMapping {
  int bits_per_symbol = 0;
  std::vector<std::uint32_t> labels;  // labels[k] for point k
  bool gray = false;
};

/// Gray labels when the set is a full rectangular grid with power-of-two
/// sides, index labels otherwise. Size must be a power of two.
BitMapping bit_mapping(const SignalSet& set);
/// Validates explicit labels (a permutation of 0 .. |set|-1).
BitMapping bit_mapping(const SignalSet& set, const std::vector<std::uint32_t>& labels);

/// s with E[tr(s S)(s S)^H] = n^2 for uniform independent symbols.
double power_scale(const LinearDispersionCode& code, const SignalSet& set);
/// E[tr S S^H] without scaling, from the weight Gram matrix and symbol moments.
double mean_codeword_energy(const LinearDispersionCode& code, const SignalSet& set);

struct ChannelConfig {
  int n_tx = 0;
  int n_rx = 1;
  std::vector<double> snr_db_points;
  std::int64_t trials_per_point = 0;
  std::uint64_t seed = 0;
  double power_scale = 0.0;
};

/// Fills n_tx and power_scale from the code and set.
ChannelConfig make_config(const LinearDispersionCode& code, const SignalSet& set, std::vector<double> snr_db,
                          std::int64_t trials, std::uint64_t seed, int n_rx = 1);

struct SnrPoint {
  double snr_db = 0.0;
  std::int64_t trials = 0;
  std::int64_t symbol_errors = 0;
  std::int64_t bit_errors = 0;
  double ser = 0.0;
  double ber = 0.0;
  double ci95 = 0.0;  // Wilson half-width on ser
  double ser_lo = 0.0;
  double ser_hi = 0.0;
};

struct SimulationResult {
  std::vector<SnrPoint> per_snr;
  double power_scale = 0.0;
  int symbols_per_codeword = 0;
  int bits_per_symbol = 0;
};

/// Wilson score interval for k successes in n trials at 95%.
struct WilsonInterval {
  double lo = 0.0;
  double hi = 0.0;
  double half_width = 0.0;
};
WilsonInterval wilson95(std::int64_t k, std::int64_t n);

/// Trials run in fixed-size chunks with RNG seeded from (seed, snr index,
/// chunk index), so results do not depend on the worker count. STBC_THREADS
/// caps the number of workers.
SimulationResult run_montecarlo(const LinearDispersionCode& code, const SignalSet& set, const ChannelConfig& cfg,
                                const BitMapping* mapping = nullptr);

inline constexpr std::int64_t kTrialsPerChunk = 2048;

/// Worker count: STBC_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Parses "start:step:stop" (inclusive) or a single value.
std::vector<double> parse_snr_range(const std::string& spec);

}  // namespace stbc
