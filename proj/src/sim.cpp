#include "stbc/sim.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

namespace stbc {
namespace {

// Real inner product Re tr(a^H b).
double re_inner(const CMatrix& a, const CMatrix& b) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const cplx x = a.data()[k], y = b.data()[k];
    s += x.real() * y.real() + x.imag() * y.imag();
  }
  return s;
}

void require_channel(const LinearDispersionCode& code, const CMatrix& y, const CMatrix& h) {
  if (h.rows() != code.n() || y.rows() != code.n() || y.cols() != h.cols() || h.cols() < 1) {
    throw precondition_error("decode: received/channel dimensions do not match the code");
  }
}

}  // namespace

SsdDecoder::SsdDecoder(const LinearDispersionCode& code, const SignalSet& set, double scale, double tol)
    : code_(code), points_(set.points()), scale_(scale) {
  const double r = ssd_residual(code);
  if (r > tol) {
    std::ostringstream os;
    os << "ssd decoder: code is not single-symbol decodable (cross residual " << r << ")";
    throw precondition_error(os.str());
  }
}

std::vector<int> SsdDecoder::decode(const CMatrix& y, const CMatrix& h) const {
  require_channel(code_, y, h);
  std::vector<int> out(static_cast<std::size_t>(code_.K()));
  for (int i = 0; i < code_.K(); ++i) {
    const CMatrix vi = scale_ * (code_.I(i) * h);
    const CMatrix vq = scale_ * (code_.Q(i) * h);
    const double ci = re_inner(vi, y), cq = re_inner(vq, y);
    const double gii = vi.squaredNorm(), gqq = vq.squaredNorm(), giq = re_inner(vi, vq);
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (std::size_t k = 0; k < points_.size(); ++k) {
      const double xi = points_[k].real(), xq = points_[k].imag();
      const double f = -2.0 * (xi * ci + xq * cq) + xi * xi * gii + 2.0 * xi * xq * giq + xq * xq * gqq;
      if (f < best) {
        best = f;
        arg = static_cast<int>(k);
      }
    }
    out[static_cast<std::size_t>(i)] = arg;
  }
  return out;
}

ExhaustiveDecoder::ExhaustiveDecoder(const LinearDispersionCode& code, const SignalSet& set, double scale)
    : code_(code), points_(set.points()), scale_(scale) {
  const double bits = code.K() * std::log2(static_cast<double>(points_.size()));
  if (bits > kMaxBits) {
    std::ostringstream os;
    os << "exhaustive decoder: " << bits << " bits per codeword exceeds the limit of " << kMaxBits;
    throw precondition_error(os.str());
  }
}

std::vector<int> ExhaustiveDecoder::decode(const CMatrix& y, const CMatrix& h) const {
  require_channel(code_, y, h);
  const int K = code_.K();
  const int q = static_cast<int>(points_.size());
  std::vector<CMatrix> v;
  for (int r = 0; r < 2 * K; ++r) v.push_back(scale_ * (code_.weight(r) * h));

  std::vector<int> idx(static_cast<std::size_t>(K), 0), best_idx = idx;
  double best = std::numeric_limits<double>::infinity();
  CMatrix resid(y.rows(), y.cols());
  while (true) {
    resid = y;
    for (int i = 0; i < K; ++i) {
      const cplx x = points_[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      resid -= x.real() * v[static_cast<std::size_t>(2 * i)] + x.imag() * v[static_cast<std::size_t>(2 * i + 1)];
    }
    const double m = resid.squaredNorm();
    if (m < best) {
      best = m;
      best_idx = idx;
    }
    int pos = K - 1;  // odometer, last symbol fastest
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == q) idx[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
  }
  return best_idx;
}

double ml_metric(const LinearDispersionCode& code, const std::vector<cplx>& symbols, const CMatrix& y,
                 const CMatrix& h, double scale) {
  require_channel(code, y, h);
  return (y - scale * instantiate(code, symbols) * h).squaredNorm();
}

BitMapping bit_mapping(const SignalSet& set) {
  const std::size_t q = set.size();
  if (!std::has_single_bit(q)) throw precondition_error("bit_mapping: signal set size must be a power of two");
  BitMapping m;
  m.bits_per_symbol = std::countr_zero(q);
  m.labels.resize(q);

  auto distinct = [&](auto proj) {
    std::vector<double> v;
    for (const cplx& p : set.points()) v.push_back(proj(p));
    std::sort(v.begin(), v.end());
    std::vector<double> u;
    for (double x : v) {
      if (u.empty() || x - u.back() > 1e-9) u.push_back(x);
    }
    return u;
  };
  const auto re = distinct([](cplx p) { return p.real(); });
  const auto im = distinct([](cplx p) { return p.imag(); });
  const bool grid = re.size() * im.size() == q && std::has_single_bit(re.size()) && std::has_single_bit(im.size());
  if (!grid) {
    for (std::size_t k = 0; k < q; ++k) m.labels[k] = static_cast<std::uint32_t>(k);
    return m;
  }
  auto rank = [](const std::vector<double>& u, double x) {
    return static_cast<std::uint32_t>(std::lower_bound(u.begin(), u.end(), x - 1e-9) - u.begin());
  };
  const int im_bits = std::countr_zero(im.size());
  for (std::size_t k = 0; k < q; ++k) {
    const std::uint32_t a = rank(re, set.points()[k].real()), b = rank(im, set.points()[k].imag());
    m.labels[k] = ((a ^ (a >> 1)) << im_bits) | (b ^ (b >> 1));
  }
  m.gray = true;
  return m;
}

BitMapping bit_mapping(const SignalSet& set, const std::vector<std::uint32_t>& labels) {
  const std::size_t q = set.size();
  if (!std::has_single_bit(q)) throw precondition_error("bit_mapping: signal set size must be a power of two");
  if (labels.size() != q) throw precondition_error("bit_mapping: one label per point required");
  std::vector<bool> seen(q, false);
  for (std::uint32_t l : labels) {
    if (l >= q || seen[l]) throw precondition_error("bit_mapping: labels must be a permutation of 0..q-1");
    seen[l] = true;
  }
  BitMapping m;
  m.bits_per_symbol = std::countr_zero(q);
  m.labels = labels;
  return m;
}

double mean_codeword_energy(const LinearDispersionCode& code, const SignalSet& set) {
  double mi = 0.0, mq = 0.0, sii = 0.0, sqq = 0.0, siq = 0.0;
  for (const cplx& p : set.points()) {
    mi += p.real();
    mq += p.imag();
    sii += p.real() * p.real();
    sqq += p.imag() * p.imag();
    siq += p.real() * p.imag();
  }
  const double q = static_cast<double>(set.size());
  mi /= q, mq /= q, sii /= q, sqq /= q, siq /= q;
  const double mean[2] = {mi, mq};
  const double second[2][2] = {{sii, siq}, {siq, sqq}};
  const int R = 2 * code.K();
  double e = 0.0;
  for (int r = 0; r < R; ++r) {
    for (int s = 0; s < R; ++s) {
      const double moment = (r / 2 == s / 2) ? second[r % 2][s % 2] : mean[r % 2] * mean[s % 2];
      if (moment != 0.0) e += moment * re_inner(code.weight(r), code.weight(s));
    }
  }
  return e;
}

double power_scale(const LinearDispersionCode& code, const SignalSet& set) {
  const double e = mean_codeword_energy(code, set);
  if (!(e > 0.0)) throw precondition_error("power_scale: zero mean codeword energy");
  return std::sqrt(static_cast<double>(code.n()) * code.n() / e);
}

ChannelConfig make_config(const LinearDispersionCode& code, const SignalSet& set, std::vector<double> snr_db,
                          std::int64_t trials, std::uint64_t seed, int n_rx) {
  ChannelConfig c;
  c.n_tx = code.n();
  c.n_rx = n_rx;
  c.snr_db_points = std::move(snr_db);
  c.trials_per_point = trials;
  c.seed = seed;
  c.power_scale = power_scale(code, set);
  return c;
}

WilsonInterval wilson95(std::int64_t k, std::int64_t n) {
  if (n <= 0 || k < 0 || k > n) throw precondition_error("wilson95: need 0 <= k <= n, n > 0");
  constexpr double z = 1.959963984540054;
  const double nn = static_cast<double>(n), p = static_cast<double>(k) / nn;
  const double denom = 1.0 + z * z / nn;
  const double center = (p + z * z / (2.0 * nn)) / denom;
  const double hw = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
  const double lo = k == 0 ? 0.0 : std::max(0.0, center - hw);
  const double hi = k == n ? 1.0 : std::min(1.0, center + hw);
  return {lo, hi, hw};
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("STBC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) hw = static_cast<unsigned>(v);
  }
  return hw;
}

namespace {

struct ChunkCounts {
  std::int64_t sym = 0;
  std::int64_t bit = 0;
};

ChunkCounts run_chunk(const LinearDispersionCode& code, const SsdDecoder& dec, const SignalSet& set,
                      const BitMapping& map, const ChannelConfig& cfg, std::size_t snr_idx, std::int64_t chunk,
                      std::int64_t trials) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(snr_idx), static_cast<std::uint32_t>(chunk)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  std::uniform_int_distribution<int> pick(0, static_cast<int>(set.size()) - 1);

  const int n = code.n(), m = cfg.n_rx, K = code.K();
  const double snr = std::pow(10.0, cfg.snr_db_points[snr_idx] / 10.0);
  const double noise_sd = std::sqrt(static_cast<double>(n) / snr);

  ChunkCounts out;
  std::vector<int> tx(static_cast<std::size_t>(K));
  std::vector<cplx> sym(static_cast<std::size_t>(K));
  CMatrix h(n, m), noise(n, m);
  for (std::int64_t t = 0; t < trials; ++t) {
    for (int i = 0; i < K; ++i) {
      tx[static_cast<std::size_t>(i)] = pick(rng);
      sym[static_cast<std::size_t>(i)] = set.points()[static_cast<std::size_t>(tx[static_cast<std::size_t>(i)])];
    }
    for (Eigen::Index k = 0; k < h.size(); ++k) h.data()[k] = cplx(gauss(rng), gauss(rng));
    for (Eigen::Index k = 0; k < noise.size(); ++k) noise.data()[k] = noise_sd * cplx(gauss(rng), gauss(rng));
    const CMatrix y = cfg.power_scale * instantiate(code, sym) * h + noise;
    const std::vector<int> rx = dec.decode(y, h);
    for (int i = 0; i < K; ++i) {
      const auto a = static_cast<std::size_t>(tx[static_cast<std::size_t>(i)]);
      const auto b = static_cast<std::size_t>(rx[static_cast<std::size_t>(i)]);
      if (a != b) {
        ++out.sym;
        out.bit += std::popcount(map.labels[a] ^ map.labels[b]);
      }
    }
  }
  return out;
}

}  // namespace

SimulationResult run_montecarlo(const LinearDispersionCode& code, const SignalSet& set, const ChannelConfig& cfg,
                                const BitMapping* mapping) {
  if (cfg.trials_per_point < 1) throw precondition_error("simulate: trials per point must be >= 1");
  if (cfg.n_rx < 1) throw precondition_error("simulate: at least one receive antenna required");
  if (cfg.n_tx != code.n()) throw precondition_error("simulate: n_tx does not match the code");
  if (!(cfg.power_scale > 0.0)) throw precondition_error("simulate: power_scale must be positive");
  if (cfg.snr_db_points.empty()) throw precondition_error("simulate: no SNR points");
  const BitMapping map = mapping ? *mapping : bit_mapping(set);
  if (map.labels.size() != set.size()) throw precondition_error("simulate: bit mapping size mismatch");
  const SsdDecoder dec(code, set, cfg.power_scale);

  const std::int64_t chunks = (cfg.trials_per_point + kTrialsPerChunk - 1) / kTrialsPerChunk;
  const std::size_t jobs = cfg.snr_db_points.size() * static_cast<std::size_t>(chunks);
  std::vector<ChunkCounts> counts(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      const std::size_t s = j / static_cast<std::size_t>(chunks);
      const auto c = static_cast<std::int64_t>(j % static_cast<std::size_t>(chunks));
      const std::int64_t trials = std::min(kTrialsPerChunk, cfg.trials_per_point - c * kTrialsPerChunk);
      counts[j] = run_chunk(code, dec, set, map, cfg, s, c, trials);
    }
  };
  const unsigned nw = std::min<std::size_t>(worker_count(), jobs);
  if (nw <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SimulationResult res;
  res.power_scale = cfg.power_scale;
  res.symbols_per_codeword = code.K();
  res.bits_per_symbol = map.bits_per_symbol;
  for (std::size_t s = 0; s < cfg.snr_db_points.size(); ++s) {
    SnrPoint p;
    p.snr_db = cfg.snr_db_points[s];
    p.trials = cfg.trials_per_point;
    for (std::int64_t c = 0; c < chunks; ++c) {
      p.symbol_errors += counts[s * static_cast<std::size_t>(chunks) + static_cast<std::size_t>(c)].sym;
      p.bit_errors += counts[s * static_cast<std::size_t>(chunks) + static_cast<std::size_t>(c)].bit;
    }
    const std::int64_t nsym = p.trials * code.K();
    p.ser = static_cast<double>(p.symbol_errors) / static_cast<double>(nsym);
    p.ber = map.bits_per_symbol > 0
                ? static_cast<double>(p.bit_errors) / static_cast<double>(nsym * map.bits_per_symbol)
                : 0.0;
    const WilsonInterval w = wilson95(p.symbol_errors, nsym);
    p.ci95 = w.half_width;
    p.ser_lo = w.lo;
    p.ser_hi = w.hi;
    res.per_snr.push_back(p);
  }
  return res;
}

std::vector<double> parse_snr_range(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw precondition_error("snr range: cannot parse '" + spec + "'");
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw precondition_error("snr range: expected start:step:stop");
  const double start = parts[0], step = parts[1], stop = parts[2];
  if (!(step > 0.0) || stop < start) throw precondition_error("snr range: need step > 0 and stop >= start");
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long k = 0; k <= count; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

}  // namespace stbc
