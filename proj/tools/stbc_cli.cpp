// stbc: command-line front end for the code library.
//
// Exit status: 0 success, 1 bad arguments or precondition failure, 2 I/O error.

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "stbc/bound.hpp"
#include "stbc/clifford.hpp"
#include "stbc/codes.hpp"
#include "stbc/gain.hpp"
#include "stbc/io.hpp"
#include "stbc/sim.hpp"

namespace {

using namespace stbc;

std::string csv_header(const json& meta) {
  std::string out;
  for (const auto& [k, v] : meta.items()) out += "# " + k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  return out;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

LinearDispersionCode build_code(const std::string& family, int a, double alpha, double beta, bool p_vars) {
  if (family == "cuw") return cuw_ssd(a);
  if (family == "mcuw") return mcuw_ssd(a);
  if (family == "ciod") return ciod(a, p_vars);
  if (family == "tnu") return tnu_transform(cuw_ssd(a), alpha, beta);
  if (family == "ygt") {
    if (a != 2) throw precondition_error("ygt: only the 4x4 extension of the Alamouti code is available (a = 2)");
    return ygt_extend(alamouti());
  }
  if (family == "alamouti") return alamouti();
  throw precondition_error("unknown family '" + family + "'");
}

LabeledSignalSet build_constellation(const std::string& kind, int q, const std::string& base, Normalization norm) {
  if (kind == "rect") {
    const auto [n1, n2] = rect_dims(q);
    return {rect_qam(n1, n2).renormalized(norm), std::nullopt};
  }
  if (kind == "square-derived") return {square_derived_qam(q).renormalized(norm), std::nullopt};
  if (kind == "rotated") {
    const TableKind tk = table_kind_from_string(base);
    // Labels follow the unrotated grid so the Gray property refers to it.
    const BitMapping m = bit_mapping(table_base(tk, q));
    return {table_x_set(tk, q), m.labels};
  }
  throw precondition_error("unknown constellation kind '" + kind + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"Single-symbol-decodable space-time block codes"};
  app.require_subcommand(1);
  std::string out = "-";

  auto* construct = app.add_subcommand("construct", "build a code and print its JSON");
  std::string family;
  int a = 2;
  double alpha = 1.0, beta = 1.0;
  bool p_vars = false;
  construct->add_option("--family", family, "cuw | mcuw | ciod | ygt | tnu | alamouti")->required();
  construct->add_option("--a", a, "code order, n = 2^a");
  construct->add_option("--alpha", alpha, "tnu in-phase mixing");
  construct->add_option("--beta", beta, "tnu quadrature mixing");
  construct->add_flag("--p-variables", p_vars, "ciod: keep the intermediate variables");
  construct->add_option("--out", out, "output path (default stdout)");

  auto* classify_cmd = app.add_subcommand("classify", "classify a code JSON");
  std::string in_path;
  double tol = 1e-9;
  classify_cmd->add_option("--in", in_path, "code JSON")->required();
  classify_cmd->add_option("--tol", tol, "residual tolerance");
  classify_cmd->add_option("--out", out, "output path");

  auto* divprod = app.add_subcommand("divprod", "diversity product of a code over a constellation");
  std::string code_path, const_path;
  bool brute = false;
  divprod->add_option("--code", code_path, "code JSON")->required();
  divprod->add_option("--constellation", const_path, "constellation JSON")->required();
  divprod->add_flag("--brute-force", brute, "enumerate codeword pairs");
  divprod->add_option("--out", out, "output path");

  auto* constellation = app.add_subcommand("constellation", "emit a constellation");
  std::string kind, base = "rectangular", norm_name = "sum-energy-1";
  int q = 4;
  constellation->add_option("--kind", kind, "rect | square-derived | rotated")->required();
  constellation->add_option("--q", q, "number of points")->required();
  constellation->add_option("--base", base, "rotated: rectangular | square-derived");
  constellation->add_option("--normalization", norm_name, "sum-energy-1 | avg-energy-1 | raw");
  constellation->add_option("--out", out, "output path");

  auto* table = app.add_subcommand("table1", "diversity product table as CSV");
  int table_a = 2;
  table->add_option("--a", table_a, "order of the cuw code");
  table->add_option("--out", out, "output path");

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo symbol and bit error rates");
  std::string snr = "0:2:20";
  std::int64_t trials = 10000;
  std::uint64_t seed = 42;
  int n_rx = 1;
  simulate->add_option("--code", code_path, "code JSON")->required();
  simulate->add_option("--constellation", const_path, "constellation JSON")->required();
  simulate->add_option("--snr", snr, "start:step:stop in dB");
  simulate->add_option("--trials", trials, "codewords per SNR point");
  simulate->add_option("--seed", seed, "64-bit seed");
  simulate->add_option("--rx", n_rx, "receive antennas");
  simulate->add_option("--out", out, "CSV output path");

  auto* bound = app.add_subcommand("bound-search", "exhaustive in-group search for the largest SSD code");
  int bound_a = 1;
  bound->add_option("--a", bound_a, "1 or 2")->required();
  bound->add_option("--report", out, "report JSON path");

  auto* clifford = app.add_subcommand("clifford", "emit generator matrices");
  std::string fam_kind = "irreducible";
  int cl_a = 2;
  clifford->add_option("--a", cl_a, "order")->required();
  clifford->add_option("--family", fam_kind, "irreducible | reducible");
  clifford->add_option("--out", out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  if (construct->parsed()) {
    json j = code_to_json(build_code(family, a, alpha, beta, p_vars));
    j["metadata"] = metadata();
    write_text(out, dump(j));
  } else if (classify_cmd->parsed()) {
    json j = classification_to_json(classify(code_from_json(read_json_file(in_path)), tol));
    j["metadata"] = metadata();
    write_text(out, dump(j));
  } else if (divprod->parsed()) {
    const LinearDispersionCode code = code_from_json(read_json_file(code_path));
    const LabeledSignalSet s = signal_set_from_json(read_json_file(const_path));
    json j = {{"method", brute ? "brute-force" : "closed-form"},
              {"diversity_product", diversity_product(code, s.set, brute ? DpMethod::BruteForce : DpMethod::ClosedForm)},
              {"full_diversity_set", full_diversity_check(s.set).full}};
    if (!brute) {
      const DiscriminantReport d = discriminant_of(code);
      j["discriminant"] = {{"m_plus", d.m_plus}, {"m_minus", d.m_minus}, {"traceless", d.traceless}};
    }
    j["metadata"] = metadata();
    write_text(out, dump(j));
  } else if (constellation->parsed()) {
    const LabeledSignalSet s = build_constellation(kind, q, base, normalization_from_string(norm_name));
    std::vector<std::uint32_t> labels = s.bit_labels ? *s.bit_labels : bit_mapping(s.set).labels;
    json j = signal_set_to_json(s.set, &labels);
    j["metadata"] = metadata();
    write_text(out, dump(j));
  } else if (table->parsed()) {
    std::ostringstream os;
    os << csv_header(metadata());
    os << "kind,q,dp_cuw_ssd,dp_mdc_qod,dp_literal_u,target\n";
    for (const TableRow& r : table1(table_a)) {
      os << to_string(r.kind) << "," << r.q << "," << fmt(r.dp_cuw) << "," << fmt(r.dp_mdc_qod) << ","
         << fmt(r.dp_literal_u) << "," << fmt(r.target) << "\n";
    }
    write_text(out, os.str());
  } else if (simulate->parsed()) {
    const LinearDispersionCode code = code_from_json(read_json_file(code_path));
    const LabeledSignalSet s = signal_set_from_json(read_json_file(const_path));
    if (trials < 1) throw precondition_error("simulate: --trials must be >= 1");
    const BitMapping map = s.bit_labels ? bit_mapping(s.set, *s.bit_labels) : bit_mapping(s.set);
    const ChannelConfig cfg = make_config(code, s.set, parse_snr_range(snr), trials, seed, n_rx);
    const SimulationResult res = run_montecarlo(code, s.set, cfg, &map);
    json meta = metadata(seed);
    meta["code"] = code.label();
    meta["constellation"] = s.set.label();
    meta["power_scale"] = res.power_scale;
    meta["receive_antennas"] = n_rx;
    std::ostringstream os;
    os << csv_header(meta) << "snr_db,trials,sym_err,bit_err,ser,ber,ci95\n";
    for (const SnrPoint& p : res.per_snr) {
      os << fmt(p.snr_db) << "," << p.trials << "," << p.symbol_errors << "," << p.bit_errors << "," << fmt(p.ser)
         << "," << fmt(p.ber) << "," << fmt(p.ci95) << "\n";
    }
    write_text(out, os.str());
  } else if (bound->parsed()) {
    json j = {{"max_family", max_family_to_json(max_ssd_family(bound_a))},
              {"claims", claims_to_json(verify_claims(bound_a))},
              {"metadata", metadata()}};
    write_text(out, dump(j));
  } else if (clifford->parsed()) {
    json mats = json::array();
    json j;
    if (fam_kind == "irreducible") {
      for (const CMatrix& m : ca_generators(cl_a)) mats.push_back(matrix_to_json(m));
      j["companion_hermitian"] = matrix_to_json(hurwitz_radon_family(cl_a).companion_hermitian);
    } else if (fam_kind == "reducible") {
      for (const CMatrix& m : reducible_generators(cl_a)) mats.push_back(matrix_to_json(m));
    } else {
      throw precondition_error("unknown clifford family '" + fam_kind + "'");
    }
    j["family"] = fam_kind;
    j["a"] = cl_a;
    j["generators"] = mats;
    j["metadata"] = metadata();
    write_text(out, dump(j));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const stbc::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const stbc::precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 1;
  }
}
