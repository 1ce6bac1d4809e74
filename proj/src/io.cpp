#include "stbc/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace stbc {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw precondition_error(std::string("json: missing field '") + key + "'");
  return j.at(key);
}

cplx scalar_from_json(const json& e) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    throw precondition_error("json: complex entries must be [re, im]");
  }
  return {e[0].get<double>(), e[1].get<double>()};
}

json scalar_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<CMatrix> matrices_from_json(const json& j) {
  if (!j.is_array()) throw precondition_error("json: expected a list of matrices");
  std::vector<CMatrix> out;
  for (const json& m : j) out.push_back(matrix_from_json(m));
  return out;
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) entries.push_back(scalar_to_json(m(i, k)));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

CMatrix matrix_from_json(const json& j) {
  const auto rows = field(j, "rows").get<long>();
  const auto cols = field(j, "cols").get<long>();
  const json& e = field(j, "entries");
  if (rows <= 0 || cols <= 0 || !e.is_array() || static_cast<long>(e.size()) != rows * cols) {
    throw precondition_error("json: matrix entries do not match rows * cols");
  }
  CMatrix m(rows, cols);
  for (long k = 0; k < rows * cols; ++k) m.data()[k] = scalar_from_json(e[static_cast<std::size_t>(k)]);
  return m;
}

json code_to_json(const LinearDispersionCode& code) {
  json wi = json::array(), wq = json::array();
  for (const CMatrix& m : code.weights_I()) wi.push_back(matrix_to_json(m));
  for (const CMatrix& m : code.weights_Q()) wq.push_back(matrix_to_json(m));
  return {{"n", code.n()}, {"K", code.K()}, {"label", code.label()}, {"weights_I", wi}, {"weights_Q", wq}};
}

LinearDispersionCode code_from_json(const json& j) {
  LinearDispersionCode code(matrices_from_json(field(j, "weights_I")), matrices_from_json(field(j, "weights_Q")),
                            j.value("label", std::string{}));
  if (j.contains("n") && j.at("n").get<int>() != code.n()) throw precondition_error("json: n does not match weights");
  if (j.contains("K") && j.at("K").get<int>() != code.K()) throw precondition_error("json: K does not match weights");
  return code;
}

json signal_set_to_json(const SignalSet& s, const std::vector<std::uint32_t>* bit_labels) {
  json pts = json::array();
  for (const cplx& p : s.points()) pts.push_back(scalar_to_json(p));
  json j = {{"label", s.label()}, {"normalization", to_string(s.normalization())}, {"points", pts}};
  if (bit_labels) j["bit_labels"] = *bit_labels;
  return j;
}

LabeledSignalSet signal_set_from_json(const json& j) {
  const json& pts = j.is_array() ? j : field(j, "points");
  if (!pts.is_array()) throw precondition_error("json: points must be a list");
  std::vector<cplx> points;
  for (const json& e : pts) points.push_back(scalar_from_json(e));
  // Stored points are already in their recorded convention; keep them raw.
  std::string label = j.is_object() ? j.value("label", std::string{}) : std::string{};
  LabeledSignalSet out{SignalSet(std::move(points), Normalization::Raw, std::move(label)), std::nullopt};
  if (j.is_object() && j.contains("bit_labels")) out.bit_labels = j.at("bit_labels").get<std::vector<std::uint32_t>>();
  return out;
}

json classification_to_json(const CodeClassification& c) {
  json v = json::array();
  for (const auto& x : c.violations) {
    v.push_back({{"condition", x.condition}, {"i", x.i + 1}, {"j", x.j + 1}, {"residual", x.residual}});
  }
  return {{"satisfies_eq4", c.satisfies_eq4},
          {"satisfies_eq5", c.satisfies_eq5},
          {"satisfies_eq6", c.satisfies_eq6},
          {"class_name", to_string(c.class_name)},
          {"violations", v}};
}

json max_family_to_json(const MaxFamilyResult& r) {
  json j = {{"a", r.a},
            {"k_max", r.k_max},
            {"vertices", r.vertices},
            {"edges", r.edges},
            {"nodes_visited", r.nodes_visited},
            {"restriction", kBoundRestriction}};
  if (r.witness) {
    j["witness"] = code_to_json(*r.witness);
    j["witness_class"] = to_string(classify(*r.witness).class_name);
    const auto universe = pauli_universe(r.a);
    json els = json::array();
    for (const auto& [x, y] : r.witness_elements) {
      els.push_back({{"I", universe[static_cast<std::size_t>(x)].to_string()},
                     {"Q", universe[static_cast<std::size_t>(y)].to_string()}});
    }
    j["witness_elements"] = els;
  }
  return j;
}

json claims_to_json(const ClaimsReport& r) {
  auto one = [](const ClaimCheck& c) {
    return json{{"K", c.K}, {"family_size", c.family_size}, {"families", c.families}, {"completions", c.completions}};
  };
  return {{"a", r.a},
          {"universe_size", r.universe_size},
          {"K_2a_plus_2", one(r.k_2a_plus_2)},
          {"K_2a_plus_1", one(r.k_2a_plus_1)},
          {"examined", r.examined()},
          {"confirmed", r.confirmed()},
          {"restriction", kBoundRestriction}};
}

json metadata(std::optional<std::uint64_t> seed) {
  const EnergyCalibration& cal = energy_calibration();
  json j = {{"library_version", kLibraryVersion},
            {"energy_convention", to_string(cal.chosen)},
            {"energy_calibrated", cal.matched},
            {"dp_definition", "(1/(2 sqrt n)) * min |det(dS^H dS)|^(1/(2n))"},
            {"snr_definition", "received signal power per receive antenna per channel use over noise variance; "
                               "E[tr S S^H] = n^2"}};
  if (seed) j["seed"] = *seed;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw io_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw io_error("write to '" + path + "' failed");
}

}  // namespace stbc
