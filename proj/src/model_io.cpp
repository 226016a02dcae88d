#include "qmeasure/model_io.hpp"

#include <fstream>
#include <sstream>

namespace qmeasure {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument("expected a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out.push_back(complex_to_json(m(r, c)));
    }
  }
  return out;
}

Matrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols,
                        const std::string& what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows * cols) {
    throw std::invalid_argument(what + ": expected " + std::to_string(rows * cols) +
                                " row-major [re, im] entries");
  }
  Matrix m(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(j[k++]);
    }
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(complex_to_json(v(i)));
  }
  return out;
}

Vector vector_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument(what + ": expected a nonempty list of [re, im] pairs");
  }
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v(i) = complex_from_json(j[static_cast<std::size_t>(i)]);
  }
  return v;
}

const json& require_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

Eigen::Index require_positive_int(const json& j, const char* key) {
  const json& f = require_field(j, key);
  if (!f.is_number_integer() || f.get<long long>() < 1) {
    throw std::invalid_argument(std::string("field \"") + key +
                                "\" must be a positive integer");
  }
  return static_cast<Eigen::Index>(f.get<long long>());
}

}  // namespace

json model_to_json(const MeasurementModel& model) {
  json pointers = json::object();
  for (const std::string& label : model.pointer_labels()) {
    pointers[label] = matrix_to_json(model.pointer(label).mat());
  }
  return json{{"d_sys", model.d_sys()},
              {"d_app", model.d_app()},
              {"xi", vector_to_json(model.xi().vec())},
              {"U", matrix_to_json(model.interaction().mat())},
              {"pointers", pointers}};
}

MeasurementModel model_from_json(const json& j, const Tolerances& tol) {
  if (!j.is_object()) {
    throw std::invalid_argument("model: expected a JSON object");
  }
  const Eigen::Index d_sys = require_positive_int(j, "d_sys");
  const Eigen::Index d_app = require_positive_int(j, "d_app");
  const Eigen::Index total = d_sys * d_app;

  Vector xi = vector_from_json(require_field(j, "xi"), "xi");
  if (xi.size() != d_app) {
    throw std::invalid_argument("xi: expected d_app amplitudes");
  }
  Matrix u = matrix_from_json(require_field(j, "U"), total, total, "U");

  const json& pj = require_field(j, "pointers");
  if (!pj.is_object() || pj.empty()) {
    throw std::invalid_argument("pointers: expected a nonempty label -> matrix map");
  }
  std::map<std::string, ComplexOperator> pointers;
  for (auto it = pj.begin(); it != pj.end(); ++it) {
    pointers.emplace(it.key(),
                     ComplexOperator(matrix_from_json(it.value(), d_app, d_app,
                                                      "pointer " + it.key())));
  }
  return MeasurementModel(d_sys, PureState(std::move(xi), tol.alg),
                          ComplexOperator(std::move(u)), std::move(pointers), tol);
}

json box_state_to_json(const BoxState& state) {
  return json{{"L", state.L},
              {"hbar", state.hbar},
              {"n_max", state.n_max},
              {"coeffs", vector_to_json(state.coeffs)}};
}

BoxState box_state_from_json(const json& j, const Tolerances& tol) {
  if (!j.is_object()) {
    throw std::invalid_argument("box state: expected a JSON object");
  }
  const json& lj = require_field(j, "L");
  const json& hj = require_field(j, "hbar");
  if (!lj.is_number() || !hj.is_number()) {
    throw std::invalid_argument("box state: L and hbar must be numbers");
  }
  const int n_max = static_cast<int>(require_positive_int(j, "n_max"));
  Vector coeffs = vector_from_json(require_field(j, "coeffs"), "coeffs");
  return BoxState(lj.get<double>(), hj.get<double>(), n_max, std::move(coeffs), tol);
}

json report_to_json(const RelationReport& report) {
  return json{{"id", to_string(report.id)},
              {"lhs", report.lhs},
              {"rhs", report.rhs},
              {"margin", report.margin},
              {"status", to_string(report.status)},
              {"universality", to_string(report.universality)}};
}

json quantity_set_to_json(const QuantitySet& q) {
  json out{{"sigma_A", q.sigma_a},
           {"sigma_B", q.sigma_b},
           {"eps_A", q.eps_a},
           {"eta_B", q.eta_b},
           {"bar_eps_A", q.bar_eps_a},
           {"bar_eta_B", q.bar_eta_b},
           {"sigma_Mout", q.sigma_m_out},
           {"sigma_Bout", q.sigma_b_out},
           {"bound_half", q.bound_half},
           {"bound_full", q.bound_full}};
  if (q.sigma_n_out.has_value()) {
    out["sigma_Nout"] = *q.sigma_n_out;
  }
  return out;
}

json suite_to_json(const SuiteResult& suite) {
  json reports = json::array();
  for (const RelationReport& r : suite.reports) {
    reports.push_back(report_to_json(r));
  }
  json skipped = json::array();
  for (const auto& [id, reason] : suite.skipped) {
    skipped.push_back(json{{"id", to_string(id)}, {"reason", reason}});
  }
  return json{{"reports", reports}, {"skipped", skipped}};
}

json bias_report_to_json(const BiasReport& report) {
  return json{{"label", report.label},
              {"reduced_deviation_norm", report.reduced_deviation_norm},
              {"is_unbiased", report.is_unbiased}};
}

json certificate_to_json(const InconsistencyCertificate& cert) {
  return json{{"eps_A", cert.eps_a},
              {"bias_disturbance_B", cert.bias_disturbance_b},
              {"commutator_expectation", cert.commutator_expectation},
              {"out_commutator_expectation", cert.out_commutator_expectation},
              {"verdict", to_string(cert.verdict)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open file: " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot open file for writing: " + path);
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed writing to " + path);
  }
}

}  // namespace qmeasure
