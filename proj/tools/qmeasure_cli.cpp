// Command-line front end: scenario sweeps, randomized campaigns, frontier
// searches, box states, and model audits, with CSV or JSON output.

#include <cmath>
#include <complex>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qmeasure/audit.hpp"
#include "qmeasure/box.hpp"
#include "qmeasure/campaign.hpp"
#include "qmeasure/csv.hpp"
#include "qmeasure/frontier.hpp"
#include "qmeasure/model_io.hpp"
#include "qmeasure/quantities.hpp"
#include "qmeasure/relations.hpp"
#include "qmeasure/sweep.hpp"

namespace {

using nlohmann::json;
using namespace qmeasure;

struct GlobalOptions {
  std::uint64_t seed = 0;
  double tol_alg = Tolerances{}.alg;
  double tol_rel = Tolerances{}.rel;
  std::string out_path;
  std::string format = "csv";

  Tolerances tolerances() const { return Tolerances(tol_alg, tol_rel); }
};

void emit(const GlobalOptions& opts, const std::string& content) {
  if (opts.out_path.empty()) {
    std::cout << content;
  } else {
    write_text_file(opts.out_path, content);
  }
}

std::string report_csv(const RelationReport& report) {
  std::string out = "id,lhs,rhs,margin,status\n";
  out += to_string(report.id) + ',' + format_double(report.lhs) + ',' +
         format_double(report.rhs) + ',' + format_double(report.margin) + ',' +
         to_string(report.status) + '\n';
  return out;
}

// Default observable pair for audits. Qubit systems get the conjugate spin
// pair from the sweep scenario; larger systems get a ladder observable and a
// cyclic hop, which never commute.
ComplexOperator default_a(Eigen::Index d_sys) {
  if (d_sys == 2) return pauli_x();
  Matrix m = Matrix::Zero(d_sys, d_sys);
  for (Eigen::Index k = 0; k < d_sys; ++k) {
    m(k, k) = static_cast<double>(d_sys - 1 - 2 * k);
  }
  return ComplexOperator(std::move(m));
}

ComplexOperator default_b(Eigen::Index d_sys) {
  if (d_sys == 2) return pauli_y();
  Matrix m = Matrix::Zero(d_sys, d_sys);
  for (Eigen::Index k = 0; k < d_sys; ++k) {
    m((k + 1) % d_sys, k) += 1.0;
    m(k, (k + 1) % d_sys) += 1.0;
  }
  return ComplexOperator(std::move(m));
}

int run_sweep_command(const GlobalOptions& opts, double start, double end,
                      int points) {
  SweepResult result = run_spin_sweep(start, end, points, opts.seed,
                                      opts.tolerances());
  if (opts.format == "json") {
    emit(opts, sweep_to_json(result).dump(2) + "\n");
  } else {
    emit(opts, sweep_csv(result));
  }
  return 0;
}

int run_campaign_command(const GlobalOptions& opts, const std::string& suite,
                         int instances) {
  CampaignResult result = run_property_campaign(
      campaign_suite_from_string(suite), instances, opts.seed,
      opts.tolerances());
  if (opts.format == "json") {
    emit(opts, campaign_to_json(result).dump(2) + "\n");
  } else {
    emit(opts, campaign_csv(result));
  }
  if (result.failures > 0) {
    std::cerr << "campaign " << suite << ": " << result.failures << " of "
              << result.instances << " instances failed (worst margin "
              << format_double(result.worst_margin) << ")\n";
    return 3;
  }
  return 0;
}

int run_frontier_command(const GlobalOptions& opts, int d_sys, int d_app,
                         int budget, const std::vector<double>& caps) {
  const Tolerances tol = opts.tolerances();
  ModelParameterization par = ModelParameterization::standard(d_sys, d_app, tol);
  const ComplexOperator a = default_a(d_sys);
  const ComplexOperator b = default_b(d_sys);
  const PureState psi = PureState::basis(d_sys, 0);

  if (!caps.empty()) {
    std::vector<BiasBlowupRecord> records =
        bias_blowup_probe(par, a, b, psi, caps, budget, opts.seed);
    if (opts.format == "json") {
      json j;
      j["records"] = json::array();
      for (const BiasBlowupRecord& r : records) {
        j["records"].push_back({{"eps_cap", r.eps_cap},
                                {"achieved_eps", r.achieved_eps},
                                {"min_bias_B", r.min_bias_b},
                                {"evaluations", r.evaluations}});
      }
      emit(opts, j.dump(2) + "\n");
    } else {
      emit(opts, blowup_csv(records));
    }
    return 0;
  }

  std::vector<FrontierPoint> points =
      trace_frontier(par, a, b, psi, budget, opts.seed);
  if (opts.format == "json") {
    json j;
    j["points"] = json::array();
    for (const FrontierPoint& p : points) {
      json reports = json::array();
      for (const RelationReport& r : p.reports) reports.push_back(report_to_json(r));
      j["points"].push_back(
          {{"eps", p.eps}, {"eta", p.eta}, {"reports", reports}});
    }
    emit(opts, j.dump(2) + "\n");
  } else {
    emit(opts, frontier_csv(points));
  }
  return 0;
}

int run_box_command(const GlobalOptions& opts, const std::string& state_path,
                    const std::string& example) {
  const Tolerances tol = opts.tolerances();
  auto make_state = [&]() -> BoxState {
    if (!state_path.empty()) {
      return box_state_from_json(read_json_file(state_path), tol);
    }
    if (example == "single-mode") {
      Eigen::VectorXcd c = Eigen::VectorXcd::Zero(3);
      c(1) = 1.0;  // the n=0 mode
      return BoxState(1.0, 1.0, 1, c, tol);
    }
    if (example == "two-mode") {
      Eigen::VectorXcd c = Eigen::VectorXcd::Zero(3);
      c(1) = 1.0 / std::sqrt(2.0);  // n=0
      c(2) = 1.0 / std::sqrt(2.0);  // n=1
      return BoxState(1.0, 1.0, 1, c, tol);
    }
    throw std::invalid_argument("box: provide --state FILE or --example NAME");
  };
  const BoxState state = make_state();
  const RelationReport report = check_boundary_relation(state, tol);
  if (opts.format == "json") {
    emit(opts, report_to_json(report).dump(2) + "\n");
  } else {
    emit(opts, report_csv(report));
  }
  return 0;
}

int run_audit_command(const GlobalOptions& opts, const std::string& model_path,
                      bool use_spin, double phi, bool use_noisy, double g,
                      const std::string& export_path) {
  const Tolerances tol = opts.tolerances();
  const int sources = (model_path.empty() ? 0 : 1) + (use_spin ? 1 : 0) +
                      (use_noisy ? 1 : 0);
  if (sources != 1) {
    throw std::invalid_argument(
        "audit: choose exactly one of --model, --spin, --noisy");
  }

  MeasurementModel model = [&]() {
    if (!model_path.empty()) {
      return model_from_json(read_json_file(model_path), tol);
    }
    if (use_spin) return build_projective_spin(phi, tol);
    return build_noisy_unbiased(pauli_x(), ComplexOperator(g * pauli_x().mat()),
                                PureState::basis(2, 0), tol);
  }();

  if (!export_path.empty()) {
    write_text_file(export_path, model_to_json(model).dump(2) + "\n");
  }

  const ComplexOperator a = default_a(model.d_sys());
  const ComplexOperator b = default_b(model.d_sys());
  const PureState psi = PureState::basis(model.d_sys(), 0);

  const BiasReport measurement = check_unbiased_measurement(model, a);
  const BiasReport disturbance = check_unbiased_disturbance(model, b);
  const InconsistencyCertificate cert = inconsistency_certificate(model, a, b, psi);

  if (opts.format == "json") {
    json j;
    j["measurement"] = bias_report_to_json(measurement);
    j["disturbance"] = bias_report_to_json(disturbance);
    j["certificate"] = certificate_to_json(cert);
    j["quantities"] = quantity_set_to_json(quantity_set(model, a, b, psi));
    emit(opts, j.dump(2) + "\n");
  } else {
    std::string out =
        "eps_A,bias_disturbance_B,commutator_expectation,"
        "out_commutator_expectation,verdict\n";
    out += format_double(cert.eps_a) + ',' +
           format_double(cert.bias_disturbance_b) + ',' +
           format_double(cert.commutator_expectation) + ',' +
           format_double(cert.out_commutator_expectation) + ',' +
           to_string(cert.verdict) + '\n';
    emit(opts, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum measurement-model explorer"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--seed", opts.seed, "Random seed for all stochastic steps");
  app.add_option("--tol-alg", opts.tol_alg, "Algebraic zero tolerance");
  app.add_option("--tol-rel", opts.tol_rel, "Relative comparison tolerance");
  app.add_option("--out", opts.out_path, "Write output to this file instead of stdout");
  app.add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  double sweep_start = 0.0;
  double sweep_end = std::numbers::pi / 2.0;
  int sweep_points = 91;
  CLI::App* sweep = app.add_subcommand(
      "spin-sweep", "Sweep the projective spin model over a detuning angle");
  sweep->fallthrough();
  sweep->add_option("--start", sweep_start, "Grid start angle in radians");
  sweep->add_option("--end", sweep_end, "Grid end angle in radians");
  sweep->add_option("--points", sweep_points, "Number of grid points");

  std::string campaign_suite;
  int campaign_instances = 100;
  CLI::App* campaign = app.add_subcommand(
      "campaign", "Run a randomized property campaign");
  campaign->fallthrough();
  campaign->add_option("--suite", campaign_suite,
                       "One of: robertson, universal-relations, "
                       "unbiasedness-theorem, box")
      ->required();
  campaign->add_option("--instances", campaign_instances,
                       "Number of random instances");

  int frontier_d_sys = 2;
  int frontier_d_app = 2;
  int frontier_budget = 2000;
  std::vector<double> frontier_caps;
  CLI::App* frontier = app.add_subcommand(
      "frontier", "Search the error-disturbance tradeoff frontier");
  frontier->fallthrough();
  frontier->add_option("--d-sys", frontier_d_sys, "System dimension");
  frontier->add_option("--d-app", frontier_d_app, "Apparatus dimension");
  frontier->add_option("--budget", frontier_budget,
                       "Total model-evaluation budget");
  frontier->add_option("--caps", frontier_caps,
                       "Run the bias blow-up probe with these strictly "
                       "decreasing error caps");

  std::string box_state_path;
  std::string box_example;
  CLI::App* box = app.add_subcommand(
      "box", "Evaluate the bounded-interval uncertainty relation on a state");
  box->fallthrough();
  box->add_option("--state", box_state_path, "State file (JSON)");
  box->add_option("--example", box_example, "Built-in example state")
      ->check(CLI::IsMember({"single-mode", "two-mode"}));

  std::string audit_model_path;
  double audit_phi = 0.0;
  double audit_g = 0.5;
  std::string audit_export_path;
  CLI::App* audit = app.add_subcommand(
      "audit", "Check a measurement model for pointer and disturbance bias");
  audit->fallthrough();
  audit->add_option("--model", audit_model_path, "Model file (JSON)");
  CLI::Option* spin_opt =
      audit->add_option("--spin", audit_phi,
                        "Audit the projective spin model at this angle");
  CLI::Option* noisy_opt =
      audit->add_option("--noisy", audit_g,
                        "Audit the noisy unbiased model with this coupling");
  audit->add_option("--export-model", audit_export_path,
                    "Also write the audited model to this file");

  try {
    app.parse(argc, argv);

    const GlobalOptions parsed = opts;
    if (sweep->parsed()) {
      return run_sweep_command(parsed, sweep_start, sweep_end, sweep_points);
    }
    if (campaign->parsed()) {
      return run_campaign_command(parsed, campaign_suite, campaign_instances);
    }
    if (frontier->parsed()) {
      return run_frontier_command(parsed, frontier_d_sys, frontier_d_app,
                                  frontier_budget, frontier_caps);
    }
    if (box->parsed()) {
      return run_box_command(parsed, box_state_path, box_example);
    }
    if (audit->parsed()) {
      return run_audit_command(parsed, audit_model_path,
                               spin_opt->count() > 0, audit_phi,
                               noisy_opt->count() > 0, audit_g,
                               audit_export_path);
    }
    return 0;
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UniversalViolation& e) {
    std::cerr << "universal relation violation: " << e.what() << "\n";
    return 3;
  } catch (const NumericalFault& e) {
    std::cerr << "numerical fault: " << e.what() << "\n";
    return 3;
  }
}
