#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "qmeasure/audit.hpp"
#include "qmeasure/box.hpp"
#include "qmeasure/campaign.hpp"
#include "qmeasure/frontier.hpp"
#include "qmeasure/measurement.hpp"
#include "qmeasure/model_io.hpp"
#include "qmeasure/quantities.hpp"
#include "qmeasure/random.hpp"
#include "qmeasure/relations.hpp"
#include "qmeasure/sweep.hpp"

namespace py = pybind11;
using namespace qmeasure;

PYBIND11_MODULE(_qmeasure, m) {
  m.doc() = "Measurement-model simulator: error/disturbance quantities, "
            "uncertainty relations, audits, and searches";

  py::register_exception<NumericalFault>(m, "NumericalFault", PyExc_RuntimeError);
  py::register_exception<UniversalViolation>(m, "UniversalViolation",
                                             PyExc_RuntimeError);

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def(py::init<double, double>(), py::arg("alg"), py::arg("rel"))
      .def_readonly("alg", &Tolerances::alg)
      .def_readonly("rel", &Tolerances::rel);

  py::class_<ComplexOperator>(m, "ComplexOperator")
      .def(py::init<Matrix>(), py::arg("entries"))
      .def_property_readonly("dim", &ComplexOperator::dim)
      .def_property_readonly("mat",
                             [](const ComplexOperator& x) { return x.mat(); })
      .def("is_hermitian", &ComplexOperator::is_hermitian,
           py::arg("tol") = Tolerances{}.alg)
      .def("is_unitary", &ComplexOperator::is_unitary,
           py::arg("tol") = Tolerances{}.alg)
      .def("adjoint", &ComplexOperator::adjoint)
      .def("__add__",
           [](const ComplexOperator& x, const ComplexOperator& y) { return x + y; })
      .def("__sub__",
           [](const ComplexOperator& x, const ComplexOperator& y) { return x - y; })
      .def("__mul__",
           [](const ComplexOperator& x, const ComplexOperator& y) { return x * y; })
      .def("__mul__", [](const ComplexOperator& x, Complex c) { return c * x; })
      .def("__rmul__", [](const ComplexOperator& x, Complex c) { return c * x; })
      .def("__neg__", [](const ComplexOperator& x) { return -x; });

  m.def("pauli_x", &pauli_x);
  m.def("pauli_y", &pauli_y);
  m.def("pauli_z", &pauli_z);
  m.def("pauli_axis", &pauli_axis, py::arg("phi"));

  py::class_<PureState>(m, "PureState")
      .def(py::init<Vector, double>(), py::arg("amplitudes"),
           py::arg("tol") = Tolerances{}.alg)
      .def_static("normalized", &PureState::normalized, py::arg("amplitudes"))
      .def_static("basis", &PureState::basis, py::arg("dim"), py::arg("k"))
      .def_property_readonly("dim", &PureState::dim)
      .def_property_readonly("vec", [](const PureState& s) { return s.vec(); });

  m.def("tensor",
        py::overload_cast<const ComplexOperator&, const ComplexOperator&>(&tensor),
        py::arg("x"), py::arg("y"));
  m.def("tensor", py::overload_cast<const PureState&, const PureState&>(&tensor),
        py::arg("a"), py::arg("b"));
  m.def("expectation", &expectation, py::arg("x"), py::arg("state"));
  m.def("commutator", &commutator, py::arg("x"), py::arg("y"));
  m.def("dispersion", &dispersion, py::arg("x"), py::arg("state"),
        py::arg("tol") = Tolerances());

  py::class_<MeasurementModel>(m, "MeasurementModel")
      .def(py::init<Eigen::Index, PureState, ComplexOperator,
                    std::map<std::string, ComplexOperator>, Tolerances>(),
           py::arg("d_sys"), py::arg("xi"), py::arg("interaction"),
           py::arg("pointers"), py::arg("tol") = Tolerances())
      .def_property_readonly("d_sys", &MeasurementModel::d_sys)
      .def_property_readonly("d_app", &MeasurementModel::d_app)
      .def_property_readonly("total_dim", &MeasurementModel::total_dim)
      .def_property_readonly("xi", &MeasurementModel::xi)
      .def_property_readonly("interaction", &MeasurementModel::interaction)
      .def("pointer_labels", &MeasurementModel::pointer_labels)
      .def("has_pointer", &MeasurementModel::has_pointer, py::arg("label"))
      .def("pointer", &MeasurementModel::pointer, py::arg("label"))
      .def("m_out", &MeasurementModel::m_out)
      .def("n_out", &MeasurementModel::n_out)
      .def("b_out", &MeasurementModel::b_out, py::arg("b"));

  m.def("build_projective_spin", &build_projective_spin, py::arg("phi"),
        py::arg("tol") = Tolerances());
  m.def("build_noisy_unbiased", &build_noisy_unbiased, py::arg("a"),
        py::arg("noise"), py::arg("xi_noise"), py::arg("tol") = Tolerances());
  m.def("build_from_kraus", &build_from_kraus, py::arg("kraus"),
        py::arg("pointer_values"), py::arg("tol") = Tolerances());
  m.def("build_unsharp_joint_spin", &build_unsharp_joint_spin, py::arg("lam"),
        py::arg("mu"), py::arg("tol") = Tolerances());

  m.def("error_epsilon", &error_epsilon, py::arg("model"), py::arg("a"),
        py::arg("psi"));
  m.def("disturbance_eta", &disturbance_eta, py::arg("model"), py::arg("b"),
        py::arg("psi"));
  m.def("error_epsilon_second", &error_epsilon_second, py::arg("model"),
        py::arg("b"), py::arg("psi"));

  py::class_<QuantitySet>(m, "QuantitySet")
      .def_readonly("sigma_a", &QuantitySet::sigma_a)
      .def_readonly("sigma_b", &QuantitySet::sigma_b)
      .def_readonly("eps_a", &QuantitySet::eps_a)
      .def_readonly("eta_b", &QuantitySet::eta_b)
      .def_readonly("bar_eps_a", &QuantitySet::bar_eps_a)
      .def_readonly("bar_eta_b", &QuantitySet::bar_eta_b)
      .def_readonly("sigma_m_out", &QuantitySet::sigma_m_out)
      .def_readonly("sigma_n_out", &QuantitySet::sigma_n_out)
      .def_readonly("sigma_b_out", &QuantitySet::sigma_b_out)
      .def_readonly("bound_half", &QuantitySet::bound_half)
      .def_readonly("bound_full", &QuantitySet::bound_full);
  m.def("quantity_set", &quantity_set, py::arg("model"), py::arg("a"),
        py::arg("b"), py::arg("psi"));

  py::enum_<RelationId>(m, "RelationId")
      .value("r1_robertson", RelationId::r1_robertson)
      .value("r2_error_error", RelationId::r2_error_error)
      .value("r3_arthurs_kelly", RelationId::r3_arthurs_kelly)
      .value("r4_naive_error_disturbance", RelationId::r4_naive_error_disturbance)
      .value("r5_ozawa", RelationId::r5_ozawa)
      .value("r6_heisenberg_universal", RelationId::r6_heisenberg_universal)
      .value("r7_arthurs_kelly_modified", RelationId::r7_arthurs_kelly_modified)
      .value("r8_sigma_sum", RelationId::r8_sigma_sum)
      .value("r9_sigma_product_sum", RelationId::r9_sigma_product_sum)
      .value("r10_difference_robertson", RelationId::r10_difference_robertson)
      .value("r11_error_error_rms", RelationId::r11_error_error_rms)
      .value("r12_precise_zero", RelationId::r12_precise_zero)
      .value("r13_box_momentum_position", RelationId::r13_box_momentum_position);

  py::enum_<RelationStatus>(m, "RelationStatus")
      .value("satisfied", RelationStatus::satisfied)
      .value("saturated", RelationStatus::saturated)
      .value("violated", RelationStatus::violated);

  py::enum_<Universality>(m, "Universality")
      .value("universal", Universality::universal)
      .value("conditional", Universality::conditional);

  py::class_<RelationReport>(m, "RelationReport")
      .def_readonly("id", &RelationReport::id)
      .def_readonly("lhs", &RelationReport::lhs)
      .def_readonly("rhs", &RelationReport::rhs)
      .def_readonly("margin", &RelationReport::margin)
      .def_readonly("status", &RelationReport::status)
      .def_readonly("universality", &RelationReport::universality)
      .def("__repr__", [](const RelationReport& r) {
        return "<RelationReport " + to_string(r.id) + " " + to_string(r.status) +
               ">";
      });

  py::class_<SuiteResult>(m, "SuiteResult")
      .def_readonly("reports", &SuiteResult::reports)
      .def_readonly("skipped", &SuiteResult::skipped);

  m.def("all_relation_ids",
        []() { return all_relation_ids(); });
  m.def("robertson_report", &robertson_report, py::arg("x"), py::arg("y"),
        py::arg("state"), py::arg("tol") = Tolerances());
  m.def("evaluate_all", &evaluate_all, py::arg("model"), py::arg("a"),
        py::arg("b"), py::arg("psi"), py::arg("ids") = all_relation_ids(),
        py::arg("tol") = Tolerances());

  py::class_<BiasReport>(m, "BiasReport")
      .def_readonly("label", &BiasReport::label)
      .def_readonly("reduced_deviation_norm", &BiasReport::reduced_deviation_norm)
      .def_readonly("is_unbiased", &BiasReport::is_unbiased);
  m.def("reduce_to_system", &reduce_to_system, py::arg("model"), py::arg("x_total"));
  m.def("check_unbiased_measurement", &check_unbiased_measurement,
        py::arg("model"), py::arg("a"));
  m.def("check_unbiased_disturbance", &check_unbiased_disturbance,
        py::arg("model"), py::arg("b"));

  py::class_<StrongConsequenceCheck>(m, "StrongConsequenceCheck")
      .def_readonly("precondition_ok", &StrongConsequenceCheck::precondition_ok)
      .def_readonly("measurement_bias", &StrongConsequenceCheck::measurement_bias)
      .def_readonly("reduced_product_norm",
                    &StrongConsequenceCheck::reduced_product_norm)
      .def_readonly("max_abs_expectation",
                    &StrongConsequenceCheck::max_abs_expectation)
      .def_readonly("trials", &StrongConsequenceCheck::trials);
  m.def("strong_consequence_check", &strong_consequence_check, py::arg("model"),
        py::arg("a"), py::arg("b"), py::arg("trials"), py::arg("seed"));

  py::class_<VarianceDecomposition>(m, "VarianceDecomposition")
      .def_readonly("lhs", &VarianceDecomposition::lhs)
      .def_readonly("rhs", &VarianceDecomposition::rhs)
      .def_readonly("gap", &VarianceDecomposition::gap);
  m.def("variance_decomposition_check", &variance_decomposition_check,
        py::arg("model"), py::arg("a"), py::arg("psi"));

  py::enum_<ConsistencyVerdict>(m, "ConsistencyVerdict")
      .value("consistent", ConsistencyVerdict::consistent)
      .value("tradeoff", ConsistencyVerdict::tradeoff)
      .value("fault", ConsistencyVerdict::fault);

  py::class_<InconsistencyCertificate>(m, "InconsistencyCertificate")
      .def_readonly("eps_a", &InconsistencyCertificate::eps_a)
      .def_readonly("bias_disturbance_b",
                    &InconsistencyCertificate::bias_disturbance_b)
      .def_readonly("commutator_expectation",
                    &InconsistencyCertificate::commutator_expectation)
      .def_readonly("out_commutator_expectation",
                    &InconsistencyCertificate::out_commutator_expectation)
      .def_readonly("verdict", &InconsistencyCertificate::verdict);
  m.def("inconsistency_certificate", &inconsistency_certificate, py::arg("model"),
        py::arg("a"), py::arg("b"), py::arg("psi"));

  py::class_<BoxState>(m, "BoxState")
      .def(py::init<double, double, int, Eigen::VectorXcd, const Tolerances&>(),
           py::arg("L"), py::arg("hbar"), py::arg("n_max"), py::arg("coeffs"),
           py::arg("tol") = Tolerances())
      .def_readonly("L", &BoxState::L)
      .def_readonly("hbar", &BoxState::hbar)
      .def_readonly("n_max", &BoxState::n_max)
      .def_readonly("coeffs", &BoxState::coeffs)
      .def_property_readonly("dim", &BoxState::dim);
  m.def("delta_x", &delta_x, py::arg("state"), py::arg("tol") = Tolerances());
  m.def("delta_p", &delta_p, py::arg("state"), py::arg("tol") = Tolerances());
  m.def("boundary_term", &boundary_term, py::arg("state"));
  m.def("boundary_commutator_algebra", &boundary_commutator_algebra,
        py::arg("state"));
  m.def("boundary_commutator_quadrature", &boundary_commutator_quadrature,
        py::arg("state"), py::arg("intervals") = 4096);
  m.def("check_boundary_relation", &check_boundary_relation, py::arg("state"),
        py::arg("tol") = Tolerances());
  m.def(
      "random_box_state",
      [](int n_max, double L, double hbar, std::uint64_t seed) {
        Rng rng(seed);
        return random_box_state(n_max, L, hbar, rng);
      },
      py::arg("n_max"), py::arg("L"), py::arg("hbar"), py::arg("seed"));

  m.def(
      "random_state",
      [](Eigen::Index dim, std::uint64_t seed) {
        Rng rng(seed);
        return random_state(dim, rng);
      },
      py::arg("dim"), py::arg("seed"));
  m.def(
      "random_hermitian",
      [](Eigen::Index dim, std::uint64_t seed) {
        Rng rng(seed);
        return random_hermitian(dim, rng);
      },
      py::arg("dim"), py::arg("seed"));
  m.def(
      "haar_unitary",
      [](Eigen::Index dim, std::uint64_t seed) {
        Rng rng(seed);
        return haar_unitary(dim, rng);
      },
      py::arg("dim"), py::arg("seed"));

  py::class_<SweepRecord>(m, "SweepRecord")
      .def_readonly("phi", &SweepRecord::phi)
      .def_readonly("quantities", &SweepRecord::quantities)
      .def_readonly("suite", &SweepRecord::suite);
  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("scenario", &SweepResult::scenario)
      .def_readonly("parameter_name", &SweepResult::parameter_name)
      .def_readonly("records", &SweepResult::records)
      .def_readonly("seed", &SweepResult::seed);
  m.def("run_spin_sweep", &run_spin_sweep, py::arg("phi_start"),
        py::arg("phi_end"), py::arg("steps"), py::arg("seed") = 0,
        py::arg("tol") = Tolerances());
  m.def("sweep_csv", &sweep_csv, py::arg("result"));

  py::enum_<CampaignSuite>(m, "CampaignSuite")
      .value("robertson", CampaignSuite::robertson)
      .value("universal_relations", CampaignSuite::universal_relations)
      .value("unbiasedness_theorem", CampaignSuite::unbiasedness_theorem)
      .value("box", CampaignSuite::box);
  py::class_<CampaignRecord>(m, "CampaignRecord")
      .def_readonly("index", &CampaignRecord::index)
      .def_readonly("kind", &CampaignRecord::kind)
      .def_readonly("worst_margin", &CampaignRecord::worst_margin)
      .def_readonly("pass_", &CampaignRecord::pass);
  py::class_<CampaignResult>(m, "CampaignResult")
      .def_readonly("suite", &CampaignResult::suite)
      .def_readonly("seed", &CampaignResult::seed)
      .def_readonly("instances", &CampaignResult::instances)
      .def_readonly("passes", &CampaignResult::passes)
      .def_readonly("failures", &CampaignResult::failures)
      .def_readonly("worst_margin", &CampaignResult::worst_margin)
      .def_readonly("records", &CampaignResult::records);
  m.def("run_property_campaign", &run_property_campaign, py::arg("suite"),
        py::arg("instances"), py::arg("seed"), py::arg("tol") = Tolerances());
  m.def("campaign_csv", &campaign_csv, py::arg("result"));

  py::class_<ModelParameterization>(m, "ModelParameterization")
      .def(py::init<Eigen::Index, Eigen::Index, PureState, ComplexOperator,
                    const Tolerances&>(),
           py::arg("d_sys"), py::arg("d_app"), py::arg("xi"), py::arg("pointer"),
           py::arg("tol") = Tolerances())
      .def_static("standard", &ModelParameterization::standard, py::arg("d_sys"),
                  py::arg("d_app"), py::arg("tol") = Tolerances())
      .def_property_readonly("theta_size", &ModelParameterization::theta_size)
      .def("generator", &ModelParameterization::generator, py::arg("theta"))
      .def("realize", &ModelParameterization::realize, py::arg("theta"))
      .def("parameters_for_unitary", &ModelParameterization::parameters_for_unitary,
           py::arg("u"))
      .def("flip_parameters", &ModelParameterization::flip_parameters,
           py::arg("a"));

  py::class_<FrontierPoint>(m, "FrontierPoint")
      .def_readonly("theta", &FrontierPoint::theta)
      .def_readonly("eps", &FrontierPoint::eps)
      .def_readonly("eta", &FrontierPoint::eta)
      .def_readonly("reports", &FrontierPoint::reports);
  py::class_<BiasBlowupRecord>(m, "BiasBlowupRecord")
      .def_readonly("eps_cap", &BiasBlowupRecord::eps_cap)
      .def_readonly("achieved_eps", &BiasBlowupRecord::achieved_eps)
      .def_readonly("min_bias_b", &BiasBlowupRecord::min_bias_b)
      .def_readonly("evaluations", &BiasBlowupRecord::evaluations);
  m.def("trace_frontier", &trace_frontier, py::arg("par"), py::arg("a"),
        py::arg("b"), py::arg("psi"), py::arg("budget"), py::arg("seed"),
        py::arg("theta0") = Eigen::VectorXd());
  m.def("bias_blowup_probe", &bias_blowup_probe, py::arg("par"), py::arg("a"),
        py::arg("b"), py::arg("psi"), py::arg("caps"), py::arg("budget"),
        py::arg("seed"));
  m.def("frontier_csv", &frontier_csv, py::arg("points"));
  m.def("blowup_csv", &blowup_csv, py::arg("records"));

  m.def(
      "model_to_json_string",
      [](const MeasurementModel& model) { return model_to_json(model).dump(2); },
      py::arg("model"));
  m.def(
      "model_from_json_string",
      [](const std::string& text, const Tolerances& tol) {
        return model_from_json(nlohmann::json::parse(text), tol);
      },
      py::arg("text"), py::arg("tol") = Tolerances());
  m.def(
      "box_state_to_json_string",
      [](const BoxState& state) { return box_state_to_json(state).dump(2); },
      py::arg("state"));
  m.def(
      "box_state_from_json_string",
      [](const std::string& text, const Tolerances& tol) {
        return box_state_from_json(nlohmann::json::parse(text), tol);
      },
      py::arg("text"), py::arg("tol") = Tolerances());
}
