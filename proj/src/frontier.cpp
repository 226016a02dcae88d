#include "qmeasure/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "qmeasure/audit.hpp"
#include "qmeasure/csv.hpp"
#include "qmeasure/quantities.hpp"

namespace qmeasure {

namespace {

const std::vector<RelationId>& spot_check_ids() {
  static const std::vector<RelationId> ids = {
      RelationId::r1_robertson, RelationId::r5_ozawa,
      RelationId::r6_heisenberg_universal, RelationId::r10_difference_robertson};
  return ids;
}

void require_finite(const Eigen::VectorXd& theta, Eigen::Index expected) {
  if (theta.size() != expected) {
    throw std::invalid_argument("parameter vector has wrong length");
  }
  if (!theta.allFinite()) {
    throw std::invalid_argument("parameter vector has non-finite entries");
  }
}

// One objective evaluation, recorded for the frontier pool.
struct Evaluation {
  Eigen::VectorXd theta;
  double eps = 0.0;
  double eta = 0.0;
  double bias_b = -1.0;  // negative when not computed at this point
};

// Shared evaluation bookkeeping for both searches: counts against the
// budget, records every point, and runs the invariant spot checks.
class SearchContext {
 public:
  SearchContext(const ModelParameterization& par, const ComplexOperator& a,
                const ComplexOperator& b, const PureState& psi, int budget,
                bool bias_every_eval)
      : par_(par), a_(a), b_(b), psi_(psi), budget_(budget),
        bias_every_eval_(bias_every_eval),
        comm_(std::abs(expectation(commutator(a, b), psi))) {}

  bool exhausted() const { return used_ >= budget_; }
  int used() const { return used_; }
  const std::vector<Evaluation>& pool() const { return pool_; }

  std::optional<Evaluation> evaluate(const Eigen::VectorXd& theta) {
    if (exhausted()) return std::nullopt;
    ++used_;
    MeasurementModel model = par_.realize(theta);
    Evaluation ev;
    ev.theta = theta;
    ev.eps = error_epsilon(model, a_, psi_);
    ev.eta = disturbance_eta(model, b_, psi_);

    const bool spot = used_ % 10 == 0;
    if (spot || bias_every_eval_) {
      ev.bias_b = check_unbiased_disturbance(model, b_).reduced_deviation_norm;
      const Tolerances& tol = par_.tol();
      if (ev.eps <= tol.alg && ev.bias_b <= tol.alg && comm_ > tol.rel) {
        throw UniversalViolation(
            "precise measurement with unbiased disturbance reached while the "
            "commutator expectation is " +
            format_double(comm_));
      }
    }
    if (spot) {
      const SuiteResult suite =
          evaluate_all(model, a_, b_, psi_, spot_check_ids(), par_.tol());
      for (const RelationReport& r : suite.reports) {
        if (r.status == RelationStatus::violated) {
          throw UniversalViolation("always-valid relation " + to_string(r.id) +
                                   " reported violated during search (margin " +
                                   format_double(r.margin) + ")");
        }
      }
    }
    pool_.push_back(ev);
    return ev;
  }

 private:
  const ModelParameterization& par_;
  const ComplexOperator& a_;
  const ComplexOperator& b_;
  const PureState& psi_;
  int budget_;
  bool bias_every_eval_;
  double comm_;
  int used_ = 0;
  std::vector<Evaluation> pool_;
};

// Standard Nelder-Mead over theta. The objective returns nullopt when its
// evaluation quota is spent, which ends the search; there is no other return
// channel because every visited point lands in the shared pool.
void nelder_mead(
    const std::function<std::optional<double>(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x0, double step) {
  const Eigen::Index n = x0.size();
  struct Vertex {
    double value;
    Eigen::VectorXd x;
  };
  std::vector<Vertex> simplex;
  simplex.reserve(static_cast<std::size_t>(n) + 1);

  auto value0 = f(x0);
  if (!value0) return;
  simplex.push_back({*value0, x0});
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd x = x0;
    x(i) += step;
    auto v = f(x);
    if (!v) return;
    simplex.push_back({*v, std::move(x)});
  }

  const auto by_value = [](const Vertex& l, const Vertex& r) {
    return l.value < r.value;
  };
  for (int iter = 0; iter < 100000; ++iter) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    Vertex& worst = simplex.back();
    const double best = simplex.front().value;
    const double second_worst = simplex[simplex.size() - 2].value;

    double spread = 0.0;
    for (const Vertex& v : simplex) {
      spread = std::max(spread, (v.x - simplex.front().x).norm());
    }
    if (spread < 1e-10 && worst.value - best < 1e-12) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i + 1 < simplex.size(); ++i) centroid += simplex[i].x;
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = centroid + (centroid - worst.x);
    auto fr = f(reflected);
    if (!fr) return;

    if (*fr < best) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - worst.x);
      auto fe = f(expanded);
      if (!fe) return;
      if (*fe < *fr) {
        worst = {*fe, expanded};
      } else {
        worst = {*fr, reflected};
      }
      continue;
    }
    if (*fr < second_worst) {
      worst = {*fr, reflected};
      continue;
    }

    Eigen::VectorXd contracted;
    if (*fr < worst.value) {
      contracted = centroid + 0.5 * (reflected - centroid);
    } else {
      contracted = centroid + 0.5 * (worst.x - centroid);
    }
    auto fc = f(contracted);
    if (!fc) return;
    if (*fc < std::min(*fr, worst.value)) {
      worst = {*fc, contracted};
      continue;
    }

    for (std::size_t i = 1; i < simplex.size(); ++i) {
      simplex[i].x = simplex.front().x + 0.5 * (simplex[i].x - simplex.front().x);
      auto v = f(simplex[i].x);
      if (!v) return;
      simplex[i].value = *v;
    }
  }
}

Eigen::VectorXd random_theta(Eigen::Index size, Rng& rng, double scale) {
  std::normal_distribution<double> gauss(0.0, scale);
  Eigen::VectorXd theta(size);
  for (Eigen::Index i = 0; i < size; ++i) theta(i) = gauss(rng);
  return theta;
}

// Starting thetas shared by both searches: caller-provided, the identity,
// the eigenspace-recording readout of a, and seeded random draws.
std::vector<Eigen::VectorXd> collect_starts(const ModelParameterization& par,
                                            const ComplexOperator& a,
                                            const Eigen::VectorXd& theta0,
                                            std::uint64_t seed, int random_draws) {
  std::vector<Eigen::VectorXd> starts;
  if (theta0.size() > 0) starts.push_back(theta0);
  starts.push_back(Eigen::VectorXd::Zero(par.theta_size()));
  if (static_cast<Eigen::Index>(projectors_of(a, par.tol().alg).size()) <=
      par.d_app()) {
    starts.push_back(par.flip_parameters(a));
  }
  Rng rng(seed);
  for (int r = 0; r < random_draws; ++r) {
    starts.push_back(random_theta(par.theta_size(), rng, 0.5));
  }
  return starts;
}

const RelationReport& report_for(const std::vector<RelationReport>& reports,
                                 RelationId id) {
  for (const RelationReport& r : reports) {
    if (r.id == id) return r;
  }
  throw std::logic_error("frontier point is missing relation " + to_string(id));
}

}  // namespace

ModelParameterization::ModelParameterization(Eigen::Index d_sys,
                                             Eigen::Index d_app, PureState xi,
                                             ComplexOperator pointer,
                                             const Tolerances& tol)
    : d_sys_(d_sys), d_app_(d_app), xi_(std::move(xi)),
      pointer_(std::move(pointer)), tol_(tol) {
  if (d_sys_ < 2 || d_app_ < 2) {
    throw std::invalid_argument("parameterization: dimensions must be >= 2");
  }
  if (xi_.dim() != d_app_ || pointer_.dim() != d_app_) {
    throw std::invalid_argument(
        "parameterization: xi and pointer must live on the apparatus");
  }
  if (!pointer_.is_hermitian(tol_.alg)) {
    throw std::invalid_argument("parameterization: pointer must be Hermitian");
  }
}

ModelParameterization ModelParameterization::standard(Eigen::Index d_sys,
                                                      Eigen::Index d_app,
                                                      const Tolerances& tol) {
  Matrix pointer = Matrix::Zero(d_app, d_app);
  for (Eigen::Index k = 0; k < d_app; ++k) {
    pointer(k, k) = static_cast<double>(d_app - 1 - 2 * k);
  }
  return ModelParameterization(d_sys, d_app, PureState::basis(d_app, 0),
                               ComplexOperator(std::move(pointer)), tol);
}

Matrix ModelParameterization::generator(const Eigen::VectorXd& theta) const {
  require_finite(theta, theta_size());
  const Eigen::Index n = total_dim();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Matrix h = Matrix::Zero(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) h(i, i) = theta(k++);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      h(i, j) += theta(k) * inv_sqrt2;
      h(j, i) += theta(k) * inv_sqrt2;
      ++k;
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      h(i, j) += Complex(0.0, -theta(k) * inv_sqrt2);
      h(j, i) += Complex(0.0, theta(k) * inv_sqrt2);
      ++k;
    }
  }
  return h;
}

MeasurementModel ModelParameterization::realize(const Eigen::VectorXd& theta) const {
  const Matrix h = generator(theta);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalFault("realize: eigendecomposition of the generator failed");
  }
  const Eigen::Index n = total_dim();
  Vector phases(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    phases(i) = std::exp(Complex(0.0, solver.eigenvalues()(i)));
  }
  Matrix u = solver.eigenvectors() * phases.asDiagonal() *
             solver.eigenvectors().adjoint();
  std::map<std::string, ComplexOperator> pointers;
  pointers.emplace("M", pointer_);
  return MeasurementModel(d_sys_, xi_, ComplexOperator(std::move(u)),
                          std::move(pointers), tol_);
}

Eigen::VectorXd ModelParameterization::parameters_for_unitary(
    const ComplexOperator& u) const {
  if (u.dim() != total_dim()) {
    throw std::invalid_argument("parameters_for_unitary: dimension mismatch");
  }
  if (!u.is_unitary(tol_.alg)) {
    throw std::invalid_argument("parameters_for_unitary: input is not unitary");
  }
  Eigen::ComplexSchur<Matrix> schur(u.mat());
  if (schur.info() != Eigen::Success) {
    throw NumericalFault("parameters_for_unitary: Schur decomposition failed");
  }
  const Eigen::Index n = total_dim();
  Vector angles(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    angles(i) = std::arg(schur.matrixT()(i, i));
  }
  Matrix h = schur.matrixU() * angles.asDiagonal() * schur.matrixU().adjoint();
  h = 0.5 * (h + h.adjoint()).eval();

  Eigen::VectorXd theta(theta_size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) theta(k++) = h(i, i).real();
  const double sqrt2 = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) theta(k++) = sqrt2 * h(i, j).real();
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) theta(k++) = -sqrt2 * h(i, j).imag();
  }
  return theta;
}

Eigen::VectorXd ModelParameterization::flip_parameters(
    const ComplexOperator& a) const {
  if (a.dim() != d_sys_) {
    throw std::invalid_argument("flip_parameters: observable must live on the system");
  }
  std::vector<EigenProjector> groups = projectors_of(a, tol_.alg);
  if (static_cast<Eigen::Index>(groups.size()) > d_app_) {
    throw std::invalid_argument(
        "flip_parameters: more eigenvalue groups than pointer levels");
  }
  std::sort(groups.begin(), groups.end(),
            [](const EigenProjector& l, const EigenProjector& r) {
              return l.eigenvalue > r.eigenvalue;
            });

  Matrix shift = Matrix::Zero(d_app_, d_app_);
  for (Eigen::Index c = 0; c < d_app_; ++c) shift((c + 1) % d_app_, c) = 1.0;

  Matrix u = Matrix::Zero(total_dim(), total_dim());
  Matrix shift_power = Matrix::Identity(d_app_, d_app_);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    u += Eigen::kroneckerProduct(groups[g].projector.mat(), shift_power).eval();
    shift_power = (shift * shift_power).eval();
  }
  return parameters_for_unitary(ComplexOperator(std::move(u)));
}

std::vector<FrontierPoint> trace_frontier(const ModelParameterization& par,
                                          const ComplexOperator& a,
                                          const ComplexOperator& b,
                                          const PureState& psi, int budget,
                                          std::uint64_t seed,
                                          const Eigen::VectorXd& theta0) {
  if (budget < 100) {
    throw std::invalid_argument("trace_frontier: budget must be >= 100");
  }
  if (theta0.size() > 0) require_finite(theta0, par.theta_size());

  SearchContext ctx(par, a, b, psi, budget, false);
  const std::vector<double> weights = {0.1, 0.2, 0.3, 0.4, 0.5,
                                       0.6, 0.7, 0.8, 0.9};
  const int per_weight = budget / static_cast<int>(weights.size());

  for (std::size_t wi = 0; wi < weights.size(); ++wi) {
    const double w = weights[wi];
    const int quota_end = std::min(budget, static_cast<int>(wi + 1) * per_weight);
    const auto scalarized = [&](const Evaluation& ev) {
      return w * ev.eps + (1.0 - w) * ev.eta;
    };

    const std::vector<Eigen::VectorXd> starts =
        collect_starts(par, a, theta0, derived_seed(seed, wi), 2);
    std::optional<Evaluation> best;
    for (const Eigen::VectorXd& start : starts) {
      if (ctx.used() >= quota_end) break;
      std::optional<Evaluation> ev = ctx.evaluate(start);
      if (!ev) break;
      if (!best || scalarized(*ev) < scalarized(*best)) best = std::move(ev);
    }
    if (!best) continue;

    nelder_mead(
        [&](const Eigen::VectorXd& theta) -> std::optional<double> {
          if (ctx.used() >= quota_end) return std::nullopt;
          std::optional<Evaluation> ev = ctx.evaluate(theta);
          if (!ev) return std::nullopt;
          return scalarized(*ev);
        },
        best->theta, 0.4);
  }

  // Nondominated filter over everything the search visited.
  std::vector<std::size_t> order(ctx.pool().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    const Evaluation& le = ctx.pool()[l];
    const Evaluation& re = ctx.pool()[r];
    if (le.eps != re.eps) return le.eps < re.eps;
    if (le.eta != re.eta) return le.eta < re.eta;
    return l < r;
  });
  std::vector<std::size_t> kept;
  double best_eta = std::numeric_limits<double>::infinity();
  for (std::size_t idx : order) {
    const Evaluation& ev = ctx.pool()[idx];
    if (ev.eta < best_eta) {
      kept.push_back(idx);
      best_eta = ev.eta;
    }
  }

  // Deterministic thinning to a manageable frontier size.
  const std::size_t cap = 200;
  std::vector<std::size_t> thinned;
  if (kept.size() <= cap) {
    thinned = kept;
  } else {
    thinned.reserve(cap);
    for (std::size_t i = 0; i < cap; ++i) {
      const std::size_t pick = i * (kept.size() - 1) / (cap - 1);
      if (thinned.empty() || kept[pick] != thinned.back()) {
        thinned.push_back(kept[pick]);
      }
    }
  }

  std::vector<FrontierPoint> frontier;
  frontier.reserve(thinned.size());
  for (std::size_t idx : thinned) {
    const Evaluation& ev = ctx.pool()[idx];
    FrontierPoint point;
    point.theta = ev.theta;
    point.eps = ev.eps;
    point.eta = ev.eta;
    MeasurementModel model = par.realize(ev.theta);
    SuiteResult suite = evaluate_all(model, a, b, psi, spot_check_ids(), par.tol());
    for (const RelationReport& r : suite.reports) {
      if (r.status == RelationStatus::violated) {
        throw UniversalViolation("always-valid relation " + to_string(r.id) +
                                 " reported violated on a frontier point");
      }
    }
    point.reports = std::move(suite.reports);
    frontier.push_back(std::move(point));
  }
  return frontier;
}

std::vector<BiasBlowupRecord> bias_blowup_probe(const ModelParameterization& par,
                                                const ComplexOperator& a,
                                                const ComplexOperator& b,
                                                const PureState& psi,
                                                const std::vector<double>& caps,
                                                int budget, std::uint64_t seed) {
  if (budget < 100) {
    throw std::invalid_argument("bias_blowup_probe: budget must be >= 100");
  }
  if (caps.empty()) {
    throw std::invalid_argument("bias_blowup_probe: caps must be nonempty");
  }
  for (std::size_t i = 0; i < caps.size(); ++i) {
    if (!(caps[i] > 0.0) || !std::isfinite(caps[i])) {
      throw std::invalid_argument("bias_blowup_probe: caps must be positive");
    }
    if (i > 0 && !(caps[i] < caps[i - 1])) {
      throw std::invalid_argument(
          "bias_blowup_probe: caps must be strictly decreasing");
    }
  }

  SearchContext ctx(par, a, b, psi, budget, true);
  const int per_cap = budget / static_cast<int>(caps.size());
  const std::vector<double> penalties = {10.0, 100.0, 1000.0};

  std::vector<BiasBlowupRecord> records;
  records.reserve(caps.size());
  Eigen::VectorXd carry;  // best point of the previous cap

  for (std::size_t ci = 0; ci < caps.size(); ++ci) {
    const double cap = caps[ci];
    const std::size_t slice_begin = ctx.pool().size();
    const int quota_end =
        std::min(budget, static_cast<int>(ci + 1) * per_cap);
    const auto penalized = [&](const Evaluation& ev, double mu) {
      const double excess = std::max(0.0, ev.eps - cap);
      return ev.bias_b + mu * excess * excess;
    };

    std::vector<Eigen::VectorXd> starts =
        collect_starts(par, a, carry, derived_seed(seed, 1000 + ci), 1);
    std::optional<Evaluation> best_start;
    for (const Eigen::VectorXd& start : starts) {
      if (ctx.used() >= quota_end) break;
      std::optional<Evaluation> ev = ctx.evaluate(start);
      if (!ev) break;
      if (!best_start || penalized(*ev, penalties.front()) <
                             penalized(*best_start, penalties.front())) {
        best_start = std::move(ev);
      }
    }
    if (!best_start && ctx.pool().size() == slice_begin) {
      throw NumericalFault("bias_blowup_probe: budget spent before any evaluation");
    }

    Eigen::VectorXd round_start = best_start ? best_start->theta : carry;
    for (const double mu : penalties) {
      nelder_mead(
          [&](const Eigen::VectorXd& theta) -> std::optional<double> {
            if (ctx.used() >= quota_end) return std::nullopt;
            std::optional<Evaluation> ev = ctx.evaluate(theta);
            if (!ev) return std::nullopt;
            return penalized(*ev, mu);
          },
          round_start, 0.4);
      // Restart the next round from the best point of this cap so far.
      const Evaluation* best = nullptr;
      for (std::size_t i = slice_begin; i < ctx.pool().size(); ++i) {
        const Evaluation& ev = ctx.pool()[i];
        if (best == nullptr || penalized(ev, mu) < penalized(*best, mu)) {
          best = &ev;
        }
      }
      if (best != nullptr) round_start = best->theta;
    }

    const Evaluation* feasible = nullptr;
    for (std::size_t i = slice_begin; i < ctx.pool().size(); ++i) {
      const Evaluation& ev = ctx.pool()[i];
      if (ev.eps > cap) continue;
      if (feasible == nullptr || ev.bias_b < feasible->bias_b) feasible = &ev;
    }
    if (feasible == nullptr) {
      throw NumericalFault("bias_blowup_probe: no evaluated point satisfied cap " +
                           format_double(cap));
    }

    BiasBlowupRecord record;
    record.eps_cap = cap;
    record.achieved_eps = feasible->eps;
    record.min_bias_b = feasible->bias_b;
    record.evaluations = static_cast<int>(ctx.pool().size() - slice_begin);
    records.push_back(record);
    carry = feasible->theta;
  }
  return records;
}

std::string frontier_csv(const std::vector<FrontierPoint>& points) {
  std::string out = "eps,eta,r1_status,r5_status,r6_status,r10_status\n";
  for (const FrontierPoint& p : points) {
    out += format_double(p.eps) + ',' + format_double(p.eta) + ',' +
           to_string(report_for(p.reports, RelationId::r1_robertson).status) +
           ',' + to_string(report_for(p.reports, RelationId::r5_ozawa).status) +
           ',' +
           to_string(
               report_for(p.reports, RelationId::r6_heisenberg_universal).status) +
           ',' +
           to_string(
               report_for(p.reports, RelationId::r10_difference_robertson).status) +
           '\n';
  }
  return out;
}

std::string blowup_csv(const std::vector<BiasBlowupRecord>& records) {
  std::string out = "eps_cap,achieved_eps,min_bias_B,evaluations\n";
  for (const BiasBlowupRecord& r : records) {
    out += format_double(r.eps_cap) + ',' + format_double(r.achieved_eps) + ',' +
           format_double(r.min_bias_b) + ',' + std::to_string(r.evaluations) +
           '\n';
  }
  return out;
}

}  // namespace qmeasure
