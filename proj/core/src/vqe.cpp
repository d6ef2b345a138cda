#include "worldline/vqe.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "worldline/errors.hpp"

namespace worldline {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 40;

}  // namespace

VariationalObjective::VariationalObjective(const OperatorMatrix& h, std::size_t n_qubits,
                                           const AnsatzTemplate& ansatz)
    : n_qubits_(n_qubits), depth_(ansatz.depth) {
  if (n_qubits == 0 || n_qubits > 30 || h.dim() != (std::size_t{1} << n_qubits)) {
    throw Error(ErrorCode::DimensionMismatch, "Hamiltonian dimension " + std::to_string(h.dim()) +
                                                  " does not match " + std::to_string(n_qubits) + " qubits");
  }
  const Eigen::MatrixXd re = h.matrix().real();
  real_part_ = 0.5 * (re + re.transpose());
  state_.resize(static_cast<Eigen::Index>(h.dim()));
}

double VariationalObjective::operator()(std::span<const double> params) {
  if (params.size() != parameter_count()) {
    throw Error(ErrorCode::InvalidConfig, "expected " + std::to_string(parameter_count()) + " parameters");
  }
  ++evaluations_;
  const std::size_t n = n_qubits_;
  const std::size_t dim = std::size_t{1} << n;
  state_.setZero();
  state_(0) = 1.0;
  for (std::size_t layer = 0; layer <= depth_; ++layer) {
    if (layer > 0) {
      // All-pairs CZ: the sign is (-1)^(number of set-bit pairs).
      for (std::size_t k = 0; k < dim; ++k) {
        const auto ones = static_cast<std::size_t>(std::popcount(k));
        if ((ones * (ones - (ones > 0 ? 1 : 0)) / 2) % 2 == 1) state_(static_cast<Eigen::Index>(k)) *= -1.0;
      }
    }
    for (std::size_t q = 0; q < n; ++q) {
      const double theta = params[layer * n + q];
      const double c = std::cos(theta / 2.0);
      const double s = std::sin(theta / 2.0);
      const std::size_t stride = std::size_t{1} << q;
      for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
          const auto i0 = static_cast<Eigen::Index>(k);
          const auto i1 = static_cast<Eigen::Index>(k + stride);
          const double a0 = state_(i0);
          const double a1 = state_(i1);
          state_(i0) = c * a0 - s * a1;
          state_(i1) = s * a0 + c * a1;
        }
      }
    }
  }
  return state_.dot(real_part_ * state_);
}

std::vector<double> VariationalObjective::gradient(std::span<const double> params, GradientMethod method,
                                                   double step) {
  std::vector<double> shifted(params.begin(), params.end());
  std::vector<double> grad(params.size());
  const double delta = method == GradientMethod::ParameterShift ? std::numbers::pi / 2.0 : step;
  for (std::size_t k = 0; k < params.size(); ++k) {
    const double saved = shifted[k];
    shifted[k] = saved + delta;
    const double plus = (*this)(shifted);
    shifted[k] = saved - delta;
    const double minus = (*this)(shifted);
    shifted[k] = saved;
    grad[k] = method == GradientMethod::ParameterShift ? 0.5 * (plus - minus) : (plus - minus) / (2.0 * delta);
  }
  return grad;
}

namespace {

struct RunResult {
  double energy;
  std::vector<double> params;
  std::vector<TracePoint> trace;
  bool converged;
};

RunResult bfgs(VariationalObjective& objective, std::vector<double> x, const OptimizerSettings& opt) {
  const std::size_t n = x.size();
  using Vec = Eigen::VectorXd;
  auto to_vec = [](const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); };

  double f = objective(x);
  Vec g = to_vec(objective.gradient(x, opt.gradient, opt.gradient_step));
  Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  RunResult run{f, x, {{0, f, objective.evaluations()}}, false};
  std::size_t stalled = 0;
  std::vector<double> trial(n);

  for (std::size_t iter = 1; iter <= opt.max_iter; ++iter) {
    if (g.norm() < 1e-12) {
      run.converged = true;
      break;
    }
    Vec direction = -(inv_hessian * g);
    double slope = g.dot(direction);
    if (!(slope < 0.0)) {
      inv_hessian.setIdentity();
      direction = -g;
      slope = -g.squaredNorm();
    }

    double alpha = 1.0;
    double f_trial = f;
    bool accepted = false;
    for (int k = 0; k < kMaxBacktracks; ++k) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + alpha * direction(static_cast<Eigen::Index>(i));
      f_trial = objective(trial);
      if (f_trial <= f + kArmijo * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      // No descent along a steepest-descent direction either: treat as a
      // stationary point at the gradient's resolution.
      if (inv_hessian.isIdentity()) {
        run.converged = true;
        break;
      }
      inv_hessian.setIdentity();
      continue;
    }

    const Vec step = alpha * direction;
    Vec g_new = to_vec(objective.gradient(trial, opt.gradient, opt.gradient_step));
    const Vec y = g_new - g;
    const double sy = step.dot(y);
    if (sy > 1e-12 * step.norm() * y.norm()) {
      if (iter == 1) inv_hessian *= sy / y.squaredNorm();
      const double rho = 1.0 / sy;
      const Vec hy = inv_hessian * y;
      inv_hessian += (rho * rho * y.dot(hy) + rho) * (step * step.transpose()) -
                     rho * (hy * step.transpose() + step * hy.transpose());
    }

    const double change = f - f_trial;
    x = trial;
    f = f_trial;
    g = std::move(g_new);
    run.energy = f;
    run.params = x;
    run.trace.push_back({iter, f, objective.evaluations()});

    stalled = std::abs(change) < opt.tolerance ? stalled + 1 : 0;
    if (stalled >= opt.patience) {
      run.converged = true;
      break;
    }
  }
  return run;
}

}  // namespace

VqeResult minimize(const OperatorMatrix& h, const AnsatzTemplate& ansatz, const OptimizerSettings& opt) {
  const std::size_t n_qubits = static_cast<std::size_t>(std::countr_zero(h.dim()));
  VariationalObjective objective(h, n_qubits, ansatz);
  const std::size_t count = objective.parameter_count();

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);

  VqeResult best;
  best.energy = std::numeric_limits<double>::infinity();
  for (std::size_t start = 0; start <= opt.restarts; ++start) {
    std::vector<double> x0(count, 0.0);
    if (opt.init == InitialParams::UniformRandom || start > 0) {
      for (double& v : x0) v = angle(rng);
    }
    RunResult run = bfgs(objective, std::move(x0), opt);
    if (run.energy < best.energy) {
      best.energy = run.energy;
      best.params = std::move(run.params);
      best.trace = std::move(run.trace);
      best.converged = run.converged;
    }
  }
  best.evaluations = objective.evaluations();
  return best;
}

VqeResult minimize(const BuiltHamiltonian& h, const AnsatzTemplate& ansatz, const OptimizerSettings& opt) {
  if (!h.hermitian) {
    throw Error(ErrorCode::NotVariational,
                "variant " + to_string(h.spec.variant) + " of " + to_string(h.spec.kind) +
                    " is not Hermitian, so it has no real variational energy; select the HermitianPart variant");
  }
  if (h.matrix.dim() != (std::size_t{1} << h.qubits)) {
    throw Error(ErrorCode::DimensionMismatch, "Hamiltonian dimension is not 2^qubits");
  }
  return minimize(h.matrix, ansatz, opt);
}

std::vector<SweepOutcome> sweep(std::span<const SweepCell> cells, const AnsatzTemplate& ansatz,
                                const OptimizerSettings& opt, std::size_t workers) {
  std::vector<SweepOutcome> out(cells.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(cells.size(), 1));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      SweepOutcome& slot = out[k];
      slot.cell = cells[k];
      try {
        OptimizerSettings cell_opt = opt;
        cell_opt.seed = cells[k].seed;
        slot.result = minimize(build_hamiltonian(cells[k].spec), ansatz, cell_opt);
      } catch (const std::exception& e) {
        slot.error = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  return out;
}

}  // namespace worldline
