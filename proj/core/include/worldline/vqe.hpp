#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "worldline/circuits.hpp"
#include "worldline/hamiltonians.hpp"

namespace worldline {

enum class GradientMethod { CentralDifference, ParameterShift };
enum class InitialParams { UniformRandom, Zeros };

struct OptimizerSettings {
  std::size_t max_iter = 600;
  double gradient_step = 1e-5;  // central-difference half width
  double tolerance = 1e-9;      // |dE| per accepted step counted as stalled
  std::size_t patience = 5;     // consecutive stalled steps before stopping
  std::uint64_t seed = 7;
  std::size_t restarts = 0;  // additional random starts; the best run wins
  GradientMethod gradient = GradientMethod::CentralDifference;
  InitialParams init = InitialParams::UniformRandom;
};

struct AnsatzTemplate {
  std::size_t depth = 3;
  Entanglement entanglement = Entanglement::Full;
};

struct TracePoint {
  std::size_t iteration;
  double energy;
  std::size_t evaluations;  // cumulative objective evaluations at this point
};

struct VqeResult {
  double energy = 0.0;
  std::vector<double> params;
  std::vector<TracePoint> trace;  // accepted iterates of the winning start
  std::size_t evaluations = 0;    // over all starts
  bool converged = false;
};

/// Variational energy E(theta) = <psi(theta)|H|psi(theta)> of the Ry ansatz.
///
/// Ansatz amplitudes are real, so only the real symmetric part of H
/// contributes; it is extracted once and the state is propagated in real
/// arithmetic.
class VariationalObjective {
 public:
  VariationalObjective(const OperatorMatrix& h, std::size_t n_qubits, const AnsatzTemplate& ansatz);

  std::size_t parameter_count() const noexcept { return n_qubits_ * (depth_ + 1); }
  std::size_t evaluations() const noexcept { return evaluations_; }

  double operator()(std::span<const double> params);
  std::vector<double> gradient(std::span<const double> params, GradientMethod method, double step);

 private:
  Eigen::MatrixXd real_part_;
  std::size_t n_qubits_;
  std::size_t depth_;
  std::size_t evaluations_ = 0;
  Eigen::VectorXd state_;
};

// Quasi-Newton (BFGS) minimization with Armijo backtracking.  Stops after
// `patience` consecutive accepted steps with |dE| < tolerance, or after
// max_iter iterations with converged = false.
VqeResult minimize(const OperatorMatrix& h, const AnsatzTemplate& ansatz, const OptimizerSettings& opt);

// Throws NotVariational for non-Hermitian Hamiltonians (use the HermitianPart
// variant) and DimensionMismatch when the register size is not 2^qubits.
VqeResult minimize(const BuiltHamiltonian& h, const AnsatzTemplate& ansatz, const OptimizerSettings& opt);

struct SweepCell {
  HamiltonianSpec spec;
  std::uint64_t seed = 7;
};

struct SweepOutcome {
  SweepCell cell;
  std::optional<VqeResult> result;
  std::string error;  // empty on success
};

// Independent minimize runs, one per cell, spread over `workers` threads
// (0 = hardware concurrency).  Per-cell failures are reported in the outcome
// and do not stop the sweep.  Results are ordered like the cells.
std::vector<SweepOutcome> sweep(std::span<const SweepCell> cells, const AnsatzTemplate& ansatz,
                                const OptimizerSettings& opt, std::size_t workers = 0);

}  // namespace worldline
