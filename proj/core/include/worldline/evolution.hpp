#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "worldline/circuits.hpp"
#include "worldline/operator_algebra.hpp"

namespace worldline {

/// One Pauli string with its real coefficient.  label[0] acts on the most
/// significant qubit, matching the factor order of kron: "XZ" = X (x) Z.
struct PauliTerm {
  std::string label;
  double coeff = 0.0;
};

struct PauliTermList {
  std::size_t n_qubits = 0;
  std::vector<PauliTerm> terms;  // unique labels, lexicographic order
};

inline constexpr double kPauliPruneRelative = 1e-12;

/// c_s = Tr(P_s H) / 2^n for every string s, by recursive 2x2 block
/// splitting (O(n 4^n), no Pauli matrices are formed).  Terms with
/// |c| < prune_relative * max|c| are dropped.
PauliTermList pauli_decompose(const OperatorMatrix& h, double prune_relative = kPauliPruneRelative);

OperatorMatrix pauli_reconstruct(const PauliTermList& terms);
OperatorMatrix pauli_string_matrix(const std::string& label);

/// First-order product formula [prod_s exp(-i c_s P_s t / n_steps)]^n_steps
/// with the terms applied in list order.  Each factor acts as
/// cos(theta) - i sin(theta) P_s directly on the amplitudes.
StateVector trotter_evolve(const PauliTermList& terms, double t, std::size_t n_steps, const StateVector& psi0);

struct EvolutionMethod {
  enum class Kind { Exact, Trotter };
  Kind kind = Kind::Exact;
  std::size_t trotter_steps = 100;

  static EvolutionMethod exact() { return {Kind::Exact, 0}; }
  static EvolutionMethod trotter(std::size_t steps) { return {Kind::Trotter, steps}; }
};

/// K(t) = <psi_f|exp(-iHt)|psi_i> for every final state and time.
struct TransitionSeries {
  std::vector<double> t;
  std::string initial_label;
  std::vector<std::string> final_labels;
  std::vector<std::vector<Complex>> amplitudes;  // [final state][time]
};

TransitionSeries transition_series(const OperatorMatrix& h, const StateVector& psi_i,
                                   std::span<const StateVector> finals, std::span<const std::string> final_labels,
                                   std::span<const double> t_grid, EvolutionMethod method,
                                   std::string initial_label = "initial");

// Index of the grid point used for the origin: with an even grid zero is not a
// grid value, so this is the smallest positive one.
std::size_t origin_grid_index(std::size_t n);

// Momentum eigenstate F^dagger e_k: pos_p(n) v = x_k v with x_k the k-th grid
// value.  Requires a power-of-two n.
StateVector momentum_state(std::size_t k, std::size_t n);

// diag(exp(i p2 x_j)) on the position grid
OperatorMatrix vertex_operator(double p2, std::size_t n);

/// A(k1, p2, k3) = <p_k1| exp(i p2 X) |p_k3> with unit coupling.  Peaks with
/// |A| = 1 at p2 = x_k3 - x_k1, up to the period of momentum_period(n).
Complex vertex_amplitude(std::size_t k1, double p2, std::size_t k3, std::size_t n);

// Same amplitude with exp(i p2 X) applied by trotter_evolve on the Pauli
// decomposition of X (Z strings only, so any step count is exact).
Complex vertex_amplitude_trotter(std::size_t k1, double p2, std::size_t k3, std::size_t n, std::size_t steps = 1);

// x_k3 - x_k1
double kinematic_momentum(std::size_t k1, std::size_t k3, std::size_t n);
// |A| is periodic in p2 with period sqrt(2 pi n).
double momentum_period(std::size_t n);
// Reduces p into [-period/2, period/2).
double wrap_momentum(double p, std::size_t n);

struct ScanPoint {
  double p2;
  double abs_amplitude;
};

std::vector<ScanPoint> vertex_scan(std::size_t k1, std::size_t k3, std::size_t n, double p2_min, double p2_max,
                                   std::size_t points);
// One period centred on zero, `subdivisions` points per spacing of the
// kinematic lattice so every x_k3 - x_k1 (wrapped) is a scan point.
std::vector<ScanPoint> vertex_scan_period(std::size_t k1, std::size_t k3, std::size_t n,
                                          std::size_t subdivisions = 16);

// 1/2 pos_p(n)^2
OperatorMatrix free_particle_hamiltonian(std::size_t n);

/// U(T - tau) exp(i p2 X) U(tau) psi0 with U the evolution of h_free.
/// Requires 0 < tau < T; throws InvalidTimes otherwise.
StateVector scattering_process(const OperatorMatrix& h_free, double p2, double tau, double total_t,
                               const StateVector& psi0, EvolutionMethod method = EvolutionMethod::exact());

}  // namespace worldline
