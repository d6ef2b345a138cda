#include "worldline/evolution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

#include "worldline/basis.hpp"
#include "worldline/errors.hpp"

namespace worldline {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr char kPauliLetters[4] = {'I', 'X', 'Y', 'Z'};

// Bit masks of a Pauli string: X/Y flip the bit, Y/Z contribute a sign, and
// every Y adds a factor i (Y = i X Z).
struct PauliMasks {
  std::size_t flip = 0;
  std::size_t sign = 0;
  Complex phase = 1.0;
};

PauliMasks masks_for(const std::string& label) {
  PauliMasks m;
  const std::size_t n = label.size();
  int y_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << (n - 1 - i);
    switch (label[i]) {
      case 'I': break;
      case 'X': m.flip |= bit; break;
      case 'Y': m.flip |= bit; m.sign |= bit; ++y_count; break;
      case 'Z': m.sign |= bit; break;
      default: throw Error(ErrorCode::InvalidArgument, "Pauli label '" + label + "' has a letter outside IXYZ");
    }
  }
  static constexpr Complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  m.phase = powers[y_count % 4];
  return m;
}

double parity_sign(std::size_t index, std::size_t mask) {
  return (std::popcount(index & mask) & 1) ? -1.0 : 1.0;
}

// exp(-i theta P) in place.
void apply_pauli_rotation(std::vector<Complex>& amps, const PauliMasks& m, double theta) {
  const double c = std::cos(theta);
  const Complex is = kI * std::sin(theta) * m.phase;
  if (m.flip == 0) {
    for (std::size_t j = 0; j < amps.size(); ++j) amps[j] *= c - is * parity_sign(j, m.sign);
    return;
  }
  for (std::size_t j = 0; j < amps.size(); ++j) {
    const std::size_t k = j ^ m.flip;
    if (k < j) continue;
    const Complex aj = amps[j];
    const Complex ak = amps[k];
    amps[j] = c * aj - is * parity_sign(k, m.sign) * ak;
    amps[k] = c * ak - is * parity_sign(j, m.sign) * aj;
  }
}

void decompose_block(const Eigen::MatrixXcd& block, std::string& label, std::vector<std::pair<std::string, Complex>>& out) {
  if (block.rows() == 1) {
    out.emplace_back(label, block(0, 0));
    return;
  }
  const Eigen::Index h = block.rows() / 2;
  const auto a = block.topLeftCorner(h, h);
  const auto b = block.topRightCorner(h, h);
  const auto c = block.bottomLeftCorner(h, h);
  const auto d = block.bottomRightCorner(h, h);
  const Eigen::MatrixXcd parts[4] = {0.5 * (a + d), 0.5 * (b + c), 0.5 * kI * (b - c), 0.5 * (a - d)};
  for (int s = 0; s < 4; ++s) {
    label.push_back(kPauliLetters[s]);
    decompose_block(parts[s], label, out);
    label.pop_back();
  }
}

void require_state_dim(const StateVector& psi, std::size_t dim, const char* what) {
  if (psi.dim() != dim) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has dimension " + std::to_string(psi.dim()) +
                                                  ", expected " + std::to_string(dim));
  }
}

}  // namespace

PauliTermList pauli_decompose(const OperatorMatrix& h, double prune_relative) {
  const std::size_t n = basis::qubit_count(h.dim());
  if (!h.is_hermitian(kHermitianTolerance)) {
    throw Error(ErrorCode::NotHermitian, "Pauli decomposition needs a Hermitian matrix");
  }
  std::vector<std::pair<std::string, Complex>> raw;
  raw.reserve(std::size_t{1} << (2 * n));
  std::string label;
  label.reserve(n);
  decompose_block(h.matrix(), label, raw);

  double largest = 0.0;
  for (const auto& [_, c] : raw) largest = std::max(largest, std::abs(c.real()));
  PauliTermList list{n, {}};
  for (auto& [lbl, c] : raw) {
    if (std::abs(c.real()) >= prune_relative * largest && c.real() != 0.0) list.terms.push_back({std::move(lbl), c.real()});
  }
  return list;
}

OperatorMatrix pauli_string_matrix(const std::string& label) {
  if (label.empty()) throw Error(ErrorCode::InvalidArgument, "empty Pauli label");
  const PauliMasks m = masks_for(label);
  const std::size_t dim = std::size_t{1} << label.size();
  OperatorMatrix out(dim);
  for (std::size_t j = 0; j < dim; ++j) out(j ^ m.flip, j) = m.phase * parity_sign(j, m.sign);
  return out;
}

OperatorMatrix pauli_reconstruct(const PauliTermList& terms) {
  const std::size_t dim = std::size_t{1} << terms.n_qubits;
  OperatorMatrix out(dim);
  for (const PauliTerm& term : terms.terms) {
    if (term.label.size() != terms.n_qubits) throw Error(ErrorCode::DimensionMismatch, "label length");
    const PauliMasks m = masks_for(term.label);
    for (std::size_t j = 0; j < dim; ++j) out(j ^ m.flip, j) += term.coeff * m.phase * parity_sign(j, m.sign);
  }
  return out;
}

StateVector trotter_evolve(const PauliTermList& terms, double t, std::size_t n_steps, const StateVector& psi0) {
  if (n_steps < 1) throw Error(ErrorCode::InvalidArgument, "Trotter evolution needs at least one step");
  require_state_dim(psi0, std::size_t{1} << terms.n_qubits, "initial state");
  std::vector<PauliMasks> masks;
  masks.reserve(terms.terms.size());
  for (const PauliTerm& term : terms.terms) masks.push_back(masks_for(term.label));

  std::vector<Complex> amps(psi0.amplitudes().begin(), psi0.amplitudes().end());
  const double dt = t / static_cast<double>(n_steps);
  for (std::size_t step = 0; step < n_steps; ++step) {
    for (std::size_t k = 0; k < masks.size(); ++k) apply_pauli_rotation(amps, masks[k], terms.terms[k].coeff * dt);
  }
  return StateVector(psi0.n_qubits(), std::move(amps));
}

TransitionSeries transition_series(const OperatorMatrix& h, const StateVector& psi_i,
                                   std::span<const StateVector> finals, std::span<const std::string> final_labels,
                                   std::span<const double> t_grid, EvolutionMethod method, std::string initial_label) {
  if (finals.size() != final_labels.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one label per final state is required");
  }
  require_state_dim(psi_i, h.dim(), "initial state");
  for (const StateVector& f : finals) require_state_dim(f, h.dim(), "final state");

  TransitionSeries series;
  series.t.assign(t_grid.begin(), t_grid.end());
  series.initial_label = std::move(initial_label);
  series.final_labels.assign(final_labels.begin(), final_labels.end());
  series.amplitudes.assign(finals.size(), std::vector<Complex>(t_grid.size()));

  std::function<StateVector(double)> evolve;
  std::optional<EigenSystem> eig;
  std::optional<PauliTermList> terms;
  Eigen::VectorXcd overlap_initial;
  if (method.kind == EvolutionMethod::Kind::Exact) {
    eig = hermitian_eig(h);
    const auto amps = psi_i.amplitudes();
    overlap_initial = eig->eigenvectors.matrix().adjoint() *
                      Eigen::Map<const Eigen::VectorXcd>(amps.data(), static_cast<Eigen::Index>(amps.size()));
    evolve = [&](double t) {
      Eigen::VectorXcd rotated = overlap_initial;
      for (Eigen::Index k = 0; k < rotated.size(); ++k) {
        rotated(k) *= std::exp(Complex(0.0, -eig->eigenvalues[static_cast<std::size_t>(k)] * t));
      }
      const Eigen::VectorXcd out = eig->eigenvectors.matrix() * rotated;
      return StateVector(psi_i.n_qubits(), std::vector<Complex>(out.data(), out.data() + out.size()));
    };
  } else {
    terms = pauli_decompose(h);
    evolve = [&](double t) { return trotter_evolve(*terms, t, method.trotter_steps, psi_i); };
  }

  for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
    const StateVector psi_t = evolve(t_grid[ti]);
    for (std::size_t f = 0; f < finals.size(); ++f) series.amplitudes[f][ti] = inner(finals[f], psi_t);
  }
  return series;
}

std::size_t origin_grid_index(std::size_t n) {
  const auto grid = basis::position_grid(n);
  std::size_t best = n;
  for (std::size_t j = 0; j < n; ++j) {
    if (grid[j] >= 0.0 && (best == n || grid[j] < grid[best])) best = j;
  }
  return best;
}

StateVector momentum_state(std::size_t k, std::size_t n) {
  if (k >= n) throw Error(ErrorCode::IndexOutOfRange, "momentum index " + std::to_string(k) + " on a grid of " + std::to_string(n));
  const OperatorMatrix f = basis::sylvester_f(n);
  std::vector<Complex> amps(n);
  for (std::size_t j = 0; j < n; ++j) amps[j] = std::conj(f(k, j));
  return StateVector(basis::qubit_count(n), std::move(amps));
}

OperatorMatrix vertex_operator(double p2, std::size_t n) {
  const auto grid = basis::position_grid(n);
  OperatorMatrix v(n);
  for (std::size_t j = 0; j < n; ++j) v(j, j) = std::exp(Complex(0.0, p2 * grid[j]));
  return v;
}

Complex vertex_amplitude(std::size_t k1, double p2, std::size_t k3, std::size_t n) {
  const StateVector bra = momentum_state(k1, n);
  const StateVector ket = momentum_state(k3, n);
  const auto grid = basis::position_grid(n);
  Complex sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) sum += std::conj(bra[j]) * std::exp(Complex(0.0, p2 * grid[j])) * ket[j];
  return sum;
}

Complex vertex_amplitude_trotter(std::size_t k1, double p2, std::size_t k3, std::size_t n, std::size_t steps) {
  const StateVector bra = momentum_state(k1, n);
  const StateVector ket = momentum_state(k3, n);
  // exp(i p2 X) = exp(-i (-X) p2)
  const PauliTermList terms = pauli_decompose(-1.0 * basis::pos_q(n));
  return inner(bra, trotter_evolve(terms, p2, steps, ket));
}

double kinematic_momentum(std::size_t k1, std::size_t k3, std::size_t n) {
  const auto grid = basis::position_grid(n);
  if (k1 >= n || k3 >= n) throw Error(ErrorCode::IndexOutOfRange, "momentum index outside the grid");
  return grid[k3] - grid[k1];
}

double momentum_period(std::size_t n) { return std::sqrt(2.0 * std::numbers::pi * static_cast<double>(n)); }

double wrap_momentum(double p, std::size_t n) {
  const double period = momentum_period(n);
  return p - period * std::floor((p + period / 2.0) / period);
}

std::vector<ScanPoint> vertex_scan(std::size_t k1, std::size_t k3, std::size_t n, double p2_min, double p2_max,
                                   std::size_t points) {
  if (points < 2 || !(p2_max > p2_min)) throw Error(ErrorCode::InvalidArgument, "scan needs points >= 2 and p2_max > p2_min");
  std::vector<ScanPoint> scan(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double p2 = p2_min + (p2_max - p2_min) * static_cast<double>(i) / static_cast<double>(points - 1);
    scan[i] = {p2, std::abs(vertex_amplitude(k1, p2, k3, n))};
  }
  return scan;
}

std::vector<ScanPoint> vertex_scan_period(std::size_t k1, std::size_t k3, std::size_t n, std::size_t subdivisions) {
  if (subdivisions < 1) throw Error(ErrorCode::InvalidArgument, "subdivisions must be positive");
  const double lattice = 2.0 * std::sqrt(2.0 * std::numbers::pi / (4.0 * static_cast<double>(n)));
  const double step = lattice / static_cast<double>(subdivisions);
  const auto half = static_cast<long long>(n * subdivisions / 2);
  std::vector<ScanPoint> scan;
  scan.reserve(n * subdivisions);
  for (long long m = -half; m < static_cast<long long>(n * subdivisions) - half; ++m) {
    const double p2 = static_cast<double>(m) * step;
    scan.push_back({p2, std::abs(vertex_amplitude(k1, p2, k3, n))});
  }
  return scan;
}

OperatorMatrix free_particle_hamiltonian(std::size_t n) {
  const OperatorMatrix p = basis::pos_p(n);
  return 0.5 * (p * p);
}

StateVector scattering_process(const OperatorMatrix& h_free, double p2, double tau, double total_t,
                               const StateVector& psi0, EvolutionMethod method) {
  if (!(tau > 0.0 && tau < total_t)) {
    throw Error(ErrorCode::InvalidTimes, "need 0 < tau < T, got tau=" + std::to_string(tau) +
                                             " T=" + std::to_string(total_t));
  }
  require_state_dim(psi0, h_free.dim(), "initial state");
  const OperatorMatrix vertex = vertex_operator(p2, h_free.dim());
  StateVector psi = psi0;
  if (method.kind == EvolutionMethod::Kind::Exact) {
    psi.apply_unitary(evolve_unitary(h_free, tau));
    psi.apply_unitary(vertex);
    psi.apply_unitary(evolve_unitary(h_free, total_t - tau));
    return psi;
  }
  const PauliTermList terms = pauli_decompose(h_free);
  psi = trotter_evolve(terms, tau, method.trotter_steps, psi);
  psi.apply_unitary(vertex);
  return trotter_evolve(terms, total_t - tau, method.trotter_steps, psi);
}

}  // namespace worldline
