#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "worldline/operator_algebra.hpp"

namespace worldline {

enum class HamiltonianKind { LandauCartesian, LandauPolar, MonopoleSU2 };

enum class BasisKind { Oscillator, Position };

/// Construction variants, for the places where the Hamiltonian as written leaves
/// the truncated-matrix construction open.
///
/// - Literal: every product and square is a plain product of truncated
///   matrices, exactly as written.
/// - ProjectedSquares: x^2 and p^2 are the truncations of the untruncated
///   squares (basis::osc_q_squared / osc_p_squared); cross terms stay literal.
///   Oscillator-basis Landau Cartesian only.
/// - MajoranaFermions: each worldline fermion factor is the Hermitian
///   (psi + psi^dagger)/sqrt2 = sigma_x/sqrt2, still identity padded.
/// - HermitianPart: (H + H^dagger)/2 of the literal matrix.
/// - ScalarB: the monopole coupling B = -g_m / r_ref^2 as a number instead of
///   the spectral inverse of the r^2 operator.
enum class VariantKind { Literal, ProjectedSquares, MajoranaFermions, HermitianPart, ScalarB };

struct Variant {
  VariantKind kind = VariantKind::Literal;
  double r_ref = 1.0;  // ScalarB only

  friend bool operator==(const Variant&, const Variant&) = default;
};

struct HamiltonianSpec {
  HamiltonianKind kind = HamiltonianKind::LandauCartesian;
  // Magnetic field B for the Landau kinds; monopole coupling g_m for MonopoleSU2.
  double b_field = 2.0;
  std::size_t boson_trunc = 16;
  int angular_m = 0;  // LandauPolar only
  Variant variant{VariantKind::ProjectedSquares};
  double floor = kDefaultSpectralFloor;
  BasisKind basis = BasisKind::Oscillator;  // LandauCartesian only

  // Defaults: N=16 for both Landau kinds, N=4 for the
  // monopole, and the default variant for the kind.
  static HamiltonianSpec defaults(HamiltonianKind kind);

  friend bool operator==(const HamiltonianSpec&, const HamiltonianSpec&) = default;
};

Variant default_variant(HamiltonianKind kind, BasisKind basis = BasisKind::Oscillator);

struct BuiltHamiltonian {
  OperatorMatrix matrix;
  HamiltonianSpec spec;
  bool hermitian = false;  // measured at build time, 1e-10 relative
  std::size_t qubits = 0;
};

// Throws Error{InvalidSpec} when the spec is inconsistent for its kind.
void validate(const HamiltonianSpec& spec);

BuiltHamiltonian build_landau_cartesian(const HamiltonianSpec& spec);
BuiltHamiltonian build_landau_polar(const HamiltonianSpec& spec);
BuiltHamiltonian build_monopole_su2(const HamiltonianSpec& spec);
BuiltHamiltonian build_hamiltonian(const HamiltonianSpec& spec);

// Sorted spectrum; for non-Hermitian matrices the sorted real parts.
std::vector<double> sorted_spectrum(const BuiltHamiltonian& h);
double lowest_eigenvalue(const BuiltHamiltonian& h);

// Published reference ground energies for the monopole at g_m = 2 and 0.2.
std::optional<double> monopole_reference_energy(double g_m);
inline constexpr double kMonopoleMatchTolerance = 1e-3;

struct VariantReportRow {
  Variant variant;
  double g_m = 0.0;
  double lambda_min = 0.0;  // real part for non-Hermitian variants
  bool hermitian = false;
  std::optional<double> reference;
  std::optional<double> deviation;
};

struct VariantReport {
  std::vector<VariantReportRow> rows;
  std::vector<Variant> matching;    // within kMonopoleMatchTolerance at every referenced g_m
  Variant closest;                  // smallest worst-case deviation
  double closest_max_deviation = 0.0;
};

// Evaluates Literal, HermitianPart, MajoranaFermions and ScalarB(1) at each
// coupling in g_values.
VariantReport variant_selection_report(std::span<const double> g_values,
                                       std::size_t boson_trunc = 4,
                                       double floor = kDefaultSpectralFloor);

std::string to_string(HamiltonianKind kind);
std::string to_string(BasisKind basis);
std::string to_string(const Variant& variant);
HamiltonianKind kind_from_string(std::string_view text);
BasisKind basis_from_string(std::string_view text);
// Accepts "Literal", "ProjectedSquares", "MajoranaFermions", "HermitianPart",
// "ScalarB" (r_ref = 1) and "ScalarB(<r_ref>)".
Variant variant_from_string(std::string_view text);

nlohmann::json to_json(const HamiltonianSpec& spec);
// Keys: kind (required), b_field, boson_trunc, angular_m, variant, floor,
// basis. Missing keys take the kind defaults; unknown keys are rejected.
HamiltonianSpec spec_from_json(const nlohmann::json& j);

}  // namespace worldline
