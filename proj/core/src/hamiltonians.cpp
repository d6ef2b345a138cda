#include "worldline/hamiltonians.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <regex>

#include "worldline/basis.hpp"
#include "worldline/errors.hpp"

namespace worldline {

namespace {

constexpr double kBuiltHermitianTolerance = 1e-10;

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorCode::InvalidSpec, why); }

BuiltHamiltonian finish(OperatorMatrix matrix, const HamiltonianSpec& spec) {
  if (spec.variant.kind == VariantKind::HermitianPart) matrix = matrix.hermitian_part();
  const bool hermitian = matrix.is_hermitian(kBuiltHermitianTolerance);
  const std::size_t qubits = basis::qubit_count(matrix.dim());
  return BuiltHamiltonian{std::move(matrix), spec, hermitian, qubits};
}

OperatorMatrix square(const OperatorMatrix& a) { return a * a; }

void require_kind(const HamiltonianSpec& spec, HamiltonianKind kind) {
  if (spec.kind != kind) invalid("builder for " + to_string(kind) + " called with kind " + to_string(spec.kind));
}

}  // namespace

HamiltonianSpec HamiltonianSpec::defaults(HamiltonianKind kind) {
  HamiltonianSpec spec;
  spec.kind = kind;
  spec.boson_trunc = kind == HamiltonianKind::MonopoleSU2 ? 4 : 16;
  spec.variant = default_variant(kind);
  return spec;
}

Variant default_variant(HamiltonianKind kind, BasisKind basis) {
  switch (kind) {
    case HamiltonianKind::LandauCartesian:
      return basis == BasisKind::Oscillator ? Variant{VariantKind::ProjectedSquares} : Variant{};
    case HamiltonianKind::LandauPolar:
      return Variant{};
    case HamiltonianKind::MonopoleSU2:
      return Variant{VariantKind::HermitianPart};
  }
  return Variant{};
}

void validate(const HamiltonianSpec& spec) {
  if (!std::isfinite(spec.b_field)) invalid("b_field must be finite");
  if (!(spec.floor >= 0.0) || !std::isfinite(spec.floor)) invalid("floor must be a finite non-negative number");
  if (spec.boson_trunc < 2 || !std::has_single_bit(spec.boson_trunc)) {
    invalid("boson_trunc must be a power of two >= 2, got " + std::to_string(spec.boson_trunc));
  }
  if (spec.basis == BasisKind::Position && spec.kind != HamiltonianKind::LandauCartesian) {
    invalid("the position basis is only available for LandauCartesian");
  }
  if (spec.angular_m != 0 && spec.kind != HamiltonianKind::LandauPolar) {
    invalid("angular_m only applies to LandauPolar");
  }
  const VariantKind v = spec.variant.kind;
  switch (spec.kind) {
    case HamiltonianKind::LandauCartesian:
      if (v == VariantKind::MajoranaFermions || v == VariantKind::ScalarB) {
        invalid("variant " + to_string(spec.variant) + " only applies to MonopoleSU2");
      }
      if (v == VariantKind::ProjectedSquares && spec.basis == BasisKind::Position) {
        invalid("ProjectedSquares needs the oscillator basis");
      }
      break;
    case HamiltonianKind::LandauPolar:
      if (v != VariantKind::Literal && v != VariantKind::HermitianPart) {
        invalid("LandauPolar supports the Literal and HermitianPart variants only");
      }
      break;
    case HamiltonianKind::MonopoleSU2:
      if (v == VariantKind::ProjectedSquares) invalid("ProjectedSquares does not apply to MonopoleSU2");
      if (v == VariantKind::ScalarB && !(std::isfinite(spec.variant.r_ref) && spec.variant.r_ref > 0.0)) {
        invalid("ScalarB needs a positive r_ref");
      }
      break;
  }
}

BuiltHamiltonian build_landau_cartesian(const HamiltonianSpec& spec) {
  require_kind(spec, HamiltonianKind::LandauCartesian);
  validate(spec);
  const std::size_t n = spec.boson_trunc;
  const std::array<std::size_t, 2> dims{n, n};
  const bool position = spec.basis == BasisKind::Position;
  const OperatorMatrix q = position ? basis::pos_q(n) : basis::osc_q(n);
  const OperatorMatrix p = position ? basis::pos_p(n) : basis::osc_p(n);

  const OperatorMatrix x = basis::place(q, 0, dims);
  const OperatorMatrix y = basis::place(q, 1, dims);
  const OperatorMatrix px = basis::place(p, 0, dims);
  const OperatorMatrix py = basis::place(p, 1, dims);
  const double half_b = spec.b_field / 2.0;

  if (spec.variant.kind == VariantKind::ProjectedSquares) {
    const OperatorMatrix q2 = basis::osc_q_squared(n);
    const OperatorMatrix p2 = basis::osc_p_squared(n);
    // (px + b y)^2 with px^2 and y^2 replaced by their projected forms.
    OperatorMatrix h = 0.5 * (basis::place(p2, 0, dims) + half_b * (px * y + y * px) +
                              half_b * half_b * basis::place(q2, 1, dims));
    h += 0.5 * (basis::place(p2, 1, dims) - half_b * (py * x + x * py) +
                half_b * half_b * basis::place(q2, 0, dims));
    return finish(std::move(h), spec);
  }

  const OperatorMatrix ax = px + half_b * y;
  const OperatorMatrix ay = py - half_b * x;
  return finish(0.5 * (square(ax) + square(ay)), spec);
}

BuiltHamiltonian build_landau_polar(const HamiltonianSpec& spec) {
  require_kind(spec, HamiltonianKind::LandauPolar);
  validate(spec);
  const std::size_t n = spec.boson_trunc;
  const OperatorMatrix p = basis::osc_p(n);
  // Radial operator: spectral absolute value of the oscillator coordinate.
  const OperatorMatrix rho = matrix_function(basis::osc_q(n), [](double v) { return std::abs(v); }, 0.0);
  const OperatorMatrix rho_inv_sqrt =
      matrix_function(rho, [](double v) { return 1.0 / std::sqrt(std::abs(v)); }, spec.floor);

  const double half_b = spec.b_field / 2.0;
  OperatorMatrix h = 0.5 * (rho_inv_sqrt * p * rho * p * rho_inv_sqrt) + 0.5 * half_b * half_b * square(rho);
  if (spec.angular_m != 0) {
    const double m = spec.angular_m;
    const OperatorMatrix rho_inv_sq = matrix_function(rho, [](double v) { return 1.0 / (v * v); }, spec.floor);
    h += 0.5 * m * m * rho_inv_sq;
    h -= half_b * m * OperatorMatrix::identity(n);
  }
  return finish(std::move(h), spec);
}

BuiltHamiltonian build_monopole_su2(const HamiltonianSpec& spec) {
  require_kind(spec, HamiltonianKind::MonopoleSU2);
  validate(spec);
  const std::size_t n = spec.boson_trunc;
  const std::array<std::size_t, 4> boson_dims{n, n, n, 8};
  const std::array<std::size_t, 4> fermion_dims{n * n * n, 2, 2, 2};

  const OperatorMatrix q = basis::osc_q(n);
  const OperatorMatrix p = basis::osc_p(n);
  const OperatorMatrix x = basis::place(q, 0, boson_dims);
  const OperatorMatrix y = basis::place(q, 1, boson_dims);
  const OperatorMatrix z = basis::place(q, 2, boson_dims);
  const OperatorMatrix px = basis::place(p, 0, boson_dims);
  const OperatorMatrix py = basis::place(p, 1, boson_dims);
  const OperatorMatrix pz = basis::place(p, 2, boson_dims);

  const OperatorMatrix factor = spec.variant.kind == VariantKind::MajoranaFermions
                                    ? (1.0 / std::numbers::sqrt2) * basis::pauli_x()
                                    : basis::fermion_factor();
  const OperatorMatrix psi1 = basis::place(factor, 1, fermion_dims);
  const OperatorMatrix psi2 = basis::place(factor, 2, fermion_dims);
  const OperatorMatrix psi3 = basis::place(factor, 3, fermion_dims);
  const OperatorMatrix psi12 = psi1 * psi2;
  const OperatorMatrix psi23 = psi2 * psi3;
  const OperatorMatrix psi31 = psi3 * psi1;

  const std::size_t dim = x.dim();
  const double g_m = spec.b_field;
  OperatorMatrix coupling = OperatorMatrix::identity(dim);
  if (spec.variant.kind == VariantKind::ScalarB) {
    coupling *= -g_m / (spec.variant.r_ref * spec.variant.r_ref);
  } else {
    const OperatorMatrix r2 = square(x) + square(y) + square(z);
    coupling = -g_m * matrix_function(r2, [](double v) { return 1.0 / v; }, spec.floor);
  }

  const OperatorMatrix a1 = px + coupling * (-(y * psi12) + z * psi31);
  const OperatorMatrix a2 = py + coupling * (-(z * psi23) + x * psi12);
  const OperatorMatrix a3 = pz + coupling * (-(x * psi31) + y * psi23);
  return finish(0.5 * (square(a1) + square(a2) + square(a3)), spec);
}

BuiltHamiltonian build_hamiltonian(const HamiltonianSpec& spec) {
  switch (spec.kind) {
    case HamiltonianKind::LandauCartesian: return build_landau_cartesian(spec);
    case HamiltonianKind::LandauPolar: return build_landau_polar(spec);
    case HamiltonianKind::MonopoleSU2: return build_monopole_su2(spec);
  }
  invalid("unknown Hamiltonian kind");
}

std::vector<double> sorted_spectrum(const BuiltHamiltonian& h) {
  if (h.hermitian) return hermitian_eigenvalues(h.matrix);
  const auto values = general_eigenvalues(h.matrix);
  std::vector<double> real(values.size());
  std::transform(values.begin(), values.end(), real.begin(), [](Complex c) { return c.real(); });
  std::sort(real.begin(), real.end());
  return real;
}

double lowest_eigenvalue(const BuiltHamiltonian& h) { return sorted_spectrum(h).front(); }

std::optional<double> monopole_reference_energy(double g_m) {
  if (std::abs(g_m - 2.0) < 1e-12) return -2.53854786;
  if (std::abs(g_m - 0.2) < 1e-12) return 0.31120022;
  return std::nullopt;
}

VariantReport variant_selection_report(std::span<const double> g_values, std::size_t boson_trunc, double floor) {
  const std::array<Variant, 4> variants{Variant{VariantKind::Literal}, Variant{VariantKind::HermitianPart},
                                        Variant{VariantKind::MajoranaFermions},
                                        Variant{VariantKind::ScalarB, 1.0}};
  VariantReport report;
  report.closest_max_deviation = std::numeric_limits<double>::infinity();
  for (const Variant& variant : variants) {
    double worst = 0.0;
    bool any_reference = false;
    for (double g_m : g_values) {
      HamiltonianSpec spec = HamiltonianSpec::defaults(HamiltonianKind::MonopoleSU2);
      spec.b_field = g_m;
      spec.boson_trunc = boson_trunc;
      spec.floor = floor;
      spec.variant = variant;
      const BuiltHamiltonian built = build_monopole_su2(spec);
      VariantReportRow row{variant, g_m, lowest_eigenvalue(built), built.hermitian, monopole_reference_energy(g_m), {}};
      if (row.reference) {
        row.deviation = std::abs(row.lambda_min - *row.reference);
        worst = std::max(worst, *row.deviation);
        any_reference = true;
      }
      report.rows.push_back(row);
    }
    if (!any_reference) continue;
    if (worst <= kMonopoleMatchTolerance) report.matching.push_back(variant);
    if (worst < report.closest_max_deviation) {
      report.closest_max_deviation = worst;
      report.closest = variant;
    }
  }
  return report;
}

std::string to_string(HamiltonianKind kind) {
  switch (kind) {
    case HamiltonianKind::LandauCartesian: return "LandauCartesian";
    case HamiltonianKind::LandauPolar: return "LandauPolar";
    case HamiltonianKind::MonopoleSU2: return "MonopoleSU2";
  }
  return "?";
}

std::string to_string(BasisKind basis) { return basis == BasisKind::Oscillator ? "oscillator" : "position"; }

std::string to_string(const Variant& variant) {
  switch (variant.kind) {
    case VariantKind::Literal: return "Literal";
    case VariantKind::ProjectedSquares: return "ProjectedSquares";
    case VariantKind::MajoranaFermions: return "MajoranaFermions";
    case VariantKind::HermitianPart: return "HermitianPart";
    case VariantKind::ScalarB: {
      nlohmann::json number = variant.r_ref;
      return "ScalarB(" + number.dump() + ")";
    }
  }
  return "?";
}

HamiltonianKind kind_from_string(std::string_view text) {
  for (auto kind : {HamiltonianKind::LandauCartesian, HamiltonianKind::LandauPolar, HamiltonianKind::MonopoleSU2}) {
    if (text == to_string(kind)) return kind;
  }
  invalid("unknown Hamiltonian kind '" + std::string(text) + "'");
}

BasisKind basis_from_string(std::string_view text) {
  if (text == "oscillator") return BasisKind::Oscillator;
  if (text == "position") return BasisKind::Position;
  invalid("unknown basis '" + std::string(text) + "'");
}

Variant variant_from_string(std::string_view text) {
  for (auto kind : {VariantKind::Literal, VariantKind::ProjectedSquares, VariantKind::MajoranaFermions,
                    VariantKind::HermitianPart}) {
    if (text == to_string(Variant{kind})) return Variant{kind};
  }
  if (text == "ScalarB") return Variant{VariantKind::ScalarB, 1.0};
  static const std::regex scalar_b(R"(ScalarB\(\s*([-+0-9.eE]+)\s*\))");
  std::match_results<std::string_view::const_iterator> match;
  if (std::regex_match(text.begin(), text.end(), match, scalar_b)) {
    const std::string number = match[1].str();
    std::size_t used = 0;
    double r_ref = 0.0;
    try {
      r_ref = std::stod(number, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != number.size() || !(r_ref > 0.0)) invalid("ScalarB needs a positive r_ref, got '" + number + "'");
    return Variant{VariantKind::ScalarB, r_ref};
  }
  invalid("unknown variant '" + std::string(text) + "'");
}

nlohmann::json to_json(const HamiltonianSpec& spec) {
  return nlohmann::json{{"kind", to_string(spec.kind)},
                        {"b_field", spec.b_field},
                        {"boson_trunc", spec.boson_trunc},
                        {"angular_m", spec.angular_m},
                        {"variant", to_string(spec.variant)},
                        {"floor", spec.floor},
                        {"basis", to_string(spec.basis)}};
}

namespace {

double number_field(const nlohmann::json& value, const char* key) {
  if (!value.is_number()) invalid(std::string(key) + " must be a number");
  return value.get<double>();
}

long long integer_field(const nlohmann::json& value, const char* key) {
  if (!value.is_number_integer()) invalid(std::string(key) + " must be an integer");
  return value.get<long long>();
}

std::string string_field(const nlohmann::json& value, const char* key) {
  if (!value.is_string()) invalid(std::string(key) + " must be a string");
  return value.get<std::string>();
}

}  // namespace

HamiltonianSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) invalid("hamiltonian spec must be a JSON object");
  static constexpr std::array<std::string_view, 7> known{"kind", "b_field", "boson_trunc", "angular_m",
                                                         "variant", "floor", "basis"};
  for (const auto& item : j.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      invalid("unknown hamiltonian key '" + item.key() + "'");
    }
  }
  if (!j.contains("kind")) invalid("hamiltonian spec needs a 'kind'");

  HamiltonianSpec spec = HamiltonianSpec::defaults(kind_from_string(string_field(j.at("kind"), "kind")));
  if (j.contains("basis")) spec.basis = basis_from_string(string_field(j.at("basis"), "basis"));
  spec.variant = default_variant(spec.kind, spec.basis);
  if (j.contains("b_field")) spec.b_field = number_field(j.at("b_field"), "b_field");
  if (j.contains("boson_trunc")) {
    const long long n = integer_field(j.at("boson_trunc"), "boson_trunc");
    if (n < 2) invalid("boson_trunc must be at least 2");
    spec.boson_trunc = static_cast<std::size_t>(n);
  }
  if (j.contains("angular_m")) spec.angular_m = static_cast<int>(integer_field(j.at("angular_m"), "angular_m"));
  if (j.contains("variant")) spec.variant = variant_from_string(string_field(j.at("variant"), "variant"));
  if (j.contains("floor")) spec.floor = number_field(j.at("floor"), "floor");
  validate(spec);
  return spec;
}

}  // namespace worldline
