#include "hr13/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hr13::algebra {

namespace {

int spatial_pair_index(int i, int j) {
  if (i == 1 && j == 2) return 0;
  if (i == 1 && j == 3) return 1;
  if (i == 2 && j == 3) return 2;
  throw std::invalid_argument("rotation requires spatial indices 1 <= i < j <= 3");
}

void check_spatial(int i) {
  if (i < 1 || i > 3) throw std::out_of_range("spatial index must be 1..3");
}

int delta(int i, int j) { return i == j ? 1 : 0; }

/// Adds coefficient * J_{ij} with antisymmetric normalisation.
void add_rotation(std::map<ContractedGenerator, Rational>& out, int coefficient, int i, int j) {
  if (coefficient == 0 || i == j) return;
  const int sign = i < j ? 1 : -1;
  const auto g = ContractedGenerator::rotation(std::min(i, j), std::max(i, j));
  out[g] += Rational(sign * coefficient);
  if (out[g].is_zero()) out.erase(g);
}

void add(std::map<ContractedGenerator, Rational>& out, ContractedGenerator g, int coefficient) {
  if (coefficient == 0) return;
  out[g] += Rational(coefficient);
  if (out[g].is_zero()) out.erase(g);
}

ContractedGenerator vector_of(ContractedKind kind, int i) {
  switch (kind) {
    case ContractedKind::K: return ContractedGenerator::boost(i);
    case ContractedKind::P: return ContractedGenerator::momentum(i);
    case ContractedKind::Y: return ContractedGenerator::translation(i);
    default: throw std::logic_error("not a spatial vector generator");
  }
}

/// Target brackets for one ordering; nullopt-like empty flag when the pair is
/// only defined through antisymmetry.
bool target_ordered(ContractedGenerator a, ContractedGenerator b, std::map<ContractedGenerator, Rational>& out) {
  using K = ContractedKind;
  const auto ka = a.kind, kb = b.kind;
  if (ka == K::J && kb == K::J) {
    const int i = a.i, j = a.j, k = b.i, l = b.j;
    add_rotation(out, delta(j, l), i, k);
    add_rotation(out, delta(i, k), j, l);
    add_rotation(out, -delta(i, l), j, k);
    add_rotation(out, -delta(j, k), i, l);
    return true;
  }
  if (ka == K::J && (kb == K::K || kb == K::P || kb == K::Y)) {
    add(out, vector_of(kb, a.j), delta(a.i, b.i));
    add(out, vector_of(kb, a.i), -delta(a.j, b.i));
    return true;
  }
  if (ka == K::J) return true;  // J commutes with H, U, M
  if (ka == K::K && kb == K::H) {
    add(out, ContractedGenerator::momentum(a.i), -1);
    return true;
  }
  if (ka == K::K && kb == K::Y) {
    add(out, ContractedGenerator::time_translation(), -delta(a.i, b.i));
    return true;
  }
  if (ka == K::Y && kb == K::P) {
    add(out, ContractedGenerator::mass(), delta(a.i, b.i));
    return true;
  }
  if (ka == K::U && kb == K::H) {
    add(out, ContractedGenerator::mass(), -1);
    return true;
  }
  return false;
}

}  // namespace

ContractedGenerator ContractedGenerator::rotation(int i, int j) {
  spatial_pair_index(i, j);
  return {ContractedKind::J, static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)};
}
ContractedGenerator ContractedGenerator::boost(int i) {
  check_spatial(i);
  return {ContractedKind::K, static_cast<std::uint8_t>(i), 0};
}
ContractedGenerator ContractedGenerator::momentum(int i) {
  check_spatial(i);
  return {ContractedKind::P, static_cast<std::uint8_t>(i), 0};
}
ContractedGenerator ContractedGenerator::hamiltonian() { return {ContractedKind::H, 0, 0}; }
ContractedGenerator ContractedGenerator::translation(int i) {
  check_spatial(i);
  return {ContractedKind::Y, static_cast<std::uint8_t>(i), 0};
}
ContractedGenerator ContractedGenerator::time_translation() { return {ContractedKind::U, 0, 0}; }
ContractedGenerator ContractedGenerator::mass() { return {ContractedKind::M, 0, 0}; }

ContractedGenerator ContractedGenerator::from_index(int index) {
  static constexpr std::pair<int, int> rot[3] = {{1, 2}, {1, 3}, {2, 3}};
  if (index < 0 || index >= kGeneratorCount) throw std::out_of_range("contracted generator index");
  if (index < 3) return rotation(rot[index].first, rot[index].second);
  if (index < 6) return boost(index - 2);
  if (index < 9) return momentum(index - 5);
  if (index == 9) return hamiltonian();
  if (index < 13) return translation(index - 9);
  if (index == 13) return time_translation();
  return mass();
}

int ContractedGenerator::index() const {
  switch (kind) {
    case ContractedKind::J: return spatial_pair_index(i, j);
    case ContractedKind::K: return 2 + i;
    case ContractedKind::P: return 5 + i;
    case ContractedKind::H: return 9;
    case ContractedKind::Y: return 9 + i;
    case ContractedKind::U: return 13;
    case ContractedKind::M: return 14;
  }
  return -1;
}

std::string ContractedGenerator::name() const {
  switch (kind) {
    case ContractedKind::J: return "J" + std::to_string(i) + std::to_string(j);
    case ContractedKind::K: return "K" + std::to_string(i);
    case ContractedKind::P: return "P" + std::to_string(i);
    case ContractedKind::H: return "H";
    case ContractedKind::Y: return "Y" + std::to_string(i);
    case ContractedKind::U: return "U";
    case ContractedKind::M: return "M";
  }
  return "?";
}

std::array<ContractedGenerator, kGeneratorCount> all_contracted_generators() {
  std::array<ContractedGenerator, kGeneratorCount> out{};
  for (int k = 0; k < kGeneratorCount; ++k) out[k] = ContractedGenerator::from_index(k);
  return out;
}

Rescaling rescaling(ContractedGenerator g) {
  switch (g.kind) {
    case ContractedKind::J: return {GeneratorId::jprime(g.i, g.j), 1, -1};
    case ContractedKind::K: return {GeneratorId::jprime(0, g.i), -1, -2};  // J'_{i0} = -J'_{0i}
    case ContractedKind::P: return {GeneratorId::e(g.i), 1, -1};
    case ContractedKind::H: return {GeneratorId::e(0), -1, 0};
    case ContractedKind::Y: return {GeneratorId::y(g.i), 1, 0};
    case ContractedKind::U: return {GeneratorId::y(0), -1, -1};
    case ContractedKind::M: return {GeneratorId::m(), 1, 0};
  }
  throw std::logic_error("unknown contracted generator");
}

InverseRescaling inverse_rescaling(GeneratorId g) {
  for (const auto& cg : all_contracted_generators()) {
    const auto r = rescaling(cg);
    if (r.original == g) return {cg, r.sign, -r.c_power};
  }
  throw std::logic_error("generator without rescaled partner");
}

double Monomial::at(double c) const { return coefficient.to_double() * std::pow(c, c_power); }

void ContractedCombination::add(ContractedGenerator g, Monomial m) {
  if (m.coefficient.is_zero()) return;
  auto it = terms_.find(g);
  if (it == terms_.end()) {
    terms_.emplace(g, m);
    return;
  }
  if (it->second.c_power != m.c_power)
    throw std::logic_error("mixed powers of c on one contracted generator");
  it->second.coefficient += m.coefficient;
  if (it->second.coefficient.is_zero()) terms_.erase(it);
}

std::map<ContractedGenerator, double> ContractedCombination::at(double c) const {
  std::map<ContractedGenerator, double> out;
  for (const auto& [g, m] : terms_) out[g] = m.at(c);
  return out;
}

std::string ContractedCombination::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, m] : terms_) {
    if (!first) os << " + ";
    os << "(" << m.coefficient.str();
    if (m.c_power != 0) os << " c^" << m.c_power;
    os << ")" << g.name();
    first = false;
  }
  return os.str();
}

ContractedCombination contracted_bracket(ContractedGenerator a, ContractedGenerator b) {
  // [A,B] = s_a s_b c^{p_a+p_b} [a,b] = s_a s_b c^{p_a+p_b} iħc Σ r_g g,
  // and g = s_g c^{-p_g} G.
  const auto ra = rescaling(a);
  const auto rb = rescaling(b);
  ContractedCombination out;
  const Combination ab = bracket(ra.original, rb.original);
  for (const auto& [g, r] : ab.terms()) {
    const auto inv = inverse_rescaling(g);
    out.add(inv.contracted,
            Monomial{Rational(ra.sign * rb.sign * inv.sign) * r, ra.c_power + rb.c_power + 1 + inv.c_power});
  }
  return out;
}

std::map<ContractedGenerator, double> contracted_bracket(const ContractedBasis& basis, ContractedGenerator a,
                                                         ContractedGenerator b) {
  if (!(basis.c > 0.0) || !std::isfinite(basis.c)) throw std::invalid_argument("contraction requires finite c > 0");
  return contracted_bracket(a, b).at(basis.c);
}

std::map<ContractedGenerator, Rational> contraction_target(ContractedGenerator a, ContractedGenerator b) {
  std::map<ContractedGenerator, Rational> out;
  if (target_ordered(a, b, out)) return out;
  std::map<ContractedGenerator, Rational> rev;
  if (target_ordered(b, a, rev)) {
    for (auto& [g, v] : rev) out[g] = -v;
  }
  return out;
}

ContractionReport contraction_limit_check(std::span<const double> c_values) {
  if (c_values.size() < 2) throw std::invalid_argument("contraction check needs at least two c values");
  for (std::size_t k = 0; k < c_values.size(); ++k) {
    if (!(c_values[k] > 0.0)) throw std::invalid_argument("c values must be positive");
    if (k > 0 && !(c_values[k] > c_values[k - 1])) throw std::invalid_argument("c values must increase");
  }

  ContractionReport report;
  report.c_values.assign(c_values.begin(), c_values.end());
  report.min_fitted_power = std::numeric_limits<double>::infinity();
  const auto gens = all_contracted_generators();

  for (int ia = 0; ia < kGeneratorCount; ++ia)
    for (int ib = ia + 1; ib < kGeneratorCount; ++ib) {
      BracketDeviation bd{gens[ia], gens[ib], {}, false, 0.0, true};
      const auto symbolic = contracted_bracket(gens[ia], gens[ib]);
      const auto target = contraction_target(gens[ia], gens[ib]);
      for (double c : c_values) {
        const auto value = symbolic.at(c);
        double dev = 0.0;
        for (const auto& g : gens) {
          const auto vit = value.find(g);
          const auto tit = target.find(g);
          const double v = vit == value.end() ? 0.0 : vit->second;
          const double t = tit == target.end() ? 0.0 : tit->second.to_double();
          dev = std::max(dev, std::fabs(v - t));
        }
        bd.deviation.push_back(dev);
      }
      bd.exact = std::all_of(bd.deviation.begin(), bd.deviation.end(), [](double d) { return d == 0.0; });
      if (!bd.exact) {
        for (std::size_t k = 1; k < bd.deviation.size(); ++k)
          if (!(bd.deviation[k] < bd.deviation[k - 1])) bd.monotone = false;
        double mx = 0.0, my = 0.0;
        const double n = static_cast<double>(c_values.size());
        std::vector<double> lx, ly;
        for (std::size_t k = 0; k < c_values.size(); ++k) {
          lx.push_back(std::log(c_values[k]));
          ly.push_back(std::log(std::max(bd.deviation[k], std::numeric_limits<double>::min())));
          mx += lx.back() / n;
          my += ly.back() / n;
        }
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t k = 0; k < lx.size(); ++k) {
          sxy += (lx[k] - mx) * (ly[k] - my);
          sxx += (lx[k] - mx) * (lx[k] - mx);
        }
        bd.fitted_power = -sxy / sxx;
        report.min_fitted_power = std::min(report.min_fitted_power, bd.fitted_power);
      } else {
        bd.fitted_power = std::numeric_limits<double>::infinity();
      }
      report.monotone = report.monotone && bd.monotone;
      report.brackets.push_back(std::move(bd));
    }
  return report;
}

}  // namespace hr13::algebra
