#include "hr13/algebra.hpp"

#include <sstream>
#include <stdexcept>

#include "hr13/minkowski.hpp"

namespace hr13::algebra {

namespace {

constexpr std::array<std::pair<int, int>, 6> kPairs = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

void check_index(int mu) {
  if (mu < 0 || mu > 3) throw std::out_of_range("Minkowski index out of range: " + std::to_string(mu));
}

Rational eta_r(int mu, int nu) { return Rational(static_cast<std::int64_t>(eta(mu, nu))); }

/// Adds coefficient * J'_{mu nu} for arbitrary index order.
void add_jprime(Combination& out, const Rational& coefficient, int mu, int nu) {
  if (coefficient.is_zero()) return;
  if (auto g = jprime_signed(mu, nu)) out.add(g->id, Rational(g->sign) * coefficient);
}

// [J'_{μν}, J'_{ρσ}] = iħc (η_{νσ}J'_{μρ} + η_{μρ}J'_{νσ} − η_{μσ}J'_{νρ} − η_{νρ}J'_{μσ})
Combination lorentz_lorentz(int mu, int nu, int rho, int sigma) {
  Combination out;
  add_jprime(out, eta_r(nu, sigma), mu, rho);
  add_jprime(out, eta_r(mu, rho), nu, sigma);
  add_jprime(out, -eta_r(mu, sigma), nu, rho);
  add_jprime(out, -eta_r(nu, rho), mu, sigma);
  return out;
}

// [J'_{μν}, V_ρ] = iħc (η_{μρ}V_ν − η_{νρ}V_μ) for V = Y, E
Combination lorentz_vector(int mu, int nu, int rho, GeneratorKind kind) {
  auto make = [kind](int i) { return kind == GeneratorKind::Y ? GeneratorId::y(i) : GeneratorId::e(i); };
  Combination out;
  if (!eta_r(mu, rho).is_zero()) out.add(make(nu), eta_r(mu, rho));
  if (!eta_r(nu, rho).is_zero()) out.add(make(mu), -eta_r(nu, rho));
  return out;
}

/// Bracket from the defining relations for a "canonical" ordering, or nullopt
/// when the pair is only reachable through antisymmetry.
std::optional<Combination> defining_bracket(GeneratorId a, GeneratorId b) {
  using K = GeneratorKind;
  if (a.kind == K::M || b.kind == K::M) return Combination{};
  if (a.kind == K::Jprime && b.kind == K::Jprime) return lorentz_lorentz(a.mu, a.nu, b.mu, b.nu);
  if (a.kind == K::Jprime && (b.kind == K::Y || b.kind == K::E)) return lorentz_vector(a.mu, a.nu, b.mu, b.kind);
  if (a.kind == K::Y && b.kind == K::E) {
    Combination out;
    if (!eta_r(a.mu, b.mu).is_zero()) out.add(GeneratorId::m(), eta_r(a.mu, b.mu));
    return out;
  }
  // Translations among themselves commute.
  if ((a.kind == K::Y && b.kind == K::Y) || (a.kind == K::E && b.kind == K::E)) return Combination{};
  return std::nullopt;
}

}  // namespace

GeneratorId GeneratorId::jprime(int mu, int nu) {
  check_index(mu);
  check_index(nu);
  if (!(mu < nu)) throw std::invalid_argument("GeneratorId::jprime requires mu < nu");
  return {GeneratorKind::Jprime, static_cast<std::uint8_t>(mu), static_cast<std::uint8_t>(nu)};
}

GeneratorId GeneratorId::y(int mu) {
  check_index(mu);
  return {GeneratorKind::Y, static_cast<std::uint8_t>(mu), 0};
}

GeneratorId GeneratorId::e(int mu) {
  check_index(mu);
  return {GeneratorKind::E, static_cast<std::uint8_t>(mu), 0};
}

GeneratorId GeneratorId::m() { return {GeneratorKind::M, 0, 0}; }

GeneratorId GeneratorId::from_index(int index) {
  if (index < 0 || index >= kGeneratorCount) throw std::out_of_range("generator index out of range");
  if (index < 6) return jprime(kPairs[index].first, kPairs[index].second);
  if (index < 10) return y(index - 6);
  if (index < 14) return e(index - 10);
  return m();
}

int GeneratorId::index() const {
  switch (kind) {
    case GeneratorKind::Jprime: return lorentz_pair_index(mu, nu);
    case GeneratorKind::Y: return 6 + mu;
    case GeneratorKind::E: return 10 + mu;
    case GeneratorKind::M: return 14;
  }
  return -1;
}

std::string GeneratorId::name() const {
  switch (kind) {
    case GeneratorKind::Jprime: return "J'" + std::to_string(mu) + std::to_string(nu);
    case GeneratorKind::Y: return "Y" + std::to_string(mu);
    case GeneratorKind::E: return "E" + std::to_string(mu);
    case GeneratorKind::M: return "M";
  }
  return "?";
}

int lorentz_pair_index(int mu, int nu) {
  for (int i = 0; i < 6; ++i)
    if (kPairs[i].first == mu && kPairs[i].second == nu) return i;
  throw std::invalid_argument("not an ordered Lorentz index pair");
}

std::pair<int, int> lorentz_pair(int index) { return kPairs.at(index); }

std::optional<SignedGenerator> jprime_signed(int mu, int nu) {
  check_index(mu);
  check_index(nu);
  if (mu == nu) return std::nullopt;
  if (mu < nu) return SignedGenerator{GeneratorId::jprime(mu, nu), 1};
  return SignedGenerator{GeneratorId::jprime(nu, mu), -1};
}

std::array<GeneratorId, kGeneratorCount> all_generators() {
  std::array<GeneratorId, kGeneratorCount> out{};
  for (int i = 0; i < kGeneratorCount; ++i) out[i] = GeneratorId::from_index(i);
  return out;
}

// ---------------------------------------------------------------------------

void Combination::add(GeneratorId g, const Rational& coefficient) {
  if (coefficient.is_zero()) return;
  auto it = terms_.find(g);
  if (it == terms_.end()) {
    terms_.emplace(g, coefficient);
    return;
  }
  it->second += coefficient;
  if (it->second.is_zero()) terms_.erase(it);
}

Rational Combination::coefficient(GeneratorId g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? Rational(0) : it->second;
}

Combination Combination::operator-() const {
  Combination out;
  for (const auto& [g, c] : terms_) out.terms_.emplace(g, -c);
  return out;
}

Combination& Combination::operator+=(const Combination& o) {
  for (const auto& [g, c] : o.terms_) add(g, c);
  return *this;
}

Combination operator*(const Rational& s, const Combination& a) {
  Combination out;
  for (const auto& [g, c] : a.terms_) out.add(g, s * c);
  return out;
}

std::string Combination::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : terms_) {
    if (!first) os << " + ";
    os << "(" << c.str() << ")" << g.name();
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

StructureTable::StructureTable() {
  const auto gens = all_generators();
  std::array<std::array<bool, kGeneratorCount>, kGeneratorCount> filled{};
  for (const auto& a : gens)
    for (const auto& b : gens)
      if (auto c = defining_bracket(a, b)) {
        table_[a.index()][b.index()] = *c;
        filled[a.index()][b.index()] = true;
      }
  for (const auto& a : gens)
    for (const auto& b : gens)
      if (!filled[a.index()][b.index()]) {
        if (!filled[b.index()][a.index()])
          throw std::logic_error("bracket table incomplete at " + a.name() + "," + b.name());
        table_[a.index()][b.index()] = -table_[b.index()][a.index()];
      }
}

const StructureTable& StructureTable::h13() {
  static const StructureTable table;
  return table;
}

Combination StructureTable::bracket(const Combination& a, const Combination& b) const {
  Combination out;
  for (const auto& [ga, ca] : a.terms())
    for (const auto& [gb, cb] : b.terms()) out += (ca * cb) * bracket(ga, gb);
  return out;
}

Combination bracket(GeneratorId a, GeneratorId b) { return StructureTable::h13().bracket(a, b); }

Combination jacobi_residual(GeneratorId a, GeneratorId b, GeneratorId c) {
  const auto& t = StructureTable::h13();
  const Combination ca(c, 1), aa(a, 1), ba(b, 1);
  return t.bracket(t.bracket(a, b), ca) + t.bracket(t.bracket(b, c), aa) + t.bracket(t.bracket(c, a), ba);
}

AlgebraCheck check_algebra() {
  AlgebraCheck out;
  const auto gens = all_generators();
  const auto& t = StructureTable::h13();

  for (const auto& a : gens)
    for (const auto& b : gens)
      if (!(t.bracket(a, b) == -t.bracket(b, a))) out.antisymmetry = false;

  for (const auto& g : gens)
    if (!t.bracket(GeneratorId::m(), g).empty()) out.central = false;

  auto in_poincare = [](GeneratorId g) {
    return g.kind == GeneratorKind::Jprime || g.kind == GeneratorKind::E;
  };
  for (const auto& a : gens)
    for (const auto& b : gens) {
      if (!in_poincare(a) || !in_poincare(b)) continue;
      for (const auto& [g, c] : t.bracket(a, b).terms())
        if (!in_poincare(g)) out.poincare_closed = false;
    }

  for (int i = 0; i < kGeneratorCount; ++i)
    for (int j = i + 1; j < kGeneratorCount; ++j)
      for (int k = j + 1; k < kGeneratorCount; ++k) {
        ++out.jacobi_triples;
        auto r = jacobi_residual(gens[i], gens[j], gens[k]);
        if (!r.empty()) out.failures.push_back({gens[i], gens[j], gens[k], std::move(r)});
      }
  return out;
}

}  // namespace hr13::algebra
