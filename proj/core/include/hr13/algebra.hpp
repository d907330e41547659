#pragma once

// Exact structure constants of H_R(1,3): Lorentz rotations J'_{μν}, the
// Heisenberg-Weyl translations Y_μ, E_μ and the central generator M.
//
// Every bracket coefficient is a rational multiple of the symbolic unit iħc;
// numbers for ħ and c only enter when a caller evaluates a combination.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hr13/rational.hpp"

namespace hr13::algebra {

enum class GeneratorKind : std::uint8_t { Jprime, Y, E, M };

/// One of the 15 abstract basis elements. J' is stored with mu < nu.
struct GeneratorId {
  GeneratorKind kind = GeneratorKind::M;
  std::uint8_t mu = 0;
  std::uint8_t nu = 0;

  static GeneratorId jprime(int mu, int nu);
  static GeneratorId y(int mu);
  static GeneratorId e(int mu);
  static GeneratorId m();
  static GeneratorId from_index(int index);

  /// Dense index: J'(01,02,03,12,13,23) -> 0..5, Y -> 6..9, E -> 10..13, M -> 14.
  int index() const;
  std::string name() const;

  friend bool operator==(const GeneratorId& a, const GeneratorId& b) { return a.index() == b.index(); }
  friend std::strong_ordering operator<=>(const GeneratorId& a, const GeneratorId& b) {
    return a.index() <=> b.index();
  }
};

inline constexpr int kGeneratorCount = 15;

/// Index of the (mu<nu) pair among the six Lorentz generators.
int lorentz_pair_index(int mu, int nu);
std::pair<int, int> lorentz_pair(int index);

/// J'_{μν} for arbitrary ordering: J'_{νμ} = -J'_{μν}; nullopt when μ == ν.
struct SignedGenerator {
  GeneratorId id;
  int sign = 1;
};
std::optional<SignedGenerator> jprime_signed(int mu, int nu);

std::array<GeneratorId, kGeneratorCount> all_generators();

/// Sparse linear combination of generators with exact coefficients.
class Combination {
public:
  Combination() = default;
  Combination(GeneratorId g, Rational coefficient) { add(g, coefficient); }

  void add(GeneratorId g, const Rational& coefficient);
  Rational coefficient(GeneratorId g) const;
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<GeneratorId, Rational>& terms() const { return terms_; }

  Combination operator-() const;
  Combination& operator+=(const Combination& o);
  friend Combination operator+(Combination a, const Combination& b) { return a += b; }
  friend Combination operator-(Combination a, const Combination& b) { return a += -b; }
  friend Combination operator*(const Rational& s, const Combination& a);
  friend bool operator==(const Combination&, const Combination&) = default;

  std::string str() const;

private:
  std::map<GeneratorId, Rational> terms_;
};

/// Bracket table of H_R(1,3), built once from the defining relations.
/// Immutable; safe for concurrent reads.
class StructureTable {
public:
  static const StructureTable& h13();

  /// [a, b] in units of iħc.
  const Combination& bracket(GeneratorId a, GeneratorId b) const {
    return table_[a.index()][b.index()];
  }
  /// Bilinear extension, in units of iħc per bracket level.
  Combination bracket(const Combination& a, const Combination& b) const;

private:
  StructureTable();
  std::array<std::array<Combination, kGeneratorCount>, kGeneratorCount> table_;
};

Combination bracket(GeneratorId a, GeneratorId b);

/// [[a,b],c] + [[b,c],a] + [[c,a],b] in units of (iħc)^2; empty in a Lie algebra.
Combination jacobi_residual(GeneratorId a, GeneratorId b, GeneratorId c);

struct JacobiFailure {
  GeneratorId a, b, c;
  Combination residual;
};

struct AlgebraCheck {
  bool antisymmetry = true;
  bool central = true;        ///< [M, g] = 0 for all g
  bool poincare_closed = true;  ///< span{J', E} closes
  int jacobi_triples = 0;
  std::vector<JacobiFailure> failures;

  bool pass() const { return antisymmetry && central && poincare_closed && failures.empty(); }
};

/// Antisymmetry over all ordered pairs, Jacobi over all 455 unordered triples,
/// centrality of M and closure of the Poincaré subalgebra.
AlgebraCheck check_algebra();

}  // namespace hr13::algebra
