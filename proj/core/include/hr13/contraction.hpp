#pragma once

// The c-parameterised rescaling of H_R(1,3) whose c -> infinity limit is the
// Galilean G(3) algebra {J_ij, K_i, P_i, H} together with H_R(3) = {J_ij, Y_i,
// P_i, M} and the extra products [U,H] and [K_i,Y_j].
//
// Rescaled generators:
//   J_ij = J'_ij / c,   K_i = J'_i0 / c^2,   P_i = E_i / c,
//   H = -E_0,           U = -Y_0 / c,        Y_i,  M unchanged.
// Contracted bracket coefficients are exact rational monomials r c^n in units
// of iħ.

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hr13/algebra.hpp"

namespace hr13::algebra {

enum class ContractedKind : std::uint8_t { J, K, P, H, Y, U, M };

struct ContractedGenerator {
  ContractedKind kind = ContractedKind::M;
  std::uint8_t i = 0;  ///< spatial index 1..3 (first index for J)
  std::uint8_t j = 0;  ///< second spatial index for J, i < j

  static ContractedGenerator rotation(int i, int j);
  static ContractedGenerator boost(int i);
  static ContractedGenerator momentum(int i);
  static ContractedGenerator hamiltonian();
  static ContractedGenerator translation(int i);  ///< Y_i
  static ContractedGenerator time_translation();  ///< U
  static ContractedGenerator mass();
  static ContractedGenerator from_index(int index);

  int index() const;
  std::string name() const;

  friend bool operator==(const ContractedGenerator& a, const ContractedGenerator& b) {
    return a.index() == b.index();
  }
  friend std::strong_ordering operator<=>(const ContractedGenerator& a, const ContractedGenerator& b) {
    return a.index() <=> b.index();
  }
};

std::array<ContractedGenerator, kGeneratorCount> all_contracted_generators();

/// G = sign * c^c_power * g for the underlying H_R(1,3) generator g.
struct Rescaling {
  GeneratorId original;
  int sign = 1;
  int c_power = 0;
};
Rescaling rescaling(ContractedGenerator g);

/// Inverse map: g = coefficient * c^c_power * G.
struct InverseRescaling {
  ContractedGenerator contracted;
  int sign = 1;
  int c_power = 0;
};
InverseRescaling inverse_rescaling(GeneratorId g);

/// coefficient * c^c_power
struct Monomial {
  Rational coefficient;
  int c_power = 0;

  double at(double c) const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Linear combination of rescaled generators with c-dependent coefficients,
/// in units of iħ.
class ContractedCombination {
public:
  void add(ContractedGenerator g, Monomial m);
  const std::map<ContractedGenerator, Monomial>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// Numerical coefficients (units of iħ) at a given c.
  std::map<ContractedGenerator, double> at(double c) const;
  std::string str() const;

private:
  std::map<ContractedGenerator, Monomial> terms_;
};

/// Fixed value of the deformation parameter c.
struct ContractedBasis {
  double c = 1.0;
};

/// Symbolic bracket of rescaled generators, induced from the H_R(1,3) table.
ContractedCombination contracted_bracket(ContractedGenerator a, ContractedGenerator b);

/// Bracket evaluated at basis.c; coefficients in units of iħ.
std::map<ContractedGenerator, double> contracted_bracket(const ContractedBasis& basis, ContractedGenerator a,
                                                         ContractedGenerator b);

/// Hard-coded c -> infinity target brackets (units of iħ), written out from
/// the Galilean and H_R(3) relations rather than derived from the rescaling.
std::map<ContractedGenerator, Rational> contraction_target(ContractedGenerator a, ContractedGenerator b);

struct BracketDeviation {
  ContractedGenerator a, b;
  std::vector<double> deviation;  ///< max |coefficient - target| at each c
  bool exact = false;             ///< deviation identically zero
  double fitted_power = 0.0;      ///< least-squares slope of -log(dev) vs log(c)
  bool monotone = true;
};

struct ContractionReport {
  std::vector<double> c_values;
  std::vector<BracketDeviation> brackets;  ///< all ordered pairs a < b
  double min_fitted_power = 0.0;           ///< over non-exact brackets
  bool monotone = true;
  bool pass() const { return monotone && min_fitted_power >= 1.0; }
};

/// Deviation of every contracted bracket from its limit along an increasing
/// c sequence. Non-monotone decay indicates a structure-table bug.
ContractionReport contraction_limit_check(std::span<const double> c_values);

}  // namespace hr13::algebra
