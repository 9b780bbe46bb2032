#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "sskg/kgraph.hpp"

namespace sskg {

using IntMatrix = std::vector<ZVector>;

/// Element of Q/Z, stored as a reduced fraction in [0, 1).
class Angle {
 public:
  using Rational = boost::rational<std::int64_t>;

  Angle() = default;
  Angle(std::int64_t num, std::int64_t den);
  explicit Angle(Rational r);

  /// Accepts "p/q" or an integer; anything else is UnsupportedDescriptor.
  static Angle parse(std::string_view text);

  std::int64_t num() const { return v_.numerator(); }
  std::int64_t den() const { return v_.denominator(); }
  const Rational& value() const { return v_; }
  bool is_zero() const { return v_.numerator() == 0; }

  Angle operator-() const;
  friend Angle operator+(const Angle& a, const Angle& b) { return Angle(a.v_ + b.v_); }
  friend Angle operator-(const Angle& a, const Angle& b) { return a + (-b); }
  friend Angle operator*(std::int64_t n, const Angle& a);

  friend bool operator==(const Angle& a, const Angle& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Angle& a, const Angle& b);

  std::string to_string() const;

 private:
  Rational v_{0};
};

/// Character of a lattice, one angle per Smith generator.
struct RationalCharacter {
  std::vector<Angle> angles;
  friend bool operator==(const RationalCharacter&, const RationalCharacter&) = default;
  friend auto operator<=>(const RationalCharacter&, const RationalCharacter&) = default;
};

/// Character of Z^k, one angle per standard basis vector.
struct ExtendedCharacter {
  std::vector<Angle> angles;
  friend bool operator==(const ExtendedCharacter&, const ExtendedCharacter&) = default;
};

std::string to_string(const RationalCharacter& f);

/// Row-style Hermite normal form: upper echelon, positive pivots, entries
/// above each pivot reduced into [0, pivot). Zero rows dropped.
IntMatrix hermite_normal_form(IntMatrix rows, std::size_t columns);

struct SmithForm {
  std::vector<std::int64_t> invariants;  // d_1 | d_2 | ... | d_r, all positive
  IntMatrix u;                           // m x m, unimodular
  IntMatrix v;                           // n x n, unimodular, u * a * v = diag
  IntMatrix v_inverse;
};

SmithForm smith_normal_form(const IntMatrix& a, std::size_t columns);

/// Subgroup of Z^k given by generators, with canonical HNF basis and the
/// Smith basis d_i w_i (w_i = rows of v_inverse) that characters refer to.
class PerLattice {
 public:
  PerLattice() = default;
  static PerLattice from_generators(std::size_t k, std::vector<ZVector> generators);

  std::size_t dimension() const { return k_; }
  std::size_t rank() const { return smith_.invariants.size(); }
  bool is_zero() const { return rank() == 0; }
  const std::vector<ZVector>& generators() const { return generators_; }
  const IntMatrix& hnf() const { return hnf_; }
  const SmithForm& smith() const { return smith_; }
  const std::vector<std::int64_t>& invariants() const { return smith_.invariants; }
  /// Generators d_i w_i of the lattice, one per Smith invariant.
  const IntMatrix& smith_basis() const { return smith_basis_; }

  /// Integer coordinates of p in the Smith basis, or nullopt if p is not in
  /// the lattice.
  std::optional<ZVector> coordinates(const ZVector& p) const;
  bool contains(const ZVector& p) const { return coordinates(p).has_value(); }

  friend bool operator==(const PerLattice& a, const PerLattice& b) {
    return a.k_ == b.k_ && a.hnf_ == b.hnf_;
  }

 private:
  std::size_t k_ = 0;
  std::vector<ZVector> generators_;
  IntMatrix hnf_;
  SmithForm smith_;
  IntMatrix smith_basis_;
};

/// f(p) for p in the lattice; throws NotInLattice otherwise.
Angle evaluate(const PerLattice& lattice, const RationalCharacter& f, const ZVector& p);
Angle evaluate(const ExtendedCharacter& f, const ZVector& p);

/// A character of Z^k restricting to f; the restriction is re-verified on the
/// Smith basis.
ExtendedCharacter extend_character(const RationalCharacter& f, const PerLattice& lattice);
RationalCharacter restrict_character(const ExtendedCharacter& f, const PerLattice& lattice);

/// Supported descriptions of a set of characters: a finite list, the whole
/// dual group, or the (finite) subgroup generated by rational characters.
struct CharacterSet {
  enum class Kind { Finite, Full, Subgroup };
  Kind kind = Kind::Full;
  std::vector<RationalCharacter> elements;

  static CharacterSet full() { return {Kind::Full, {}}; }
  static CharacterSet finite(std::vector<RationalCharacter> xs) { return {Kind::Finite, std::move(xs)}; }
  static CharacterSet subgroup(std::vector<RationalCharacter> gens) { return {Kind::Subgroup, std::move(gens)}; }

  bool empty() const { return kind == Kind::Finite && elements.empty(); }
  friend bool operator==(const CharacterSet&, const CharacterSet&) = default;
};

std::string to_string(const CharacterSet& d);

/// Membership of f0 in the closure of D in the dual group. Finite sets and
/// finite subgroups are closed, so this is plain membership there.
bool closure_contains(const CharacterSet& d, const RationalCharacter& f0);

/// Elements of the subgroup generated by `gens`; UnsupportedDescriptor when
/// it exceeds `limit` elements.
std::vector<RationalCharacter> generated_subgroup(const std::vector<RationalCharacter>& gens,
                                                  std::size_t rank, std::size_t limit = 1'000'000);

}  // namespace sskg
