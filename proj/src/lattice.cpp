#include "sskg/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <set>

#include "sskg/error.hpp"

namespace sskg {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorKind::Malformed, "integer overflow in lattice arithmetic");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorKind::Malformed, "integer overflow in lattice arithmetic");
  return out;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// row[dst] += c * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t c) {
  if (c == 0) return;
  for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] = checked_add(m[dst][j], checked_mul(c, m[src][j]));
}

// col[dst] += c * col[src]
void add_col(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t c) {
  if (c == 0) return;
  for (auto& row : m) row[dst] = checked_add(row[dst], checked_mul(c, row[src]));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

IntMatrix identity(std::size_t n) {
  IntMatrix m(n, ZVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Angle

Angle::Angle(std::int64_t num, std::int64_t den) : Angle(Rational(num, den)) {}

Angle::Angle(Rational r) {
  const std::int64_t d = r.denominator();
  std::int64_t n = r.numerator() % d;
  if (n < 0) n += d;
  v_ = Rational(n, d);
}

Angle Angle::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s, std::int64_t& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
  };
  std::int64_t num = 0;
  std::int64_t den = 1;
  const auto slash = text.find('/');
  bool ok = slash == std::string_view::npos
                ? parse_int(text, num)
                : parse_int(text.substr(0, slash), num) && parse_int(text.substr(slash + 1), den) && den > 0;
  if (!ok)
    throw Error(ErrorKind::UnsupportedDescriptor,
                "angle '" + std::string(text) + "' is not a rational number p/q");
  return Angle(num, den);
}

Angle Angle::operator-() const { return Angle(-v_); }

Angle operator*(std::int64_t n, const Angle& a) {
  return Angle(Angle::Rational(checked_mul(n, a.v_.numerator()), a.v_.denominator()));
}

std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
  if (a.v_ < b.v_) return std::strong_ordering::less;
  if (b.v_ < a.v_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Angle::to_string() const {
  if (is_zero()) return "0";
  return std::to_string(num()) + "/" + std::to_string(den());
}

std::string to_string(const RationalCharacter& f) {
  std::string out = "(";
  for (std::size_t i = 0; i < f.angles.size(); ++i) {
    if (i) out += ",";
    out += f.angles[i].to_string();
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Normal forms

IntMatrix hermite_normal_form(IntMatrix a, std::size_t columns) {
  for (const auto& row : a)
    if (row.size() != columns) throw Error(ErrorKind::Malformed, "generator has the wrong length");
  const std::size_t m = a.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < columns && r < m; ++c) {
    bool have_pivot = false;
    while (true) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (a[i][c] != 0 && (best == m || std::abs(a[i][c]) < std::abs(a[best][c]))) best = i;
      if (best == m) break;
      have_pivot = true;
      std::swap(a[r], a[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (a[i][c] == 0) continue;
        add_row(a, i, r, -(a[i][c] / a[r][c]));
        if (a[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (!have_pivot) continue;
    if (a[r][c] < 0)
      for (auto& x : a[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) add_row(a, i, r, -floor_div(a[i][c], a[r][c]));
    ++r;
  }
  a.resize(r);
  return a;
}

SmithForm smith_normal_form(const IntMatrix& a, std::size_t n) {
  const std::size_t m = a.size();
  IntMatrix s = a;
  SmithForm out;
  out.u = identity(m);
  out.v = identity(n);
  out.v_inverse = identity(n);

  auto row_add = [&](std::size_t dst, std::size_t src, std::int64_t c) {
    add_row(s, dst, src, c);
    add_row(out.u, dst, src, c);
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    std::swap(s[i], s[j]);
    std::swap(out.u[i], out.u[j]);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, std::int64_t c) {
    add_col(s, dst, src, c);
    add_col(out.v, dst, src, c);
    add_row(out.v_inverse, src, dst, -c);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    swap_cols(s, i, j);
    swap_cols(out.v, i, j);
    std::swap(out.v_inverse[i], out.v_inverse[j]);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    auto move_smallest = [&](bool whole_block) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (!whole_block && i != t && j != t) continue;
          if (s[i][j] != 0 && (bi == m || std::abs(s[i][j]) < std::abs(s[bi][bj]))) {
            bi = i;
            bj = j;
          }
        }
      if (bi == m) return false;
      if (bi != t) row_swap(t, bi);
      if (bj != t) col_swap(t, bj);
      return true;
    };
    if (!move_smallest(true)) break;
    while (true) {
      for (std::size_t i = t + 1; i < m; ++i)
        if (s[i][t] != 0) row_add(i, t, -(s[i][t] / s[t][t]));
      for (std::size_t j = t + 1; j < n; ++j)
        if (s[t][j] != 0) col_add(j, t, -(s[t][j] / s[t][t]));
      bool residue = false;
      for (std::size_t i = t + 1; i < m; ++i) residue |= s[i][t] != 0;
      for (std::size_t j = t + 1; j < n; ++j) residue |= s[t][j] != 0;
      if (residue) {
        move_smallest(false);
        continue;
      }
      // The pivot must divide the remaining block.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s[i][j] % s[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row_add(t, bad, 1);
    }
    if (s[t][t] < 0) {
      for (auto& x : s[t]) x = -x;
      for (auto& x : out.u[t]) x = -x;
    }
    out.invariants.push_back(s[t][t]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// PerLattice

PerLattice PerLattice::from_generators(std::size_t k, std::vector<ZVector> generators) {
  PerLattice l;
  l.k_ = k;
  l.hnf_ = hermite_normal_form(generators, k);
  l.generators_ = std::move(generators);
  l.smith_ = smith_normal_form(l.hnf_, k);
  for (std::size_t i = 0; i < l.smith_.invariants.size(); ++i) {
    ZVector g = l.smith_.v_inverse[i];
    for (auto& x : g) x = checked_mul(x, l.smith_.invariants[i]);
    l.smith_basis_.push_back(std::move(g));
  }
  return l;
}

std::optional<ZVector> PerLattice::coordinates(const ZVector& p) const {
  if (p.size() != k_) throw Error(ErrorKind::Malformed, "vector has the wrong length");
  ZVector c(k_, 0);
  for (std::size_t j = 0; j < k_; ++j)
    for (std::size_t l = 0; l < k_; ++l) c[j] = checked_add(c[j], checked_mul(p[l], smith_.v[l][j]));
  ZVector out(rank());
  for (std::size_t i = 0; i < k_; ++i) {
    if (i < rank()) {
      if (c[i] % smith_.invariants[i] != 0) return std::nullopt;
      out[i] = c[i] / smith_.invariants[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Characters

Angle evaluate(const PerLattice& lattice, const RationalCharacter& f, const ZVector& p) {
  if (f.angles.size() != lattice.rank())
    throw Error(ErrorKind::Malformed, "character has " + std::to_string(f.angles.size()) +
                                          " angles but the lattice has rank " + std::to_string(lattice.rank()));
  auto coords = lattice.coordinates(p);
  if (!coords) throw Error(ErrorKind::NotInLattice, "vector is not in the lattice");
  Angle out;
  for (std::size_t i = 0; i < coords->size(); ++i) out = out + (*coords)[i] * f.angles[i];
  return out;
}

Angle evaluate(const ExtendedCharacter& f, const ZVector& p) {
  if (f.angles.size() != p.size()) throw Error(ErrorKind::Malformed, "character and vector lengths differ");
  Angle out;
  for (std::size_t j = 0; j < p.size(); ++j) out = out + p[j] * f.angles[j];
  return out;
}

ExtendedCharacter extend_character(const RationalCharacter& f, const PerLattice& lattice) {
  if (f.angles.size() != lattice.rank())
    throw Error(ErrorKind::Malformed, "character rank does not match the lattice");
  const std::size_t k = lattice.dimension();
  // psi_i = theta_i / d_i on the basis w_i, then change basis through V.
  std::vector<Angle::Rational> psi(k, Angle::Rational(0));
  for (std::size_t i = 0; i < lattice.rank(); ++i)
    psi[i] = f.angles[i].value() / Angle::Rational(lattice.invariants()[i]);
  ExtendedCharacter out;
  for (std::size_t j = 0; j < k; ++j) {
    Angle::Rational phi(0);
    for (std::size_t i = 0; i < k; ++i) phi += Angle::Rational(lattice.smith().v[j][i]) * psi[i];
    out.angles.emplace_back(phi);
  }
  for (std::size_t i = 0; i < lattice.rank(); ++i)
    if (evaluate(out, lattice.smith_basis()[i]) != f.angles[i])
      throw Error(ErrorKind::Malformed, "extension does not restrict to the character");
  return out;
}

RationalCharacter restrict_character(const ExtendedCharacter& f, const PerLattice& lattice) {
  RationalCharacter out;
  for (const auto& g : lattice.smith_basis()) out.angles.push_back(evaluate(f, g));
  return out;
}

std::string to_string(const CharacterSet& d) {
  switch (d.kind) {
    case CharacterSet::Kind::Full:
      return "FULL";
    case CharacterSet::Kind::Finite:
    case CharacterSet::Kind::Subgroup: {
      std::string out = d.kind == CharacterSet::Kind::Finite ? "finite" : "subgroup";
      for (const auto& f : d.elements) out += " " + to_string(f);
      return out;
    }
  }
  return {};
}

std::vector<RationalCharacter> generated_subgroup(const std::vector<RationalCharacter>& gens,
                                                  std::size_t rank, std::size_t limit) {
  for (const auto& g : gens)
    if (g.angles.size() != rank) throw Error(ErrorKind::UnsupportedDescriptor, "generator has the wrong rank");
  RationalCharacter zero{std::vector<Angle>(rank)};
  std::set<RationalCharacter> seen{zero};
  std::deque<RationalCharacter> queue{zero};
  while (!queue.empty()) {
    RationalCharacter x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      RationalCharacter y = x;
      for (std::size_t i = 0; i < rank; ++i) y.angles[i] = y.angles[i] + g.angles[i];
      if (seen.insert(y).second) {
        if (seen.size() > limit)
          throw Error(ErrorKind::UnsupportedDescriptor, "generated subgroup exceeds " + std::to_string(limit) + " elements");
        queue.push_back(std::move(y));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

bool closure_contains(const CharacterSet& d, const RationalCharacter& f0) {
  switch (d.kind) {
    case CharacterSet::Kind::Full:
      return true;
    case CharacterSet::Kind::Finite:
      return std::find(d.elements.begin(), d.elements.end(), f0) != d.elements.end();
    case CharacterSet::Kind::Subgroup: {
      const auto group = generated_subgroup(d.elements, f0.angles.size());
      return std::binary_search(group.begin(), group.end(), f0);
    }
  }
  return false;
}

}  // namespace sskg
