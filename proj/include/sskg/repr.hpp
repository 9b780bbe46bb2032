#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sskg/action.hpp"
#include "sskg/lattice.hpp"
#include "sskg/primtop.hpp"
#include "sskg/tails.hpp"

namespace sskg {

/// One basis vector δ_y of the truncated orbit, with its BFS depth from x and
/// a certificate σ^p(x) = g·σ^q(y).
struct OrbitElement {
  InfinitePath y;
  int depth = 0;
  Degree p;
  Degree q;
  GroupElem g = 0;
};

class OrbitBasis {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  const InfinitePath& root() const { return elements_.front().y; }
  int max_depth() const { return max_depth_; }
  std::size_t size() const { return elements_.size(); }
  const OrbitElement& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<OrbitElement>& elements() const { return elements_; }

  /// Index of the element equal to y, or npos.
  std::size_t find(const KGraph& g, const InfinitePath& y) const;
  /// Every vector within `radius` moves of element i is in the basis.
  bool interior(std::size_t i, int radius) const { return elements_[i].depth + radius <= max_depth_; }

 private:
  friend OrbitBasis build_orbit(const SelfSimilarKGraph&, const InfinitePath&, int, std::size_t);
  std::vector<EdgeId> bucket_key(const KGraph& g, const InfinitePath& y) const;

  int max_depth_ = 0;
  Degree key_degree_;
  std::vector<OrbitElement> elements_;
  std::map<std::vector<EdgeId>, std::vector<std::size_t>> buckets_;
};

/// All y reachable from x by at most `depth` moves (prepend an edge, delete a
/// leading edge, act by a group element). Throws BudgetExceeded past `budget`
/// elements.
OrbitBasis build_orbit(const SelfSimilarKGraph& ss, const InfinitePath& x, int depth,
                       std::size_t budget = 200'000);

/// Column-sparse matrix with at most one nonzero entry per column, the shape
/// of every s_μ, s_μ^* and u_g. An entry whose row is `outside` leaves the
/// truncation.
struct MatrixEntry {
  std::size_t row = 0;
  Angle angle;
  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

struct ExactMatrix {
  static constexpr std::size_t outside = OrbitBasis::npos;
  std::vector<std::optional<MatrixEntry>> columns;

  bool is_zero() const;
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
};

ExactMatrix represent_s(const SelfSimilarKGraph& ss, const OrbitBasis& b, const Path& mu,
                        const ExtendedCharacter& ft);
ExactMatrix represent_s_adjoint(const SelfSimilarKGraph& ss, const OrbitBasis& b, const Path& mu,
                                const ExtendedCharacter& ft);
ExactMatrix represent_u(const SelfSimilarKGraph& ss, const OrbitBasis& b, GroupElem g);
ExactMatrix identity_matrix(std::size_t n);

/// Formal Z-combination of roots of unity e^{2πi a}; zero terms are dropped,
/// so equality is exact.
using Coefficient = std::map<Angle, std::int64_t>;

struct SparseVector {
  std::map<std::size_t, Coefficient> entries;
  bool escaped = false;

  static SparseVector basis(std::size_t i);
  void add(std::size_t row, const Angle& a, std::int64_t n);
  SparseVector& operator+=(const SparseVector& o);
  SparseVector scaled(const Angle& a, std::int64_t n = 1) const;
  bool is_zero() const { return entries.empty(); }
  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

SparseVector apply(const ExactMatrix& m, const SparseVector& v);

struct RelationCheck {
  std::string name;
  std::size_t checked = 0;
  std::size_t excluded = 0;
  std::size_t violations = 0;
  std::string first_violation;
};

struct RelationReport {
  std::size_t basis_size = 0;
  int depth = 0;
  std::vector<RelationCheck> checks;
  bool ok() const;
};

/// Cuntz-Krieger relations for paths of degree <= `paths` and the vertex,
/// unit and `paths` degrees, plus the group relations u_g u_h = u_gh and
/// u_g s_μ = s_{g·μ} u_{g|μ}, each on the interior columns.
RelationReport check_relations(const SelfSimilarKGraph& ss, const OrbitBasis& b, const ExtendedCharacter& ft,
                               const Degree& paths);

/// Representation π_{f̃,x} of a tail with x cofinal in ΛT.
struct TailRepresentation {
  InfinitePath x;
  ExtendedCharacter ft;
  OrbitBasis basis;
};

TailRepresentation represent_tail(const SelfSimilarKGraph& ss, const TailAnalysis& t, const RationalCharacter& f,
                                  int depth);

/// True iff π(s_v) vanishes on the truncation.
bool vertex_kernel_probe(const SelfSimilarKGraph& ss, const TailRepresentation& r, VertexId v);

/// π vanishes on every generator: s_v (v outside T) on all columns, and
/// s_μ - e^{2πi c} s_ν on interior columns based in H_T.
RelationReport check_ideal(const SelfSimilarKGraph& ss, const TailRepresentation& r, const TailAnalysis& t,
                           const IdealPresentation& ideal);

}  // namespace sskg
