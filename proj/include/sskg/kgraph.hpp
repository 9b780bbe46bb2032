#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sskg {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
/// Colors are 0-based internally and 1-based in documents and output.
using Color = std::int32_t;
/// Signed vector in Z^k, used for degree differences and lattice data.
using ZVector = std::vector<std::int64_t>;

/// Element of N^k. The total order from operator<=> is lexicographic and only
/// used for deterministic sorting; the componentwise order is leq().
class Degree {
 public:
  Degree() = default;
  explicit Degree(std::size_t k) : c_(k, 0) {}
  Degree(std::initializer_list<int> c) : c_(c) {}
  explicit Degree(std::vector<int> c) : c_(std::move(c)) {}

  static Degree unit(std::size_t k, Color i);
  static Degree uniform(std::size_t k, int value);

  std::size_t size() const { return c_.size(); }
  int operator[](std::size_t i) const { return c_[i]; }
  int& operator[](std::size_t i) { return c_[i]; }
  const std::vector<int>& components() const { return c_; }

  int total() const;
  bool is_zero() const;
  bool all_positive() const;

  Degree& operator+=(const Degree& o);
  /// Requires o <= *this componentwise.
  Degree& operator-=(const Degree& o);
  Degree& operator*=(int s);

  friend Degree operator+(Degree a, const Degree& b) { return a += b; }
  friend Degree operator-(Degree a, const Degree& b) { return a -= b; }
  friend Degree operator*(Degree a, int s) { return a *= s; }

  friend bool operator==(const Degree&, const Degree&) = default;
  friend auto operator<=>(const Degree&, const Degree&) = default;

  std::string to_string() const;

 private:
  std::vector<int> c_;
};

bool leq(const Degree& a, const Degree& b);
Degree join(const Degree& a, const Degree& b);
Degree meet(const Degree& a, const Degree& b);
ZVector difference(const Degree& a, const Degree& b);
/// All q <= bound, in increasing lexicographic order.
std::vector<Degree> degrees_up_to(const Degree& bound);

struct EdgeSpec {
  std::string name;
  Color color = 0;
  VertexId range = 0;
  VertexId source = 0;
  friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

/// Colored 1-skeleton of a k-graph.
struct Skeleton {
  int k = 1;
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  friend bool operator==(const Skeleton&, const Skeleton&) = default;
};

/// Factorization square e f = f2 e2 where color(e) < color(f),
/// color(f2) = color(f) and color(e2) = color(e).
struct Square {
  EdgeId e = 0;
  EdgeId f = 0;
  EdgeId f2 = 0;
  EdgeId e2 = 0;
  friend bool operator==(const Square&, const Square&) = default;
};

class KGraph;

/// Finite path in normal form: edges grouped by nondecreasing color.
/// Only KGraph constructs paths, so every Path value is normalized.
class Path {
 public:
  VertexId range() const { return range_; }
  VertexId source() const { return source_; }
  const std::vector<EdgeId>& edges() const { return edges_; }
  const Degree& degree() const { return degree_; }
  bool is_vertex() const { return edges_.empty(); }
  std::size_t length() const { return edges_.size(); }

  friend bool operator==(const Path& a, const Path& b) {
    return a.range_ == b.range_ && a.edges_ == b.edges_;
  }
  /// Lexicographic on (degree, edge ids, range).
  friend std::strong_ordering operator<=>(const Path& a, const Path& b);

 private:
  friend class KGraph;
  Path(VertexId range, VertexId source, std::vector<EdgeId> edges, Degree degree)
      : range_(range), source_(source), edges_(std::move(edges)), degree_(std::move(degree)) {}

  VertexId range_ = 0;
  VertexId source_ = 0;
  std::vector<EdgeId> edges_;
  Degree degree_;
};

/// Eventually periodic infinite path prefix * block * block * ...; the block
/// is a cycle whose degree is strictly positive in every coordinate.
struct InfinitePath {
  Path prefix;
  Path block;
};

/// Validated finite, row-finite, source-free k-graph. Immutable.
class KGraph {
 public:
  int k() const { return k_; }
  std::size_t num_vertices() const { return vertex_names_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
  const EdgeSpec& edge(EdgeId e) const { return edges_[e]; }
  Color color(EdgeId e) const { return edges_[e].color; }
  const std::vector<Square>& squares() const { return squares_; }
  const Skeleton& skeleton() const { return skeleton_; }

  /// Edges of color c with range v, ascending id.
  const std::vector<EdgeId>& in_edges(VertexId v, Color c) const {
    return in_edges_[static_cast<std::size_t>(v) * k_ + c];
  }
  /// Edges of color c with source v, ascending id.
  const std::vector<EdgeId>& out_edges(VertexId v, Color c) const {
    return out_edges_[static_cast<std::size_t>(v) * k_ + c];
  }

  Path vertex(VertexId v) const;
  Path edge_path(EdgeId e) const;
  /// Normal form of an arbitrary composable edge word (r(w_i+1) = s(w_i)).
  Path from_edges(std::span<const EdgeId> word) const;
  Path compose(const Path& mu, const Path& nu) const;

  /// Unique (alpha, beta) with mu = alpha beta and d(alpha) = p.
  std::pair<Path, Path> factor(const Path& mu, const Degree& p) const;
  /// mu(p, q) for p <= q <= d(mu).
  Path segment(const Path& mu, const Degree& p, const Degree& q) const;

  /// vΛ^p in ascending edge-id order.
  std::vector<Path> paths_of_degree(VertexId v, const Degree& p) const;
  /// All of vΛ^q for q <= bound, sorted by Path ordering.
  std::vector<Path> paths_up_to(VertexId v, const Degree& bound) const;

  /// Edge word with colors rearranged into the target color sequence by
  /// square moves. Exposed for factorization checks.
  std::vector<EdgeId> rearrange(std::vector<EdgeId> word,
                                std::span<const Color> target) const;
  /// Swap of two adjacent edges of distinct colors through the square table.
  std::pair<EdgeId, EdgeId> swap(EdgeId a, EdgeId b) const;

  /// reach[v][w] is true iff vΛw is nonempty (includes v = w).
  const std::vector<std::vector<bool>>& reachability() const { return reach_; }
  bool has_path(VertexId range, VertexId source) const { return reach_[range][source]; }

  std::string path_name(const Path& p) const;

  // Infinite paths.
  Path segment(const InfinitePath& x, const Degree& p, const Degree& q) const;
  InfinitePath shift(const InfinitePath& x, const Degree& n) const;
  InfinitePath prepend(const Path& mu, const InfinitePath& x) const;
  /// Exact equality of the represented infinite paths.
  bool equal(const InfinitePath& x, const InfinitePath& y) const;
  /// Shorter representation of the same infinite path where one exists.
  InfinitePath compact(const InfinitePath& x) const;
  std::string path_name(const InfinitePath& x) const;

 private:
  friend KGraph validate_kgraph(Skeleton skeleton, std::vector<Square> squares);
  KGraph() = default;

  Path make(VertexId range, std::vector<EdgeId> normal) const;
  std::vector<EdgeId> normalize(std::vector<EdgeId> word) const;
  Path materialize(const InfinitePath& x, const Degree& at_least) const;
  std::size_t pair_index(EdgeId a, EdgeId b) const {
    return static_cast<std::size_t>(a) * edges_.size() + b;
  }

  int k_ = 1;
  Skeleton skeleton_;
  std::vector<std::string> vertex_names_;
  std::vector<EdgeSpec> edges_;
  std::vector<Square> squares_;
  std::vector<std::vector<EdgeId>> in_edges_;
  std::vector<std::vector<EdgeId>> out_edges_;
  // forward_[pair(e,f)] = (f2,e2) for color(e) < color(f); backward_ inverts it.
  std::vector<std::pair<EdgeId, EdgeId>> forward_;
  std::vector<std::pair<EdgeId, EdgeId>> backward_;
  std::vector<std::vector<bool>> reach_;
};

/// Checks ids, source-freeness, square bijectivity and (k >= 3) the cube
/// condition; throws Error naming the first violation.
KGraph validate_kgraph(Skeleton skeleton, std::vector<Square> squares);

/// Eventually periodic cofinal path of the sub-graph on `tail`, which must be a
/// maximal tail of g (vertex mask). Throws ConstructionFailed otherwise.
InfinitePath cofinal_infinite_path(const KGraph& g, const std::vector<bool>& tail);

}  // namespace sskg
