#include <doctest.h>

#include <algorithm>

#include "sskg/error.hpp"
#include "support.hpp"

using namespace sskg;
using fixtures::angle;
using fixtures::chr;
using fixtures::path;
using fixtures::set;

namespace {

/// Chain {0} ⊂ {0,1} ⊂ {0,1,2} plus {1,2}, with the given classes.
std::vector<TailPoint> universe(std::initializer_list<bool> taus) {
  const std::vector<VertexSet> sets{{true, false, false}, {true, true, false}, {true, true, true}, {false, true, true}};
  std::vector<TailPoint> out;
  std::size_t i = 0;
  for (bool tau : taus) {
    out.push_back({sets[i], tau, tau ? 1u : 0u});
    ++i;
  }
  return out;
}

const std::vector<RationalCharacter> kAngles{chr({angle(0, 1)}), chr({angle(1, 2)}), chr({angle(1, 3)}),
                                             chr({angle(2, 3)}), chr({angle(1, 4)}), chr({angle(3, 4)}),
                                             chr({angle(1, 5)}), chr({angle(1, 6)}), chr({angle(5, 6)}),
                                             chr({angle(3, 7)})};

RationalCharacter f0_for(const TailPoint& p, std::size_t i) {
  return p.tau ? kAngles[i % kAngles.size()] : RationalCharacter{};
}

}  // namespace

TEST_CASE("enumerated strata of the examples") {
  {
    const auto strata = enumerate_prim(fixtures::load("g1"), Degree{4});
    REQUIRE(strata.size() == 1);
    CHECK(strata[0].tail.cls == TailClass::Tau);
    CHECK(strata[0].rank() == 1);
  }
  {
    const auto strata = enumerate_prim(fixtures::load("g4"), Degree{4});
    REQUIRE(strata.size() == 1);
    CHECK(strata[0].tail.cls == TailClass::Gamma);
    CHECK(strata[0].rank() == 0);
  }
  {
    const auto ss = fixtures::load("g5");
    const auto strata = enumerate_prim(ss, Degree{4});
    REQUIRE(strata.size() == 2);
    CHECK(strata[0].tail.tail == set(ss.graph(), {"u", "w"}));
    CHECK(strata[1].tail.tail == set(ss.graph(), {"u"}));
    for (const auto& s : strata) {
      CHECK(s.tail.cls == TailClass::Tau);
      CHECK(s.rank() == 1);
    }
  }
}

TEST_CASE("hypothesis reports") {
  {
    const HypothesisReport r = check_hypotheses(fixtures::load("g2"), Degree{4});
    CHECK(r.pseudo_free == Verdict::Pass);
    CHECK(r.triples_are_pairs == Verdict::Pass);
    CHECK(r.strongly_connected == Verdict::Auto);
    CHECK(r.ideal_generation == Verdict::Auto);
    CHECK(r.prim_ready());
  }
  {
    const HypothesisReport r = check_hypotheses(fixtures::load("g4"), Degree{4});
    CHECK(r.pseudo_free == Verdict::Pass);
    CHECK(r.triples_are_pairs == Verdict::Pass);
    CHECK(r.strongly_connected == Verdict::Vacuous);
    CHECK(r.ideal_generation == Verdict::Auto);
  }
  {
    const HypothesisReport r = check_hypotheses(fixtures::load("g3"), Degree{3, 3});
    CHECK(r.pseudo_free == Verdict::Pass);
    CHECK(r.triples_are_pairs == Verdict::Pass);
    CHECK(r.strongly_connected == Verdict::Pass);
    CHECK(r.ideal_generation == Verdict::Assumed);
    CHECK(std::find(r.caveats.begin(), r.caveats.end(), "hypothesis (4) assumed") != r.caveats.end());
  }
}

TEST_CASE("closure queries on the examples") {
  {
    const auto ss = fixtures::load("g5");
    const PrimAnalysis a = analyze(ss, Degree{4});
    const auto u = tail_points(a);
    const ClosureQuery q{a.index_of(set(ss.graph(), {"u"})), chr({angle(1, 3)}), {},
                         {{a.index_of(set(ss.graph(), {"u", "w"})), CharacterSet::full()}}};
    const ClosureAnswer ans = closure_membership(u, q);
    CHECK(ans.verdict);
    CHECK(ans.case_id == "4a");
  }
  {
    const auto ss = fixtures::load("g1");
    const PrimAnalysis a = analyze(ss, Degree{4});
    const ClosureQuery q{0, chr({angle(1, 2)}), {}, {{0, CharacterSet::finite({chr({angle(1, 3)})})}}};
    const ClosureAnswer ans = closure_membership(tail_points(a), q);
    CHECK_FALSE(ans.verdict);
    CHECK(ans.case_id == "4b");
  }
}

TEST_CASE("malformed closure queries") {
  const auto u = universe({true, false, true, false});
  auto rejects = [&](const ClosureQuery& q) {
    try {
      closure_membership(u, q);
      return false;
    } catch (const Error& e) {
      return e.kind() == ErrorKind::InvalidQuery;
    }
  };
  CHECK(rejects({0, chr({angle(0, 1)}), {}, {}}));
  CHECK(rejects({1, {}, {0}, {}}));
  CHECK(rejects({1, {}, {}, {{1, CharacterSet::full()}}}));
  CHECK(rejects({0, chr({angle(0, 1)}), {}, {{2, CharacterSet::finite({})}}}));
  CHECK(rejects({0, {}, {}, {{2, CharacterSet::full()}}}));
  CHECK(rejects({9, chr({angle(0, 1)}), {1}, {}}));
}

TEST_CASE("closure is reflexive and monotone") {
  for (std::uint32_t classes = 0; classes < 16; ++classes) {
    const auto u = universe({bool(classes & 1u), bool(classes & 2u), bool(classes & 4u), bool(classes & 8u)});
    std::vector<std::size_t> gammas, taus;
    for (std::size_t i = 0; i < u.size(); ++i) (u[i].tau ? taus : gammas).push_back(i);
    for (std::size_t t0 = 0; t0 < u.size(); ++t0) {
      const auto f0 = f0_for(u[t0], t0);
      ClosureQuery self{t0, f0, {}, {}};
      if (u[t0].tau)
        self.y.emplace_back(t0, CharacterSet::finite({f0}));
      else
        self.w.push_back(t0);
      CHECK(closure_membership(u, self).verdict);

      for (std::uint32_t wm = 0; wm < (1u << gammas.size()); ++wm)
        for (std::uint32_t ym = 0; ym < (1u << taus.size()); ++ym) {
          ClosureQuery small{t0, f0, {}, {}}, big{t0, f0, {}, {}};
          for (std::size_t i = 0; i < gammas.size(); ++i) {
            if ((wm >> i) & 1u) small.w.push_back(gammas[i]);
            big.w.push_back(gammas[i]);
          }
          for (std::size_t i = 0; i < taus.size(); ++i) {
            if ((ym >> i) & 1u) small.y.emplace_back(taus[i], CharacterSet::finite({kAngles[1]}));
            big.y.emplace_back(taus[i], CharacterSet::full());
          }
          if (small.w.empty() && small.y.empty()) continue;
          if (closure_membership(u, small).verdict) CHECK(closure_membership(u, big).verdict);
          CHECK(closure_membership(u, small).verdict == oracle::theorem_closure(u, small));
        }
    }
  }
}

TEST_CASE("cases 1 and 2 ignore f0, case 3 ignores D") {
  for (std::uint32_t classes = 0; classes < 16; ++classes) {
    const auto u = universe({bool(classes & 1u), bool(classes & 2u), bool(classes & 4u), bool(classes & 8u)});
    for (std::size_t t0 = 0; t0 < u.size(); ++t0)
      for (std::size_t other = 0; other < u.size(); ++other) {
        if (!u[other].tau) {
          std::optional<bool> first;
          for (std::size_t i = 0; i < kAngles.size(); ++i) {
            const bool v = closure_membership(u, {t0, f0_for(u[t0], i), {other}, {}}).verdict;
            if (!first) first = v;
            CHECK(v == *first);
          }
        } else if (!u[t0].tau) {
          const bool a = closure_membership(u, {t0, {}, {}, {{other, CharacterSet::full()}}}).verdict;
          const bool b = closure_membership(u, {t0, {}, {}, {{other, CharacterSet::finite({kAngles[2]})}}}).verdict;
          const bool c = closure_membership(u, {t0, {}, {}, {{other, CharacterSet::subgroup({kAngles[4]})}}}).verdict;
          CHECK(a == b);
          CHECK(b == c);
        }
      }
  }
}

TEST_CASE("specialization preorder") {
  const auto ss = fixtures::load("g5");
  const PrimAnalysis a = analyze(ss, Degree{4});
  const auto u = tail_points(a);
  const auto edges = specialization_preorder(u);
  const std::size_t uw = a.index_of(set(ss.graph(), {"u", "w"}));
  const std::size_t uu = a.index_of(set(ss.graph(), {"u"}));
  int always = 0;
  for (const auto& e : edges) {
    if (e.from == e.to) {
      CHECK(e.label == "iff f0=f");
    } else {
      CHECK(e.label == "always");
      CHECK(e.from == uw);
      CHECK(e.to == uu);
      ++always;
    }
  }
  CHECK(always == 1);
  const std::string dot = specialization_dot(ss.graph(), u, edges);
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("\"always\"") != std::string::npos);
}

TEST_CASE("specialization is transitive over singleton points") {
  for (std::uint32_t classes = 0; classes < 16; ++classes) {
    const auto u = universe({bool(classes & 1u), bool(classes & 2u), bool(classes & 4u), bool(classes & 8u)});
    struct Point {
      std::size_t tail;
      RationalCharacter f;
    };
    std::vector<Point> points;
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < (u[i].tau ? 3u : 1u); ++j) points.push_back({i, f0_for(u[i], j)});
    auto in_closure = [&](const Point& p, const Point& q) {
      ClosureQuery query{p.tail, p.f, {}, {}};
      if (u[q.tail].tau)
        query.y.emplace_back(q.tail, CharacterSet::finite({q.f}));
      else
        query.w.push_back(q.tail);
      return closure_membership(u, query).verdict;
    };
    for (const auto& p : points)
      for (const auto& q : points)
        for (const auto& r : points)
          if (in_closure(p, q) && in_closure(q, r)) CHECK(in_closure(p, r));
  }
}

TEST_CASE("ideal presentation") {
  const auto ss = fixtures::load("g2");
  const KGraph& g = ss.graph();
  const TailAnalysis t = analyze_tail(ss, set(g, {"v", "w"}), Degree{4});
  const Path e = path(g, {"e"});
  const Path w = g.vertex(fixtures::vertex(g, "w"));
  auto scalar_of = [&](const IdealPresentation& p) -> std::optional<Angle> {
    for (const auto& r : p.relations)
      if (r.mu == e && r.nu == w) return r.scalar;
    return std::nullopt;
  };
  CHECK(scalar_of(ideal_presentation(ss, t, chr({angle(0, 1)}), Degree{4})) == angle(0, 1));
  CHECK(scalar_of(ideal_presentation(ss, t, chr({angle(1, 2)}), Degree{4})) == angle(1, 2));

  const auto g4 = fixtures::load("g4");
  const TailAnalysis gamma = analyze_tail(g4, set(g4.graph(), {"v"}), Degree{4});
  const IdealPresentation p = ideal_presentation(g4, gamma, {}, Degree{4});
  CHECK(p.relations.empty());
  CHECK(p.vertex_generators.empty());

  const auto g5 = fixtures::load("g5");
  const TailAnalysis u = analyze_tail(g5, set(g5.graph(), {"u"}), Degree{4});
  CHECK(ideal_presentation(g5, u, chr({angle(1, 3)}), Degree{3}).vertex_generators ==
        std::vector<VertexId>{fixtures::vertex(g5.graph(), "w")});
}
