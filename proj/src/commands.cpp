#include "sskg/commands.hpp"

#include <sstream>

#include "sskg/primtop.hpp"
#include "sskg/repr.hpp"
#include "sskg/tails.hpp"

namespace sskg {

namespace {

Json names(const KGraph& g, const VertexSet& s) {
  Json out = Json::array();
  for (VertexId v : members(s)) out.push_back(g.vertex_name(v));
  return out;
}

Json degree_json(const Degree& d) {
  Json out = Json::array();
  for (int x : d.components()) out.push_back(x);
  return out;
}

Json matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

Json angles_json(const std::vector<Angle>& as) {
  Json out = Json::array();
  for (const auto& a : as) out.push_back(a.to_string());
  return out;
}

Json character_set_json(const CharacterSet& d) {
  Json out;
  switch (d.kind) {
    case CharacterSet::Kind::Full: out["kind"] = "FULL"; break;
    case CharacterSet::Kind::Finite: out["kind"] = "finite"; break;
    case CharacterSet::Kind::Subgroup: out["kind"] = "subgroup"; break;
  }
  if (d.kind != CharacterSet::Kind::Full) {
    out["elements"] = Json::array();
    for (const auto& f : d.elements) out["elements"].push_back(angles_json(f.angles));
  }
  return out;
}

Degree bound_for(const SelfSimilarKGraph& ss, const RunOptions& opts) {
  const auto k = static_cast<std::size_t>(ss.graph().k());
  if (!opts.bound) return Degree::uniform(k, 4);
  if (opts.bound->size() != k)
    throw Error(ErrorKind::Malformed, "--bound has " + std::to_string(opts.bound->size()) + " components but k = " +
                                          std::to_string(k));
  return *opts.bound;
}

Json triple_json(const SelfSimilarKGraph& ss, const std::optional<CyclineTriple>& t) {
  if (!t) return nullptr;
  return triple_name(ss, *t);
}

Json tail_json(const SelfSimilarKGraph& ss, const TailAnalysis& t) {
  const KGraph& g = ss.graph();
  Json out;
  out["vertices"] = names(g, t.tail);
  out["class"] = to_string(t.cls);
  out["exact"] = t.exact;
  out["witness"] = triple_json(ss, t.witness);
  out["H_T"] = names(g, t.h);
  out["H_T_exact"] = t.h_exact;
  out["H_T_hereditary"] = t.h_hereditary;
  return out;
}

Json per_json(const TailAnalysis& t, bool exact) {
  Json out;
  out["exact"] = exact;
  out["rank"] = t.per.rank();
  out["hnf"] = matrix_json(t.per.hnf());
  out["invariants"] = t.per.invariants();
  out["smith_basis"] = matrix_json(t.per.smith_basis());
  out["generator_count"] = t.per.generators().size();
  return out;
}

Json cmd_validate(const SelfSimilarKGraph& ss) {
  const KGraph& g = ss.graph();
  Json out;
  out["valid"] = true;
  out["k"] = g.k();
  out["vertices"] = g.num_vertices();
  out["edges"] = g.num_edges();
  out["squares"] = g.squares().size();
  out["group_order"] = ss.group().order();
  return out;
}

Json cmd_tails(const SelfSimilarKGraph& ss, const Degree& bound) {
  const PrimAnalysis a = analyze(ss, bound);
  Json out;
  out["bound"] = degree_json(bound);
  out["tails"] = Json::array();
  for (const auto& s : a.strata) out["tails"].push_back(tail_json(ss, s.tail));
  return out;
}

Json cmd_per(const SelfSimilarKGraph& ss, const Degree& bound) {
  const PrimAnalysis a = analyze(ss, bound);
  Json out;
  out["bound"] = degree_json(bound);
  out["tails"] = Json::array();
  for (const auto& s : a.strata) {
    Json t;
    t["vertices"] = names(ss.graph(), s.tail.tail);
    t["per"] = per_json(s.tail, ss.graph().k() == 1);
    out["tails"].push_back(std::move(t));
  }
  return out;
}

Json cmd_prim(const SelfSimilarKGraph& ss, const Degree& bound) {
  const PrimAnalysis a = analyze(ss, bound);
  if (!a.hypotheses.prim_ready()) {
    std::string list;
    for (const auto& f : a.hypotheses.failures()) list += (list.empty() ? "" : ", ") + f;
    throw Error(ErrorKind::HypothesisUnverified, "unverified hypotheses: " + list);
  }
  Json out;
  out["bound"] = degree_json(bound);
  out["strata"] = Json::array();
  for (const auto& s : a.strata) {
    Json j;
    j["tail"] = names(ss.graph(), s.tail.tail);
    j["class"] = to_string(s.tail.cls);
    j["rank"] = s.rank();
    j["invariants"] = s.tail.per.invariants();
    j["dual"] = s.rank() == 0 ? std::string("point") : "torus of rank " + std::to_string(s.rank());
    out["strata"].push_back(std::move(j));
  }
  out["caveats"] = topology_caveats(a);
  return out;
}

Json cmd_hypotheses(const SelfSimilarKGraph& ss, const Degree& bound) {
  const KGraph& g = ss.graph();
  const PrimAnalysis a = analyze(ss, bound);
  const HypothesisReport& h = a.hypotheses;
  Json out;
  out["bound"] = degree_json(bound);
  out["vertex_fixing"] = {{"verdict", to_string(h.vertex_fixing)}, {"exact", true}};
  Json pf{{"verdict", to_string(h.pseudo_free)}, {"exact", true}};
  if (h.pseudo_free_detail.g) {
    pf["witness"] = {{"g", ss.group().name(*h.pseudo_free_detail.g)},
                     {"path", g.path_name(*h.pseudo_free_detail.path)}};
  }
  out["pseudo_free"] = std::move(pf);

  Json tp{{"verdict", to_string(h.triples_are_pairs)}, {"exact", false}, {"bound", degree_json(bound)}};
  tp["tails"] = Json::array();
  for (const auto& t : h.tails)
    tp["tails"].push_back({{"tail", names(g, t.tail)},
                           {"verdict", t.triples.pass ? "PASS" : "FAIL"},
                           {"witness", triple_json(ss, t.triples.witness)}});
  if (g.k() == 1) {
    tp["structural"] = Json::array();
    for (const auto& s : a.strata)
      tp["structural"].push_back({{"tail", names(g, s.tail.tail)}, {"class", to_string(s.tail.cls)}, {"exact", true}});
  }
  out["triples_are_pairs"] = std::move(tp);

  Json sc{{"verdict", to_string(h.strongly_connected)}};
  sc["tails"] = Json::array();
  for (std::size_t i = 0; i < h.tails.size(); ++i) {
    const auto& t = h.tails[i];
    Json j{{"tail", names(g, t.tail)}, {"verdict", to_string(t.strongly_connected)}};
    if (!a.strata[i].tail.h.empty()) j["H_T"] = names(g, a.strata[i].tail.h);
    if (!t.note.empty()) j["note"] = t.note;
    sc["tails"].push_back(std::move(j));
  }
  out["strongly_connected"] = std::move(sc);
  Json ig{{"verdict", to_string(h.ideal_generation)}};
  ig["note"] = g.k() == 1 ? "automatic for 1-graphs" : "not verified for k >= 2";
  out["ideal_generation"] = std::move(ig);
  out["caveats"] = h.caveats;
  return out;
}

Json cmd_closure(const SelfSimilarKGraph& ss, const GraphDocument& doc, const Degree& bound) {
  const KGraph& g = ss.graph();
  if (doc.queries.empty()) throw Error(ErrorKind::InvalidQuery, "document has no [query] section");
  const PrimAnalysis a = analyze(ss, bound);
  const auto universe = tail_points(a);
  const auto caveats = topology_caveats(a);
  auto index = [&](const VertexSet& t) {
    const std::size_t i = a.index_of(t);
    if (i == a.strata.size()) throw Error(ErrorKind::InvalidQuery, set_name(g, t) + " is not a maximal tail");
    return i;
  };

  Json results = Json::array();
  for (const QuerySpec& qs : doc.queries) {
    ClosureQuery q;
    q.t0 = index(qs.point);
    q.f0 = qs.f0;
    if (q.f0.angles.empty()) q.f0.angles.assign(universe[q.t0].rank, Angle(0));
    for (const auto& t : qs.w) q.w.push_back(index(t));
    for (const auto& [t, d] : qs.y) q.y.emplace_back(index(t), d);
    const ClosureAnswer ans = closure_membership(universe, q);

    Json query;
    query["point"] = names(g, qs.point);
    query["f0"] = angles_json(q.f0.angles);
    query["W"] = Json::array();
    for (const auto& t : qs.w) query["W"].push_back(names(g, t));
    query["Y"] = Json::array();
    for (const auto& [t, d] : qs.y) query["Y"].push_back({{"tail", names(g, t)}, {"D", character_set_json(d)}});

    Json r;
    r["query"] = std::move(query);
    r["verdict"] = ans.verdict;
    r["case"] = ans.case_id;
    Json witness;
    witness["tails"] = Json::array();
    for (std::size_t i : ans.witness_tails) witness["tails"].push_back(names(g, universe[i].vertices));
    witness["uncovered"] = ans.uncovered ? Json(g.vertex_name(*ans.uncovered)) : Json(nullptr);
    r["witness"] = std::move(witness);
    r["caveats"] = caveats;
    r["bound"] = degree_json(bound);
    results.push_back(std::move(r));
  }
  if (results.size() == 1) return results[0];
  return Json{{"results", std::move(results)}};
}

Json cmd_spec_order(const SelfSimilarKGraph& ss, const Degree& bound, std::string* dot) {
  const KGraph& g = ss.graph();
  const PrimAnalysis a = analyze(ss, bound);
  const auto universe = tail_points(a);
  const auto edges = specialization_preorder(universe);
  Json out;
  out["bound"] = degree_json(bound);
  out["nodes"] = Json::array();
  for (std::size_t i = 0; i < universe.size(); ++i)
    out["nodes"].push_back({{"id", "s" + std::to_string(i)},
                            {"tail", names(g, universe[i].vertices)},
                            {"class", to_string(a.strata[i].tail.cls)},
                            {"rank", universe[i].rank}});
  out["edges"] = Json::array();
  for (const auto& e : edges)
    out["edges"].push_back(
        {{"from", "s" + std::to_string(e.from)}, {"to", "s" + std::to_string(e.to)}, {"label", e.label}});
  out["caveats"] = topology_caveats(a);
  if (dot) *dot = specialization_dot(g, universe, edges);
  return out;
}

Json report_json(const RelationReport& r) {
  Json out = Json::array();
  for (const auto& c : r.checks) {
    Json j{{"name", c.name}, {"checked", c.checked}, {"excluded", c.excluded}, {"violations", c.violations}};
    if (c.violations) j["first_violation"] = c.first_violation;
    out.push_back(std::move(j));
  }
  return out;
}

Json cmd_repr_check(const SelfSimilarKGraph& ss, const Degree& bound, const RunOptions& opts) {
  const KGraph& g = ss.graph();
  const PrimAnalysis a = analyze(ss, bound);
  const Degree ones = Degree::uniform(static_cast<std::size_t>(g.k()), 1);
  Json out;
  out["bound"] = degree_json(bound);
  out["depth"] = opts.depth;
  out["tails"] = Json::array();
  bool all_ok = true;
  for (const auto& s : a.strata) {
    const TailAnalysis& t = s.tail;
    Json tj;
    tj["tail"] = names(g, t.tail);
    tj["class"] = to_string(t.cls);
    tj["characters"] = Json::array();
    std::vector<RationalCharacter> chars;
    for (const Angle& angle : opts.angles) {
      RationalCharacter f{std::vector<Angle>(t.per.rank(), angle)};
      if (std::find(chars.begin(), chars.end(), f) == chars.end()) chars.push_back(std::move(f));
    }
    for (const auto& f : chars) {
      const TailRepresentation rep = represent_tail(ss, t, f, opts.depth);
      Json cj;
      cj["f"] = angles_json(f.angles);
      cj["f_extended"] = angles_json(rep.ft.angles);
      cj["x"] = g.path_name(rep.x);
      cj["basis_size"] = rep.basis.size();
      const RelationReport rel = check_relations(ss, rep.basis, rep.ft, ones);
      cj["relations"] = report_json(rel);
      bool ok = rel.ok();
      cj["vertex_probes"] = Json::array();
      for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
        const bool zero = vertex_kernel_probe(ss, rep, v);
        const bool expected = !t.tail[v];
        ok &= zero == expected;
        cj["vertex_probes"].push_back({{"vertex", g.vertex_name(v)}, {"zero", zero}, {"outside_tail", expected}});
      }
      if (std::any_of(t.h.begin(), t.h.end(), [](bool b) { return b; })) {
        const IdealPresentation ideal = ideal_presentation(ss, t, f, bound);
        const RelationReport ir = check_ideal(ss, rep, t, ideal);
        cj["ideal_relations"] = ideal.relations.size();
        cj["ideal"] = report_json(ir);
        ok &= ir.ok();
      }
      cj["ok"] = ok;
      all_ok &= ok;
      tj["characters"].push_back(std::move(cj));
    }
    out["tails"].push_back(std::move(tj));
  }
  out["ok"] = all_ok;
  return out;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"validate", "tails",   "per",         "prim",
                                              "hypotheses", "closure", "spec-order", "repr-check"};
  return names;
}

Json run_command(const std::string& command, const GraphDocument& doc, const RunOptions& opts, std::string* dot) {
  const auto& known = command_names();
  if (std::find(known.begin(), known.end(), command) == known.end())
    throw Error(ErrorKind::InvalidQuery, "unknown command '" + command + "'");
  const SelfSimilarKGraph ss = build(doc);
  if (command == "validate") return cmd_validate(ss);
  const Degree bound = bound_for(ss, opts);
  if (command == "tails") return cmd_tails(ss, bound);
  if (command == "per") return cmd_per(ss, bound);
  if (command == "prim") return cmd_prim(ss, bound);
  if (command == "hypotheses") return cmd_hypotheses(ss, bound);
  if (command == "closure") return cmd_closure(ss, doc, bound);
  if (command == "spec-order") return cmd_spec_order(ss, bound, dot);
  return cmd_repr_check(ss, bound, opts);
}

Json error_json(const Error& e) {
  return Json{{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
}

Degree parse_bound(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || v < 0) throw Error(ErrorKind::Malformed, "bad --bound component '" + item + "'");
    parts.push_back(v);
  }
  if (parts.empty()) throw Error(ErrorKind::Malformed, "empty --bound");
  return Degree(std::move(parts));
}

std::vector<Angle> parse_angles(const std::string& text) {
  std::vector<Angle> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Angle::parse(item));
  return out;
}

}  // namespace sskg
