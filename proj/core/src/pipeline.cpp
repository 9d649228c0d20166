#include "spinecert/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "spinecert/error.hpp"
#include "spinecert/reidemeister.hpp"

namespace spinecert {

PlanOptions resolve_plan_options(const Diagram& sp, const PlanOptions& opts) {
  const int g = sp.genus();
  PlanOptions out = opts;
  if (out.order.empty())
    for (int i = 1; i <= g; ++i) out.order.push_back(i);
  std::vector<int> sorted = out.order;
  std::sort(sorted.begin(), sorted.end());
  bool perm = static_cast<int>(sorted.size()) == g;
  for (int i = 0; perm && i < g; ++i) perm = sorted[i] == i + 1;
  if (!perm) throw PreconditionError("component order must be a permutation of 1.." + std::to_string(g));
  if (out.basepoints.empty()) out.basepoints.assign(static_cast<std::size_t>(g), 0);
  if (static_cast<int>(out.basepoints.size()) != g)
    throw PreconditionError("expected " + std::to_string(g) + " basepoints, got " + std::to_string(out.basepoints.size()));
  for (int i = 0; i < g; ++i) {
    int n = static_cast<int>(sp.loops[i].edges.size());
    if (out.basepoints[i] < 0 || out.basepoints[i] >= n)
      throw PreconditionError("basepoint " + std::to_string(out.basepoints[i]) + " of loop " + std::to_string(i + 1) +
                              " out of range 0.." + std::to_string(n - 1));
  }
  return out;
}

DescendingPlan descending_plan(const Diagram& sp, const PlanOptions& opts) {
  if (!sp.is_spine()) throw PreconditionError("descending_plan expects a spine diagram");
  if (!is_normal_form(sp)) throw PreconditionError("descending_plan: spine is not in normal form");
  DescendingPlan plan;
  plan.options = resolve_plan_options(sp, opts);

  std::map<int, std::pair<int, bool>> pass_at_head;  // edge -> (crossing, over?)
  for (const auto& c : sp.crossings) {
    pass_at_head[c.under_in] = {c.id, false};
    pass_at_head[c.over_in] = {c.id, true};
  }
  std::set<int> seen;
  for (int loop : plan.options.order) {
    const auto& edges = sp.loops[loop - 1].edges;
    const std::size_t n = edges.size();
    for (std::size_t k = 0; k < n; ++k) {
      int e = edges[(static_cast<std::size_t>(plan.options.basepoints[loop - 1]) + k) % n];
      auto it = pass_at_head.find(e);
      if (it == pass_at_head.end()) continue;  // head at the attachment vertex
      auto [id, over] = it->second;
      if (!seen.insert(id).second) continue;
      if (!over) plan.flips.push_back(id);
    }
  }
  return plan;
}

bool is_descending(const Diagram& sp, const PlanOptions& opts) { return descending_plan(sp, opts).flips.empty(); }

namespace {

// strand (loop or arc vector) holding `edge`
std::vector<int>* strand_with(Diagram& d, int edge) {
  for (auto* group : {&d.loops, &d.arcs})
    for (auto& s : *group)
      if (std::find(s.edges.begin(), s.edges.end(), edge) != s.edges.end()) return &s.edges;
  return nullptr;
}

}  // namespace

Diagram exchange_arc_crossing(const Diagram& sp, int arc, ExchangeNote* note) {
  if (!sp.is_spine()) throw PreconditionError("arc exchange needs a spine diagram");
  if (arc < 1 || arc > sp.genus()) throw PreconditionError("no arc " + std::to_string(arc));
  const auto& arc_edges = sp.arcs[arc - 1].edges;
  const std::size_t m = arc_edges.size();
  if (m < 2) throw InapplicableMove("arc " + std::to_string(arc) + " has no crossing to exchange");
  const int a_last = arc_edges[m - 1];
  const int a_prev = arc_edges[m - 2];

  const Crossing* xp = nullptr;
  for (const auto& c : sp.crossings)
    if ((c.under_in == a_prev && c.under_out == a_last) || (c.over_in == a_prev && c.over_out == a_last)) xp = &c;
  if (!xp) throw DiagramError("arc " + std::to_string(arc) + ": no crossing joins edges " + std::to_string(a_prev) +
                              " and " + std::to_string(a_last));
  const Crossing x = *xp;
  const bool arc_over = x.over_in == a_prev;
  const int sigma = x.sign;
  const int s_in = arc_over ? x.under_in : x.over_in;
  const int s_out = arc_over ? x.under_out : x.over_out;

  Diagram d = sp;
  d.crossings.erase(std::remove_if(d.crossings.begin(), d.crossings.end(), [&](const Crossing& c) { return c.id == x.id; }),
                    d.crossings.end());
  d.arcs[arc - 1].edges.pop_back();

  const int base_edge = sp.max_edge_id();
  const int h = base_edge + 1, f = base_edge + 2, mid = base_edge + 3;
  const int base_id = sp.max_crossing_id();
  const int p_id = base_id + 1;  // crossing of the incoming loop end, sign -sigma
  const int q_id = base_id + 2;  // crossing of the outgoing loop end, sign sigma

  // the other strand now passes both loop ends
  std::vector<int>* s_strand = strand_with(d, s_in);
  if (!s_strand) throw DiagramError("edge " + std::to_string(s_in) + " is not listed");
  s_strand->insert(std::find(s_strand->begin(), s_strand->end(), s_in) + 1, mid);

  auto& loop = d.loops[arc - 1];
  const int e_first = loop.edges.front();
  const int e_last = loop.edges.back();
  loop.edges.insert(loop.edges.begin(), h);
  loop.edges.push_back(f);

  // With the arc heading toward the vertex, the other strand runs left to
  // right exactly when this is +1. The outgoing end lies on the left for a
  // left-sided loop.
  const bool rightward = sigma * (arc_over ? -1 : 1) == 1;
  const bool q_first = rightward == (loop.side == Side::left);
  const int q_s_in = q_first ? s_in : mid, q_s_out = q_first ? mid : s_out;
  const int p_s_in = q_first ? mid : s_in, p_s_out = q_first ? s_out : mid;

  if (arc_over) {
    d.crossings.push_back(make_crossing(p_id, p_s_in, p_s_out, e_last, f, -sigma));
    d.crossings.push_back(make_crossing(q_id, q_s_in, q_s_out, h, e_first, sigma));
  } else {
    d.crossings.push_back(make_crossing(p_id, e_last, f, p_s_in, p_s_out, -sigma));
    d.crossings.push_back(make_crossing(q_id, h, e_first, q_s_in, q_s_out, sigma));
  }
  d.sort_crossings();
  if (note) *note = ExchangeNote{arc, x.id, q_first ? q_id : p_id, q_first ? p_id : q_id};
  return d;
}

Diagram normalize_arcs(const Diagram& sp, std::vector<ExchangeNote>* notes) {
  Diagram d = sp;
  // every exchange moves crossing passes onto earlier arc positions or onto
  // higher-indexed arcs, so this terminates; the cap guards against bugs
  const std::size_t cap = 64 + 64 * sp.crossings.size() * sp.crossings.size();
  for (std::size_t iter = 0;; ++iter) {
    int arc = 0;
    for (int j = 1; j <= d.genus() && arc == 0; ++j)
      if (d.arcs[j - 1].edges.size() >= 2) arc = j;
    if (arc == 0) return d;
    if (iter >= cap) throw std::logic_error("arc exchange did not terminate");
    ExchangeNote note;
    d = exchange_arc_crossing(d, arc, &note);
    if (notes) notes->push_back(note);
  }
}

StandardFormAttestation attest(const Diagram& descending, const Diagram& final_diagram, const std::vector<int>& twist,
                               const PlanOptions& plan) {
  StandardFormAttestation a;
  a.arcs_free = is_normal_form(descending) && is_normal_form(final_diagram);
  a.split_trivial = a.arcs_free && validate(descending).ok() && is_descending(descending, plan) &&
                    final_diagram.crossings.empty();
  a.twist_zero = std::all_of(twist.begin(), twist.end(), [](int t) { return t == 0; });
  bool layout = final_diagram.is_spine() && final_diagram.genus() == descending.genus() &&
                final_diagram.crossings.empty() && validate(final_diagram).ok();
  for (int i = 0; layout && i < final_diagram.genus(); ++i) {
    layout = final_diagram.loops[i].edges.size() == 1 && final_diagram.arcs[i].edges.size() == 1 &&
             final_diagram.wedge.size() == final_diagram.loops.size() && final_diagram.wedge[i] == i + 1;
  }
  a.layout = layout;
  return a;
}

UnknotResult unknot_spine(const Diagram& sp, const PlanOptions& opts) {
  if (!sp.is_spine()) throw PreconditionError("unknot_spine expects a spine diagram");
  auto report = validate(sp);
  if (!report.ok()) throw PreconditionError("spine does not pass validation: " + report.entries.front());

  UnknotResult r;
  r.input = sp;
  r.normalized = normalize_arcs(sp, &r.exchanges);
  r.system = spine_seifert_system(r.normalized);
  r.plan = descending_plan(r.normalized, opts);
  r.transcript.plan = r.plan.options;
  for (const auto& ex : r.exchanges) {
    TranscriptMove m;
    m.kind = MoveKind::arc_exchange;
    m.site = ex.crossing;
    m.arc = ex.arc;
    m.first = ex.first;
    m.second = ex.second;
    r.transcript.moves.push_back(m);
  }

  SurgeryState state(r.normalized);
  for (int id : r.plan.flips) {
    auto comp = emit_band_crossing_change(state, id);
    TranscriptMove m;
    m.kind = MoveKind::band_crossing_change;
    m.site = id;
    m.component = comp.id;
    r.transcript.moves.push_back(m);
  }
  r.twist_before = state.twist;
  for (int i = 1; i <= state.diagram.genus(); ++i) {
    int t = state.twist[i - 1];
    if (t == 0) continue;
    auto comp = emit_full_twist(state, i, -t);
    TranscriptMove m;
    m.kind = MoveKind::full_twist;
    m.site = i;
    m.n = -t;
    m.component = comp.id;
    r.transcript.moves.push_back(m);
  }
  r.twist_after = state.twist;
  r.link = state.link;
  r.descending = state.diagram;
  r.final_diagram = is_descending(r.descending, r.plan.options) ? standard_spine(r.descending.genus()) : r.descending;
  r.attestation = attest(r.descending, r.final_diagram, r.twist_after, r.plan.options);
  return r;
}

ReplayResult replay(const Diagram& input, const MoveTranscript& transcript) {
  ReplayResult out;
  Diagram d = input;
  std::vector<int> twist(static_cast<std::size_t>(input.genus()), 0);
  bool changes_started = false;
  for (const auto& m : transcript.moves) {
    switch (m.kind) {
      case MoveKind::arc_exchange: {
        if (changes_started) throw PreconditionError("arc exchange listed after a crossing change");
        ExchangeNote note;
        d = exchange_arc_crossing(d, m.arc, &note);
        if (note.crossing != m.site || note.first != m.first || note.second != m.second)
          throw PreconditionError("arc exchange on arc " + std::to_string(m.arc) + " does not reproduce crossing " +
                                  std::to_string(m.site));
        break;
      }
      case MoveKind::band_crossing_change: {
        if (!changes_started) out.normalized = d;
        changes_started = true;
        const Crossing* c = d.find_crossing(m.site);
        if (!c) throw PreconditionError("crossing change at missing crossing " + std::to_string(m.site));
        int a = loop_of_edge(d, c->under_in), b = loop_of_edge(d, c->over_in);
        if (a == 0 || b == 0) throw PreconditionError("crossing change at arc crossing " + std::to_string(m.site));
        if (a == b) twist[a - 1] += c->sign;
        d = flip_crossing(d, m.site);
        break;
      }
      case MoveKind::full_twist:
        if (!changes_started) out.normalized = d;
        changes_started = true;
        if (m.site < 1 || m.site > d.genus() || m.n == 0)
          throw PreconditionError("full twist on band " + std::to_string(m.site) + " does not apply");
        twist[m.site - 1] += m.n;
        break;
    }
  }
  if (!changes_started) out.normalized = d;
  out.descending = d;
  out.twist = twist;
  out.descending_ok = is_normal_form(d) && validate(d).ok() && is_descending(d, transcript.plan);
  out.final_diagram = out.descending_ok ? standard_spine(d.genus()) : d;
  return out;
}

DualizeResult heegaard_dualize(const Diagram& sp, const PlanOptions& opts) {
  DualizeResult r;
  r.run = unknot_spine(sp, opts);
  const int g = sp.genus();
  for (int i = 0; i < g; ++i) {
    r.meridian_edges.push_back(r.run.normalized.loops[i].edges.front());
    // after surgery the loops bound disjoint disks; their boundaries follow
    // the descending loops
    r.dual_paths.push_back(r.run.attestation.pass() ? r.run.descending.loops[i].edges : std::vector<int>{});
  }
  r.delta = intersection_delta(r.meridian_edges, r.dual_paths);
  return r;
}

const char* mode_token(TheoremMode m) { return m == TheoremMode::part1 ? "part1" : "part2"; }

bool CertificateBundle::homology_ok() const {
  if (classes.size() != link.components.size()) return false;
  for (std::size_t k = 0; k < classes.size(); ++k)
    if (!is_zero(classes[k]) || classes[k] != link.components[k].linking) return false;
  return mode == TheoremMode::part1 ? null_homologous : (null_homologous && completely_null_homologous);
}

bool CertificateBundle::pass() const {
  return validation.ok() && homology_ok() && blowdown.valid && core.pass && (!delta || delta->pass) &&
         attestation.pass();
}

CertificateBundle run_theorem_main(const Diagram& sp, TheoremMode mode, const PlanOptions& opts) {
  CertificateBundle b;
  b.mode = mode;
  b.input = sp;
  b.validation = validate(sp);
  if (!b.validation.ok()) throw PreconditionError("spine does not pass validation: " + b.validation.entries.front());

  auto dual = heegaard_dualize(sp, opts);
  auto& run = dual.run;
  if (mode == TheoremMode::part2 && !run.system.completely_disjoint)
    throw Refusal("part2 needs a completely disjoint Seifert surface system, but " + run.system.shared.front());

  const int g = sp.genus();
  b.disjoint = run.system.completely_disjoint;
  b.shared = run.system.shared;
  for (int i = 1; i <= g; ++i) {
    const auto& p = run.system.surface_of(i);
    b.surfaces.push_back({i, static_cast<int>(p.disks.size()), static_cast<int>(p.bands.size()), p.chi, p.genus,
                          p.boundary});
  }
  b.transcript = run.transcript;
  b.twist_before = run.twist_before;
  b.twist_after = run.twist_after;
  b.link = run.link;

  LinkingData data;
  data.loops = g;
  for (const auto& c : b.link.components) {
    auto cls = clasp_class(c.strands, g);
    b.classes.push_back(cls);
    data.rows.emplace_back(cls.begin(), cls.end());
  }
  b.total = homology_class(data);
  b.null_homologous = is_null_homologous(data);
  b.completely_null_homologous = is_completely_null_homologous(data);

  b.blowdown = verify_reflexive(b.link);
  b.core = core_link_check(b.link, longitude_records(b.link));
  b.meridian_edges = dual.meridian_edges;
  b.dual_paths = dual.dual_paths;
  b.delta = dual.delta;
  b.descending = run.descending;
  b.final_diagram = run.final_diagram;
  b.attestation = run.attestation;
  return b;
}

}  // namespace spinecert
