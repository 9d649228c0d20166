#include "spinecert/surgery.hpp"

#include <set>
#include <stdexcept>

#include "spinecert/error.hpp"
#include "spinecert/reidemeister.hpp"

namespace spinecert {

Slope one_over(long n) {
  if (n == 0) throw PreconditionError("surgery slope 1/0 is not a Dehn filling");
  return Slope{1, n};
}

const char* kind_token(SurgeryKind k) { return k == SurgeryKind::band_crossing_change ? "bcc" : "twist"; }

HomologyClass strand_class(const std::vector<EncircledStrand>& strands, int genus) {
  HomologyClass c(static_cast<std::size_t>(genus), 0);
  for (const auto& s : strands) {
    if (s.loop < 1 || s.loop > genus) throw PreconditionError("encircled strand on unknown loop " + std::to_string(s.loop));
    c[s.loop - 1] += s.orientation;
  }
  return c;
}

HomologyClass clasp_class(const std::vector<EncircledStrand>& strands, int genus) {
  std::vector<int> orient;
  for (const auto& s : strands) orient.push_back(s.orientation);
  Diagram model = clasp_model(orient);
  HomologyClass c(static_cast<std::size_t>(genus), 0);
  for (std::size_t k = 0; k < strands.size(); ++k) {
    int loop = strands[k].loop;
    if (loop < 1 || loop > genus) throw PreconditionError("encircled strand on unknown loop " + std::to_string(loop));
    c[loop - 1] += linking_number(model, 1, static_cast<int>(k) + 2);
  }
  return c;
}

SurgeryState::SurgeryState(Diagram d) : diagram(std::move(d)) {
  twist.assign(static_cast<std::size_t>(diagram.component_count()), 0);
}

namespace {

SurgeryComponent finish(SurgeryState& state, SurgeryComponent comp) {
  comp.id = static_cast<int>(state.link.components.size()) + 1;
  comp.linking = strand_class(comp.strands, static_cast<int>(state.twist.size()));
  // the circle bounds a disk crossed only by opposite pairs
  if (!is_zero(comp.linking))
    throw std::logic_error("emitted surgery component " + std::to_string(comp.id) + " has nonzero class " +
                           format_class(comp.linking));
  state.link.components.push_back(comp);
  return comp;
}

}  // namespace

SurgeryComponent emit_band_crossing_change(SurgeryState& state, int crossing) {
  const Crossing* c = state.diagram.find_crossing(crossing);
  if (!c) throw PreconditionError("no crossing " + std::to_string(crossing) + " in the working diagram");
  int a = loop_of_edge(state.diagram, c->under_in);
  int b = loop_of_edge(state.diagram, c->over_in);
  if (a == 0 || b == 0)
    throw PreconditionError("crossing " + std::to_string(crossing) +
                            " involves an arc or the wedge; exchange it for loop crossings first");
  int sign = c->sign;
  state.diagram = flip_crossing(state.diagram, crossing);
  if (a == b) state.twist[a - 1] += sign;

  SurgeryComponent comp;
  comp.kind = SurgeryKind::band_crossing_change;
  comp.site = crossing;
  comp.framing = one_over(-sign);
  comp.strands = {{a, 1}, {a, -1}, {b, 1}, {b, -1}};
  return finish(state, comp);
}

SurgeryComponent emit_full_twist(SurgeryState& state, int band, int n) {
  if (band < 1 || band > static_cast<int>(state.twist.size()))
    throw PreconditionError("no band " + std::to_string(band) + " in the surface system");
  if (n == 0) throw PreconditionError("a full-twist component needs n != 0");
  state.twist[band - 1] += n;
  SurgeryComponent comp;
  comp.kind = SurgeryKind::full_twist;
  comp.site = band;
  comp.framing = one_over(-n);
  comp.strands = {{band, 1}, {band, -1}};
  return finish(state, comp);
}

BlowdownCertificate verify_reflexive(const FramedSurgeryLink& link) {
  BlowdownCertificate cert;
  int k = 0;
  for (const auto& c : link.components) {
    BlowdownStep step{++k, c.id, true, ""};
    if (!c.framing.is_one_over_n()) {
      step.ok = false;
      step.reason = "non-1/Z slope " + c.framing.str();
    } else if (!c.unlinked || !link.pairwise_unlinked) {
      step.ok = false;
      step.reason = "missing unlinked attestation";
    } else {
      step.reason = std::string("unknotted ") + kind_token(c.kind) + " circle, slope " + c.framing.str() + ", unlinked";
    }
    if (!step.ok && cert.reason.empty()) cert.reason = "component " + std::to_string(c.id) + ": " + step.reason;
    cert.steps.push_back(step);
  }
  cert.valid = cert.reason.empty() && cert.steps.size() == link.components.size();
  return cert;
}

std::vector<BoundaryRecord> longitude_records(const FramedSurgeryLink& link) {
  std::vector<BoundaryRecord> out;
  for (const auto& c : link.components) {
    std::set<int> loops;
    for (const auto& s : c.strands) loops.insert(s.loop);
    BoundaryRecord r{c.id, {}};
    for (std::size_t i = 0; i < loops.size(); ++i) r.circles.emplace_back(0, 1);
    out.push_back(r);
  }
  return out;
}

CoreLinkData core_link_check(const FramedSurgeryLink& link, const std::vector<BoundaryRecord>& records) {
  CoreLinkData out;
  for (const auto& c : link.components) {
    const BoundaryRecord* rec = nullptr;
    for (const auto& r : records)
      if (r.component == c.id) rec = &r;
    if (!rec || rec->circles.empty())
      throw PreconditionError("no boundary record for surgery component " + std::to_string(c.id));
    std::vector<long> counts;
    for (auto [a, b] : rec->circles) {
      long n = c.framing.p * b - c.framing.q * a;
      counts.push_back(n < 0 ? -n : n);
      if (counts.back() != 1) out.pass = false;
    }
    out.counts.emplace_back(c.id, std::move(counts));
  }
  return out;
}

TubedSystemData tube_system(const std::vector<int>& tubes) {
  TubedSystemData out;
  for (std::size_t i = 0; i < tubes.size(); ++i) {
    int t = tubes[i];
    if (t < 0) throw PreconditionError("negative tube count for disk " + std::to_string(i + 1));
    TubedSurface s;
    s.boundary_label = "C_" + std::to_string(i + 1);
    s.tubes = t;
    s.chi = 1;
    // each tube removes two disks and glues in an annulus along two circles
    for (int k = 0; k < t; ++k) s.chi -= 2;
    s.genus = (2 - s.chi - s.boundary) / 2;
    out.surfaces.push_back(s);
  }
  return out;
}

}  // namespace spinecert
