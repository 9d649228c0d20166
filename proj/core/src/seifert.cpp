#include "spinecert/seifert.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "spinecert/error.hpp"
#include "spinecert/topology.hpp"

namespace spinecert {

Diagram reorient(const Diagram& d, const std::vector<int>& orientation) {
  if (orientation.empty()) return d;
  if (static_cast<int>(orientation.size()) != d.component_count())
    throw PreconditionError("orientation vector has " + std::to_string(orientation.size()) + " entries for " +
                            std::to_string(d.component_count()) + " components");
  for (std::size_t i = 0; i < orientation.size(); ++i)
    if (orientation[i] != 1 && orientation[i] != -1)
      throw PreconditionError("component " + std::to_string(i + 1) + " is not oriented");

  Diagram out = d;
  std::set<int> reversed_edges;
  for (std::size_t i = 0; i < orientation.size(); ++i) {
    if (orientation[i] > 0) continue;
    auto& s = out.loops[i];
    std::reverse(s.edges.begin(), s.edges.end());
    if (d.is_spine()) s.side = s.side == Side::left ? Side::right : Side::left;
    reversed_edges.insert(s.edges.begin(), s.edges.end());
  }
  for (auto& c : out.crossings) {
    bool ru = reversed_edges.count(c.under_in) > 0;
    bool ro = reversed_edges.count(c.over_in) > 0;
    if (ru) std::swap(c.under_in, c.under_out);
    if (ro) std::swap(c.over_in, c.over_out);
    if (ru != ro) c.sign = -c.sign;
  }
  return out;
}

SeifertCircleSet seifert_circles(const Diagram& link, const std::vector<int>& orientation) {
  if (link.is_spine()) throw PreconditionError("seifert_circles expects a link diagram; use loop_sublink");
  Diagram d = reorient(link, orientation);
  std::map<int, int> next;
  for (const auto& c : d.crossings) {
    next[c.under_in] = c.over_out;
    next[c.over_in] = c.under_out;
  }
  std::vector<int> edges;
  for (const auto& s : d.loops) edges.insert(edges.end(), s.edges.begin(), s.edges.end());
  std::sort(edges.begin(), edges.end());
  SeifertCircleSet out;
  std::set<int> seen;
  for (int start : edges) {
    if (seen.count(start)) continue;
    std::vector<int> circle;
    int e = start;
    while (!seen.count(e)) {
      seen.insert(e);
      circle.push_back(e);
      auto it = next.find(e);
      if (it == next.end()) break;  // crossing-free component
      e = it->second;
    }
    out.circles.push_back(std::move(circle));
  }
  return out;
}

SurfaceData build_surface(const Diagram& link, const SeifertCircleSet& circles) {
  std::map<int, int> circle_of;
  for (std::size_t k = 0; k < circles.circles.size(); ++k)
    for (int e : circles.circles[k]) {
      if (!circle_of.emplace(e, static_cast<int>(k)).second)
        throw PreconditionError("circle set lists edge " + std::to_string(e) + " twice");
    }
  std::size_t listed = 0;
  for (const auto& s : link.loops) {
    listed += s.edges.size();
    for (int e : s.edges)
      if (!circle_of.count(e)) throw PreconditionError("circle set does not cover edge " + std::to_string(e));
  }
  if (listed != circle_of.size()) throw PreconditionError("circle set lists edges outside the diagram");

  SurfaceData out;
  out.disks = circles.count();
  for (const auto& c : link.crossings) {
    Band b{c.id, c.sign, circle_of.at(c.under_in), circle_of.at(c.over_in)};
    out.bands.push_back(b);
  }
  out.chi = out.disks - static_cast<int>(out.bands.size());

  std::vector<int> parent(static_cast<std::size_t>(out.disks));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& b : out.bands) parent[find(b.disk_a)] = find(b.disk_b);
  std::map<int, int> piece_of_root;
  for (int k = 0; k < out.disks; ++k) {
    int r = find(k);
    if (!piece_of_root.count(r)) {
      piece_of_root[r] = static_cast<int>(out.pieces.size());
      out.pieces.emplace_back();
    }
    out.pieces[piece_of_root[r]].disks.push_back(k);
  }
  for (std::size_t i = 0; i < out.bands.size(); ++i)
    out.pieces[piece_of_root[find(out.bands[i].disk_a)]].bands.push_back(static_cast<int>(i));
  for (std::size_t comp = 0; comp < link.loops.size(); ++comp) {
    int piece = piece_of_root[find(circle_of.at(link.loops[comp].edges.front()))];
    out.pieces[piece].components.push_back(static_cast<int>(comp) + 1);
  }
  for (auto& p : out.pieces) {
    p.chi = static_cast<int>(p.disks.size()) - static_cast<int>(p.bands.size());
    p.boundary = static_cast<int>(p.components.size());
    int twice = 2 - p.chi - p.boundary;
    if (twice < 0 || twice % 2 != 0)
      throw Error("surface piece has chi " + std::to_string(p.chi) + " and " + std::to_string(p.boundary) +
                  " boundary components; genus is not a nonnegative integer");
    p.genus = twice / 2;
  }
  return out;
}

SeifertSystemData spine_seifert_system(const Diagram& spine, const std::vector<int>& orientation) {
  if (!spine.is_spine()) throw PreconditionError("spine_seifert_system expects a spine diagram");
  auto report = validate(spine);
  if (!report.ok()) throw PreconditionError("spine does not pass validation: " + report.entries.front());
  if (!report.normal_form) throw PreconditionError("spine is not in normal form: an arc or the wedge is crossed");

  SeifertSystemData sys;
  sys.sublink = reorient(loop_sublink(spine), orientation);
  sys.circles = seifert_circles(sys.sublink);
  sys.surface = build_surface(sys.sublink, sys.circles);
  sys.piece_of_loop.assign(spine.loops.size(), -1);
  for (std::size_t p = 0; p < sys.surface.pieces.size(); ++p) {
    const auto& piece = sys.surface.pieces[p];
    if (piece.components.empty()) {
      sys.notes.push_back("discarded surface piece " + std::to_string(p + 1) + " meeting no loop");
      continue;
    }
    for (int l : piece.components) sys.piece_of_loop[l - 1] = static_cast<int>(p);
    if (piece.components.size() > 1) {
      sys.completely_disjoint = false;
      std::string entry = "loops";
      for (int l : piece.components) entry += " " + std::to_string(l);
      entry += " share " + std::to_string(piece.disks.size()) + " disks and " + std::to_string(piece.bands.size()) +
               " bands";
      sys.shared.push_back(entry);
    }
  }
  return sys;
}

SpanningSystemSummary restrict_to_exterior(const SeifertSystemData& sys, int genus) {
  SpanningSystemSummary out;
  for (int i = 1; i <= genus && i <= static_cast<int>(sys.piece_of_loop.size()); ++i) {
    const auto& piece = sys.surface_of(i);
    out.surfaces.push_back({"C_" + std::to_string(i), piece.genus, piece.chi, "D_" + std::to_string(i)});
  }
  return out;
}

}  // namespace spinecert
