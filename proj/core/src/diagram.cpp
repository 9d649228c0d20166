#include "spinecert/diagram.hpp"

#include <algorithm>

#include "spinecert/error.hpp"

namespace spinecert {

Crossing make_crossing(int id, int under_in, int under_out, int over_in, int over_out, int sign) {
  Crossing c;
  c.id = id;
  c.under_in = under_in;
  c.under_out = under_out;
  c.over_in = over_in;
  c.over_out = over_out;
  c.sign = sign > 0 ? 1 : -1;
  return c;
}

const Crossing* Diagram::find_crossing(int id) const noexcept {
  for (const auto& c : crossings)
    if (c.id == id) return &c;
  return nullptr;
}

Crossing* Diagram::find_crossing(int id) noexcept {
  for (auto& c : crossings)
    if (c.id == id) return &c;
  return nullptr;
}

int Diagram::max_edge_id() const noexcept {
  int m = 0;
  for (const auto& s : loops)
    for (int e : s.edges) m = std::max(m, e);
  for (const auto& s : arcs)
    for (int e : s.edges) m = std::max(m, e);
  for (const auto& c : crossings)
    for (int e : c.slots()) m = std::max(m, e);
  return m;
}

int Diagram::max_crossing_id() const noexcept {
  int m = 0;
  for (const auto& c : crossings) m = std::max(m, c.id);
  return m;
}

void Diagram::sort_crossings() {
  std::sort(crossings.begin(), crossings.end(),
            [](const Crossing& a, const Crossing& b) { return a.id < b.id; });
}

std::vector<std::optional<EdgeOwner>> edge_owner_table(const Diagram& d) {
  std::vector<std::optional<EdgeOwner>> table(static_cast<std::size_t>(d.max_edge_id()) + 1);
  auto mark = [&](StrandKind kind, const std::vector<Strand>& strands) {
    for (std::size_t i = 0; i < strands.size(); ++i) {
      const auto& edges = strands[i].edges;
      for (std::size_t p = 0; p < edges.size(); ++p) {
        int e = edges[p];
        if (e <= 0 || table[e]) continue;
        table[e] = EdgeOwner{kind, static_cast<int>(i) + 1, static_cast<int>(p)};
      }
    }
  };
  mark(StrandKind::loop, d.loops);
  mark(StrandKind::arc, d.arcs);
  return table;
}

int loop_of_edge(const Diagram& d, int edge) {
  for (std::size_t i = 0; i < d.loops.size(); ++i)
    if (std::find(d.loops[i].edges.begin(), d.loops[i].edges.end(), edge) != d.loops[i].edges.end())
      return static_cast<int>(i) + 1;
  return 0;
}

bool is_normal_form(const Diagram& d) {
  for (const auto& arc : d.arcs)
    for (int e : arc.edges)
      for (const auto& c : d.crossings)
        if (c.touches(e)) return false;
  return true;
}

int writhe(const Diagram& d, int component) {
  if (component < 1 || component > d.component_count())
    throw PreconditionError("writhe: unknown component " + std::to_string(component));
  int total = 0;
  for (const auto& c : d.crossings) {
    if (loop_of_edge(d, c.under_in) == component && loop_of_edge(d, c.over_in) == component)
      total += c.sign;
  }
  return total;
}

Diagram loop_sublink(const Diagram& spine) {
  Diagram out;
  out.kind = DiagramKind::link;
  out.crossings = spine.crossings;
  for (const auto& loop : spine.loops) {
    Strand s;
    s.edges = loop.edges;
    if (spine.is_spine() && s.edges.size() >= 2) {
      // last edge ends at the attachment vertex, first edge leaves it
      int last = s.edges.back();
      int first = s.edges.front();
      s.edges.pop_back();
      for (auto& c : out.crossings) {
        if (c.under_out == last) c.under_out = first;
        if (c.over_out == last) c.over_out = first;
      }
    }
    out.loops.push_back(std::move(s));
  }
  return out;
}

Diagram standard_spine(int genus) {
  if (genus < 1) throw PreconditionError("standard_spine: genus must be at least 1");
  Diagram d;
  d.kind = DiagramKind::spine;
  for (int i = 1; i <= genus; ++i) {
    d.loops.push_back(Strand{{i}, Side::left});
    d.arcs.push_back(Strand{{genus + i}, Side::left});
    d.wedge.push_back(i);
  }
  return d;
}

Diagram trivial_link(int components) {
  Diagram d;
  d.kind = DiagramKind::link;
  for (int i = 1; i <= components; ++i) d.loops.push_back(Strand{{i}, Side::left});
  return d;
}

}  // namespace spinecert
