#pragma once

// Combinatorial planar diagrams of oriented links and g-handcuff spines.
//
// Edges are positive integer ids, oriented by the order in which their
// component lists them. A crossing records its under pass and over pass as
// (incoming edge, outgoing edge) pairs plus a sign. The rotation at a
// crossing is a function of those fields:
//
//     slot 0 = under_in, slot 2 = under_out,
//     sign +1: slot 3 = over_in, slot 1 = over_out
//     sign -1: slot 1 = over_in, slot 3 = over_out
//
// with slots in counterclockwise order. A crossing is positive when the under
// strand passes from right to left as seen travelling along the over strand.
//
// A spine has g loops and g arcs. Arc i runs from the wedge vertex x to an
// attachment vertex on loop i; that vertex sits between the last and the
// first edge listed for the loop. `Side` says whether the arc leaves the
// loop on the left or the right of the loop's direction.

#include <array>
#include <optional>
#include <vector>

namespace spinecert {

enum class DiagramKind { spine, link };

enum class Side { left, right };

struct Crossing {
  int id = 0;
  int under_in = 0;
  int under_out = 0;
  int over_in = 0;
  int over_out = 0;
  int sign = 1;

  std::array<int, 4> slots() const noexcept {
    if (sign > 0) return {under_in, over_out, under_out, over_in};
    return {under_in, over_in, under_out, over_out};
  }

  /// Crossing change: the over pass becomes the under pass.
  void flip() noexcept {
    std::swap(under_in, over_in);
    std::swap(under_out, over_out);
    sign = -sign;
  }

  bool touches(int edge) const noexcept {
    return under_in == edge || under_out == edge || over_in == edge || over_out == edge;
  }

  bool operator==(const Crossing&) const = default;
};

/// Builds a crossing from its two passes and the sign of the geometric
/// configuration, i.e. sign(over_direction x under_direction).
Crossing make_crossing(int id, int under_in, int under_out, int over_in, int over_out, int sign);

struct Strand {
  std::vector<int> edges;
  Side side = Side::left;  // loops of a spine only

  bool operator==(const Strand&) const = default;
};

enum class StrandKind { loop, arc };

struct EdgeOwner {
  StrandKind kind = StrandKind::loop;
  int index = 0;     // 1-based loop or arc index
  int position = 0;  // 0-based position in the strand's edge list
};

struct Diagram {
  DiagramKind kind = DiagramKind::link;
  std::vector<Strand> loops;  // link components, or the loops l_1..l_g of a spine
  std::vector<Strand> arcs;   // arcs gamma_1..gamma_g, spine only
  std::vector<int> wedge;     // arc indices around x, counterclockwise
  std::vector<Crossing> crossings;

  int genus() const noexcept { return static_cast<int>(loops.size()); }
  int component_count() const noexcept { return static_cast<int>(loops.size()); }
  bool is_spine() const noexcept { return kind == DiagramKind::spine; }

  const Crossing* find_crossing(int id) const noexcept;
  Crossing* find_crossing(int id) noexcept;
  int max_edge_id() const noexcept;
  int max_crossing_id() const noexcept;
  void sort_crossings();

  bool operator==(const Diagram&) const = default;
};

/// Owner of every edge listed in a loop or arc. Edges listed twice keep
/// their first owner; validation reports the duplicate.
std::vector<std::optional<EdgeOwner>> edge_owner_table(const Diagram& d);

/// Loop index (1-based) owning `edge`, or 0 for arc edges and unknown ids.
int loop_of_edge(const Diagram& d, int edge);

/// True when no crossing involves an arc edge.
bool is_normal_form(const Diagram& d);

/// Sum of crossing signs between passes of the same component.
int writhe(const Diagram& d, int component);

/// Diagram of the loops alone. Each loop's attachment junction is merged away,
/// so crossing ids are preserved and a crossing-free loop becomes a single
/// closed edge.
Diagram loop_sublink(const Diagram& spine);

/// The flat spine: g round loops, each joined to x by a crossing-free arc.
Diagram standard_spine(int genus);

/// n crossing-free circles.
Diagram trivial_link(int components);

}  // namespace spinecert
