#pragma once

// Reidemeister moves on combinatorial diagrams. Moves act on link diagrams
// and on the loop/arc strands of spines alike; they never move a strand
// across a vertex.

#include <vector>

#include "spinecert/diagram.hpp"
#include "spinecert/topology.hpp"

namespace spinecert {

enum class MoveType { r1, r2, r3 };
enum class MoveDirection { insert, remove };

/// Where a move applies. Only the fields relevant to (type, direction) are read:
///   R1 insert: edge, left_side, over_first
///   R1 remove: crossing
///   R2 insert: top (finger strand), bottom, over_first (finger passes over)
///   R2 remove: crossing, other_crossing
///   R3:        triangle (three edges bounding a triangular face)
struct MoveSite {
  MoveType type = MoveType::r1;
  MoveDirection direction = MoveDirection::insert;
  int edge = 0;
  bool left_side = true;
  bool over_first = true;
  Dart top;
  Dart bottom;
  int crossing = 0;
  int other_crossing = 0;
  std::vector<int> triangle;
};

/// Applies the move and returns the new diagram. Throws InapplicableMove when
/// the site does not admit it.
Diagram apply_reidemeister(const Diagram& d, const MoveSite& site);

/// Every removal and R3 site, followed by insertion sites when
/// `with_insertions` is set. Order is deterministic.
std::vector<MoveSite> available_moves(const Diagram& d, bool with_insertions);

/// Crossing change at `crossing_id`.
Diagram flip_crossing(const Diagram& d, int crossing_id);

/// Replaces edge `e` by `pieces` consecutive edges; the first keeps the id.
/// Returns the ids in order.
std::vector<int> split_edge(Diagram& d, int e, int pieces);

/// Deletes crossings, joining each pass's incoming and outgoing edges.
void remove_crossings(Diagram& d, const std::vector<int>& crossing_ids);

}  // namespace spinecert
