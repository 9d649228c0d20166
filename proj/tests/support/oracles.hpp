#pragma once

// Test-side oracles that recompute facts without the library's shortcuts.

#include <cstddef>
#include <functional>
#include <string>

#include "spinecert/diagram.hpp"

namespace spinecert::testing {

/// Relabels edges and crossings in traversal order and serializes; equal keys
/// mean equal diagrams up to renaming.
std::string canonical_key(const Diagram& d);

struct SearchResult {
  bool trivial = false;  // reached a crossing-free diagram
  std::size_t states = 0;
};

/// Breadth-first Reidemeister search for a crossing-free diagram of a link.
/// First only non-increasing moves, then insertions up to `extra` crossings
/// above the start. A crossing-free link diagram is a split unlink.
SearchResult split_trivial_search(const Diagram& link, int extra = 2, std::size_t max_states = 200000);

/// Every valid spine diagram of the given genus with exactly `crossings`
/// crossings: each Gauss word of passes, split over loops then arcs, with
/// every over/under, sign and attachment-side choice; planarity by validate.
/// Returns the number of diagrams visited.
std::size_t for_each_spine(int genus, int crossings, const std::function<void(const Diagram&)>& fn);

/// Euler characteristic of a disk with `tubes` tubes attached, tallied from
/// an explicit cell structure.
int tubed_disk_chi_by_cells(int tubes);

/// Seifert circle count predicted for a braid closure.
inline int braid_circle_count(int strands) { return strands; }

}  // namespace spinecert::testing
