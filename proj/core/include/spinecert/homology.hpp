#pragma once

// Linking numbers and first-homology coordinates in a handlebody exterior.
// A class is stored as its linking numbers with the spine loops.

#include <optional>
#include <string>
#include <vector>

#include "spinecert/diagram.hpp"

namespace spinecert {

/// Half the signed count of crossings between components a and b (1-based
/// loop indices of a link or spine diagram).
int linking_number(const Diagram& d, int a, int b);

struct LinkingTable {
  std::vector<std::vector<int>> lk;  // diagonal is 0 and unused
  int size() const noexcept { return static_cast<int>(lk.size()); }
  int at(int a, int b) const { return lk.at(a - 1).at(b - 1); }
};

LinkingTable linking_table(const Diagram& d);

using HomologyClass = std::vector<int>;

std::string format_class(const HomologyClass& c);  // "(1,0,-2)"
bool is_zero(const HomologyClass& c);

/// Linking numbers of each link component L_k with each loop l_i.
/// An empty optional is an unknown entry.
struct LinkingData {
  int loops = 0;
  std::vector<std::vector<std::optional<int>>> rows;
};

/// Rows for `link_components` against `loop_components`, all read off one
/// diagram that contains both.
LinkingData linking_data(const Diagram& d, const std::vector<int>& link_components,
                         const std::vector<int>& loop_components);

HomologyClass component_class(const LinkingData& data, int k);  // 1-based component
HomologyClass homology_class(const LinkingData& data);         // sum over components
bool is_null_homologous(const LinkingData& data);
bool is_completely_null_homologous(const LinkingData& data);

/// A small circle linking each listed strand once, one Hopf clasp per strand.
/// Component 1 is the circle; component k+1 is strand k, oriented by
/// orientation[k] (+1 gives linking number +1 with the circle).
Diagram clasp_model(const std::vector<int>& orientation);

struct IntersectionRecord {
  int meridian = 0;  // 1-based
  int dual = 0;      // 1-based
  int count = 0;
};

struct IntersectionMatrix {
  std::vector<std::vector<int>> counts;
  bool pass = false;
  std::string render() const;  // "[[1,0],[0,1]]"
};

/// Sums recorded crossings into a g x g matrix; pass iff it is the identity.
IntersectionMatrix intersection_delta(int g, const std::vector<IntersectionRecord>& recorded);

/// Meridian i is a point on edge meridian_edges[i]; dual j runs along
/// dual_paths[j]. Each passage of a dual path along a meridian's edge is one
/// recorded crossing.
IntersectionMatrix intersection_delta(const std::vector<int>& meridian_edges,
                                      const std::vector<std::vector<int>>& dual_paths);

}  // namespace spinecert
