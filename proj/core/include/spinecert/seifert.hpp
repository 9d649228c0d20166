#pragma once

// Seifert's algorithm on oriented diagrams and the disk-band surface system
// of a handcuff spine.

#include <string>
#include <vector>

#include "spinecert/diagram.hpp"

namespace spinecert {

/// Reverses every component whose entry is -1; entries must be +1 or -1.
/// An empty vector keeps the listed orientation.
Diagram reorient(const Diagram& d, const std::vector<int>& orientation);

struct SeifertCircleSet {
  std::vector<std::vector<int>> circles;  // edges in traversal order
  int count() const noexcept { return static_cast<int>(circles.size()); }
};

/// Oriented smoothing of every crossing of a link diagram.
SeifertCircleSet seifert_circles(const Diagram& link, const std::vector<int>& orientation = {});

struct Band {
  int crossing = 0;
  int sign = 1;  // half-twist sense, equal to the crossing sign
  int disk_a = 0;
  int disk_b = 0;
};

/// A connected piece of the disk-band surface.
struct SurfacePiece {
  std::vector<int> disks;       // indices into the circle set
  std::vector<int> bands;       // indices into SurfaceData::bands
  std::vector<int> components;  // 1-based link components bounding this piece
  int chi = 0;
  int genus = 0;
  int boundary = 0;
};

struct SurfaceData {
  int disks = 0;
  std::vector<Band> bands;
  int chi = 0;
  std::vector<SurfacePiece> pieces;
};

/// Disks on the Seifert circles, one half-twisted band per crossing.
SurfaceData build_surface(const Diagram& link, const SeifertCircleSet& circles);

struct SeifertSystemData {
  Diagram sublink;  // the loops l_1..l_g as an oriented link diagram
  SeifertCircleSet circles;
  SurfaceData surface;
  std::vector<int> piece_of_loop;  // loop i (0-based) -> surface piece
  bool completely_disjoint = true;
  std::vector<std::string> shared;  // one entry per piece bounded by several loops
  std::vector<std::string> notes;

  const SurfacePiece& surface_of(int loop) const { return surface.pieces.at(piece_of_loop.at(loop - 1)); }
};

/// Runs Seifert's algorithm on all loops of a spine at once. Requires a valid
/// spine in normal form.
SeifertSystemData spine_seifert_system(const Diagram& spine, const std::vector<int>& orientation = {});

struct SpanningSurface {
  std::string boundary_label;  // C_i
  int genus = 0;
  int chi = 0;
  std::string meridian_label;  // D_i paired with this surface
};

struct SpanningSystemSummary {
  std::vector<SpanningSurface> surfaces;
};

/// Restriction of the spine's surfaces to the handlebody exterior. Removing a
/// collar keeps chi and genus.
SpanningSystemSummary restrict_to_exterior(const SeifertSystemData& sys, int genus);

}  // namespace spinecert
