#pragma once

// Symbolic 1/n-framed surgery links: emitters for band-crossing changes and
// full twists, blow-down certificates, core-link and tubing bookkeeping.

#include <string>
#include <utility>
#include <vector>

#include "spinecert/diagram.hpp"
#include "spinecert/homology.hpp"

namespace spinecert {

/// p/q. A 1/n slope is stored with p = 1.
struct Slope {
  long p = 1;
  long q = 1;
  bool is_one_over_n() const noexcept { return p == 1 && q != 0; }
  std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }
  friend bool operator==(const Slope&, const Slope&) = default;
};

/// 1/n, normalized so the numerator is 1. Throws on n = 0.
Slope one_over(long n);

enum class SurgeryKind { band_crossing_change, full_twist };

const char* kind_token(SurgeryKind k);  // "bcc" / "twist"

struct EncircledStrand {
  int loop = 0;         // 1-based loop carrying the strand
  int orientation = 1;  // direction through the spanning disk
  friend bool operator==(const EncircledStrand&, const EncircledStrand&) = default;
};

struct SurgeryComponent {
  int id = 0;
  SurgeryKind kind = SurgeryKind::band_crossing_change;
  int site = 0;  // crossing id, or loop id for a twist
  Slope framing;
  HomologyClass linking;  // linking with each loop
  std::vector<EncircledStrand> strands;
  bool unlinked = true;  // bounds a disk disjoint from the other components

  friend bool operator==(const SurgeryComponent&, const SurgeryComponent&) = default;
};

struct FramedSurgeryLink {
  std::vector<SurgeryComponent> components;
  bool pairwise_unlinked = true;
  friend bool operator==(const FramedSurgeryLink&, const FramedSurgeryLink&) = default;
};

/// Linking with each of g loops, read off the encircled strands.
HomologyClass strand_class(const std::vector<EncircledStrand>& strands, int genus);

/// The same class recomputed from an explicit clasp diagram.
HomologyClass clasp_class(const std::vector<EncircledStrand>& strands, int genus);

/// Mutable working state of one pipeline run. `twist[i]` is the accumulated
/// full-twist count of loop i+1's band.
struct SurgeryState {
  Diagram diagram;
  std::vector<int> twist;
  FramedSurgeryLink link;

  explicit SurgeryState(Diagram d);
};

/// Flips a crossing between loop strands. The emitted circle encircles both
/// strands in opposite pairs and has framing 1/(-sign).
SurgeryComponent emit_band_crossing_change(SurgeryState& state, int crossing);

/// n full twists on loop `band`'s band; framing 1/(-n).
SurgeryComponent emit_full_twist(SurgeryState& state, int band, int n);

struct BlowdownStep {
  int index = 0;
  int component = 0;
  bool ok = false;
  std::string reason;
};

struct BlowdownCertificate {
  std::vector<BlowdownStep> steps;
  bool valid = false;
  std::string reason;  // first failure, empty when valid
};

BlowdownCertificate verify_reflexive(const FramedSurgeryLink& link);

/// Boundary circles of the extended surface on one surgery torus, as
/// (meridian, longitude) coordinates of the original component.
struct BoundaryRecord {
  int component = 0;
  std::vector<std::pair<long, long>> circles;
};

struct CoreLinkData {
  std::vector<std::pair<int, std::vector<long>>> counts;  // component id -> per-circle count
  bool pass = true;
};

/// One longitude-parallel circle per distinct encircled loop.
std::vector<BoundaryRecord> longitude_records(const FramedSurgeryLink& link);

/// Counts |p*b - q*a| for filling slope p/q against each boundary (a, b).
CoreLinkData core_link_check(const FramedSurgeryLink& link, const std::vector<BoundaryRecord>& records);

struct TubedSurface {
  std::string boundary_label;
  int tubes = 0;
  int chi = 0;
  int genus = 0;
  int boundary = 1;
};

struct TubedSystemData {
  std::vector<TubedSurface> surfaces;
};

TubedSystemData tube_system(const std::vector<int>& tubes);

}  // namespace spinecert
