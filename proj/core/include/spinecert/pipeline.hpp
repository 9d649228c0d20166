#pragma once

// Unknotting a spine by band-crossing changes and full twists, with a
// replayable transcript and the resulting surgery link.

#include <optional>
#include <string>
#include <vector>

#include "spinecert/diagram.hpp"
#include "spinecert/homology.hpp"
#include "spinecert/seifert.hpp"
#include "spinecert/surgery.hpp"
#include "spinecert/topology.hpp"

namespace spinecert {

/// Loop traversal order (1-based loop ids) and per-loop basepoints (offset into
/// the loop's edge list; 0 starts at the attachment vertex). Empty means the
/// default for every loop.
struct PlanOptions {
  std::vector<int> order;
  std::vector<int> basepoints;
  friend bool operator==(const PlanOptions&, const PlanOptions&) = default;
};

/// Fills in defaults and checks ranges against `sp`.
PlanOptions resolve_plan_options(const Diagram& sp, const PlanOptions& opts);

struct DescendingPlan {
  PlanOptions options;     // resolved
  std::vector<int> flips;  // in traversal order
};

/// Crossings first met as an under pass when walking the loops in order.
DescendingPlan descending_plan(const Diagram& sp, const PlanOptions& opts = {});

/// True when every loop crossing is first met as an over pass.
bool is_descending(const Diagram& sp, const PlanOptions& opts = {});

struct ExchangeNote {
  int arc = 0;
  int crossing = 0;  // removed from the arc
  int first = 0;     // new loop crossings, in order along the other strand
  int second = 0;
};

/// Slides loop `arc`'s attachment vertex back across the last crossing on the
/// arc; the two loop ends take over that crossing.
Diagram exchange_arc_crossing(const Diagram& sp, int arc, ExchangeNote* note = nullptr);

/// Repeats the exchange until no arc or wedge edge is crossed.
Diagram normalize_arcs(const Diagram& sp, std::vector<ExchangeNote>* notes = nullptr);

enum class MoveKind { arc_exchange, band_crossing_change, full_twist };

struct TranscriptMove {
  MoveKind kind = MoveKind::band_crossing_change;
  int site = 0;       // crossing id, or loop id for a twist
  int component = 0;  // emitted surgery component, 0 for exchanges
  int arc = 0;        // exchanges only
  int n = 0;          // twists only
  int first = 0;      // exchanges only
  int second = 0;
  friend bool operator==(const TranscriptMove&, const TranscriptMove&) = default;
};

struct MoveTranscript {
  PlanOptions plan;
  std::vector<TranscriptMove> moves;
};

struct StandardFormAttestation {
  bool split_trivial = false;
  bool twist_zero = false;
  bool arcs_free = false;
  bool layout = false;
  bool pass() const noexcept { return split_trivial && twist_zero && arcs_free && layout; }
};

/// Flags read off the descending diagram, the final diagram and the twist
/// counters.
StandardFormAttestation attest(const Diagram& descending, const Diagram& final_diagram,
                               const std::vector<int>& twist, const PlanOptions& plan);

struct UnknotResult {
  Diagram input;
  Diagram normalized;
  std::vector<ExchangeNote> exchanges;
  SeifertSystemData system;
  DescendingPlan plan;
  MoveTranscript transcript;
  FramedSurgeryLink link;
  std::vector<int> twist_before;  // counters after the crossing changes
  std::vector<int> twist_after;   // after the full twists; all zero
  Diagram descending;             // loops split and trivial
  Diagram final_diagram;          // standard planar form
  StandardFormAttestation attestation;
};

UnknotResult unknot_spine(const Diagram& sp, const PlanOptions& opts = {});

struct ReplayResult {
  Diagram normalized;
  Diagram descending;
  Diagram final_diagram;
  std::vector<int> twist;
  bool descending_ok = false;
};

/// Applies the transcript's moves to `input`. Throws PreconditionError when a
/// move does not apply.
ReplayResult replay(const Diagram& input, const MoveTranscript& transcript);

struct DualizeResult {
  UnknotResult run;
  std::vector<int> meridian_edges;            // C_i: a point on loop i's first edge
  std::vector<std::vector<int>> dual_paths;   // C_i'': loop i of the descending diagram
  IntersectionMatrix delta;
};

DualizeResult heegaard_dualize(const Diagram& sp, const PlanOptions& opts = {});

enum class TheoremMode { part1, part2 };

const char* mode_token(TheoremMode m);

struct SurfaceSummary {
  int loop = 0;
  int disks = 0;
  int bands = 0;
  int chi = 0;
  int genus = 0;
  int boundary = 0;
};

struct CertificateBundle {
  TheoremMode mode = TheoremMode::part1;
  Diagram input;
  ValidationReport validation;
  bool disjoint = true;
  std::vector<std::string> shared;
  std::vector<SurfaceSummary> surfaces;
  MoveTranscript transcript;
  std::vector<int> twist_before;
  std::vector<int> twist_after;
  FramedSurgeryLink link;
  std::vector<HomologyClass> classes;  // recomputed per surgery component
  HomologyClass total;
  bool null_homologous = true;
  bool completely_null_homologous = true;
  BlowdownCertificate blowdown;
  CoreLinkData core;
  std::vector<int> meridian_edges;
  std::vector<std::vector<int>> dual_paths;
  std::optional<IntersectionMatrix> delta;
  Diagram descending;
  Diagram final_diagram;
  StandardFormAttestation attestation;

  bool homology_ok() const;
  bool pass() const;
};

/// Full run. part2 throws Refusal when the Seifert system shares disks or bands
/// between loops.
CertificateBundle run_theorem_main(const Diagram& sp, TheoremMode mode, const PlanOptions& opts = {});

}  // namespace spinecert
