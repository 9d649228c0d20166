#pragma once

// Line-oriented certificate bundles.
//
//   spinecert bundle mode=<part1|part2>
//   [VALIDATION] [SURFACES] [TRANSCRIPT] [SURGERY] [HOMOLOGY] [BLOWDOWN]
//   [DELTA] [ATTESTATION], then a closing `bundle: pass|fail` line.
//
// Diagrams are embedded verbatim with an `input> `, `descending> ` or
// `final> ` prefix. See docs/bundle-format.md for the full grammar.
//
// The other subcommand reports have writers and readers here too, so every
// output can be read back.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinecert/pipeline.hpp"

namespace spinecert {

std::string write_bundle(const CertificateBundle& b);

/// A bundle as written, including the verdicts it claims.
struct ParsedBundle {
  CertificateBundle bundle;
  bool claimed_validation = false;
  bool claimed_blowdown = false;
  bool claimed_core = false;
  bool claimed_attestation = false;
  bool claimed_pass = false;
};

/// Throws ParseError on malformed text or sections out of order.
ParsedBundle parse_bundle(std::string_view text);

struct CertifyReport {
  std::vector<std::string> failures;
  int checks = 0;
  bool pass() const noexcept { return failures.empty(); }
};

/// Re-derives every section from the embedded input diagram (or `input`, which
/// must then agree with it) and the transcript. Passes iff everything agrees
/// and the bundle itself passes.
CertifyReport certify_bundle(std::string_view text, const std::optional<Diagram>& input = std::nullopt);

/// SURGERY and DELTA sections for a dualization, closed by `dualize: pass|fail`.
std::string write_dualize(const DualizeResult& r);

struct ParsedDualize {
  FramedSurgeryLink link;
  std::vector<int> meridian_edges;
  std::vector<std::vector<int>> dual_paths;
  IntersectionMatrix delta;
  bool claimed_pass = false;
};
ParsedDualize parse_dualize(std::string_view text);

/// `surface <i>: disks= bands= chi= genus= boundary=` per loop, then `shared:` lines.
std::string write_surface_report(const SeifertSystemData& sys);
struct SurfaceReport {
  std::vector<SurfaceSummary> surfaces;
  std::vector<std::string> shared;
};
SurfaceReport parse_surface_report(std::string_view text);

/// `linking <a> <b>: <n>` for every pair a < b.
std::string write_linking_report(const LinkingTable& t);
LinkingTable parse_linking_report(std::string_view text, int components);

/// `<path>: valid (vertices= edges= faces=)`, or one `<path>: <entry>` line per
/// violated invariant.
std::string write_validation_line(const std::string& path, const ValidationReport& r);
struct ValidationRecord {
  std::string path;
  bool valid = false;
  std::vector<int> counts;  // vertices, edges, faces
  std::vector<std::string> entries;
};
std::vector<ValidationRecord> parse_validation_report(std::string_view text);

/// `certify: FAIL <reason>` lines, then `certify: <n> checks, pass|fail`.
std::string write_certify_report(const CertifyReport& rep);
CertifyReport parse_certify_report(std::string_view text);

}  // namespace spinecert
