#include "spinecert/bundle.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <sstream>

#include "spinecert/error.hpp"
#include "spinecert/format.hpp"

namespace spinecert {
namespace {

constexpr std::array<std::string_view, 8> kSections = {"VALIDATION", "SURFACES", "TRANSCRIPT", "SURGERY",
                                                       "HOMOLOGY",   "BLOWDOWN", "DELTA",      "ATTESTATION"};

const char* yn(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<int>& v) {
  if (v.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string strand_list(const std::vector<EncircledStrand>& strands) {
  std::string s;
  for (std::size_t i = 0; i < strands.size(); ++i)
    s += (i ? "," : "") + std::to_string(strands[i].loop) + (strands[i].orientation > 0 ? "+" : "-");
  return s.empty() ? "-" : s;
}

void embed_diagram(std::ostringstream& os, std::string_view prefix, const Diagram& d) {
  std::istringstream in(serialize(d));
  std::string line;
  while (std::getline(in, line)) os << prefix << line << '\n';
}

std::string surgery_line(const SurgeryComponent& c) {
  std::ostringstream os;
  os << "surgery " << c.id << " kind=" << kind_token(c.kind) << " site=" << c.site << " framing=" << c.framing.str()
     << " class=" << format_class(c.linking) << " strands=" << strand_list(c.strands) << " unlinked=" << yn(c.unlinked);
  return os.str();
}

std::string blowdown_line(const BlowdownStep& s) {
  return "blowdown step " + std::to_string(s.index) + ": component " + std::to_string(s.component) + " " +
         (s.ok ? "ok(" : "fail(") + s.reason + ")";
}

std::string core_line(int id, const std::vector<long>& counts) {
  std::string s = "core " + std::to_string(id) + " counts=";
  bool ok = true;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    s += (i ? "," : "") + std::to_string(counts[i]);
    ok = ok && counts[i] == 1;
  }
  return s + (ok ? " pass" : " fail");
}

std::string move_line(int k, const TranscriptMove& m) {
  std::ostringstream os;
  os << "move " << k << ": ";
  switch (m.kind) {
    case MoveKind::arc_exchange:
      os << "exchange arc=" << m.arc << " site=" << m.site << " new=" << m.first << ',' << m.second;
      break;
    case MoveKind::band_crossing_change:
      os << "bcc site=" << m.site << " component=" << m.component;
      break;
    case MoveKind::full_twist:
      os << "twist site=" << m.site << " n=" << m.n << " component=" << m.component;
      break;
  }
  return os.str();
}

void write_surgery(std::ostringstream& os, const FramedSurgeryLink& link) {
  for (const auto& c : link.components) os << surgery_line(c) << '\n';
  os << "link: components=" << link.components.size() << " pairwise_unlinked=" << yn(link.pairwise_unlinked) << '\n';
}

void write_delta(std::ostringstream& os, const std::vector<int>& meridians, const std::vector<std::vector<int>>& duals,
                 const std::optional<IntersectionMatrix>& delta) {
  for (std::size_t i = 0; i < meridians.size(); ++i) os << "meridian " << i + 1 << " edge=" << meridians[i] << '\n';
  for (std::size_t i = 0; i < duals.size(); ++i) os << "dual " << i + 1 << " path=" << join(duals[i]) << '\n';
  if (delta)
    os << "delta: " << delta->render() << (delta->pass ? " pass" : " fail") << '\n';
  else
    os << "delta: none\n";
}

}  // namespace

std::string write_bundle(const CertificateBundle& b) {
  std::ostringstream os;
  os << "spinecert bundle mode=" << mode_token(b.mode) << '\n';

  os << "[VALIDATION]\n";
  embed_diagram(os, "input> ", b.input);
  const auto& v = b.validation;
  os << "validation: vertices=" << v.vertices << " edges=" << v.edges << " faces=" << v.faces << " pieces=" << v.pieces
     << " normal_form=" << yn(v.normal_form) << '\n';
  for (const auto& e : v.entries) os << "validation: entry " << e << '\n';
  os << "validation: " << (v.ok() ? "pass" : "fail") << '\n';

  os << "[SURFACES]\n";
  os << "system: disjoint=" << yn(b.disjoint) << '\n';
  for (const auto& s : b.shared) os << "shared: " << s << '\n';
  for (const auto& s : b.surfaces)
    os << "surface " << s.loop << ": disks=" << s.disks << " bands=" << s.bands << " chi=" << s.chi
       << " genus=" << s.genus << " boundary=" << s.boundary << '\n';

  os << "[TRANSCRIPT]\n";
  os << "plan order=" << join(b.transcript.plan.order) << " basepoints=" << join(b.transcript.plan.basepoints) << '\n';
  for (std::size_t k = 0; k < b.transcript.moves.size(); ++k)
    os << move_line(static_cast<int>(k) + 1, b.transcript.moves[k]) << '\n';
  os << "twist before=" << format_class(b.twist_before) << " after=" << format_class(b.twist_after) << '\n';

  os << "[SURGERY]\n";
  write_surgery(os, b.link);

  os << "[HOMOLOGY]\n";
  for (std::size_t k = 0; k < b.classes.size(); ++k)
    os << "homology: component " << k + 1 << " class=" << format_class(b.classes[k]) << '\n';
  os << "homology: total=" << format_class(b.total) << " null=" << yn(b.null_homologous)
     << " completely=" << yn(b.completely_null_homologous) << '\n';

  os << "[BLOWDOWN]\n";
  for (const auto& s : b.blowdown.steps) os << blowdown_line(s) << '\n';
  os << "blowdown: " << (b.blowdown.valid ? "valid" : "invalid") << '\n';
  for (const auto& [id, counts] : b.core.counts) os << core_line(id, counts) << '\n';
  os << "core: " << (b.core.pass ? "pass" : "fail") << '\n';

  os << "[DELTA]\n";
  write_delta(os, b.meridian_edges, b.dual_paths, b.delta);

  os << "[ATTESTATION]\n";
  embed_diagram(os, "descending> ", b.descending);
  embed_diagram(os, "final> ", b.final_diagram);
  const auto& a = b.attestation;
  os << "attestation: split_trivial=" << yn(a.split_trivial) << " twist_zero=" << yn(a.twist_zero)
     << " arcs_free=" << yn(a.arcs_free) << " layout=" << yn(a.layout) << '\n';
  os << "attestation: " << (a.pass() ? "pass" : "fail") << '\n';

  os << "bundle: " << (b.pass() ? "pass" : "fail") << '\n';
  return os.str();
}

std::string write_dualize(const DualizeResult& r) {
  std::ostringstream os;
  os << "[SURGERY]\n";
  write_surgery(os, r.run.link);
  os << "[DELTA]\n";
  write_delta(os, r.meridian_edges, r.dual_paths, r.delta);
  bool ok = r.delta.pass && verify_reflexive(r.run.link).valid;
  os << "dualize: " << (ok ? "pass" : "fail") << '\n';
  return os.str();
}

// ---------------------------------------------------------------- parsing ---

namespace {

struct Line {
  int no = 0;
  std::string text;
};

[[noreturn]] void fail(const Line& l, const std::string& what) { throw ParseError(l.no, 1, what); }

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

long to_long(const Line& l, std::string_view s) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) fail(l, "expected an integer, got '" + std::string(s) + "'");
  return v;
}

int to_int(const Line& l, std::string_view s) { return static_cast<int>(to_long(l, s)); }

bool to_bool(const Line& l, std::string_view s) {
  if (s == "yes" || s == "pass" || s == "valid") return true;
  if (s == "no" || s == "fail" || s == "invalid") return false;
  fail(l, "expected a verdict, got '" + std::string(s) + "'");
}

std::vector<int> to_list(const Line& l, std::string_view s) {
  std::vector<int> out;
  if (s == "-" || s.empty()) return out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string_view::npos) comma = s.size();
    out.push_back(to_int(l, s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

HomologyClass to_class(const Line& l, std::string_view s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') fail(l, "expected a class '(...)'");
  return to_list(l, s.substr(1, s.size() - 2));
}

// key=value words after the first `skip`
std::map<std::string, std::string> fields(const Line& l, const std::vector<std::string>& w, std::size_t skip) {
  std::map<std::string, std::string> out;
  for (std::size_t i = skip; i < w.size(); ++i) {
    auto eq = w[i].find('=');
    if (eq == std::string::npos) fail(l, "expected key=value, got '" + w[i] + "'");
    out[w[i].substr(0, eq)] = w[i].substr(eq + 1);
  }
  return out;
}

const std::string& need(const Line& l, const std::map<std::string, std::string>& f, const std::string& key) {
  auto it = f.find(key);
  if (it == f.end()) fail(l, "missing field '" + key + "'");
  return it->second;
}

bool starts(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

Diagram embedded(const std::vector<Line>& lines, std::string_view prefix) {
  std::string text;
  int first = 0;
  for (const auto& l : lines)
    if (starts(l.text, prefix)) {
      if (!first) first = l.no;
      text += l.text.substr(prefix.size()) + "\n";
    }
  if (text.empty()) throw ParseError(lines.empty() ? 0 : lines.front().no, 1, "missing '" + std::string(prefix) + "' diagram");
  try {
    return parse_diagram(text);
  } catch (const ParseError& e) {
    throw ParseError(first + e.line() - 1, e.column(), std::string("embedded diagram: ") + e.what());
  } catch (const DiagramError& e) {
    throw ParseError(first, 1, std::string("embedded diagram: ") + e.what());
  }
}

std::vector<EncircledStrand> to_strands(const Line& l, std::string_view s) {
  std::vector<EncircledStrand> out;
  if (s == "-") return out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string_view::npos) comma = s.size();
    auto tok = s.substr(pos, comma - pos);
    if (tok.size() < 2 || (tok.back() != '+' && tok.back() != '-')) fail(l, "bad strand '" + std::string(tok) + "'");
    out.push_back({to_int(l, tok.substr(0, tok.size() - 1)), tok.back() == '+' ? 1 : -1});
    pos = comma + 1;
  }
  return out;
}

Slope to_slope(const Line& l, std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) fail(l, "expected a slope p/q");
  return Slope{to_long(l, s.substr(0, slash)), to_long(l, s.substr(slash + 1))};
}

IntersectionMatrix to_matrix(const Line& l, std::string_view s) {
  IntersectionMatrix m;
  if (s.size() < 4 || !starts(s, "[[") || s.substr(s.size() - 2) != "]]") fail(l, "expected a matrix [[...]]");
  auto body = s.substr(2, s.size() - 4);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t end = body.find("],[", pos);
    if (end == std::string_view::npos) end = body.size();
    m.counts.push_back(to_list(l, body.substr(pos, end - pos)));
    pos = end + 3;
  }
  return m;
}

void parse_validation(const std::vector<Line>& lines, ParsedBundle& p) {
  auto& b = p.bundle;
  b.input = embedded(lines, "input> ");
  bool verdict = false;
  for (const auto& l : lines) {
    if (starts(l.text, "input> ")) continue;
    if (starts(l.text, "validation: entry ")) {
      b.validation.entries.push_back(l.text.substr(18));
      continue;
    }
    auto w = words(l.text);
    if (w.size() == 2 && w[0] == "validation:") {
      p.claimed_validation = to_bool(l, w[1]);
      verdict = true;
    } else if (w.size() > 1 && w[0] == "validation:") {
      auto f = fields(l, w, 1);
      b.validation.vertices = to_int(l, need(l, f, "vertices"));
      b.validation.edges = to_int(l, need(l, f, "edges"));
      b.validation.faces = to_int(l, need(l, f, "faces"));
      b.validation.pieces = to_int(l, need(l, f, "pieces"));
      b.validation.normal_form = to_bool(l, need(l, f, "normal_form"));
      b.validation.planar_checked = true;
    } else {
      fail(l, "unexpected line in VALIDATION");
    }
  }
  if (!verdict) throw ParseError(lines.empty() ? 0 : lines.back().no, 1, "VALIDATION has no verdict line");
}

void parse_surfaces(const std::vector<Line>& lines, ParsedBundle& p, bool need_system = true) {
  auto& b = p.bundle;
  bool system = false;
  for (const auto& l : lines) {
    if (starts(l.text, "shared: ")) {
      b.shared.push_back(l.text.substr(8));
      continue;
    }
    auto w = words(l.text);
    if (w.size() == 2 && w[0] == "system:") {
      b.disjoint = to_bool(l, need(l, fields(l, w, 1), "disjoint"));
      system = true;
    } else if (w.size() == 7 && w[0] == "surface" && w[1].back() == ':') {
      auto f = fields(l, w, 2);
      b.surfaces.push_back({to_int(l, w[1].substr(0, w[1].size() - 1)), to_int(l, need(l, f, "disks")),
                            to_int(l, need(l, f, "bands")), to_int(l, need(l, f, "chi")), to_int(l, need(l, f, "genus")),
                            to_int(l, need(l, f, "boundary"))});
    } else {
      fail(l, "unexpected line in SURFACES");
    }
  }
  if (need_system && !system) throw ParseError(lines.empty() ? 0 : lines.front().no, 1, "SURFACES has no system line");
}

void parse_transcript(const std::vector<Line>& lines, ParsedBundle& p) {
  auto& t = p.bundle.transcript;
  bool plan = false, twist = false;
  for (const auto& l : lines) {
    auto w = words(l.text);
    if (!w.empty() && w[0] == "plan") {
      auto f = fields(l, w, 1);
      t.plan.order = to_list(l, need(l, f, "order"));
      t.plan.basepoints = to_list(l, need(l, f, "basepoints"));
      if (plan || !t.moves.empty()) fail(l, "the plan line comes first, once");
      plan = true;
    } else if (w.size() >= 3 && w[0] == "move") {
      if (to_int(l, w[1].substr(0, w[1].size() - 1)) != static_cast<int>(t.moves.size()) + 1)
        fail(l, "moves out of sequence");
      auto f = fields(l, w, 3);
      TranscriptMove m;
      m.site = to_int(l, need(l, f, "site"));
      if (w[2] == "exchange") {
        m.kind = MoveKind::arc_exchange;
        m.arc = to_int(l, need(l, f, "arc"));
        auto nw = to_list(l, need(l, f, "new"));
        if (nw.size() != 2) fail(l, "exchange needs two new crossings");
        m.first = nw[0];
        m.second = nw[1];
      } else if (w[2] == "bcc") {
        m.kind = MoveKind::band_crossing_change;
        m.component = to_int(l, need(l, f, "component"));
      } else if (w[2] == "twist") {
        m.kind = MoveKind::full_twist;
        m.n = to_int(l, need(l, f, "n"));
        m.component = to_int(l, need(l, f, "component"));
      } else {
        fail(l, "unknown move kind '" + w[2] + "'");
      }
      t.moves.push_back(m);
    } else if (!w.empty() && w[0] == "twist") {
      auto f = fields(l, w, 1);
      p.bundle.twist_before = to_class(l, need(l, f, "before"));
      p.bundle.twist_after = to_class(l, need(l, f, "after"));
      twist = true;
    } else {
      fail(l, "unexpected line in TRANSCRIPT");
    }
  }
  if (!plan || !twist) throw ParseError(lines.empty() ? 0 : lines.front().no, 1, "TRANSCRIPT needs a plan line and a twist line");
}

void parse_surgery(const std::vector<Line>& lines, ParsedBundle& p) {
  auto& link = p.bundle.link;
  bool summary = false;
  for (const auto& l : lines) {
    auto w = words(l.text);
    if (summary) fail(l, "text after the link summary");
    if (w.size() >= 2 && w[0] == "surgery") {
      auto f = fields(l, w, 2);
      SurgeryComponent c;
      c.id = to_int(l, w[1]);
      const auto& kind = need(l, f, "kind");
      if (kind == "bcc")
        c.kind = SurgeryKind::band_crossing_change;
      else if (kind == "twist")
        c.kind = SurgeryKind::full_twist;
      else
        fail(l, "unknown surgery kind '" + kind + "'");
      c.site = to_int(l, need(l, f, "site"));
      c.framing = to_slope(l, need(l, f, "framing"));
      c.linking = to_class(l, need(l, f, "class"));
      c.strands = to_strands(l, need(l, f, "strands"));
      c.unlinked = f.count("unlinked") ? to_bool(l, f.at("unlinked")) : false;
      link.components.push_back(c);
    } else if (!w.empty() && w[0] == "link:") {
      auto f = fields(l, w, 1);
      if (to_int(l, need(l, f, "components")) != static_cast<int>(link.components.size()))
        fail(l, "component count does not match the listed surgery lines");
      link.pairwise_unlinked = f.count("pairwise_unlinked") ? to_bool(l, f.at("pairwise_unlinked")) : false;
      summary = true;
    } else {
      fail(l, "unexpected line in SURGERY");
    }
  }
  if (!summary) throw ParseError(lines.empty() ? 0 : lines.back().no, 1, "SURGERY has no link summary line");
}

void parse_homology(const std::vector<Line>& lines, ParsedBundle& p) {
  auto& b = p.bundle;
  bool summary = false;
  for (const auto& l : lines) {
    auto w = words(l.text);
    if (w.size() == 4 && w[0] == "homology:" && w[1] == "component") {
      if (to_int(l, w[2]) != static_cast<int>(b.classes.size()) + 1) fail(l, "homology components out of sequence");
      b.classes.push_back(to_class(l, need(l, fields(l, w, 3), "class")));
    } else if (w.size() == 4 && w[0] == "homology:") {
      auto f = fields(l, w, 1);
      b.total = to_class(l, need(l, f, "total"));
      b.null_homologous = to_bool(l, need(l, f, "null"));
      b.completely_null_homologous = to_bool(l, need(l, f, "completely"));
      summary = true;
    } else {
      fail(l, "unexpected line in HOMOLOGY");
    }
  }
  if (!summary) throw ParseError(lines.empty() ? 0 : lines.back().no, 1, "HOMOLOGY has no summary line");
}

void parse_blowdown(const std::vector<Line>& lines, ParsedBundle& p) {
  auto& b = p.bundle;
  bool blowdown = false, core = false;
  for (const auto& l : lines) {
    auto w = words(l.text);
    if (w.size() >= 5 && w[0] == "blowdown" && w[1] == "step") {
      BlowdownStep s;
      s.index = to_int(l, w[2].substr(0, w[2].size() - 1));
      s.component = to_int(l, w[4]);
      auto open = l.text.find('(');
      if (open == std::string::npos || l.text.back() != ')') fail(l, "expected ok(...) or fail(...)");
      auto verdict = l.text.substr(0, open);
      verdict = verdict.substr(verdict.rfind(' ') + 1);
      if (verdict != "ok" && verdict != "fail") fail(l, "expected ok(...) or fail(...)");
      s.ok = verdict == "ok";
      s.reason = l.text.substr(open + 1, l.text.size() - open - 2);
      b.blowdown.steps.push_back(s);
    } else if (w.size() == 2 && w[0] == "blowdown:") {
      p.claimed_blowdown = to_bool(l, w[1]);
      b.blowdown.valid = p.claimed_blowdown;
      blowdown = true;
    } else if (w.size() == 4 && w[0] == "core") {
      auto counts = to_list(l, need(l, fields(l, {w[2]}, 0), "counts"));
      bool ones = std::all_of(counts.begin(), counts.end(), [](int c) { return c == 1; });
      if (to_bool(l, w[3]) != ones) fail(l, "core verdict disagrees with its counts");
      b.core.counts.emplace_back(to_int(l, w[1]), std::vector<long>(counts.begin(), counts.end()));
    } else if (w.size() == 2 && w[0] == "core:") {
      p.claimed_core = to_bool(l, w[1]);
      b.core.pass = p.claimed_core;
      core = true;
    } else {
      fail(l, "unexpected line in BLOWDOWN");
    }
  }
  if (!blowdown || !core) throw ParseError(lines.empty() ? 0 : lines.back().no, 1, "BLOWDOWN needs blowdown: and core: lines");
}

void parse_delta(const std::vector<Line>& lines, ParsedBundle& p) {
  auto& b = p.bundle;
  bool verdict = false;
  for (const auto& l : lines) {
    auto w = words(l.text);
    if (w.size() == 3 && w[0] == "meridian") {
      if (to_int(l, w[1]) != static_cast<int>(b.meridian_edges.size()) + 1) fail(l, "meridians out of sequence");
      b.meridian_edges.push_back(to_int(l, need(l, fields(l, w, 2), "edge")));
    } else if (w.size() == 3 && w[0] == "dual") {
      if (to_int(l, w[1]) != static_cast<int>(b.dual_paths.size()) + 1) fail(l, "dual curves out of sequence");
      b.dual_paths.push_back(to_list(l, need(l, fields(l, w, 2), "path")));
    } else if (w.size() == 2 && w[0] == "delta:" && w[1] == "none") {
      b.delta.reset();
      verdict = true;
    } else if (w.size() == 3 && w[0] == "delta:") {
      auto m = to_matrix(l, w[1]);
      m.pass = to_bool(l, w[2]);
      b.delta = m;
      verdict = true;
    } else {
      fail(l, "unexpected line in DELTA");
    }
  }
  if (!verdict) throw ParseError(lines.empty() ? 0 : lines.back().no, 1, "DELTA has no delta: line");
}

void parse_attestation(const std::vector<Line>& lines, ParsedBundle& p) {
  auto& b = p.bundle;
  b.descending = embedded(lines, "descending> ");
  b.final_diagram = embedded(lines, "final> ");
  bool flags = false, verdict = false;
  for (const auto& l : lines) {
    if (starts(l.text, "descending> ") || starts(l.text, "final> ")) continue;
    auto w = words(l.text);
    if (w.size() == 2 && w[0] == "attestation:") {
      p.claimed_attestation = to_bool(l, w[1]);
      verdict = true;
    } else if (w.size() == 5 && w[0] == "attestation:") {
      auto f = fields(l, w, 1);
      b.attestation.split_trivial = to_bool(l, need(l, f, "split_trivial"));
      b.attestation.twist_zero = to_bool(l, need(l, f, "twist_zero"));
      b.attestation.arcs_free = to_bool(l, need(l, f, "arcs_free"));
      b.attestation.layout = to_bool(l, need(l, f, "layout"));
      flags = true;
    } else {
      fail(l, "unexpected line in ATTESTATION");
    }
  }
  if (!flags || !verdict) throw ParseError(lines.empty() ? 0 : lines.back().no, 1, "ATTESTATION needs flag and verdict lines");
}

}  // namespace

ParsedBundle parse_bundle(std::string_view text) {
  std::vector<Line> all;
  {
    std::istringstream in{std::string(text)};
    std::string s;
    int no = 0;
    while (std::getline(in, s)) {
      ++no;
      if (!s.empty() && s.back() == '\r') s.pop_back();
      if (!s.empty()) all.push_back({no, s});
    }
  }
  if (all.empty()) throw ParseError(1, 1, "empty bundle");

  ParsedBundle p;
  {
    auto w = words(all.front().text);
    if (w.size() != 3 || w[0] != "spinecert" || w[1] != "bundle") fail(all.front(), "expected 'spinecert bundle mode=...'");
    auto mode = need(all.front(), fields(all.front(), w, 2), "mode");
    if (mode == "part1")
      p.bundle.mode = TheoremMode::part1;
    else if (mode == "part2")
      p.bundle.mode = TheoremMode::part2;
    else
      fail(all.front(), "unknown mode '" + mode + "'");
  }

  std::array<std::vector<Line>, kSections.size()> body;
  int current = -1;
  bool closed = false;
  for (std::size_t i = 1; i < all.size(); ++i) {
    const auto& l = all[i];
    if (closed) fail(l, "text after the closing bundle line");
    if (l.text.size() > 2 && l.text.front() == '[' && l.text.back() == ']') {
      auto name = std::string_view(l.text).substr(1, l.text.size() - 2);
      if (current + 1 >= static_cast<int>(kSections.size()) || kSections[current + 1] != name)
        fail(l, "section [" + std::string(name) + "] out of order");
      ++current;
      continue;
    }
    if (starts(l.text, "bundle: ")) {
      if (current != static_cast<int>(kSections.size()) - 1) fail(l, "bundle verdict before the last section");
      p.claimed_pass = to_bool(l, l.text.substr(8));
      closed = true;
      continue;
    }
    if (current < 0) fail(l, "line outside any section");
    body[current].push_back(l);
  }
  if (!closed) throw ParseError(all.back().no, 1, "missing closing 'bundle:' line");

  parse_validation(body[0], p);
  parse_surfaces(body[1], p);
  parse_transcript(body[2], p);
  parse_surgery(body[3], p);
  parse_homology(body[4], p);
  parse_blowdown(body[5], p);
  parse_delta(body[6], p);
  parse_attestation(body[7], p);
  return p;
}

// ---------------------------------------------------------------- certify ---

CertifyReport certify_bundle(std::string_view text, const std::optional<Diagram>& input) {
  CertifyReport rep;
  auto check = [&](bool ok, const std::string& what) {
    ++rep.checks;
    if (!ok) rep.failures.push_back(what);
    return ok;
  };

  ParsedBundle p;
  try {
    p = parse_bundle(text);
  } catch (const ParseError& e) {
    check(false, std::string("malformed bundle: ") + e.what());
    return rep;
  }
  const auto& b = p.bundle;
  const Diagram& in = input ? *input : b.input;
  if (input) check(serialize(*input) == serialize(b.input), "embedded input differs from the given diagram");

  // VALIDATION
  auto v = validate(in);
  check(v.ok() == p.claimed_validation && v.ok(), "input validation: recomputed " + std::string(v.ok() ? "pass" : "fail"));
  check(v.vertices == b.validation.vertices && v.edges == b.validation.edges && v.faces == b.validation.faces &&
            v.pieces == b.validation.pieces && v.normal_form == b.validation.normal_form &&
            v.entries == b.validation.entries,
        "validation counts differ from the input diagram");
  if (!v.ok() || !in.is_spine()) {
    check(false, "input is not a valid spine; nothing further can be checked");
    return rep;
  }
  const int g = in.genus();

  // TRANSCRIPT replay
  ReplayResult rp;
  try {
    rp = replay(in, b.transcript);
  } catch (const Error& e) {
    check(false, std::string("transcript does not replay: ") + e.what());
    return rep;
  }
  check(serialize(rp.descending) == serialize(b.descending), "replayed descending diagram differs from the recorded one");
  check(serialize(rp.final_diagram) == serialize(b.final_diagram), "replayed final diagram differs from the recorded one");
  {
    std::vector<int> changes;
    for (const auto& m : b.transcript.moves)
      if (m.kind == MoveKind::band_crossing_change) changes.push_back(m.site);
    try {
      check(changes == descending_plan(rp.normalized, b.transcript.plan).flips,
            "crossing changes differ from the descending plan for the recorded order and basepoints");
    } catch (const Error& e) {
      check(false, std::string("plan: ") + e.what());
    }
  }
  check(rp.twist == b.twist_after, "twist counters after replay are " + format_class(rp.twist));
  {
    auto before = rp.twist;
    for (const auto& m : b.transcript.moves)
      if (m.kind == MoveKind::full_twist && m.site >= 1 && m.site <= g) before[m.site - 1] -= m.n;
    check(before == b.twist_before, "twist counters before the full twists are " + format_class(before));
  }

  // SURFACES
  try {
    auto sys = spine_seifert_system(rp.normalized);
    check(sys.completely_disjoint == b.disjoint && sys.shared == b.shared, "disjointness record differs");
    bool same = static_cast<int>(b.surfaces.size()) == g;
    for (int i = 1; same && i <= g; ++i) {
      const auto& piece = sys.surface_of(i);
      const auto& s = b.surfaces[i - 1];
      same = s.loop == i && s.disks == static_cast<int>(piece.disks.size()) &&
             s.bands == static_cast<int>(piece.bands.size()) && s.chi == piece.chi && s.genus == piece.genus &&
             s.boundary == piece.boundary;
    }
    check(same, "surface lines differ from the recomputed Seifert system");
    if (b.mode == TheoremMode::part2) check(sys.completely_disjoint, "part2 bundle over a shared surface system");
  } catch (const Error& e) {
    check(false, std::string("Seifert system: ") + e.what());
  }

  // SURGERY: re-emit along the transcript
  try {
    SurgeryState state(rp.normalized);
    for (const auto& m : b.transcript.moves) {
      if (m.kind == MoveKind::band_crossing_change) {
        auto c = emit_band_crossing_change(state, m.site);
        check(c.id == m.component, "move at crossing " + std::to_string(m.site) + " names the wrong component");
      } else if (m.kind == MoveKind::full_twist) {
        auto c = emit_full_twist(state, m.site, m.n);
        check(c.id == m.component, "twist on band " + std::to_string(m.site) + " names the wrong component");
      }
    }
    check(state.link == b.link, "surgery lines differ from the components the transcript emits");
  } catch (const Error& e) {
    check(false, std::string("surgery re-emission: ") + e.what());
  }

  // HOMOLOGY, independently of the recorded classes
  LinkingData data;
  data.loops = g;
  bool classes_ok = b.classes.size() == b.link.components.size();
  for (std::size_t k = 0; k < b.link.components.size(); ++k) {
    HomologyClass cls;
    try {
      cls = clasp_class(b.link.components[k].strands, g);
    } catch (const Error& e) {
      check(false, std::string("surgery component strands: ") + e.what());
      cls.assign(static_cast<std::size_t>(g), 0);
    }
    data.rows.emplace_back(cls.begin(), cls.end());
    check(is_zero(cls), "surgery component " + std::to_string(k + 1) + " has class " + format_class(cls));
    if (classes_ok) classes_ok = b.classes[k] == cls && b.link.components[k].linking == cls;
  }
  check(classes_ok, "recorded homology classes differ from the recomputed ones");
  check(homology_class(data) == b.total && is_null_homologous(data) == b.null_homologous &&
            is_completely_null_homologous(data) == b.completely_null_homologous,
        "homology summary line differs from the recomputed classes");
  check(is_null_homologous(data), "surgery link is not null-homologous");
  if (b.mode == TheoremMode::part2) check(is_completely_null_homologous(data), "surgery link is not completely null-homologous");

  // BLOWDOWN and core link
  auto bd = verify_reflexive(b.link);
  bool steps_same = bd.steps.size() == b.blowdown.steps.size();
  for (std::size_t k = 0; steps_same && k < bd.steps.size(); ++k) {
    const auto &x = bd.steps[k], &y = b.blowdown.steps[k];
    steps_same = x.index == y.index && x.component == y.component && x.ok == y.ok && x.reason == y.reason;
  }
  check(steps_same && bd.valid == p.claimed_blowdown, "blow-down certificate differs from the recomputed one");
  check(bd.valid, "blow-down certificate is invalid: " + bd.reason);
  try {
    auto core = core_link_check(b.link, longitude_records(b.link));
    check(core.counts == b.core.counts && core.pass == p.claimed_core, "core-link counts differ from the recomputed ones");
    check(core.pass, "a core meridian meets a surface boundary more than once");
  } catch (const Error& e) {
    check(false, std::string("core link: ") + e.what());
  }

  // DELTA
  if (b.delta) {
    std::vector<int> meridians;
    for (const auto& l : rp.normalized.loops) meridians.push_back(l.edges.front());
    check(meridians == b.meridian_edges, "meridian records differ from the normalized loops");
    std::vector<std::vector<int>> duals;
    bool flat = attest(rp.descending, rp.final_diagram, rp.twist, b.transcript.plan).pass();
    for (const auto& l : rp.descending.loops) duals.push_back(flat ? l.edges : std::vector<int>{});
    check(duals == b.dual_paths, "dual curve records differ from the replayed descending loops");
    try {
      auto m = intersection_delta(b.meridian_edges, b.dual_paths);
      check(m.counts == b.delta->counts && m.pass == b.delta->pass, "intersection matrix differs from the curve records");
      check(m.pass, "intersection matrix " + m.render() + " is not the identity");
    } catch (const Error& e) {
      check(false, std::string("intersection records: ") + e.what());
    }
  }

  // ATTESTATION
  auto att = attest(rp.descending, rp.final_diagram, rp.twist, b.transcript.plan);
  check(att.split_trivial == b.attestation.split_trivial && att.twist_zero == b.attestation.twist_zero &&
            att.arcs_free == b.attestation.arcs_free && att.layout == b.attestation.layout &&
            att.pass() == p.claimed_attestation,
        "attestation flags differ from the recomputed ones");
  check(att.pass(), "final diagram is not in standard planar form");

  check(p.claimed_pass == rep.failures.empty(), "closing verdict disagrees with the sections");
  return rep;
}

// ---------------------------------------------------------------- reports ---

std::string write_surface_report(const SeifertSystemData& sys) {
  std::ostringstream os;
  for (int i = 1; i <= static_cast<int>(sys.piece_of_loop.size()); ++i) {
    const auto& p = sys.surface_of(i);
    os << "surface " << i << ": disks=" << p.disks.size() << " bands=" << p.bands.size() << " chi=" << p.chi
       << " genus=" << p.genus << " boundary=" << p.boundary << '\n';
  }
  for (const auto& s : sys.shared) os << "shared: " << s << '\n';
  return os.str();
}

namespace {

std::vector<Line> report_lines(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string s;
  int no = 0;
  while (std::getline(in, s)) {
    ++no;
    if (!s.empty() && s.back() == '\r') s.pop_back();
    if (!s.empty()) out.push_back({no, s});
  }
  return out;
}

}  // namespace

SurfaceReport parse_surface_report(std::string_view text) {
  ParsedBundle p;
  parse_surfaces(report_lines(text), p, false);
  SurfaceReport r;
  r.surfaces = std::move(p.bundle.surfaces);
  r.shared = std::move(p.bundle.shared);
  for (std::size_t i = 0; i < r.surfaces.size(); ++i)
    if (r.surfaces[i].loop != static_cast<int>(i) + 1) throw ParseError(0, 1, "surface lines out of sequence");
  return r;
}

std::string write_linking_report(const LinkingTable& t) {
  std::ostringstream os;
  for (int a = 1; a <= t.size(); ++a)
    for (int b = a + 1; b <= t.size(); ++b) os << "linking " << a << ' ' << b << ": " << t.at(a, b) << '\n';
  return os.str();
}

LinkingTable parse_linking_report(std::string_view text, int components) {
  LinkingTable t;
  t.lk.assign(static_cast<std::size_t>(components), std::vector<int>(static_cast<std::size_t>(components), 0));
  std::vector<std::vector<bool>> seen(t.lk.size(), std::vector<bool>(t.lk.size(), false));
  for (const auto& l : report_lines(text)) {
    auto w = words(l.text);
    if (w.size() != 4 || w[0] != "linking" || w[2].back() != ':') fail(l, "expected 'linking <a> <b>: <n>'");
    int a = to_int(l, w[1]), b = to_int(l, w[2].substr(0, w[2].size() - 1));
    if (a < 1 || b <= a || b > components) fail(l, "component pair out of range");
    if (seen[a - 1][b - 1]) fail(l, "duplicate pair");
    seen[a - 1][b - 1] = true;
    t.lk[a - 1][b - 1] = t.lk[b - 1][a - 1] = to_int(l, w[3]);
  }
  for (int a = 0; a < components; ++a)
    for (int b = a + 1; b < components; ++b)
      if (!seen[a][b]) throw ParseError(0, 1, "missing pair " + std::to_string(a + 1) + " " + std::to_string(b + 1));
  return t;
}

std::string write_validation_line(const std::string& path, const ValidationReport& r) {
  if (r.ok())
    return path + ": valid (vertices=" + std::to_string(r.vertices) + " edges=" + std::to_string(r.edges) +
           " faces=" + std::to_string(r.faces) + ")\n";
  std::string s;
  for (const auto& e : r.entries) s += path + ": " + e + "\n";
  return s;
}

std::vector<ValidationRecord> parse_validation_report(std::string_view text) {
  std::vector<ValidationRecord> out;
  for (const auto& l : report_lines(text)) {
    auto sep = l.text.find(": ");
    if (sep == std::string::npos || sep == 0) fail(l, "expected '<path>: ...'");
    std::string path = l.text.substr(0, sep), rest = l.text.substr(sep + 2);
    if (out.empty() || out.back().path != path) out.push_back({path, false, {}, {}});
    auto& rec = out.back();
    if (starts(rest, "valid (") && rest.back() == ')') {
      if (!rec.entries.empty() || rec.valid) fail(l, "a valid file has exactly one line");
      auto f = fields(l, words(rest.substr(7, rest.size() - 8)), 0);
      rec.valid = true;
      rec.counts = {to_int(l, need(l, f, "vertices")), to_int(l, need(l, f, "edges")), to_int(l, need(l, f, "faces"))};
    } else {
      if (rec.valid) fail(l, "a valid file has exactly one line");
      rec.entries.push_back(rest);
    }
  }
  return out;
}

ParsedDualize parse_dualize(std::string_view text) {
  auto lines = report_lines(text);
  std::vector<Line> surgery, delta;
  int section = -1;
  ParsedDualize r;
  bool closed = false;
  for (const auto& l : lines) {
    if (closed) fail(l, "text after the closing dualize line");
    if (l.text == "[SURGERY]" && section == -1) {
      section = 0;
    } else if (l.text == "[DELTA]" && section == 0) {
      section = 1;
    } else if (starts(l.text, "dualize: ") && section == 1) {
      r.claimed_pass = to_bool(l, l.text.substr(9));
      closed = true;
    } else if (section == 0) {
      surgery.push_back(l);
    } else if (section == 1) {
      delta.push_back(l);
    } else {
      fail(l, "unexpected line in dualize output");
    }
  }
  if (!closed) throw ParseError(lines.empty() ? 1 : lines.back().no, 1, "missing closing 'dualize:' line");
  ParsedBundle p;
  parse_surgery(surgery, p);
  parse_delta(delta, p);
  r.link = std::move(p.bundle.link);
  r.meridian_edges = std::move(p.bundle.meridian_edges);
  r.dual_paths = std::move(p.bundle.dual_paths);
  if (!p.bundle.delta) throw ParseError(0, 1, "dualize output needs a delta matrix");
  r.delta = *p.bundle.delta;
  return r;
}

std::string write_certify_report(const CertifyReport& rep) {
  std::ostringstream os;
  for (const auto& f : rep.failures) os << "certify: FAIL " << f << '\n';
  os << "certify: " << rep.checks << " checks, " << (rep.pass() ? "pass" : "fail") << '\n';
  return os.str();
}

CertifyReport parse_certify_report(std::string_view text) {
  CertifyReport rep;
  bool closed = false;
  for (const auto& l : report_lines(text)) {
    if (closed) fail(l, "text after the certify summary");
    if (starts(l.text, "certify: FAIL ")) {
      rep.failures.push_back(l.text.substr(14));
      continue;
    }
    auto w = words(l.text);
    if (w.size() != 4 || w[0] != "certify:" || w[2] != "checks,") fail(l, "expected 'certify: <n> checks, pass|fail'");
    rep.checks = to_int(l, w[1]);
    if (to_bool(l, w[3]) != rep.failures.empty()) fail(l, "verdict disagrees with the FAIL lines");
    closed = true;
  }
  if (!closed) throw ParseError(0, 1, "missing certify summary");
  return rep;
}

}  // namespace spinecert
