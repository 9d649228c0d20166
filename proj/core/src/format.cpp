#include "spinecert/format.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "spinecert/error.hpp"
#include "spinecert/topology.hpp"

namespace spinecert {
namespace {

struct Token {
  std::string_view text;
  int column = 1;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    out.push_back(Token{line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

int to_int(const Token& t, int line, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size())
    throw ParseError(line, t.column, "expected " + std::string(what) + ", got '" + std::string(t.text) + "'");
  return value;
}

int to_edge(const Token& t, int line) {
  int e = to_int(t, line, "edge id");
  if (e <= 0) throw ParseError(line, t.column, "edge ids must be positive");
  return e;
}

// "key=value" with a fixed key
std::string_view value_of(const Token& t, int line, std::string_view key) {
  if (t.text.size() <= key.size() + 1 || t.text.substr(0, key.size()) != key || t.text[key.size()] != '=')
    throw ParseError(line, t.column, "expected '" + std::string(key) + "=...'");
  return t.text.substr(key.size() + 1);
}

struct RawCrossing {
  int id = 0;
  std::array<int, 4> edges{};
  int over_slot = 0;
  int line = 0;
};

using Junction = std::pair<int, int>;

std::multiset<Junction> junctions(const Diagram& d) {
  std::multiset<Junction> out;
  for (const auto& loop : d.loops) {
    const auto& e = loop.edges;
    if (e.empty()) continue;
    for (std::size_t k = 0; k + 1 < e.size(); ++k) out.insert({e[k], e[k + 1]});
    if (!d.is_spine()) out.insert({e.back(), e.front()});
  }
  for (const auto& arc : d.arcs) {
    const auto& e = arc.edges;
    for (std::size_t k = 0; k + 1 < e.size(); ++k) out.insert({e[k], e[k + 1]});
  }
  return out;
}

// Never fails: a pass that matches no component is kept as written and left
// for the validator to report.
Crossing resolve(const RawCrossing& raw, const std::multiset<Junction>& js) {
  const auto& e = raw.edges;
  int o_in = raw.over_slot;
  int o_out = (o_in + 2) % 4;
  int u1 = (o_in + 1) % 4;
  int u2 = (o_in + 3) % 4;
  bool forward = js.count({e[u1], e[u2]}) > 0;
  bool backward = js.count({e[u2], e[u1]}) > 0;
  int u_in = (backward && !forward) ? u2 : std::min(u1, u2);
  int u_out = (u_in + 2) % 4;
  // counterclockwise from the incoming under edge, the incoming over edge is
  // one step back for a positive crossing
  int sign = (o_in == (u_in + 3) % 4) ? 1 : -1;
  return make_crossing(raw.id, e[u_in], e[u_out], e[o_in], e[o_out], sign);
}

void join(std::ostringstream& os, const std::vector<int>& v) {
  for (int x : v) os << ' ' << x;
}

}  // namespace

Diagram parse_diagram(std::string_view text) {
  Diagram d;
  bool have_header = false;
  int declared = 0;
  std::map<int, Strand> loops;
  std::map<int, Strand> arcs;
  std::vector<int> wedge_edges;
  bool have_wedge = false;
  int wedge_line = 0;
  std::vector<RawCrossing> raws;
  std::set<int> crossing_ids;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    std::string_view head = tok[0].text;

    if (!have_header) {
      if (head != "spine" && head != "link")
        throw ParseError(line_no, tok[0].column, "expected header 'spine g=<int>' or 'link n=<int>'");
      if (tok.size() != 2) throw ParseError(line_no, tok[0].column, "header takes exactly one argument");
      bool spine = head == "spine";
      std::string_view v = value_of(tok[1], line_no, spine ? "g" : "n");
      declared = to_int(Token{v, tok[1].column + 2}, line_no, "count");
      if (declared < (spine ? 1 : 0)) throw ParseError(line_no, tok[1].column + 2, "count out of range");
      d.kind = spine ? DiagramKind::spine : DiagramKind::link;
      have_header = true;
      continue;
    }

    if (head == "loop" || head == "arc") {
      bool is_loop = head == "loop";
      if (!is_loop && !d.is_spine()) throw ParseError(line_no, tok[0].column, "arcs are only allowed in spine files");
      if (tok.size() < 2 || tok[1].text.empty() || tok[1].text.back() != ':')
        throw ParseError(line_no, tok.size() < 2 ? tok[0].column : tok[1].column, "expected '<index>:'");
      Token idx{tok[1].text.substr(0, tok[1].text.size() - 1), tok[1].column};
      int index = to_int(idx, line_no, "index");
      if (index < 1 || index > declared)
        throw ParseError(line_no, idx.column, "index " + std::to_string(index) + " out of range 1.." + std::to_string(declared));
      auto& table = is_loop ? loops : arcs;
      if (table.count(index)) throw ParseError(line_no, idx.column, "duplicate " + std::string(head) + " " + std::to_string(index));
      Strand s;
      for (std::size_t k = 2; k < tok.size(); ++k) {
        if (is_loop && tok[k].text.substr(0, std::min<std::size_t>(5, tok[k].text.size())) == "side=") {
          if (k + 1 != tok.size()) throw ParseError(line_no, tok[k].column, "side= must come last");
          auto v = value_of(tok[k], line_no, "side");
          if (v == "left")
            s.side = Side::left;
          else if (v == "right")
            s.side = Side::right;
          else
            throw ParseError(line_no, tok[k].column + 5, "side must be left or right");
          continue;
        }
        s.edges.push_back(to_edge(tok[k], line_no));
      }
      if (s.edges.empty()) throw ParseError(line_no, tok[1].column, std::string(head) + " has no edges");
      table[index] = std::move(s);
    } else if (head == "wedge:") {
      if (!d.is_spine()) throw ParseError(line_no, tok[0].column, "wedge is only allowed in spine files");
      if (have_wedge) throw ParseError(line_no, tok[0].column, "duplicate wedge line");
      have_wedge = true;
      wedge_line = line_no;
      for (std::size_t k = 1; k < tok.size(); ++k) wedge_edges.push_back(to_edge(tok[k], line_no));
    } else if (head == "X") {
      if (tok.size() != 7) throw ParseError(line_no, tok[0].column, "crossing line needs: X <id> <a> <b> <c> <d> over=<slot>");
      RawCrossing raw;
      raw.line = line_no;
      raw.id = to_int(tok[1], line_no, "crossing id");
      if (raw.id <= 0) throw ParseError(line_no, tok[1].column, "crossing ids must be positive");
      if (!crossing_ids.insert(raw.id).second)
        throw ParseError(line_no, tok[1].column, "duplicate crossing " + std::to_string(raw.id));
      for (int k = 0; k < 4; ++k) raw.edges[k] = to_edge(tok[2 + k], line_no);
      auto v = value_of(tok[6], line_no, "over");
      if (v.size() != 1 || v[0] < 'a' || v[0] > 'd') throw ParseError(line_no, tok[6].column + 5, "over must be one of a, b, c, d");
      raw.over_slot = v[0] - 'a';
      raws.push_back(raw);
    } else {
      throw ParseError(line_no, tok[0].column, "unknown directive '" + std::string(head) + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, 1, "missing header");

  d.loops.resize(static_cast<std::size_t>(declared));
  for (auto& [i, s] : loops) d.loops[i - 1] = std::move(s);
  if (d.is_spine()) {
    d.arcs.resize(static_cast<std::size_t>(declared));
    for (auto& [i, s] : arcs) d.arcs[i - 1] = std::move(s);
    for (int e : wedge_edges) {
      int found = 0;
      for (std::size_t i = 0; i < d.arcs.size(); ++i)
        if (!d.arcs[i].edges.empty() && d.arcs[i].edges.front() == e) found = static_cast<int>(i) + 1;
      if (found == 0)
        throw DiagramError("wedge (line " + std::to_string(wedge_line) + "): edge " + std::to_string(e) +
                           " is not the first edge of an arc");
      d.wedge.push_back(found);
    }
  }
  auto js = junctions(d);
  for (const auto& raw : raws) d.crossings.push_back(resolve(raw, js));
  d.sort_crossings();
  return d;
}

namespace {

Diagram parse_checked(std::string_view text, DiagramKind want) {
  Diagram d = parse_diagram(text);
  if (d.kind != want)
    throw DiagramError(want == DiagramKind::spine ? "expected a spine file, got a link file"
                                                  : "expected a link file, got a spine file");
  auto report = validate(d);
  if (!report.ok()) {
    std::string msg = "invalid diagram:";
    for (const auto& entry : report.entries) msg += "\n  " + entry;
    throw DiagramError(msg);
  }
  return d;
}

}  // namespace

Diagram parse_spine(std::string_view text) { return parse_checked(text, DiagramKind::spine); }
Diagram parse_link(std::string_view text) { return parse_checked(text, DiagramKind::link); }

std::string serialize(const Diagram& d) {
  std::ostringstream os;
  if (d.is_spine())
    os << "spine g=" << d.genus() << '\n';
  else
    os << "link n=" << d.component_count() << '\n';
  for (std::size_t i = 0; i < d.loops.size(); ++i) {
    os << "loop " << i + 1 << ':';
    join(os, d.loops[i].edges);
    if (d.is_spine() && d.loops[i].side == Side::right) os << " side=right";
    os << '\n';
  }
  if (d.is_spine()) {
    for (std::size_t i = 0; i < d.arcs.size(); ++i) {
      os << "arc " << i + 1 << ':';
      join(os, d.arcs[i].edges);
      os << '\n';
    }
    os << "wedge:";
    for (int a : d.wedge) {
      if (a >= 1 && a <= static_cast<int>(d.arcs.size()) && !d.arcs[a - 1].edges.empty())
        os << ' ' << d.arcs[a - 1].edges.front();
    }
    os << '\n';
  }
  std::vector<const Crossing*> sorted;
  for (const auto& c : d.crossings) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->id < b->id; });
  for (const auto* c : sorted) {
    auto s = c->slots();
    os << "X " << c->id << ' ' << s[0] << ' ' << s[1] << ' ' << s[2] << ' ' << s[3]
       << " over=" << (c->sign > 0 ? 'd' : 'b') << '\n';
  }
  return os.str();
}

}  // namespace spinecert
