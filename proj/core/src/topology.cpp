#include "spinecert/topology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "spinecert/error.hpp"

namespace spinecert {
namespace {

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<Node> collect_nodes(const Diagram& d) {
  std::vector<Node> nodes;
  for (const auto& c : d.crossings) {
    Node n{NodeKind::crossing, c.id, {}};
    auto s = c.slots();
    bool pos = c.sign > 0;
    n.rotation = {{s[0], true}, {s[1], !pos}, {s[2], false}, {s[3], pos}};
    nodes.push_back(std::move(n));
  }
  if (d.is_spine()) {
    Node w{NodeKind::wedge, 0, {}};
    for (int a : d.wedge)
      if (a >= 1 && a <= static_cast<int>(d.arcs.size()) && !d.arcs[a - 1].edges.empty())
        w.rotation.push_back({d.arcs[a - 1].edges.front(), false});
    nodes.push_back(std::move(w));
    for (std::size_t i = 0; i < d.loops.size(); ++i) {
      const auto& loop = d.loops[i].edges;
      const auto& arc = i < d.arcs.size() ? d.arcs[i].edges : std::vector<int>{};
      if (loop.empty() || arc.empty()) continue;
      Node v{NodeKind::attachment, static_cast<int>(i) + 1, {}};
      Node::End in{loop.back(), true}, out{loop.front(), false}, a{arc.back(), true};
      if (d.loops[i].side == Side::left)
        v.rotation = {in, out, a};
      else
        v.rotation = {in, a, out};
      nodes.push_back(std::move(v));
    }
  }
  return nodes;
}

using Junction = std::pair<int, int>;

}  // namespace

Embedding embed(const Diagram& d) {
  Embedding emb;
  emb.nodes = collect_nodes(d);
  emb.ends.assign(static_cast<std::size_t>(d.max_edge_id()) + 1, {});
  std::set<int> all;
  for (const auto& s : d.loops) all.insert(s.edges.begin(), s.edges.end());
  for (const auto& s : d.arcs) all.insert(s.edges.begin(), s.edges.end());
  for (std::size_t n = 0; n < emb.nodes.size(); ++n) {
    const auto& rot = emb.nodes[n].rotation;
    for (std::size_t k = 0; k < rot.size(); ++k) {
      auto& e = emb.ends[rot[k].edge];
      if (rot[k].head) {
        if (e.head_node >= 0) throw DiagramError("edge " + std::to_string(rot[k].edge) + " has two heads");
        e.head_node = static_cast<int>(n);
        e.head_slot = static_cast<int>(k);
      } else {
        if (e.tail_node >= 0) throw DiagramError("edge " + std::to_string(rot[k].edge) + " has two tails");
        e.tail_node = static_cast<int>(n);
        e.tail_slot = static_cast<int>(k);
      }
      all.insert(rot[k].edge);
    }
  }
  emb.edges.assign(all.begin(), all.end());
  for (int e : emb.edges) {
    const auto& en = emb.ends[e];
    if (en.head_node < 0 && en.tail_node < 0)
      emb.free_circles.push_back(e);
    else if (en.head_node < 0 || en.tail_node < 0)
      throw DiagramError("edge " + std::to_string(e) + " has a single end");
  }
  return emb;
}

FaceStructure trace_faces(const Diagram& d, const Embedding& emb) {
  (void)d;
  FaceStructure fs;
  const int n_nodes = static_cast<int>(emb.nodes.size());
  const int n_free = static_cast<int>(emb.free_circles.size());
  DisjointSet ds(static_cast<std::size_t>(n_nodes + n_free));
  for (int e : emb.edges) {
    const auto& en = emb.ends[e];
    if (en.head_node >= 0) ds.unite(en.head_node, en.tail_node);
  }
  std::map<int, int> piece_index;
  fs.piece_of_node.assign(static_cast<std::size_t>(n_nodes + n_free), 0);
  for (int n = 0; n < n_nodes + n_free; ++n) {
    int r = ds.find(n);
    auto it = piece_index.find(r);
    if (it == piece_index.end()) it = piece_index.emplace(r, static_cast<int>(piece_index.size())).first;
    fs.piece_of_node[n] = it->second;
  }
  fs.pieces = static_cast<int>(piece_index.size());
  fs.vertices_per_piece.assign(fs.pieces, 0);
  fs.edges_per_piece.assign(fs.pieces, 0);
  fs.faces_per_piece.assign(fs.pieces, 0);
  for (int n = 0; n < n_nodes + n_free; ++n) fs.vertices_per_piece[fs.piece_of_node[n]]++;

  std::map<std::pair<int, bool>, bool> used;
  for (int e : emb.edges) {
    const auto& en = emb.ends[e];
    if (en.head_node < 0) continue;
    fs.edges_per_piece[fs.piece_of_node[en.head_node]]++;
  }
  for (int e : emb.edges) {
    const auto& en0 = emb.ends[e];
    if (en0.head_node < 0) continue;
    for (bool fwd : {true, false}) {
      if (used[{e, fwd}]) continue;
      Face f;
      f.piece = fs.piece_of_node[en0.head_node];
      Dart cur{e, fwd};
      while (!used[{cur.edge, cur.forward}]) {
        used[{cur.edge, cur.forward}] = true;
        f.darts.push_back(cur);
        const auto& en = emb.ends[cur.edge];
        int node = cur.forward ? en.head_node : en.tail_node;
        int slot = cur.forward ? en.head_slot : en.tail_slot;
        const auto& rot = emb.nodes[node].rotation;
        int deg = static_cast<int>(rot.size());
        const auto& next = rot[(slot - 1 + deg) % deg];
        cur = Dart{next.edge, !next.head};
      }
      fs.faces_per_piece[f.piece]++;
      fs.faces.push_back(std::move(f));
    }
  }
  for (int k = 0; k < n_free; ++k) {
    int piece = fs.piece_of_node[n_nodes + k];
    int e = emb.free_circles[k];
    fs.edges_per_piece[piece]++;
    fs.faces_per_piece[piece] += 2;
    fs.faces.push_back(Face{{Dart{e, true}}, piece});
    fs.faces.push_back(Face{{Dart{e, false}}, piece});
  }
  return fs;
}

FaceStructure trace_faces(const Diagram& d) { return trace_faces(d, embed(d)); }

ValidationReport validate(const Diagram& d) {
  ValidationReport r;
  auto add = [&](std::string s) { r.entries.push_back(std::move(s)); };

  // shape of the component lists
  if (d.is_spine()) {
    if (d.arcs.size() != d.loops.size())
      add("expected " + std::to_string(d.loops.size()) + " arcs, found " + std::to_string(d.arcs.size()));
    for (std::size_t i = 0; i < d.loops.size(); ++i)
      if (d.loops[i].edges.empty()) add("loop " + std::to_string(i + 1) + " is missing");
    for (std::size_t i = 0; i < d.arcs.size(); ++i)
      if (d.arcs[i].edges.empty()) add("arc " + std::to_string(i + 1) + " is missing");
    std::vector<int> seen(d.arcs.size() + 1, 0);
    for (int a : d.wedge) {
      if (a < 1 || a > static_cast<int>(d.arcs.size()))
        add("wedge names unknown arc " + std::to_string(a));
      else
        seen[a]++;
    }
    for (std::size_t a = 1; a < seen.size(); ++a)
      if (seen[a] != 1)
        add("arc " + std::to_string(a) + " meets the wedge " + std::to_string(seen[a]) + " times (expected 1)");
  } else {
    if (!d.arcs.empty() || !d.wedge.empty()) add("link diagrams have no arcs or wedge");
    for (std::size_t i = 0; i < d.loops.size(); ++i)
      if (d.loops[i].edges.empty()) add("component " + std::to_string(i + 1) + " is missing");
  }

  std::map<int, int> listed;
  for (const auto& s : d.loops)
    for (int e : s.edges) listed[e]++;
  for (const auto& s : d.arcs)
    for (int e : s.edges) listed[e]++;
  for (auto [e, k] : listed)
    if (k > 1) add("edge " + std::to_string(e) + " is listed in components " + std::to_string(k) + " times");

  std::set<int> ids;
  for (const auto& c : d.crossings) {
    if (c.id <= 0) add("crossing id " + std::to_string(c.id) + " is not positive");
    if (!ids.insert(c.id).second) add("duplicate crossing id " + std::to_string(c.id));
    if (c.sign != 1 && c.sign != -1) add("crossing " + std::to_string(c.id) + " has sign " + std::to_string(c.sign));
  }

  // every edge must occur exactly twice among crossing and vertex incidences
  auto nodes = collect_nodes(d);
  std::map<int, int> uses, heads, tails;
  for (const auto& n : nodes)
    for (const auto& end : n.rotation) {
      uses[end.edge]++;
      (end.head ? heads : tails)[end.edge]++;
    }
  for (auto [e, k] : uses) {
    if (!listed.count(e)) add("edge " + std::to_string(e) + " is used at a crossing but belongs to no component");
    if (k != 2) add("edge " + std::to_string(e) + " is used " + std::to_string(k) + " times (expected 2)");
    else if (heads[e] != 1 || tails[e] != 1) add("edge " + std::to_string(e) + " does not have one head and one tail");
  }
  for (auto [e, k] : listed) {
    if (uses.count(e)) continue;
    bool closed = false;
    if (!d.is_spine())
      for (const auto& s : d.loops)
        if (s.edges.size() == 1 && s.edges.front() == e) closed = true;
    if (!closed) add("edge " + std::to_string(e) + " is never used (expected 2)");
  }

  // each consecutive pair in a component must be realised by exactly one pass
  std::multiset<Junction> wanted, realised;
  for (const auto& s : d.loops) {
    const auto& e = s.edges;
    if (e.empty()) continue;
    for (std::size_t k = 0; k + 1 < e.size(); ++k) wanted.insert({e[k], e[k + 1]});
    if (!d.is_spine() && !(e.size() == 1 && !uses.count(e.front()))) wanted.insert({e.back(), e.front()});
  }
  for (const auto& s : d.arcs)
    for (std::size_t k = 0; k + 1 < s.edges.size(); ++k) wanted.insert({s.edges[k], s.edges[k + 1]});
  for (const auto& c : d.crossings) {
    realised.insert({c.under_in, c.under_out});
    realised.insert({c.over_in, c.over_out});
  }
  for (const auto& j : realised)
    if (realised.count(j) > wanted.count(j) && wanted.count(j) == 0)
      add("crossing pass " + std::to_string(j.first) + " -> " + std::to_string(j.second) +
          " does not follow any component");
  for (const auto& j : wanted)
    if (wanted.count(j) != realised.count(j)) {
      add("junction " + std::to_string(j.first) + " -> " + std::to_string(j.second) + " is realised " +
          std::to_string(realised.count(j)) + " times (expected " + std::to_string(wanted.count(j)) + ")");
    }
  // multiset iteration reports duplicates once per copy; collapse them
  std::sort(r.entries.begin(), r.entries.end());
  r.entries.erase(std::unique(r.entries.begin(), r.entries.end()), r.entries.end());

  r.normal_form = is_normal_form(d);
  if (!r.entries.empty()) return r;

  Embedding emb;
  try {
    emb = embed(d);
  } catch (const DiagramError& e) {
    add(e.what());
    return r;
  }
  auto fs = trace_faces(d, emb);
  r.planar_checked = true;
  r.pieces = fs.pieces;
  for (int p = 0; p < fs.pieces; ++p) {
    r.vertices += fs.vertices_per_piece[p];
    r.edges += fs.edges_per_piece[p];
    r.faces += fs.faces_per_piece[p];
    int chi = fs.vertices_per_piece[p] - fs.edges_per_piece[p] + fs.faces_per_piece[p];
    if (chi != 2)
      add("nonplanar: piece " + std::to_string(p + 1) + " has V - E + F = " + std::to_string(chi) + " (expected 2)");
  }
  if (d.is_spine() && fs.pieces != 1) add("spine diagram is disconnected (" + std::to_string(fs.pieces) + " pieces)");
  return r;
}

}  // namespace spinecert
