#include "spinecert/reidemeister.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "spinecert/error.hpp"

namespace spinecert {
namespace {

struct StrandRef {
  std::vector<int>* edges = nullptr;
  bool cyclic = false;  // link components wrap around; spine loops and arcs do not
  std::size_t position = 0;
};

StrandRef locate(Diagram& d, int e) {
  for (auto& s : d.loops) {
    auto it = std::find(s.edges.begin(), s.edges.end(), e);
    if (it != s.edges.end()) return {&s.edges, !d.is_spine(), static_cast<std::size_t>(it - s.edges.begin())};
  }
  for (auto& s : d.arcs) {
    auto it = std::find(s.edges.begin(), s.edges.end(), e);
    if (it != s.edges.end()) return {&s.edges, false, static_cast<std::size_t>(it - s.edges.begin())};
  }
  throw InapplicableMove("edge " + std::to_string(e) + " is not in the diagram");
}

bool is_free_circle(const Diagram& d, int e) {
  if (d.is_spine()) return false;
  for (const auto& s : d.loops)
    if (s.edges.size() == 1 && s.edges.front() == e)
      return std::none_of(d.crossings.begin(), d.crossings.end(), [&](const Crossing& c) { return c.touches(e); });
  return false;
}

int cross(int ax, int ay, int bx, int by) { return ax * by - ay * bx; }

// sign of a crossing from the directions of its over and under strands
int geometric_sign(std::pair<int, int> over, std::pair<int, int> under) {
  return cross(over.first, over.second, under.first, under.second) > 0 ? 1 : -1;
}

const Face* face_with(const FaceStructure& fs, const Dart& dart) {
  for (const auto& f : fs.faces)
    if (std::find(f.darts.begin(), f.darts.end(), dart) != f.darts.end()) return &f;
  return nullptr;
}

bool is_crossing_node(const Embedding& emb, int node) {
  return node >= 0 && emb.nodes[node].kind == NodeKind::crossing;
}

// R3 admissibility of a triangular face; fills the crossing of each edge end
struct Triangle {
  std::array<int, 3> edges{};
  std::array<int, 3> tail_crossing{};
  std::array<int, 3> head_crossing{};
};

bool admissible_triangle(const Diagram& d, const Embedding& emb, const Face& f, Triangle& out) {
  if (f.darts.size() != 3) return false;
  std::set<int> crossings;
  int top = 0, bottom = 0;
  for (int i = 0; i < 3; ++i) {
    int e = f.darts[i].edge;
    const auto& en = emb.ends[e];
    if (!is_crossing_node(emb, en.head_node) || !is_crossing_node(emb, en.tail_node)) return false;
    if (en.head_node == en.tail_node) return false;
    out.edges[i] = e;
    out.tail_crossing[i] = emb.nodes[en.tail_node].id;
    out.head_crossing[i] = emb.nodes[en.head_node].id;
    crossings.insert(out.tail_crossing[i]);
    crossings.insert(out.head_crossing[i]);
    const Crossing* p = d.find_crossing(out.tail_crossing[i]);
    const Crossing* q = d.find_crossing(out.head_crossing[i]);
    bool over_p = p->over_out == e;
    bool over_q = q->over_in == e;
    if (over_p && over_q) ++top;
    if (!over_p && !over_q) ++bottom;
  }
  if (out.edges[0] == out.edges[1] || out.edges[1] == out.edges[2] || out.edges[0] == out.edges[2]) return false;
  return crossings.size() == 3 && top == 1 && bottom == 1;
}

bool monogon_at(const Embedding& emb, int node) {
  for (const auto& end : emb.nodes[node].rotation) {
    const auto& en = emb.ends[end.edge];
    if (en.head_node == node && en.tail_node == node) {
      int diff = (en.head_slot - en.tail_slot + 4) % 4;
      if (diff == 1 || diff == 3) return true;
    }
  }
  return false;
}

bool bigon(const Diagram& d, const Embedding& emb, const Face& f, int& x, int& y) {
  if (f.darts.size() != 2) return false;
  int m1 = f.darts[0].edge, m2 = f.darts[1].edge;
  if (m1 == m2) return false;
  const auto& a = emb.ends[m1];
  const auto& b = emb.ends[m2];
  if (!is_crossing_node(emb, a.head_node) || !is_crossing_node(emb, a.tail_node)) return false;
  if (!is_crossing_node(emb, b.head_node) || !is_crossing_node(emb, b.tail_node)) return false;
  if (a.head_node == a.tail_node) return false;
  std::set<int> na{a.head_node, a.tail_node}, nb{b.head_node, b.tail_node};
  if (na != nb) return false;
  const Crossing* cx = d.find_crossing(emb.nodes[a.tail_node].id);
  const Crossing* cy = d.find_crossing(emb.nodes[a.head_node].id);
  bool over_tail = cx->over_out == m1;
  bool over_head = cy->over_in == m1;
  if (over_tail != over_head) return false;
  x = std::min(cx->id, cy->id);
  y = std::max(cx->id, cy->id);
  return true;
}

Diagram r1_insert(const Diagram& d, const MoveSite& s) {
  Diagram out = d;
  auto ids = split_edge(out, s.edge, 3);
  int sign;
  if (s.left_side)
    sign = s.over_first ? -1 : 1;
  else
    sign = s.over_first ? 1 : -1;
  int id = out.max_crossing_id() + 1;
  if (s.over_first)
    out.crossings.push_back(make_crossing(id, ids[1], ids[2], ids[0], ids[1], sign));
  else
    out.crossings.push_back(make_crossing(id, ids[0], ids[1], ids[1], ids[2], sign));
  out.sort_crossings();
  return out;
}

Diagram r1_remove(const Diagram& d, const MoveSite& s) {
  const Crossing* c = d.find_crossing(s.crossing);
  if (!c) throw InapplicableMove("R1: no crossing " + std::to_string(s.crossing));
  auto emb = embed(d);
  int node = -1;
  for (std::size_t n = 0; n < emb.nodes.size(); ++n)
    if (emb.nodes[n].kind == NodeKind::crossing && emb.nodes[n].id == s.crossing) node = static_cast<int>(n);
  if (!monogon_at(emb, node)) throw InapplicableMove("R1: crossing " + std::to_string(s.crossing) + " bounds no monogon");
  Diagram out = d;
  remove_crossings(out, {s.crossing});
  return out;
}

Diagram r2_insert(const Diagram& d, const MoveSite& s) {
  int e = s.top.edge, f = s.bottom.edge;
  if (e == f) throw InapplicableMove("R2: both darts lie on edge " + std::to_string(e));
  auto emb = embed(d);
  auto fs = trace_faces(d, emb);
  const Face* fa = face_with(fs, s.top);
  const Face* fb = face_with(fs, s.bottom);
  if (!fa || !fb) throw InapplicableMove("R2: unknown dart");
  if (fa != fb && fa->piece == fb->piece) throw InapplicableMove("R2: darts do not share a face");

  int u_f = s.bottom.forward ? 1 : -1;
  int u_e = s.top.forward ? -1 : 1;
  Diagram out = d;
  auto es = split_edge(out, e, 3);
  auto fz = split_edge(out, f, 3);
  // crossing A sits upstream of B along the bottom strand when u_f = +1
  std::pair<int, int> e_pass_a, e_pass_b, f_pass_a, f_pass_b;
  if (u_e > 0) {
    e_pass_a = {es[0], es[1]};
    e_pass_b = {es[1], es[2]};
  } else {
    e_pass_b = {es[0], es[1]};
    e_pass_a = {es[1], es[2]};
  }
  if (u_f > 0) {
    f_pass_a = {fz[0], fz[1]};
    f_pass_b = {fz[1], fz[2]};
  } else {
    f_pass_b = {fz[0], fz[1]};
    f_pass_a = {fz[1], fz[2]};
  }
  std::pair<int, int> e_dir_a{0, -u_e}, e_dir_b{0, u_e}, f_dir{u_f, 0};
  int id = out.max_crossing_id() + 1;
  auto add = [&](int cid, std::pair<int, int> ep, std::pair<int, int> edir, std::pair<int, int> fp) {
    if (s.over_first)
      out.crossings.push_back(make_crossing(cid, fp.first, fp.second, ep.first, ep.second, geometric_sign(edir, f_dir)));
    else
      out.crossings.push_back(make_crossing(cid, ep.first, ep.second, fp.first, fp.second, geometric_sign(f_dir, edir)));
  };
  add(id, e_pass_a, e_dir_a, f_pass_a);
  add(id + 1, e_pass_b, e_dir_b, f_pass_b);
  out.sort_crossings();
  return out;
}

Diagram r2_remove(const Diagram& d, const MoveSite& s) {
  auto emb = embed(d);
  auto fs = trace_faces(d, emb);
  int lo = std::min(s.crossing, s.other_crossing), hi = std::max(s.crossing, s.other_crossing);
  for (const auto& f : fs.faces) {
    int x, y;
    if (bigon(d, emb, f, x, y) && x == lo && y == hi) {
      Diagram out = d;
      remove_crossings(out, {lo, hi});
      return out;
    }
  }
  throw InapplicableMove("R2: crossings " + std::to_string(lo) + " and " + std::to_string(hi) +
                         " do not bound a removable bigon");
}

Diagram r3(const Diagram& d, const MoveSite& s) {
  auto emb = embed(d);
  auto fs = trace_faces(d, emb);
  std::vector<int> want = s.triangle;
  std::sort(want.begin(), want.end());
  for (const auto& f : fs.faces) {
    Triangle t;
    if (!admissible_triangle(d, emb, f, t)) continue;
    std::vector<int> have(t.edges.begin(), t.edges.end());
    std::sort(have.begin(), have.end());
    if (have != want) continue;

    Diagram out = d;
    struct Update {
      int crossing;
      bool over;
      int in, out_edge;
    };
    std::vector<Update> updates;
    for (int i = 0; i < 3; ++i) {
      int m = t.edges[i];
      const Crossing* p = d.find_crossing(t.tail_crossing[i]);
      const Crossing* q = d.find_crossing(t.head_crossing[i]);
      bool over_p = p->over_out == m;
      bool over_q = q->over_in == m;
      int in = over_p ? p->over_in : p->under_in;
      int outgoing = over_q ? q->over_out : q->under_out;
      updates.push_back({p->id, over_p, m, outgoing});
      updates.push_back({q->id, over_q, in, m});
    }
    for (const auto& u : updates) {
      Crossing* c = out.find_crossing(u.crossing);
      if (u.over) {
        c->over_in = u.in;
        c->over_out = u.out_edge;
      } else {
        c->under_in = u.in;
        c->under_out = u.out_edge;
      }
    }
    return out;
  }
  throw InapplicableMove("R3: no admissible triangle with the given edges");
}

}  // namespace

std::vector<int> split_edge(Diagram& d, int e, int pieces) {
  bool closed = is_free_circle(d, e);
  auto ref = locate(d, e);
  int next = d.max_edge_id() + 1;
  std::vector<int> ids{e};
  int fresh = closed ? pieces - 2 : pieces - 1;
  for (int k = 0; k < fresh; ++k) ids.push_back(next++);
  if (closed) ids.push_back(e);
  int last = ids.back();
  if (!closed) {
    for (auto& c : d.crossings) {
      if (c.under_in == e) c.under_in = last;
      if (c.over_in == e) c.over_in = last;
    }
  }
  auto& edges = *ref.edges;
  std::vector<int> inserted(ids.begin() + 1, closed ? ids.end() - 1 : ids.end());
  edges.insert(edges.begin() + static_cast<std::ptrdiff_t>(ref.position) + 1, inserted.begin(), inserted.end());
  return ids;
}

void remove_crossings(Diagram& d, const std::vector<int>& crossing_ids) {
  int n = d.max_edge_id() + 1;
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  std::set<int> gone(crossing_ids.begin(), crossing_ids.end());
  for (const auto& c : d.crossings) {
    if (!gone.count(c.id)) continue;
    unite(c.under_in, c.under_out);
    unite(c.over_in, c.over_out);
  }
  std::erase_if(d.crossings, [&](const Crossing& c) { return gone.count(c.id) > 0; });
  for (auto& c : d.crossings) {
    c.under_in = find(c.under_in);
    c.under_out = find(c.under_out);
    c.over_in = find(c.over_in);
    c.over_out = find(c.over_out);
  }
  auto collapse = [&](std::vector<int>& edges, bool cyclic) {
    std::vector<int> out;
    for (int e : edges) {
      int r = find(e);
      if (out.empty() || out.back() != r) out.push_back(r);
    }
    if (cyclic)
      while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    edges = std::move(out);
  };
  for (auto& s : d.loops) collapse(s.edges, !d.is_spine());
  for (auto& s : d.arcs) collapse(s.edges, false);
}

Diagram flip_crossing(const Diagram& d, int crossing_id) {
  Diagram out = d;
  Crossing* c = out.find_crossing(crossing_id);
  if (!c) throw PreconditionError("no crossing " + std::to_string(crossing_id));
  c->flip();
  return out;
}

Diagram apply_reidemeister(const Diagram& d, const MoveSite& site) {
  switch (site.type) {
    case MoveType::r1:
      return site.direction == MoveDirection::insert ? r1_insert(d, site) : r1_remove(d, site);
    case MoveType::r2:
      return site.direction == MoveDirection::insert ? r2_insert(d, site) : r2_remove(d, site);
    case MoveType::r3:
      return r3(d, site);
  }
  throw InapplicableMove("unknown move");
}

std::vector<MoveSite> available_moves(const Diagram& d, bool with_insertions) {
  std::vector<MoveSite> out;
  auto emb = embed(d);
  auto fs = trace_faces(d, emb);
  for (std::size_t n = 0; n < emb.nodes.size(); ++n) {
    if (emb.nodes[n].kind != NodeKind::crossing) continue;
    if (monogon_at(emb, static_cast<int>(n))) {
      MoveSite s;
      s.type = MoveType::r1;
      s.direction = MoveDirection::remove;
      s.crossing = emb.nodes[n].id;
      out.push_back(s);
    }
  }
  std::set<std::pair<int, int>> bigons;
  for (const auto& f : fs.faces) {
    int x, y;
    if (bigon(d, emb, f, x, y) && bigons.insert({x, y}).second) {
      MoveSite s;
      s.type = MoveType::r2;
      s.direction = MoveDirection::remove;
      s.crossing = x;
      s.other_crossing = y;
      out.push_back(s);
    }
  }
  for (const auto& f : fs.faces) {
    Triangle t;
    if (!admissible_triangle(d, emb, f, t)) continue;
    MoveSite s;
    s.type = MoveType::r3;
    s.triangle = {t.edges.begin(), t.edges.end()};
    std::sort(s.triangle.begin(), s.triangle.end());
    out.push_back(s);
  }
  if (!with_insertions) return out;
  for (int e : emb.edges)
    for (bool left : {true, false})
      for (bool over : {true, false}) {
        MoveSite s;
        s.type = MoveType::r1;
        s.direction = MoveDirection::insert;
        s.edge = e;
        s.left_side = left;
        s.over_first = over;
        out.push_back(s);
      }
  for (const auto& f : fs.faces)
    for (const auto& a : f.darts)
      for (const auto& b : f.darts) {
        if (a.edge == b.edge) continue;
        for (bool over : {true, false}) {
          MoveSite s;
          s.type = MoveType::r2;
          s.direction = MoveDirection::insert;
          s.top = a;
          s.bottom = b;
          s.over_first = over;
          out.push_back(s);
        }
      }
  return out;
}

}  // namespace spinecert
