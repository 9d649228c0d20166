#include "spinecert/homology.hpp"

#include <algorithm>
#include <sstream>

#include "spinecert/error.hpp"
#include "spinecert/seifert.hpp"

namespace spinecert {

int linking_number(const Diagram& d, int a, int b) {
  int n = d.component_count();
  if (a < 1 || a > n || b < 1 || b > n)
    throw PreconditionError("linking_number: component out of range 1.." + std::to_string(n));
  if (a == b) throw PreconditionError("linking_number: components must differ (self-linking is a framing)");
  int total = 0;
  for (const auto& c : d.crossings) {
    int u = loop_of_edge(d, c.under_in);
    int o = loop_of_edge(d, c.over_in);
    if ((u == a && o == b) || (u == b && o == a)) total += c.sign;
  }
  if (total % 2 != 0) throw DiagramError("odd signed crossing count between components; diagram is not closed");
  return total / 2;
}

LinkingTable linking_table(const Diagram& d) {
  int n = d.component_count();
  LinkingTable t;
  t.lk.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) t.lk[a - 1][b - 1] = t.lk[b - 1][a - 1] = linking_number(d, a, b);
  return t;
}

std::string format_class(const HomologyClass& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + ")";
}

bool is_zero(const HomologyClass& c) {
  for (int x : c)
    if (x != 0) return false;
  return true;
}

LinkingData linking_data(const Diagram& d, const std::vector<int>& link_components,
                         const std::vector<int>& loop_components) {
  LinkingData data;
  data.loops = static_cast<int>(loop_components.size());
  for (int k : link_components) {
    std::vector<std::optional<int>> row;
    for (int l : loop_components) row.emplace_back(linking_number(d, k, l));
    data.rows.push_back(std::move(row));
  }
  return data;
}

HomologyClass component_class(const LinkingData& data, int k) {
  if (k < 1 || k > static_cast<int>(data.rows.size()))
    throw PreconditionError("homology_class: component " + std::to_string(k) + " out of range");
  const auto& row = data.rows[k - 1];
  if (static_cast<int>(row.size()) != data.loops)
    throw PreconditionError("homology_class: component " + std::to_string(k) + " has linking data for " +
                            std::to_string(row.size()) + " of " + std::to_string(data.loops) + " loops");
  HomologyClass c(static_cast<std::size_t>(data.loops), 0);
  for (int i = 0; i < data.loops; ++i) {
    if (!row[i])
      throw PreconditionError("homology_class: missing linking number of component " + std::to_string(k) +
                              " with loop " + std::to_string(i + 1));
    c[i] = *row[i];
  }
  return c;
}

HomologyClass homology_class(const LinkingData& data) {
  HomologyClass total(static_cast<std::size_t>(data.loops), 0);
  for (int k = 1; k <= static_cast<int>(data.rows.size()); ++k) {
    auto c = component_class(data, k);
    for (int i = 0; i < data.loops; ++i) total[i] += c[i];
  }
  return total;
}

bool is_null_homologous(const LinkingData& data) { return is_zero(homology_class(data)); }

bool is_completely_null_homologous(const LinkingData& data) {
  bool all = true;
  for (int k = 1; k <= static_cast<int>(data.rows.size()); ++k) all = is_zero(component_class(data, k)) && all;
  return all;
}

Diagram clasp_model(const std::vector<int>& orientation) {
  const int m = static_cast<int>(orientation.size());
  Diagram d;
  d.kind = DiagramKind::link;
  Strand circle;
  for (int e = 1; e <= std::max(1, 2 * m); ++e) circle.edges.push_back(e);
  d.loops.push_back(circle);
  auto c = [&](int i) { return (i - 1) % (2 * m) + 1; };
  int next_id = 1;
  for (int k = 1; k <= m; ++k) {
    int a = 2 * m + 2 * k - 1, b = 2 * m + 2 * k;
    d.loops.push_back(Strand{{a, b}, Side::left});
    // one clasp: the circle passes under the strand, then back over it
    d.crossings.push_back(make_crossing(next_id++, c(2 * k - 1), c(2 * k), a, b, +1));
    d.crossings.push_back(make_crossing(next_id++, b, a, c(2 * k), c(2 * k + 1), +1));
  }
  std::vector<int> orient{1};
  for (int o : orientation) {
    if (o != 1 && o != -1) throw PreconditionError("clasp_model: orientations must be +1 or -1");
    orient.push_back(o);
  }
  return reorient(d, orient);
}

std::string IntersectionMatrix::render() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < counts[i].size(); ++j) os << (j ? "," : "") << counts[i][j];
    os << ']';
  }
  os << ']';
  return os.str();
}

IntersectionMatrix intersection_delta(int g, const std::vector<IntersectionRecord>& recorded) {
  if (g < 0) throw PreconditionError("intersection_delta: negative genus");
  IntersectionMatrix m;
  m.counts.assign(static_cast<std::size_t>(g), std::vector<int>(static_cast<std::size_t>(g), 0));
  for (const auto& r : recorded) {
    if (r.meridian < 1 || r.meridian > g || r.dual < 1 || r.dual > g)
      throw PreconditionError("intersection_delta: curve index out of range 1.." + std::to_string(g));
    if (r.count < 0) throw PreconditionError("intersection_delta: negative crossing count");
    m.counts[r.meridian - 1][r.dual - 1] += r.count;
  }
  m.pass = true;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      if (m.counts[i][j] != (i == j ? 1 : 0)) m.pass = false;
  return m;
}

IntersectionMatrix intersection_delta(const std::vector<int>& meridian_edges,
                                      const std::vector<std::vector<int>>& dual_paths) {
  if (meridian_edges.size() != dual_paths.size())
    throw PreconditionError("intersection_delta: " + std::to_string(meridian_edges.size()) + " meridians but " +
                            std::to_string(dual_paths.size()) + " dual curves");
  int g = static_cast<int>(meridian_edges.size());
  std::vector<IntersectionRecord> recs;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      int n = 0;
      for (int e : dual_paths[j]) n += (e == meridian_edges[i]);
      if (n) recs.push_back({i + 1, j + 1, n});
    }
  return intersection_delta(g, recs);
}

}  // namespace spinecert
