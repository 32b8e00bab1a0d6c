#include "cpk/triangulation.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include <nlohmann/json.hpp>

namespace cpk {

namespace {
int encode(SideRef s) { return 3 * s.tri + s.side; }
}  // namespace

SurfaceComplex SurfaceComplex::from_triangles(
    int num_vertices, const std::vector<std::array<int, 3>>& tris) {
  // Match each directed side (a, b) with the unique side carrying (b, a).
  std::map<std::pair<int, int>, SideRef> by_pair;
  for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
    for (int s = 0; s < 3; ++s) {
      const int a = tris[t][s], b = tris[t][(s + 1) % 3];
      auto [it, inserted] = by_pair.insert({{a, b}, SideRef{t, s}});
      if (!inserted)
        throw ComplexError("non-orientable or non-manifold gluing: directed edge (" +
                           std::to_string(a) + "," + std::to_string(b) +
                           ") appears twice");
    }
  }
  std::vector<std::pair<SideRef, SideRef>> gluing;
  for (const auto& [pair, side] : by_pair) {
    auto rev = by_pair.find({pair.second, pair.first});
    if (rev == by_pair.end())
      throw ComplexError("dangling side: directed edge (" +
                         std::to_string(pair.first) + "," +
                         std::to_string(pair.second) + ") has no partner");
    if (encode(side) < encode(rev->second)) gluing.push_back({side, rev->second});
  }
  return from_gluing(num_vertices, tris, gluing);
}

SurfaceComplex SurfaceComplex::from_gluing(
    int num_vertices, const std::vector<std::array<int, 3>>& vertex_of,
    const std::vector<std::pair<SideRef, SideRef>>& gluing) {
  SurfaceComplex sc;
  sc.num_vertices_ = num_vertices;
  sc.vertex_of_ = vertex_of;
  const int f = static_cast<int>(vertex_of.size());
  sc.glue_.assign(f, {SideRef{}, SideRef{}, SideRef{}});
  for (const auto& [x, y] : gluing) {
    for (const SideRef& s : {x, y})
      if (s.tri < 0 || s.tri >= f || s.side < 0 || s.side >= 3)
        throw ComplexError("gluing refers to a side out of range");
    if (x == y) throw ComplexError("side glued to itself (non-manifold)");
    for (const SideRef& s : {x, y})
      if (sc.glue_[s.tri][s.side].tri != -1)
        throw ComplexError("side glued twice (non-manifold)");
    sc.glue_[x.tri][x.side] = y;
    sc.glue_[y.tri][y.side] = x;
  }
  for (int t = 0; t < f; ++t)
    for (int s = 0; s < 3; ++s)
      if (sc.glue_[t][s].tri == -1)
        throw ComplexError("dangling side (" + std::to_string(t) + "," +
                           std::to_string(s) + "): surface is not closed");
  sc.build_derived();
  return sc;
}

void SurfaceComplex::build_derived() {
  const int f = num_triangles();
  for (int t = 0; t < f; ++t)
    for (int s = 0; s < 3; ++s) {
      if (vertex_of_[t][s] < 0 || vertex_of_[t][s] >= num_vertices_)
        throw ComplexError("vertex id out of range");
      // orientation-reversing identification of corner vertices
      const SideRef g = glue_[t][s];
      if (vertex_of_[t][s] != vertex_of_[g.tri][(g.side + 1) % 3] ||
          vertex_of_[t][(s + 1) % 3] != vertex_of_[g.tri][g.side])
        throw ComplexError("non-orientable gluing: corner vertices of side (" +
                           std::to_string(t) + "," + std::to_string(s) +
                           ") do not match its partner reversed");
    }

  // unoriented edges
  edge_index_.assign(f, {-1, -1, -1});
  edge_canonical_.clear();
  for (int t = 0; t < f; ++t)
    for (int s = 0; s < 3; ++s) {
      if (edge_index_[t][s] != -1) continue;
      const SideRef g = glue_[t][s];
      const int id = static_cast<int>(edge_canonical_.size());
      edge_index_[t][s] = id;
      edge_index_[g.tri][g.side] = id;
      edge_canonical_.push_back(SideRef{t, s});
    }

  // corner cycles = vertex stars; counterclockwise step is
  // twin(previous side in the face).
  std::vector<std::vector<OrientedEdge>> cycles;
  std::vector<int> corner_cycle(3 * f, -1);
  for (int t = 0; t < f; ++t)
    for (int s = 0; s < 3; ++s) {
      if (corner_cycle[encode({t, s})] != -1) continue;
      const int cid = static_cast<int>(cycles.size());
      cycles.push_back({});
      SideRef cur{t, s};
      do {
        corner_cycle[encode(cur)] = cid;
        cycles[cid].push_back(cur);
        cur = glue_[cur.tri][(cur.side + 2) % 3];
      } while (!(cur == SideRef{t, s}));
    }
  // every corner cycle must be the full star of a single vertex
  std::vector<int> cycle_of_vertex(num_vertices_, -1);
  for (int c = 0; c < static_cast<int>(cycles.size()); ++c) {
    const int v = vertex_of_[cycles[c][0].tri][cycles[c][0].side];
    for (const auto& e : cycles[c])
      if (vertex_of_[e.tri][e.side] != v)
        throw ComplexError("inconsistent vertex labels around a corner cycle");
    if (cycle_of_vertex[v] != -1)
      throw ComplexError("vertex " + std::to_string(v) +
                         " is non-manifold (two disjoint corner cycles)");
    cycle_of_vertex[v] = c;
  }
  star_.assign(num_vertices_, {});
  for (int v = 0; v < num_vertices_; ++v) {
    if (cycle_of_vertex[v] == -1)
      throw ComplexError("vertex " + std::to_string(v) + " is unused");
    star_[v] = cycles[cycle_of_vertex[v]];
    if (static_cast<int>(star_[v].size()) < 3)
      throw ComplexError("vertex " + std::to_string(v) + " has valence " +
                         std::to_string(star_[v].size()) + " < 3");
  }

  // connectivity of the dual graph
  std::vector<char> seen(f, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 0;
  while (!q.empty()) {
    int t = q.front();
    q.pop();
    ++count;
    for (int s = 0; s < 3; ++s) {
      int u = glue_[t][s].tri;
      if (!seen[u]) {
        seen[u] = 1;
        q.push(u);
      }
    }
  }
  if (count != f) throw ComplexError("complex is not connected");
}

const std::vector<OrientedEdge>& SurfaceComplex::vertex_star(int v) const {
  if (v < 0 || v >= num_vertices_) throw ComplexError("unknown vertex id");
  return star_[v];
}

EulerStats SurfaceComplex::euler_stats() const {
  EulerStats st;
  st.v = num_vertices_;
  st.e = num_edges();
  st.f = num_triangles();
  st.chi = st.v - st.e + st.f;
  if (3 * st.f != 2 * st.e)
    throw ComplexError("3f != 2e: corrupt gluing");
  if (st.e - 3 * st.v != -3 * st.chi)
    throw ComplexError("e - 3v != -3chi: corrupt gluing");
  if (st.chi % 2 != 0 || st.chi > 2)
    throw ComplexError("Euler characteristic " + std::to_string(st.chi) +
                       " impossible for a closed oriented surface");
  st.genus = (2 - st.chi) / 2;
  return st;
}

SurfaceComplex::DualTree SurfaceComplex::dual_spanning_tree(int base) const {
  const int f = num_triangles();
  if (base < 0 || base >= f) throw ComplexError("base triangle out of range");
  DualTree dt;
  dt.base = base;
  dt.parent_crossing.assign(f, SideRef{-1, -1});
  std::vector<char> seen(f, 0);
  std::vector<char> edge_in_tree(num_edges(), 0);
  std::queue<int> q;
  q.push(base);
  seen[base] = 1;
  while (!q.empty()) {
    int t = q.front();
    q.pop();
    dt.bfs_order.push_back(t);
    for (int s = 0; s < 3; ++s) {
      const SideRef g = glue_[t][s];
      if (seen[g.tri]) continue;
      seen[g.tri] = 1;
      dt.tree_crossings.push_back(SideRef{t, s});
      dt.parent_crossing[g.tri] = SideRef{t, s};
      edge_in_tree[edge_index_[t][s]] = 1;
      q.push(g.tri);
    }
  }
  for (int e = 0; e < num_edges(); ++e)
    if (!edge_in_tree[e]) dt.cotree_edges.push_back(e);
  return dt;
}

// --------------------------------------------------------------------------
// monogon / bigon detection

namespace {

// Euler characteristic data of the region obtained by flood-filling
// triangles from `seed` without crossing the unoriented edges in `cut`,
// then desingularizing (disjoint triangles glued along shared non-cut
// interior edges).
struct RegionStats {
  int f = 0;
  int boundary_slots = 0;               // sides whose edge is in `cut`
  std::vector<int> boundary_edge_ids;   // with multiplicity
  int chi = 0;
};

RegionStats region_from(const SurfaceComplex& sc, int seed,
                        const std::set<int>& cut) {
  const int f = sc.num_triangles();
  std::vector<char> in(f, 0);
  std::queue<int> q;
  q.push(seed);
  in[seed] = 1;
  while (!q.empty()) {
    int t = q.front();
    q.pop();
    for (int s = 0; s < 3; ++s) {
      if (cut.count(sc.edge_index({t, s}))) continue;
      int u = sc.glued({t, s}).tri;
      if (!in[u]) {
        in[u] = 1;
        q.push(u);
      }
    }
  }
  // desingularized counts: corners identified through used gluings
  std::vector<int> tris;
  std::vector<int> local(f, -1);
  for (int t = 0; t < f; ++t)
    if (in[t]) {
      local[t] = static_cast<int>(tris.size());
      tris.push_back(t);
    }
  const int n = static_cast<int>(tris.size());
  // union-find over corners (3 per local triangle)
  std::vector<int> parent(3 * n);
  for (int i = 0; i < 3 * n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

  RegionStats rs;
  rs.f = n;
  int glued_pairs = 0;
  for (int li = 0; li < n; ++li) {
    const int t = tris[li];
    for (int s = 0; s < 3; ++s) {
      const int eid = sc.edge_index({t, s});
      if (cut.count(eid)) {
        ++rs.boundary_slots;
        rs.boundary_edge_ids.push_back(eid);
        continue;
      }
      const SideRef g = sc.glued({t, s});
      // both sides are in the region by construction of the flood fill
      if (encode(SideRef{t, s}) < encode(g)) {
        ++glued_pairs;
        const int lj = local[g.tri];
        // corners s -> g.side+1 and s+1 -> g.side
        unite(3 * li + s, 3 * lj + (g.side + 1) % 3);
        unite(3 * li + (s + 1) % 3, 3 * lj + g.side);
      }
    }
  }
  std::set<int> vclasses;
  for (int i = 0; i < 3 * n; ++i) vclasses.insert(find(i));
  const int V = static_cast<int>(vclasses.size());
  const int E = glued_pairs + rs.boundary_slots;
  rs.chi = V - E + rs.f;
  return rs;
}

bool bounds_disk(const SurfaceComplex& sc, const std::set<int>& cut,
                 int expected_boundary_slots) {
  // try both seeds adjacent to the first cut edge
  const OrientedEdge e0 = sc.canonical(*cut.begin());
  for (int seed : {e0.tri, sc.glued(e0).tri}) {
    RegionStats rs = region_from(sc, seed, cut);
    if (rs.f == sc.num_triangles()) continue;  // did not separate
    if (rs.chi == 1 && rs.boundary_slots == expected_boundary_slots) {
      // every cut edge must appear on the boundary
      std::set<int> ids(rs.boundary_edge_ids.begin(),
                        rs.boundary_edge_ids.end());
      if (ids == cut) return true;
    }
  }
  return false;
}

}  // namespace

QuasiSimplicialReport validate_quasi_simplicial(const SurfaceComplex& sc) {
  QuasiSimplicialReport rep;
  // monogons: loops bounding a disk
  for (int e = 0; e < sc.num_edges(); ++e) {
    const OrientedEdge oe = sc.canonical(e);
    if (sc.tail(oe) != sc.head(oe)) continue;
    if (bounds_disk(sc, {e}, 1)) rep.monogons.push_back(e);
  }
  // bigons: parallel edge pairs bounding a disk
  std::map<std::pair<int, int>, std::vector<int>> by_ends;
  for (int e = 0; e < sc.num_edges(); ++e) {
    const OrientedEdge oe = sc.canonical(e);
    int a = sc.tail(oe), b = sc.head(oe);
    by_ends[{std::min(a, b), std::max(a, b)}].push_back(e);
  }
  for (const auto& [ends, edges] : by_ends) {
    for (size_t i = 0; i < edges.size(); ++i)
      for (size_t j = i + 1; j < edges.size(); ++j)
        if (bounds_disk(sc, {edges[i], edges[j]}, 2))
          rep.bigons.push_back({edges[i], edges[j]});
  }
  return rep;
}

// --------------------------------------------------------------------------
// document formats

SurfaceComplex parse_complex(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ComplexError("triangulation document must be an object");
  if (!doc.contains("vertices")) throw ComplexError("missing \"vertices\"");
  const int n = doc.at("vertices").get<int>();
  if (doc.contains("gluing")) {
    const auto& vo = doc.at("vertex_of");
    std::vector<std::array<int, 3>> vertex_of;
    for (const auto& t : vo)
      vertex_of.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    std::vector<std::pair<SideRef, SideRef>> gluing;
    for (const auto& g : doc.at("gluing")) {
      gluing.push_back({SideRef{g.at(0).at(0).get<int>(), g.at(0).at(1).get<int>()},
                        SideRef{g.at(1).at(0).get<int>(), g.at(1).at(1).get<int>()}});
    }
    return SurfaceComplex::from_gluing(n, vertex_of, gluing);
  }
  if (!doc.contains("triangles")) throw ComplexError("missing \"triangles\"");
  std::vector<std::array<int, 3>> tris;
  for (const auto& t : doc.at("triangles"))
    tris.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
  return SurfaceComplex::from_triangles(n, tris);
}

nlohmann::json complex_to_json(const SurfaceComplex& sc) {
  nlohmann::json doc;
  doc["vertices"] = sc.num_vertices();
  doc["triangles"] = sc.num_triangles();
  nlohmann::json vo = nlohmann::json::array();
  for (const auto& t : sc.triangles()) vo.push_back({t[0], t[1], t[2]});
  doc["vertex_of"] = vo;
  nlohmann::json gl = nlohmann::json::array();
  for (int e = 0; e < sc.num_edges(); ++e) {
    const SideRef a = sc.canonical(e);
    const SideRef b = sc.glued(a);
    gl.push_back({{a.tri, a.side}, {b.tri, b.side}});
  }
  doc["gluing"] = gl;
  return doc;
}

nlohmann::json euler_stats_to_json(const EulerStats& st) {
  return {{"v", st.v}, {"e", st.e}, {"f", st.f}, {"chi", st.chi},
          {"genus", st.genus}};
}

}  // namespace cpk
