#pragma once

// Quasi-simplicial triangulations of closed oriented surfaces, stored in
// side-gluing form so that loops and parallel edges are first-class.
//
// A side (t, s) of triangle t is the oriented edge from corner s to corner
// s+1; it is the unique triangle containing that oriented edge coherently
// with the orientation.  The gluing is a fixed-point-free involution on
// sides that reverses the induced orientation.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace cpk {

struct ComplexError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SideRef {
  int tri = -1;
  int side = -1;
  bool operator==(const SideRef&) const = default;
};

// An oriented edge is identified with the side (t, s) that contains it.
using OrientedEdge = SideRef;

struct Corner {
  int tri = -1;
  int corner = -1;  // vertex slot; its two incident sides are (corner+2)%3, corner
  bool operator==(const Corner&) const = default;
};

struct EulerStats {
  int v = 0, e = 0, f = 0, chi = 0, genus = 0;
};

class SurfaceComplex {
 public:
  // Simplicial input: triangles as ordered vertex triples, orientation
  // given by the triple order.
  static SurfaceComplex from_triangles(
      int num_vertices, const std::vector<std::array<int, 3>>& tris);

  // Glued input: explicit corner vertices and a side pairing.
  static SurfaceComplex from_gluing(
      int num_vertices, const std::vector<std::array<int, 3>>& vertex_of,
      const std::vector<std::pair<SideRef, SideRef>>& gluing);

  int num_vertices() const { return num_vertices_; }
  int num_triangles() const { return static_cast<int>(vertex_of_.size()); }
  int num_edges() const { return static_cast<int>(edge_canonical_.size()); }

  int vertex(int tri, int corner) const { return vertex_of_[tri][corner]; }
  SideRef glued(SideRef s) const { return glue_[s.tri][s.side]; }

  // Oriented-edge structure
  int tail(OrientedEdge e) const { return vertex(e.tri, e.side); }
  int head(OrientedEdge e) const { return vertex(e.tri, (e.side + 1) % 3); }
  OrientedEdge reversed(OrientedEdge e) const { return glued(e); }
  int containing_triangle(OrientedEdge e) const { return e.tri; }

  // Unoriented edges: index plus a canonical orientation per edge.
  int edge_index(SideRef s) const { return edge_index_[s.tri][s.side]; }
  OrientedEdge canonical(int edge) const { return edge_canonical_[edge]; }
  bool is_canonical(SideRef s) const { return canonical(edge_index(s)) == s; }

  int valence(int v) const { return static_cast<int>(star_[v].size()); }
  // Outgoing oriented edges in counterclockwise order.
  const std::vector<OrientedEdge>& vertex_star(int v) const;

  const std::vector<std::array<int, 3>>& triangles() const { return vertex_of_; }

  EulerStats euler_stats() const;

  struct DualTree {
    int base = 0;
    // tree crossings, parent side first (BFS order)
    std::vector<SideRef> tree_crossings;
    std::vector<int> cotree_edges;          // unoriented edge ids
    std::vector<int> bfs_order;             // triangles in visit order
    std::vector<SideRef> parent_crossing;   // per triangle; (-1,-1) at base
  };
  DualTree dual_spanning_tree(int base) const;

 private:
  void build_derived();  // edge indices, stars, validation

  int num_vertices_ = 0;
  std::vector<std::array<int, 3>> vertex_of_;
  std::vector<std::array<SideRef, 3>> glue_;
  std::vector<std::array<int, 3>> edge_index_;
  std::vector<OrientedEdge> edge_canonical_;
  std::vector<std::vector<OrientedEdge>> star_;
};

struct QuasiSimplicialReport {
  std::vector<int> monogons;                    // edge ids of disk-bounding loops
  std::vector<std::pair<int, int>> bigons;      // parallel edge pairs bounding disks
  bool accepted() const { return monogons.empty() && bigons.empty(); }
};

QuasiSimplicialReport validate_quasi_simplicial(const SurfaceComplex& sc);

// Parses either accepted document shape (see README).
SurfaceComplex parse_complex(const nlohmann::json& doc);
nlohmann::json complex_to_json(const SurfaceComplex& sc);
nlohmann::json euler_stats_to_json(const EulerStats& st);

}  // namespace cpk
