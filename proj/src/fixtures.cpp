#include "cpk/fixtures.hpp"

namespace cpk::fixtures {

SurfaceComplex octahedron() {
  return SurfaceComplex::from_triangles(
      6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
          {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}});
}

SurfaceComplex torus7() {
  return SurfaceComplex::from_triangles(
      7, {{0, 1, 3}, {0, 3, 2}, {1, 2, 4}, {1, 4, 3}, {2, 3, 5},
          {2, 5, 4}, {3, 4, 6}, {3, 6, 5}, {4, 0, 6}, {4, 5, 0},
          {5, 1, 0}, {5, 6, 1}, {6, 0, 2}, {6, 2, 1}});
}

SurfaceComplex genus2() {
  // Connected sum of two 7-vertex tori reduced to ten vertices by
  // bistellar flips and one edge contraction; simplicial by construction.
  return SurfaceComplex::from_triangles(
      10, {{0, 1, 5}, {0, 4, 6}, {1, 0, 2}, {1, 2, 3}, {1, 7, 9},
           {1, 9, 8}, {2, 4, 3}, {2, 5, 4}, {2, 7, 8}, {3, 0, 5},
           {3, 7, 1}, {4, 0, 3}, {4, 5, 1}, {5, 7, 3}, {5, 8, 7},
           {6, 1, 8}, {6, 4, 1}, {6, 5, 2}, {8, 5, 6}, {8, 9, 2},
           {9, 0, 6}, {9, 6, 2}, {7, 0, 9}, {7, 2, 0}});
}

SurfaceComplex monogon_sphere() {
  // Two triangulated disks glued along a single loop at vertex 0.
  // Inside: vertices 1,2,3; outside: 4,5,6.
  const int a = 0;
  std::vector<std::array<int, 3>> vo = {
      {1, 2, 3},     // t0 inner triangle
      {a, a, 1},     // t1 carries the loop on side 0
      {a, 1, 3},     // t2
      {a, 3, 2},     // t3
      {a, 2, 1},     // t4
      {4, 5, 6},     // t5 mirror inner
      {a, a, 4},     // t6 carries the loop
      {a, 4, 6},     // t7
      {a, 6, 5},     // t8
      {a, 5, 4},     // t9
  };
  std::vector<std::pair<SideRef, SideRef>> gl = {
      {{0, 0}, {4, 1}}, {{0, 1}, {3, 1}}, {{0, 2}, {2, 1}},
      {{1, 1}, {4, 2}}, {{1, 2}, {2, 0}}, {{2, 2}, {3, 0}},
      {{3, 2}, {4, 0}},
      {{5, 0}, {9, 1}}, {{5, 1}, {8, 1}}, {{5, 2}, {7, 1}},
      {{6, 1}, {9, 2}}, {{6, 2}, {7, 0}}, {{7, 2}, {8, 0}},
      {{8, 2}, {9, 0}},
      {{1, 0}, {6, 0}},  // the loop
  };
  return SurfaceComplex::from_gluing(7, vo, gl);
}

SurfaceComplex bigon_sphere() {
  // Two parallel edges between vertices 0 and 1; each complementary lens
  // is a 4-triangle disk, so either one is a bigon.
  std::vector<std::array<int, 3>> vo = {
      {0, 1, 2},  // t0: side 0 is edge "f"
      {1, 0, 3},  // t1: side 0 is edge "bk"
      {2, 1, 3},  // t2
      {0, 2, 3},  // t3
      {1, 0, 4},  // t4: side 0 glued to f
      {0, 1, 5},  // t5: side 0 glued to bk
      {4, 0, 5},  // t6
      {1, 4, 5},  // t7
  };
  std::vector<std::pair<SideRef, SideRef>> gl = {
      {{0, 1}, {2, 0}}, {{0, 2}, {3, 0}}, {{1, 1}, {3, 2}},
      {{1, 2}, {2, 1}}, {{2, 2}, {3, 1}},
      {{4, 1}, {6, 0}}, {{4, 2}, {7, 0}}, {{5, 1}, {7, 2}},
      {{5, 2}, {6, 1}}, {{6, 2}, {7, 1}},
      {{0, 0}, {4, 0}},  // f
      {{1, 0}, {5, 0}},  // bk
  };
  return SurfaceComplex::from_gluing(6, vo, gl);
}

SurfaceComplex one_vertex_torus() {
  std::vector<std::array<int, 3>> vo = {{0, 0, 0}, {0, 0, 0}};
  std::vector<std::pair<SideRef, SideRef>> gl = {
      {{0, 0}, {1, 1}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 0}}};
  return SurfaceComplex::from_gluing(1, vo, gl);
}

int torus7_cover_edge_sheet_shift(int base_a, int base_b) {
  int d = (base_a - base_b) % 7;
  if (d < 0) d += 7;
  const int step = std::min(d, 7 - d);
  return step == 3 ? 0 : 1;  // nontrivial Z/2 cocycle constant on step types
}

int torus7_cover_base_vertex(int cover_vertex) { return cover_vertex % 7; }

SurfaceComplex torus7_double_cover() {
  const SurfaceComplex base = torus7();
  std::vector<std::array<int, 3>> tris;
  for (const auto& t : base.triangles()) {
    const int c01 = torus7_cover_edge_sheet_shift(t[0], t[1]);
    const int c12 = torus7_cover_edge_sheet_shift(t[1], t[2]);
    for (int sheet = 0; sheet < 2; ++sheet) {
      tris.push_back({t[0] + 7 * sheet,
                      t[1] + 7 * ((sheet + c01) % 2),
                      t[2] + 7 * ((sheet + c01 + c12) % 2)});
    }
  }
  return SurfaceComplex::from_triangles(14, tris);
}

}  // namespace cpk::fixtures
