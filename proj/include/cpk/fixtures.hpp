#pragma once

// Built-in complexes used by tests and shipped as files by the CLI.

#include "cpk/triangulation.hpp"

namespace cpk::fixtures {

// Sphere: v=6, e=12, f=8.
SurfaceComplex octahedron();

// Torus, regular valence 6: v=7, e=21, f=14.
SurfaceComplex torus7();

// Genus 2, simplicial, vertex-minimal: v=10, e=36, f=24.
SurfaceComplex genus2();

// Sphere containing a loop edge that bounds a disk (monogon); valences >= 3.
SurfaceComplex monogon_sphere();

// Sphere containing two parallel edges bounding a disk (bigon); valences >= 3.
SurfaceComplex bigon_sphere();

// Torus: all three edges are essential loops at the single vertex; it is
// quasi-simplicial even though nothing about it is simplicial.
SurfaceComplex one_vertex_torus();

// Orientation double cover of torus7 along the nontrivial step-type
// cocycle: v=14, e=42, f=28.  cover_vertex(v, sheet) = v + 7*sheet.
SurfaceComplex torus7_double_cover();
int torus7_cover_base_vertex(int cover_vertex);
int torus7_cover_edge_sheet_shift(int base_a, int base_b);

}  // namespace cpk::fixtures
