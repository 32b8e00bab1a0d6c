#pragma once

// Koebe-Andreev-Thurston solver: hyperbolic radii by angle-sum balancing,
// development in the Poincaré disk over a dual spanning tree, and
// extraction of the cotree transitions (the Fuchsian holonomy).

#include <vector>

#include "cpk/packing.hpp"
#include "cpk/triangulation.hpp"

namespace cpk {

struct FuchsianOptions {
  double tol = 1e-12;        // angle-sum tolerance at every vertex
  int max_sweeps = 100000;
  double r_max = 20.0;       // hyperbolic radius cap
  int base_triangle = 0;
};

struct FuchsianReport {
  std::vector<double> radii;
  int sweeps = 0;
  double max_angle_defect = 0;  // recomputed from the returned radii
};

// Angle at the corner of radius r0 in the triangle with radii (r0, r1, r2).
double corner_angle(double r0, double r1, double r2);

// Radii such that every vertex angle sum equals 2*pi within tol.
FuchsianReport solve_radii(const SurfaceComplex& sc,
                           const FuchsianOptions& opt = {});

// Full pipeline: radii, layout, holonomy, selection.
Packing solve_fuchsian(const SurfaceComplex& sc,
                       const FuchsianOptions& opt = {});

}  // namespace cpk
