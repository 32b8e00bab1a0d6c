#pragma once

// Holonomy-twisted cochain complexes on the quotient triangulation.
//
// Values live in sl(2,C) expressed in home charts: vertex values in the
// home corner's triangle, edge values in the chart of the triangle
// containing the canonical orientation, triangle values in their own
// chart.  The value of a 1-cochain on a reversed edge is
// -Ad(transition) of the canonical value, the finite form of the
// alternation rule, and all operators transport through the packing's
// corner tables.

#include <Eigen/Dense>
#include <vector>

#include "cpk/moebius.hpp"
#include "cpk/numerics.hpp"
#include "cpk/packing.hpp"

namespace cpk {

struct Cochain0 {
  std::vector<Sl2Elem> value;  // per vertex
};
struct Cochain1 {
  std::vector<Sl2Elem> value;  // per unoriented edge, canonical orientation
};
struct Cochain2 {
  std::vector<Sl2Elem> value;  // per triangle
};

// Value of a 1-cochain on an arbitrary oriented edge, in the chart of the
// triangle containing it.
Sl2Elem cochain1_on(const Packing& p, const Cochain1& q, SideRef side);

// Ad as a 3x3 complex matrix on (a, b, c) coordinates.
Eigen::Matrix3cd ad_matrix(const MoebiusMap& g);

Cochain1 d0(const Packing& p, const Cochain0& P);
Cochain2 d1(const Packing& p, const Cochain1& Q);
Cochain1 delta2(const Packing& p, const Cochain2& R);
Cochain0 delta1(const Packing& p, const Cochain1& Q);

cx pairing(const Cochain0& a, const Cochain0& b);
cx pairing(const Cochain1& a, const Cochain1& b);
cx pairing(const Cochain2& a, const Cochain2& b);

// Operator matrices in the complex coordinates C^{3v}, C^{3e}, C^{3f}.
Eigen::MatrixXcd d0_matrix(const Packing& p);
Eigen::MatrixXcd d1_matrix(const Packing& p);

struct CohomologyReport {
  RankResult rank_d0;
  RankResult rank_d1;
  int dim_h1 = -1;  // complex dimension; -1 when indeterminate
  bool determinate() const { return rank_d0.determinate && rank_d1.determinate; }
};

struct ElementaryHolonomyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws ElementaryHolonomyError when the transition generators share a
// fixed point (or are all trivial) within tolerance.
void require_non_elementary(const Packing& p, double tol = 1e-8);

CohomologyReport cohomology_dims(const Packing& p);

}  // namespace cpk
