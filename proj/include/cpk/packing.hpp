#pragma once

// A packing is a finite presentation of an equivariant selection map:
// transition Möbius maps on the dual graph plus one de Sitter point per
// quotient vertex, stored in the chart of a designated home corner.
//
// Chart semantics: every triangle carries its own chart.  For a side
// (t, s) glued to (t', s'), transition(t, s) rewrites t'-chart data in
// t-chart coordinates.  Data attached to a vertex is transported around
// its star by composing transitions; the full loop must close up to sign
// (the vertex-star condition), which makes all per-corner values well
// defined in PSL(2,C).

#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cpk/moebius.hpp"
#include "cpk/triangulation.hpp"

namespace cpk {

struct PackingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Packing {
 public:
  Packing(SurfaceComplex sc, int base_triangle,
          std::vector<MoebiusMap> transition_of_canonical_edge,
          std::vector<Corner> home_corner, std::vector<DS3Point> selection);

  const SurfaceComplex& complex() const { return sc_; }
  int base_triangle() const { return base_; }

  // Transition across side (t,s): t'-chart -> t-chart.
  MoebiusMap transition(SideRef s) const;
  const MoebiusMap& canonical_transition(int edge) const { return trans_[edge]; }

  const Corner& home_corner(int vertex) const { return home_[vertex]; }
  const DS3Point& selection(int vertex) const { return sel_[vertex]; }

  // Transport from the home chart of vertex(t,c) into t's chart.
  const MoebiusMap& corner_transport(int tri, int corner) const {
    return corner_u_[3 * tri + corner];
  }
  DS3Point corner_disk(int tri, int corner) const;

  // Per-vertex star closure: the ordered product of star transitions.
  // sign is +1/-1 for the branch nearest the identity; residual is the
  // operator-norm distance to that sign.
  struct StarClosure {
    double residual = 0;
    int sign = 1;
  };
  const StarClosure& star_closure(int vertex) const { return closure_[vertex]; }
  double max_star_residual() const;

  // Tangency point of edge (t,s) in t's chart.
  RP1Point tangency_point(SideRef s) const;

 private:
  void build_transports();

  SurfaceComplex sc_;
  int base_ = 0;
  std::vector<MoebiusMap> trans_;     // per unoriented edge, canonical dir
  std::vector<Corner> home_;
  std::vector<DS3Point> sel_;
  std::vector<MoebiusMap> corner_u_;  // per corner (3*t + c)
  std::vector<StarClosure> closure_;
};

struct EdgeResidual {
  double residual = 0;   // mink(S(tail), S(head)) + 1 in the edge's chart
  bool future = true;    // sum is future directed (positive semidefinite side)
};

// Residual of the tangency functional per unoriented edge.
std::vector<EdgeResidual> evaluate_tangency(const Packing& p);
double max_abs_residual(const Packing& p);

// Disk dual to each triangle: boundary through the three side tangency
// points, chosen to contain the triangular interstice.
std::vector<DS3Point> dual_disks(const Packing& p);

// Structural validation: star closures, residuals, non-degenerate triangles.
struct PackingCheck {
  double max_star_residual = 0;
  double max_tangency_residual = 0;
  bool all_future = true;
  bool non_degenerate = true;
  bool ok(double star_tol = 1e-9, double tangency_tol = 1e-8) const {
    return max_star_residual <= star_tol &&
           max_tangency_residual <= tangency_tol && all_future &&
           non_degenerate;
  }
};
PackingCheck check_packing(const Packing& p);

// Global Möbius move: selection -> B.S, transitions -> B G B^{-1}.
Packing apply_moebius(const Packing& p, const MoebiusMap& B);

// Same packing expressed over the dual spanning tree rooted at new_base
// (tree transitions become the identity in the new charts).
Packing reroot(const Packing& p, int new_base);

nlohmann::json write_packing(const Packing& p);
Packing read_packing(const nlohmann::json& doc, double star_tol = 1e-9,
                     double tangency_tol = 1e-8);

// Developed picture out to the given dual-graph depth, as an SVG document.
std::string export_svg(const Packing& p, int depth, bool with_dual = true);

// Euclidean circle <-> de Sitter point (standard affine chart).
struct EuclideanCircle {
  cx center;
  double radius = 1;
};
DS3Point disk_from_circle(const EuclideanCircle& c);
std::optional<EuclideanCircle> circle_from_disk(const DS3Point& d,
                                                double min_a = 1e-7);

}  // namespace cpk
