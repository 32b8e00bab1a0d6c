#include "cpk/fuchsian.hpp"

#include <cmath>

namespace cpk {

double corner_angle(double r0, double r1, double r2) {
  // half-angle form of the hyperbolic law of cosines for side lengths
  // (r0+r1), (r0+r2), (r1+r2):
  //   sin^2(a/2) = sinh(r1) sinh(r2) / (sinh(r0+r1) sinh(r0+r2))
  const double s = std::sinh(r1) * std::sinh(r2) /
                   (std::sinh(r0 + r1) * std::sinh(r0 + r2));
  return 2.0 * std::asin(std::sqrt(std::min(1.0, s)));
}

namespace {

double angle_sum(const SurfaceComplex& sc, const std::vector<double>& r,
                 int v) {
  double sum = 0;
  for (const OrientedEdge& e : sc.vertex_star(v)) {
    const int t = e.tri, c = e.side;
    sum += corner_angle(r[sc.vertex(t, c)], r[sc.vertex(t, (c + 1) % 3)],
                        r[sc.vertex(t, (c + 2) % 3)]);
  }
  return sum;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

// theta(r_v) is strictly decreasing in r_v; solve theta = 2*pi by bisection.
// Returns the defect |theta - 2*pi| seen before the update.
double solve_vertex(const SurfaceComplex& sc, std::vector<double>& r, int v,
                    double r_max) {
  const double incoming = std::abs(angle_sum(sc, r, v) - kTwoPi);
  double lo = 1e-12, hi = r_max;
  r[v] = lo;
  if (angle_sum(sc, r, v) < kTwoPi) {  // even tiny radius gives too little
    r[v] = lo;
    return incoming;
  }
  r[v] = hi;
  if (angle_sum(sc, r, v) > kTwoPi) return incoming;  // capped
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    r[v] = mid;
    const double s = angle_sum(sc, r, v);
    if (s > kTwoPi)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-16 * (1.0 + mid)) break;
  }
  r[v] = 0.5 * (lo + hi);
  return incoming;
}

}  // namespace

FuchsianReport solve_radii(const SurfaceComplex& sc,
                           const FuchsianOptions& opt) {
  const EulerStats st = sc.euler_stats();
  if (st.genus < 2)
    throw PackingError("genus " + std::to_string(st.genus) +
                       " < 2: no hyperbolic structure");
  FuchsianReport rep;
  rep.radii.assign(st.v, 0.5);
  for (rep.sweeps = 1; rep.sweeps <= opt.max_sweeps; ++rep.sweeps) {
    double defect = 0;
    for (int v = 0; v < st.v; ++v)
      defect = std::max(defect,
                        std::abs(solve_vertex(sc, rep.radii, v, opt.r_max)));
    if (defect < 0.5 * opt.tol) break;
    if (rep.sweeps == opt.max_sweeps)
      throw PackingError("radius iteration did not converge within budget");
  }
  for (int v = 0; v < st.v; ++v)
    rep.max_angle_defect = std::max(
        rep.max_angle_defect, std::abs(angle_sum(sc, rep.radii, v) - kTwoPi));
  if (rep.max_angle_defect > opt.tol)
    throw PackingError("radius iteration stalled above tolerance");
  return rep;
}

// ---------------------------------------------------------------------------
// layout

namespace {

// Möbius map of the Poincaré disk sending z0 to the origin.
MoebiusMap to_origin(cx z0) {
  Mat2<double> m;
  m << 1.0, -z0, -std::conj(z0), 1.0;
  return MoebiusMap(m);
}


cx apply_affine(const MoebiusMap& g, cx z) {
  return (g.m(0, 0) * z + g.m(0, 1)) / (g.m(1, 0) * z + g.m(1, 1));
}

// Place a point at hyperbolic distance d and angle `ang` (counterclockwise
// from the direction of `ref`) as seen from `from`.
cx place_from(cx from, cx ref, double d, double ang) {
  const MoebiusMap g = to_origin(from);
  const cx dir = apply_affine(g, ref);
  const cx target =
      std::tanh(0.5 * d) * std::polar(1.0, std::arg(dir) + ang);
  return apply_affine(g.inverse(), target);
}

// Tangency point between circles of hyperbolic radii r0, r1 centered at
// hyperbolic positions z0, z1 (at distance r0+r1).
cx tangency_between(cx z0, cx z1, double r0) {
  const MoebiusMap g = to_origin(z0);
  const cx dir = apply_affine(g, z1);
  const cx t = std::tanh(0.5 * r0) * (dir / std::abs(dir));
  return apply_affine(g.inverse(), t);
}

// Euclidean circle of the hyperbolic circle centered at z with radius r.
EuclideanCircle euclidean_circle(cx z, double r) {
  const double s = 2.0 * std::atanh(std::abs(z));
  const cx u = std::abs(z) > 0 ? z / std::abs(z) : cx(1);
  const double t1 = std::tanh(0.5 * (s - r));
  const double t2 = std::tanh(0.5 * (s + r));
  return {u * (0.5 * (t1 + t2)), 0.5 * (t2 - t1)};
}

struct DevelopedTriangle {
  std::array<cx, 3> center;  // hyperbolic centers of the corner circles
};

// Positions of triangle t glued across side s of the already developed
// triangle dev; vertex radii from r.
DevelopedTriangle continue_across(const SurfaceComplex& sc,
                                  const std::vector<double>& r,
                                  const DevelopedTriangle& dev, SideRef cross) {
  const SideRef g = sc.glued(cross);
  const int tp = g.tri, sp = g.side;
  DevelopedTriangle out;
  // shared side: corner sp of tp sits at the head of `cross`, corner sp+1
  // at its tail
  const cx cv = dev.center[(cross.side + 1) % 3];
  const cx cu = dev.center[cross.side];
  out.center[sp] = cv;
  out.center[(sp + 1) % 3] = cu;
  const int w = sc.vertex(tp, (sp + 2) % 3);
  const int v = sc.vertex(tp, sp);
  const int u = sc.vertex(tp, (sp + 1) % 3);
  const double ang = corner_angle(r[v], r[u], r[w]);
  out.center[(sp + 2) % 3] = place_from(cv, cu, r[v] + r[w], ang);
  return out;
}

std::array<cx, 3> side_tangency_points(const SurfaceComplex& sc,
                                       const std::vector<double>& r,
                                       int t, const DevelopedTriangle& dev) {
  std::array<cx, 3> q;
  for (int s = 0; s < 3; ++s)
    q[s] = tangency_between(dev.center[s], dev.center[(s + 1) % 3],
                            r[sc.vertex(t, s)]);
  return q;
}

}  // namespace

Packing solve_fuchsian(const SurfaceComplex& sc, const FuchsianOptions& opt) {
  const FuchsianReport rep = solve_radii(sc, opt);
  const std::vector<double>& r = rep.radii;
  const auto dt = sc.dual_spanning_tree(opt.base_triangle);

  // develop over the tree; base corner 0 at the origin, side 0 along the
  // positive real axis
  std::vector<DevelopedTriangle> dev(sc.num_triangles());
  {
    const int t = opt.base_triangle;
    const int i = sc.vertex(t, 0), j = sc.vertex(t, 1), k = sc.vertex(t, 2);
    DevelopedTriangle d;
    d.center[0] = 0.0;
    d.center[1] = std::tanh(0.5 * (r[i] + r[j]));
    d.center[2] = std::polar(std::tanh(0.5 * (r[i] + r[k])),
                             corner_angle(r[i], r[j], r[k]));
    dev[t] = d;
  }
  for (const SideRef& cross : dt.tree_crossings)
    dev[sc.glued(cross).tri] = continue_across(sc, r, dev[cross.tri], cross);

  // transitions: identity on tree edges; on cotree edges the Möbius map
  // matching the tree development of the far triangle with its
  // continuation across the edge
  std::vector<MoebiusMap> trans(sc.num_edges());
  std::vector<char> in_tree(sc.num_edges(), 0);
  for (const SideRef& cross : dt.tree_crossings)
    in_tree[sc.edge_index(cross)] = 1;
  for (int e = 0; e < sc.num_edges(); ++e) {
    if (in_tree[e]) continue;
    const OrientedEdge oe = sc.canonical(e);
    const int tp = sc.glued(oe).tri;
    const DevelopedTriangle cont = continue_across(sc, r, dev[oe.tri], oe);
    const auto q_tree = side_tangency_points(sc, r, tp, dev[tp]);
    const auto q_cont = side_tangency_points(sc, r, tp, cont);
    const MoebiusMap n_tree =
        three_point_frame(RP1Point::from_affine(q_tree[0]),
                          RP1Point::from_affine(q_tree[1]),
                          RP1Point::from_affine(q_tree[2]));
    const MoebiusMap n_cont =
        three_point_frame(RP1Point::from_affine(q_cont[0]),
                          RP1Point::from_affine(q_cont[1]),
                          RP1Point::from_affine(q_cont[2]));
    trans[e] = n_cont.inverse() * n_tree;
  }

  // selection values at home corners (first corner of the vertex star)
  std::vector<Corner> home(sc.num_vertices());
  std::vector<DS3Point> sel(sc.num_vertices());
  for (int v = 0; v < sc.num_vertices(); ++v) {
    bool found = false;
    for (int t = 0; t < sc.num_triangles() && !found; ++t)
      for (int c = 0; c < 3 && !found; ++c)
        if (sc.vertex(t, c) == v) {
          home[v] = Corner{t, c};
          sel[v] = disk_from_circle(euclidean_circle(dev[t].center[c], r[v]));
          found = true;
        }
  }
  return Packing(sc, opt.base_triangle, std::move(trans), std::move(home),
                 std::move(sel));
}

}  // namespace cpk
