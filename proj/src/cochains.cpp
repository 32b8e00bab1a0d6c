#include "cpk/cochains.hpp"

namespace cpk {

Eigen::Matrix3cd ad_matrix(const MoebiusMap& g) {
  Eigen::Matrix3cd m;
  m.col(0) = ad(g, Sl2Elem(1, 0, 0)).coords();
  m.col(1) = ad(g, Sl2Elem(0, 1, 0)).coords();
  m.col(2) = ad(g, Sl2Elem(0, 0, 1)).coords();
  return m;
}

Sl2Elem cochain1_on(const Packing& p, const Cochain1& q, SideRef side) {
  const SurfaceComplex& sc = p.complex();
  const int e = sc.edge_index(side);
  if (sc.is_canonical(side)) return q.value[e];
  return -ad(p.transition(side), q.value[e]);
}

Cochain1 d0(const Packing& p, const Cochain0& P) {
  const SurfaceComplex& sc = p.complex();
  Cochain1 out;
  out.value.resize(sc.num_edges());
  for (int e = 0; e < sc.num_edges(); ++e) {
    const OrientedEdge oe = sc.canonical(e);
    const int t = oe.tri, s = oe.side;
    const Sl2Elem head =
        ad(p.corner_transport(t, (s + 1) % 3), P.value[sc.head(oe)]);
    const Sl2Elem tail = ad(p.corner_transport(t, s), P.value[sc.tail(oe)]);
    out.value[e] = head - tail;
  }
  return out;
}

Cochain2 d1(const Packing& p, const Cochain1& Q) {
  const SurfaceComplex& sc = p.complex();
  Cochain2 out;
  out.value.resize(sc.num_triangles());
  for (int t = 0; t < sc.num_triangles(); ++t) {
    Sl2Elem sum;
    for (int s = 0; s < 3; ++s) sum = sum + cochain1_on(p, Q, {t, s});
    out.value[t] = sum;
  }
  return out;
}

Cochain1 delta2(const Packing& p, const Cochain2& R) {
  const SurfaceComplex& sc = p.complex();
  Cochain1 out;
  out.value.resize(sc.num_edges());
  for (int e = 0; e < sc.num_edges(); ++e) {
    const OrientedEdge oe = sc.canonical(e);
    const SideRef rev = sc.glued(oe);
    const Sl2Elem far = ad(p.transition(oe), R.value[rev.tri]);
    out.value[e] = R.value[oe.tri] - far;
  }
  return out;
}

Cochain0 delta1(const Packing& p, const Cochain1& Q) {
  const SurfaceComplex& sc = p.complex();
  Cochain0 out;
  out.value.assign(sc.num_vertices(), Sl2Elem());
  for (int v = 0; v < sc.num_vertices(); ++v) {
    Sl2Elem sum;
    for (const OrientedEdge& oe : sc.vertex_star(v)) {
      const Sl2Elem q = cochain1_on(p, Q, oe);
      sum = sum + ad(p.corner_transport(oe.tri, oe.side).inverse(), q);
    }
    out.value[v] = sum;
  }
  return out;
}

cx pairing(const Cochain0& a, const Cochain0& b) {
  cx s = 0;
  for (size_t i = 0; i < a.value.size(); ++i)
    s += killing(a.value[i], b.value[i]);
  return s;
}
cx pairing(const Cochain1& a, const Cochain1& b) {
  cx s = 0;
  for (size_t i = 0; i < a.value.size(); ++i)
    s += killing(a.value[i], b.value[i]);
  return s;
}
cx pairing(const Cochain2& a, const Cochain2& b) {
  cx s = 0;
  for (size_t i = 0; i < a.value.size(); ++i)
    s += killing(a.value[i], b.value[i]);
  return s;
}

Eigen::MatrixXcd d0_matrix(const Packing& p) {
  const SurfaceComplex& sc = p.complex();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3 * sc.num_edges(),
                                              3 * sc.num_vertices());
  for (int e = 0; e < sc.num_edges(); ++e) {
    const OrientedEdge oe = sc.canonical(e);
    const int t = oe.tri, s = oe.side;
    m.block<3, 3>(3 * e, 3 * sc.head(oe)) +=
        ad_matrix(p.corner_transport(t, (s + 1) % 3));
    m.block<3, 3>(3 * e, 3 * sc.tail(oe)) -=
        ad_matrix(p.corner_transport(t, s));
  }
  return m;
}

Eigen::MatrixXcd d1_matrix(const Packing& p) {
  const SurfaceComplex& sc = p.complex();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3 * sc.num_triangles(),
                                              3 * sc.num_edges());
  for (int t = 0; t < sc.num_triangles(); ++t)
    for (int s = 0; s < 3; ++s) {
      const SideRef side{t, s};
      const int e = sc.edge_index(side);
      if (sc.is_canonical(side))
        m.block<3, 3>(3 * t, 3 * e) += Eigen::Matrix3cd::Identity();
      else
        m.block<3, 3>(3 * t, 3 * e) -= ad_matrix(p.transition(side));
    }
  return m;
}

void require_non_elementary(const Packing& p, double tol) {
  const SurfaceComplex& sc = p.complex();
  std::vector<MoebiusMap> gens;
  for (int e = 0; e < sc.num_edges(); ++e) {
    const Mat2<double>& m = p.canonical_transition(e).m;
    const double off = std::min((m - Mat2<double>::Identity()).norm(),
                                (m + Mat2<double>::Identity()).norm());
    if (off > tol) gens.push_back(p.canonical_transition(e));
  }
  if (gens.empty())
    throw ElementaryHolonomyError("holonomy is trivial within tolerance");
  // candidate fixed points: eigenvectors of the first generator
  Eigen::ComplexEigenSolver<Mat2<double>> eig(gens[0].m);
  for (int k = 0; k < 2; ++k) {
    const Vec2<double> v = eig.eigenvectors().col(k).normalized();
    bool common = true;
    for (const auto& g : gens) {
      const Vec2<double> w = (g.m * v).normalized();
      if (std::abs(v(0) * w(1) - v(1) * w(0)) > tol) {
        common = false;
        break;
      }
    }
    if (common)
      throw ElementaryHolonomyError(
          "holonomy generators share a fixed point within tolerance");
  }
}

CohomologyReport cohomology_dims(const Packing& p) {
  require_non_elementary(p);
  CohomologyReport rep;
  rep.rank_d0 = rank_with_gap_of(d0_matrix(p));
  rep.rank_d1 = rank_with_gap_of(d1_matrix(p));
  if (rep.determinate()) {
    const int dim_c1 = 3 * p.complex().num_edges();
    rep.dim_h1 = (dim_c1 - rep.rank_d1.rank) - rep.rank_d0.rank;
  }
  return rep;
}

}  // namespace cpk
