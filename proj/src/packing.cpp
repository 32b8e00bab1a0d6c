#include "cpk/packing.hpp"

#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cpk {

Packing::Packing(SurfaceComplex sc, int base_triangle,
                 std::vector<MoebiusMap> transition_of_canonical_edge,
                 std::vector<Corner> home_corner,
                 std::vector<DS3Point> selection)
    : sc_(std::move(sc)),
      base_(base_triangle),
      trans_(std::move(transition_of_canonical_edge)),
      home_(std::move(home_corner)),
      sel_(std::move(selection)) {
  if (static_cast<int>(trans_.size()) != sc_.num_edges())
    throw PackingError("one transition per unoriented edge required");
  if (static_cast<int>(home_.size()) != sc_.num_vertices() ||
      static_cast<int>(sel_.size()) != sc_.num_vertices())
    throw PackingError("one home corner and selection value per vertex required");
  for (int v = 0; v < sc_.num_vertices(); ++v)
    if (sc_.vertex(home_[v].tri, home_[v].corner) != v)
      throw PackingError("home corner of vertex " + std::to_string(v) +
                         " does not touch it");
  build_transports();
}

MoebiusMap Packing::transition(SideRef s) const {
  const int e = sc_.edge_index(s);
  return sc_.is_canonical(s) ? trans_[e] : trans_[e].inverse();
}

void Packing::build_transports() {
  corner_u_.assign(3 * sc_.num_triangles(), MoebiusMap::identity());
  closure_.assign(sc_.num_vertices(), {});
  for (int v = 0; v < sc_.num_vertices(); ++v) {
    const auto& star = sc_.vertex_star(v);
    // rotate the star so it starts at the home corner
    int start = -1;
    for (int k = 0; k < static_cast<int>(star.size()); ++k)
      if (star[k].tri == home_[v].tri && star[k].side == home_[v].corner)
        start = k;
    if (start < 0) throw PackingError("home corner not in vertex star");
    MoebiusMap u = MoebiusMap::identity();
    const int n = static_cast<int>(star.size());
    for (int k = 0; k < n; ++k) {
      const OrientedEdge cur = star[(start + k) % n];
      corner_u_[3 * cur.tri + cur.side] = u;
      // step counterclockwise: cross the previous side of the face
      const SideRef crossed{cur.tri, (cur.side + 2) % 3};
      const SideRef next = sc_.glued(crossed);
      u = transition(next) * u;
    }
    const double dplus = (u.m - Mat2<double>::Identity()).norm();
    const double dminus = (u.m + Mat2<double>::Identity()).norm();
    closure_[v].sign = dplus <= dminus ? 1 : -1;
    closure_[v].residual = std::min(dplus, dminus);
  }
}

double Packing::max_star_residual() const {
  double m = 0;
  for (const auto& c : closure_) m = std::max(m, c.residual);
  return m;
}

DS3Point Packing::corner_disk(int tri, int corner) const {
  const int v = sc_.vertex(tri, corner);
  return act_on_disk(corner_u_[3 * tri + corner], sel_[v]);
}

RP1Point Packing::tangency_point(SideRef s) const {
  const DS3Point a = corner_disk(s.tri, s.side);
  const DS3Point b = corner_disk(s.tri, (s.side + 1) % 3);
  const auto t = tangency_check(a, b, 1e-6);
  if (!t.tangent)
    throw PackingError("edge (" + std::to_string(s.tri) + "," +
                       std::to_string(s.side) + ") is not a tangency");
  return *t.point;
}

std::vector<EdgeResidual> evaluate_tangency(const Packing& p) {
  const SurfaceComplex& sc = p.complex();
  std::vector<EdgeResidual> out(sc.num_edges());
  for (int e = 0; e < sc.num_edges(); ++e) {
    const OrientedEdge oe = sc.canonical(e);
    const DS3Point a = p.corner_disk(oe.tri, oe.side);
    const DS3Point b = p.corner_disk(oe.tri, (oe.side + 1) % 3);
    out[e].residual = mink(a.X, b.X) + 1.0;
    const HermMatrix sum = a.X + b.X;
    out[e].future = sum.trace() >= 0;
  }
  return out;
}

double max_abs_residual(const Packing& p) {
  double m = 0;
  for (const auto& r : evaluate_tangency(p)) m = std::max(m, std::abs(r.residual));
  return m;
}

std::vector<DS3Point> dual_disks(const Packing& p) {
  const SurfaceComplex& sc = p.complex();
  std::vector<DS3Point> out;
  out.reserve(sc.num_triangles());
  for (int t = 0; t < sc.num_triangles(); ++t) {
    const RP1Point q0 = p.tangency_point({t, 0});
    const RP1Point q1 = p.tangency_point({t, 1});
    const RP1Point q2 = p.tangency_point({t, 2});
    if (proj_equal(q0, q1, 1e-9) || proj_equal(q1, q2, 1e-9) ||
        proj_equal(q0, q2, 1e-9))
      throw PackingError("degenerate triangle " + std::to_string(t) +
                         ": coincident tangency points");
    out.push_back(circle_through(q0, q1, q2, DiskSide::Left));
  }
  return out;
}

PackingCheck check_packing(const Packing& p) {
  PackingCheck c;
  c.max_star_residual = p.max_star_residual();
  for (const auto& r : evaluate_tangency(p)) {
    c.max_tangency_residual =
        std::max(c.max_tangency_residual, std::abs(r.residual));
    c.all_future = c.all_future && r.future;
  }
  const SurfaceComplex& sc = p.complex();
  for (int t = 0; t < sc.num_triangles() && c.non_degenerate; ++t) {
    try {
      std::array<RP1Point, 3> q = {p.tangency_point({t, 0}),
                                   p.tangency_point({t, 1}),
                                   p.tangency_point({t, 2})};
      if (proj_equal(q[0], q[1], 1e-9) || proj_equal(q[1], q[2], 1e-9) ||
          proj_equal(q[0], q[2], 1e-9))
        c.non_degenerate = false;
    } catch (const PackingError&) {
      c.non_degenerate = false;
    }
  }
  return c;
}

Packing apply_moebius(const Packing& p, const MoebiusMap& B) {
  const SurfaceComplex& sc = p.complex();
  std::vector<MoebiusMap> trans;
  trans.reserve(sc.num_edges());
  for (int e = 0; e < sc.num_edges(); ++e)
    trans.push_back(B * p.canonical_transition(e) * B.inverse());
  std::vector<Corner> home;
  std::vector<DS3Point> sel;
  for (int v = 0; v < sc.num_vertices(); ++v) {
    home.push_back(p.home_corner(v));
    sel.push_back(act_on_disk(B, p.selection(v)));
  }
  return Packing(sc, p.base_triangle(), std::move(trans), std::move(home),
                 std::move(sel));
}

Packing reroot(const Packing& p, int new_base) {
  const SurfaceComplex& sc = p.complex();
  const auto dt = sc.dual_spanning_tree(new_base);
  // chart change per triangle: C_child = C_parent * transition(parent side)
  std::vector<MoebiusMap> C(sc.num_triangles());
  C[new_base] = MoebiusMap::identity();
  for (const SideRef& cross : dt.tree_crossings) {
    const int child = sc.glued(cross).tri;
    C[child] = C[cross.tri] * p.transition(cross);
  }
  std::vector<MoebiusMap> trans;
  trans.reserve(sc.num_edges());
  for (int e = 0; e < sc.num_edges(); ++e) {
    const OrientedEdge oe = sc.canonical(e);
    const int t = oe.tri, tp = sc.glued(oe).tri;
    trans.push_back(C[t] * p.canonical_transition(e) * C[tp].inverse());
  }
  std::vector<Corner> home;
  std::vector<DS3Point> sel;
  for (int v = 0; v < sc.num_vertices(); ++v) {
    const Corner h = p.home_corner(v);
    home.push_back(h);
    sel.push_back(act_on_disk(C[h.tri], p.selection(v)));
  }
  return Packing(sc, new_base, std::move(trans), std::move(home),
                 std::move(sel));
}

// ---------------------------------------------------------------------------
// documents

nlohmann::json write_packing(const Packing& p) {
  nlohmann::json doc;
  doc["complex"] = complex_to_json(p.complex());
  doc["base"] = p.base_triangle();
  nlohmann::json ts = nlohmann::json::array();
  const SurfaceComplex& sc = p.complex();
  for (int e = 0; e < sc.num_edges(); ++e) {
    const OrientedEdge oe = sc.canonical(e);
    const Mat2<double>& m = p.canonical_transition(e).m;
    ts.push_back({{"dual_edge", {oe.tri, oe.side}},
                  {"matrix",
                   {{m(0, 0).real(), m(0, 0).imag()},
                    {m(0, 1).real(), m(0, 1).imag()},
                    {m(1, 0).real(), m(1, 0).imag()},
                    {m(1, 1).real(), m(1, 1).imag()}}}});
  }
  doc["transitions"] = ts;
  nlohmann::json sel = nlohmann::json::array();
  for (int v = 0; v < sc.num_vertices(); ++v) {
    const HermMatrix& X = p.selection(v).X;
    sel.push_back({{"vertex", v},
                   {"home", p.home_corner(v).tri},
                   {"X", {X.a, X.b.real(), X.b.imag(), X.d}}});
  }
  doc["selection"] = sel;
  return doc;
}

Packing read_packing(const nlohmann::json& doc, double star_tol,
                     double tangency_tol) {
  if (!doc.is_object() || !doc.contains("complex"))
    throw PackingError("packing document: missing \"complex\"");
  SurfaceComplex sc = parse_complex(doc.at("complex"));
  const int base = doc.value("base", 0);
  std::vector<MoebiusMap> trans(sc.num_edges());
  std::vector<char> seen(sc.num_edges(), 0);
  for (const auto& t : doc.at("transitions")) {
    const SideRef side{t.at("dual_edge").at(0).get<int>(),
                       t.at("dual_edge").at(1).get<int>()};
    const auto& m = t.at("matrix");
    Mat2<double> mat;
    for (int k = 0; k < 4; ++k)
      mat(k / 2, k % 2) =
          cx(m.at(k).at(0).get<double>(), m.at(k).at(1).get<double>());
    const int e = sc.edge_index(side);
    trans[e] =
        sc.is_canonical(side) ? MoebiusMap(mat) : MoebiusMap(mat).inverse();
    seen[e] = 1;
  }
  for (int e = 0; e < sc.num_edges(); ++e)
    if (!seen[e])
      throw PackingError("transition missing for edge " + std::to_string(e));
  std::vector<Corner> home(sc.num_vertices());
  std::vector<DS3Point> sel(sc.num_vertices());
  std::vector<char> vseen(sc.num_vertices(), 0);
  for (const auto& s : doc.at("selection")) {
    const int v = s.at("vertex").get<int>();
    const int ht = s.at("home").get<int>();
    int corner = -1;
    for (int c = 0; c < 3; ++c)
      if (sc.vertex(ht, c) == v && corner < 0) corner = c;
    if (corner < 0)
      throw PackingError("home triangle of vertex " + std::to_string(v) +
                         " does not contain it");
    const auto& X = s.at("X");
    HermMatrix h(X.at(0).get<double>(),
                 cx(X.at(1).get<double>(), X.at(2).get<double>()),
                 X.at(3).get<double>());
    home[v] = Corner{ht, corner};
    sel[v] = DS3Point(h);
    vseen[v] = 1;
  }
  for (int v = 0; v < sc.num_vertices(); ++v)
    if (!vseen[v])
      throw PackingError("selection missing for vertex " + std::to_string(v));
  Packing p(std::move(sc), base, std::move(trans), std::move(home),
            std::move(sel));
  // re-validate the invariants; report the first offender
  for (int v = 0; v < p.complex().num_vertices(); ++v)
    if (p.star_closure(v).residual > star_tol)
      throw PackingError("vertex-star closure fails at vertex " +
                         std::to_string(v) + " (residual " +
                         std::to_string(p.star_closure(v).residual) + ")");
  const auto res = evaluate_tangency(p);
  for (int e = 0; e < static_cast<int>(res.size()); ++e) {
    if (std::abs(res[e].residual) > tangency_tol)
      throw PackingError("tangency equation fails at edge " +
                         std::to_string(e) + " (residual " +
                         std::to_string(res[e].residual) + ")");
    if (!res[e].future)
      throw PackingError("edge " + std::to_string(e) +
                         " has a past-directed sum");
  }
  return p;
}

// ---------------------------------------------------------------------------
// developed picture

DS3Point disk_from_circle(const EuclideanCircle& c) {
  const double R = c.radius;
  return DS3Point(HermMatrix(1.0 / R, -std::conj(c.center) / R,
                             (std::norm(c.center) - R * R) / R));
}

std::optional<EuclideanCircle> circle_from_disk(const DS3Point& d,
                                                double min_a) {
  if (d.X.a <= min_a) return std::nullopt;  // line or complement of a circle
  EuclideanCircle c;
  c.center = -std::conj(d.X.b) / d.X.a;
  c.radius = 1.0 / d.X.a;
  return c;
}

namespace {
std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

void emit_circle(std::ostringstream& os, const char* cls,
                 const EuclideanCircle& c) {
  os << "  <circle class=\"" << cls << "\" cx=\"" << fmt(c.center.real())
     << "\" cy=\"" << fmt(-c.center.imag()) << "\" r=\"" << fmt(c.radius)
     << "\"/>\n";
}
}  // namespace

std::string export_svg(const Packing& p, int depth, bool with_dual) {
  const SurfaceComplex& sc = p.complex();
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.05 -1.05 2.1 "
        "2.1\" width=\"820\" height=\"820\">\n";
  os << "  <style>.packing{fill:none;stroke:#1f4e79;stroke-width:0.004}"
        ".dual{fill:none;stroke:#c05020;stroke-width:0.002}"
        ".horizon{fill:none;stroke:#999;stroke-width:0.002}</style>\n";
  os << "  <circle class=\"horizon\" cx=\"0\" cy=\"0\" r=\"1\"/>\n";

  struct Node {
    int tri;
    MoebiusMap chart;  // map into the base chart
    int depth;
  };
  std::vector<std::array<double, 3>> drawn_packing, drawn_dual;
  auto dedupe_emit = [&](std::vector<std::array<double, 3>>& drawn,
                         const char* cls, const EuclideanCircle& c) {
    for (const auto& d : drawn)
      if (std::abs(d[0] - c.center.real()) < 1e-9 &&
          std::abs(d[1] - c.center.imag()) < 1e-9 &&
          std::abs(d[2] - c.radius) < 1e-9)
        return;
    drawn.push_back({c.center.real(), c.center.imag(), c.radius});
    emit_circle(os, cls, c);
  };

  const auto duals = with_dual ? dual_disks(p) : std::vector<DS3Point>{};
  std::queue<Node> q;
  q.push({p.base_triangle(), MoebiusMap::identity(), 0});
  while (!q.empty()) {
    const Node n = q.front();
    q.pop();
    for (int c = 0; c < 3; ++c) {
      const DS3Point d = act_on_disk(n.chart, p.corner_disk(n.tri, c));
      if (auto circ = circle_from_disk(d))
        dedupe_emit(drawn_packing, "packing", *circ);
    }
    if (with_dual) {
      const DS3Point d = act_on_disk(n.chart, duals[n.tri]);
      if (auto circ = circle_from_disk(d)) dedupe_emit(drawn_dual, "dual", *circ);
    }
    if (n.depth < depth) {
      for (int s = 0; s < 3; ++s) {
        const SideRef g = sc.glued({n.tri, s});
        q.push({g.tri, n.chart * p.transition({n.tri, s}), n.depth + 1});
      }
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace cpk
