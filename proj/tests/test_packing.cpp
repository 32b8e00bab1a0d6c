#include <doctest.h>

#include <nlohmann/json.hpp>

#include "cpk/fixtures.hpp"
#include "cpk/fuchsian.hpp"
#include "cpk/packing.hpp"
#include "util.hpp"

using namespace cpk;

namespace {
const Packing& fuchsian_g2() {
  static Packing p = solve_fuchsian(fixtures::genus2());
  return p;
}
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

TEST_CASE("radius solver reaches the angle targets") {
  const SurfaceComplex sc = fixtures::genus2();
  const FuchsianReport rep = solve_radii(sc);
  REQUIRE(rep.radii.size() == 10);
  // independent re-summation from the returned radii
  for (int v = 0; v < sc.num_vertices(); ++v) {
    double sum = 0;
    for (const OrientedEdge& e : sc.vertex_star(v))
      sum += corner_angle(rep.radii[sc.vertex(e.tri, e.side)],
                          rep.radii[sc.vertex(e.tri, (e.side + 1) % 3)],
                          rep.radii[sc.vertex(e.tri, (e.side + 2) % 3)]);
    CHECK(std::abs(sum - kTwoPi) < 1e-11);
  }
  for (double r : rep.radii) {
    CHECK(r > 0);
    CHECK(r < 20);
  }
}

TEST_CASE("no hyperbolic packing below genus 2") {
  CHECK_THROWS_AS(solve_fuchsian(fixtures::torus7()), PackingError);
  CHECK_THROWS_AS(solve_fuchsian(fixtures::octahedron()), PackingError);
}

TEST_CASE("Fuchsian packing satisfies the tangency equations") {
  const Packing& p = fuchsian_g2();
  CHECK(p.max_star_residual() < 1e-9);
  const auto res = evaluate_tangency(p);
  CHECK(res.size() == 36);
  for (const auto& r : res) {
    CHECK(std::abs(r.residual) < 1e-10);
    CHECK(r.future);
  }
  CHECK(check_packing(p).ok());
}

TEST_CASE("Fuchsian holonomy preserves the unit disk") {
  const Packing& p = fuchsian_g2();
  const DS3Point unit = DS3Point::unit_disk();
  for (int e = 0; e < p.complex().num_edges(); ++e) {
    const DS3Point moved = act_on_disk(p.canonical_transition(e), unit);
    CHECK(norm4(moved.X - unit.X) < 1e-8);
  }
}

TEST_CASE("base normalization") {
  const Packing& p = fuchsian_g2();
  const int t = p.base_triangle();
  // first disk centered at the origin
  const DS3Point d0 = p.corner_disk(t, 0);
  CHECK(std::abs(d0.X.b) < 1e-12);
  // first tangency point on the positive real axis
  const RP1Point q = p.tangency_point({t, 0});
  CHECK(std::abs(q.affine().imag()) < 1e-12);
  CHECK(q.affine().real() > 0);
}

TEST_CASE("perturbing one selection value breaks exactly its star") {
  const Packing& p = fuchsian_g2();
  const SurfaceComplex& sc = p.complex();
  const int v0 = 3;
  const auto tb = tangent_basis(p.selection(v0));
  // move along each tangent basis direction; an incident edge must react
  // to at least one of them, non-incident edges to none
  std::vector<double> worst(sc.num_edges(), 0.0);
  for (int m = 0; m < 3; ++m) {
    std::vector<DS3Point> sel;
    std::vector<Corner> home;
    std::vector<MoebiusMap> trans;
    for (int v = 0; v < sc.num_vertices(); ++v) {
      home.push_back(p.home_corner(v));
      DS3Point s = p.selection(v);
      if (v == v0) s = DS3Point(s.X + tb[m] * 1e-3);
      sel.push_back(s);
    }
    for (int e = 0; e < sc.num_edges(); ++e)
      trans.push_back(p.canonical_transition(e));
    const Packing q(sc, p.base_triangle(), trans, home, sel);
    const auto res = evaluate_tangency(q);
    for (int e = 0; e < sc.num_edges(); ++e)
      worst[e] = std::max(worst[e], std::abs(res[e].residual));
  }
  int touched = 0;
  for (int e = 0; e < sc.num_edges(); ++e) {
    const OrientedEdge oe = sc.canonical(e);
    const bool incident = sc.tail(oe) == v0 || sc.head(oe) == v0;
    if (incident) {
      ++touched;
      CHECK(worst[e] > 1e-4);
    } else {
      CHECK(worst[e] < 1e-10);
    }
  }
  CHECK(touched == sc.valence(v0));
}

TEST_CASE("dual disks pass through their tangency points and stay disjoint") {
  const Packing& p = fuchsian_g2();
  const SurfaceComplex& sc = p.complex();
  const auto duals = dual_disks(p);
  for (int t = 0; t < sc.num_triangles(); ++t) {
    for (int s = 0; s < 3; ++s) {
      const RP1Point q = p.tangency_point({t, s});
      CHECK(std::abs(herm_form(duals[t].X, q)) < 1e-10);
    }
    // the dual disk must not contain its triangle's vertex-disk centers
    for (int c = 0; c < 3; ++c) {
      const auto circ = circle_from_disk(p.corner_disk(t, c));
      REQUIRE(circ.has_value());
      CHECK(disk_contains(duals[t], RP1Point::from_affine(circ->center)) ==
            Region::Outside);
    }
  }
  // adjacent duals: sampled interior points of one lie outside the other
  for (int t = 0; t < sc.num_triangles(); ++t) {
    for (int s = 0; s < 3; ++s) {
      const SideRef g = sc.glued({t, s});
      const DS3Point other = act_on_disk(p.transition({t, s}), duals[g.tri]);
      const auto circ = circle_from_disk(other);
      REQUIRE(circ.has_value());
      for (int k = 0; k < 8; ++k) {
        const cx z = circ->center +
                     0.6 * circ->radius * std::polar(1.0, kTwoPi * k / 8.0);
        CHECK(disk_contains(duals[t], RP1Point::from_affine(z)) ==
              Region::Outside);
      }
    }
  }
}

TEST_CASE("tangency evaluation is chart independent") {
  const Packing& p = fuchsian_g2();
  const auto base = evaluate_tangency(p);
  for (int nb : {5, 17}) {
    const Packing q = reroot(p, nb);
    CHECK(q.max_star_residual() < 1e-9);
    const auto res = evaluate_tangency(q);
    for (size_t e = 0; e < res.size(); ++e)
      CHECK(std::abs(res[e].residual - base[e].residual) < 1e-10);
  }
}

TEST_CASE("tangency evaluation is Möbius equivariant") {
  const Packing& p = fuchsian_g2();
  const auto base = evaluate_tangency(p);
  const MoebiusMap B = testutil::rand_moebius();
  const Packing q = apply_moebius(p, B);
  const auto res = evaluate_tangency(q);
  for (size_t e = 0; e < res.size(); ++e)
    CHECK(std::abs(res[e].residual - base[e].residual) < 1e-10);
}

TEST_CASE("packing document round trip") {
  const Packing& p = fuchsian_g2();
  const nlohmann::json doc = write_packing(p);
  const Packing q = read_packing(doc);
  for (int v = 0; v < p.complex().num_vertices(); ++v)
    CHECK(norm4(q.selection(v).X - p.selection(v).X) < 1e-15);
  for (int e = 0; e < p.complex().num_edges(); ++e)
    CHECK((q.canonical_transition(e).m - p.canonical_transition(e).m).norm() <
          1e-15);
}

TEST_CASE("corrupt documents are rejected") {
  const Packing& p = fuchsian_g2();
  nlohmann::json doc = write_packing(p);
  // find a non-identity transition and replace it with the identity
  for (auto& t : doc["transitions"]) {
    const auto& m = t["matrix"];
    const double off = std::abs(m[0][0].get<double>() - 1.0) +
                       std::abs(m[0][1].get<double>()) +
                       std::abs(m[1][0].get<double>());
    if (off > 0.1) {
      t["matrix"] = {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}};
      break;
    }
  }
  CHECK_THROWS_AS(read_packing(doc), PackingError);
  CHECK_THROWS_AS(read_packing(nlohmann::json::object()), PackingError);
}

TEST_CASE("svg depth contract") {
  const Packing& p = fuchsian_g2();
  const std::string svg0 = export_svg(p, 0, false);
  size_t count0 = 0;
  for (size_t pos = svg0.find("class=\"packing\""); pos != std::string::npos;
       pos = svg0.find("class=\"packing\"", pos + 1))
    ++count0;
  CHECK(count0 == 3);
  const std::string svg1 = export_svg(p, 1, false);
  size_t count1 = 0;
  for (size_t pos = svg1.find("class=\"packing\""); pos != std::string::npos;
       pos = svg1.find("class=\"packing\"", pos + 1))
    ++count1;
  CHECK(count1 == 6);
  // deterministic output
  CHECK(export_svg(p, 3) == export_svg(p, 3));
}
