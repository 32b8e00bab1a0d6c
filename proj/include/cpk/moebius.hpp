#pragma once

// Möbius / de Sitter geometry kernel.
//
// Conventions (fixed once, everything downstream relies on them):
//   * Herm2<S> is a 2x2 Hermitian matrix [[a, b], [conj(b), d]] with a, d
//     real; the Minkowski pairing is the polarization of X -> -det X, so
//     mink(X, X) = -det X with signature (3,1).
//   * A disk is Delta(X) = { [z0:z1] : sum X_ij z_i conj(z_j) < 0 } for a
//     determinant -1 Hermitian X (a point of de Sitter space).
//   * PSL(2,C) acts by B . X = (B^-1)^T X conj(B^-1); with the form above
//     this satisfies Delta(B.X) = B(Delta(X)) exactly.
//   * Two tangent disks have mink(X, X') = -1 with X + X' positive
//     semidefinite; the tangency point is the complex conjugate of the
//     null vector of X + X' (the conjugation makes the point lie on both
//     boundary circles and makes the construction Möbius-equivariant).
//   * Infinitesimally, A in sl2 acts on Herm2 by
//     Y_A(X) = -A^T X - X conj(A), and on CP^1 by the quadratic field
//     q_A(z) = -c z^2 + 2 a z + b for A = [[a, b], [c, -a]].

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cpk {

template <typename S> using Cx = std::complex<S>;
template <typename S> using Mat2 = Eigen::Matrix<Cx<S>, 2, 2>;
template <typename S> using Vec2 = Eigen::Matrix<Cx<S>, 2, 1>;

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Hermitian matrices (Minkowski 4-space)

template <typename S>
struct Herm2 {
  S a = 0, d = 0;  // real diagonal
  Cx<S> b = 0;     // upper off-diagonal; lower is conj(b)

  Herm2() = default;
  Herm2(S a_, Cx<S> b_, S d_) : a(a_), d(d_), b(b_) {}

  static Herm2 from_matrix(const Mat2<S>& m, S tol = S(1e-12)) {
    if (std::abs(m(0, 0).imag()) > tol || std::abs(m(1, 1).imag()) > tol ||
        std::abs(m(0, 1) - std::conj(m(1, 0))) > tol) {
      throw GeometryError("matrix is not Hermitian within tolerance");
    }
    return Herm2(m(0, 0).real(), (m(0, 1) + std::conj(m(1, 0))) / S(2),
                 m(1, 1).real());
  }

  Mat2<S> matrix() const {
    Mat2<S> m;
    m << Cx<S>(a), b, std::conj(b), Cx<S>(d);
    return m;
  }

  S det() const { return a * d - std::norm(b); }
  S trace() const { return a + d; }

  Eigen::Matrix<S, 4, 1> coords() const {  // (a, Re b, Im b, d)
    return {a, b.real(), b.imag(), d};
  }
  static Herm2 from_coords(const Eigen::Matrix<S, 4, 1>& c) {
    return Herm2(c(0), Cx<S>(c(1), c(2)), c(3));
  }

  Herm2 operator+(const Herm2& o) const { return {a + o.a, b + o.b, d + o.d}; }
  Herm2 operator-(const Herm2& o) const { return {a - o.a, b - o.b, d - o.d}; }
  Herm2 operator-() const { return {-a, -b, -d}; }
  Herm2 operator*(S s) const { return {a * s, b * s, d * s}; }
};

template <typename S>
S mink(const Herm2<S>& x, const Herm2<S>& y) {
  // -1/2 (det(X+Y) - det X - det Y)
  return S(-0.5) * (x.a * y.d + x.d * y.a -
                    S(2) * (x.b * std::conj(y.b)).real());
}

template <typename S>
S norm4(const Herm2<S>& x) {
  return x.coords().norm();
}

// ---------------------------------------------------------------------------
// Points of CP^1

template <typename S>
struct ProjPoint {
  Vec2<S> v;  // unit Euclidean norm

  ProjPoint() : v(Cx<S>(1), Cx<S>(0)) {}
  explicit ProjPoint(const Vec2<S>& w) : v(w) {
    S n = v.norm();
    if (!(n > S(0))) throw GeometryError("zero homogeneous vector");
    v /= n;
  }
  ProjPoint(Cx<S> z0, Cx<S> z1) : ProjPoint(Vec2<S>(z0, z1)) {}

  static ProjPoint from_affine(Cx<S> z) { return ProjPoint(z, Cx<S>(1)); }
  static ProjPoint infinity() { return ProjPoint(Cx<S>(1), Cx<S>(0)); }

  bool is_infinity(S tol = S(1e-12)) const { return std::abs(v(1)) <= tol; }
  Cx<S> affine() const { return v(0) / v(1); }
};

template <typename S>
bool proj_equal(const ProjPoint<S>& p, const ProjPoint<S>& q,
                S tol = S(1e-10)) {
  return std::abs(p.v(0) * q.v(1) - p.v(1) * q.v(0)) <= tol;
}

// Value of the Hermitian form of X on the representative of p:
// sum_ij X_ij z_i conj(z_j).  Negative inside Delta(X).
template <typename S>
S herm_form(const Herm2<S>& x, const ProjPoint<S>& p) {
  const Cx<S> z0 = p.v(0), z1 = p.v(1);
  return x.a * std::norm(z0) + x.d * std::norm(z1) +
         S(2) * (x.b * z0 * std::conj(z1)).real();
}

// ---------------------------------------------------------------------------
// de Sitter points (round disks)

template <typename S>
struct DiskPoint {
  Herm2<S> X;  // det == -1 after normalization

  DiskPoint() : X(S(1), Cx<S>(0), S(-1)) {}
  explicit DiskPoint(const Herm2<S>& h, S tol = S(1e-10)) : X(h) {
    const S q = -X.det();
    if (!(q > tol)) throw GeometryError("matrix is not spacelike");
    // skip the rescale when already normalized, so that reading a written
    // point is bit-stable
    if (std::abs(q - S(1)) > S(1e-12))
      X = X * (S(1) / std::sqrt(q));
  }

  static DiskPoint unit_disk() { return DiskPoint(Herm2<S>(1, 0, -1)); }
  static DiskPoint upper_half_plane() {
    return DiskPoint(Herm2<S>(0, Cx<S>(0, 1), 0));
  }
  DiskPoint complement() const {
    DiskPoint c;
    c.X = -X;
    return c;
  }
};

enum class Region { Inside, Boundary, Outside };

template <typename S>
Region disk_contains(const DiskPoint<S>& d, const ProjPoint<S>& p,
                     S tol = S(1e-10)) {
  const S f = herm_form(d.X, p);
  if (std::abs(f) <= tol) return Region::Boundary;
  return f < 0 ? Region::Inside : Region::Outside;
}

// ---------------------------------------------------------------------------
// sl(2,C): traceless matrices [[a, b], [c, -a]]

template <typename S>
struct Sl2 {
  Cx<S> a = 0, b = 0, c = 0;

  Sl2() = default;
  Sl2(Cx<S> a_, Cx<S> b_, Cx<S> c_) : a(a_), b(b_), c(c_) {}

  static Sl2 from_matrix(const Mat2<S>& m) {
    return Sl2((m(0, 0) - m(1, 1)) / S(2), m(0, 1), m(1, 0));
  }
  Mat2<S> matrix() const {
    Mat2<S> m;
    m << a, b, c, -a;
    return m;
  }

  Eigen::Matrix<Cx<S>, 3, 1> coords() const { return {a, b, c}; }
  static Sl2 from_coords(const Eigen::Matrix<Cx<S>, 3, 1>& v) {
    return Sl2(v(0), v(1), v(2));
  }
  // real coordinates (Re a, Im a, Re b, Im b, Re c, Im c)
  Eigen::Matrix<S, 6, 1> real_coords() const {
    return {a.real(), a.imag(), b.real(), b.imag(), c.real(), c.imag()};
  }
  static Sl2 from_real_coords(const Eigen::Matrix<S, 6, 1>& v) {
    return Sl2(Cx<S>(v(0), v(1)), Cx<S>(v(2), v(3)), Cx<S>(v(4), v(5)));
  }

  S norm() const {
    return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c));
  }
  Sl2 operator+(const Sl2& o) const { return {a + o.a, b + o.b, c + o.c}; }
  Sl2 operator-(const Sl2& o) const { return {a - o.a, b - o.b, c - o.c}; }
  Sl2 operator-() const { return {-a, -b, -c}; }
  Sl2 operator*(Cx<S> s) const { return {a * s, b * s, c * s}; }
};

template <typename S>
Cx<S> killing(const Sl2<S>& x, const Sl2<S>& y) {
  // tr(XY)
  return S(2) * x.a * y.a + x.b * y.c + x.c * y.b;
}

// q_A(z) = a2 z^2 + a1 z + a0 in the standard chart.
template <typename S>
std::array<Cx<S>, 3> vector_field_poly(const Sl2<S>& A) {
  return {-A.c, S(2) * A.a, A.b};
}

template <typename S>
Cx<S> discriminant(const std::array<Cx<S>, 3>& q) {
  return q[1] * q[1] - S(4) * q[0] * q[2];
}

enum class Chart { Standard, Reciprocal };

template <typename S>
Chart chart_for(const ProjPoint<S>& p, S ratio = S(10)) {
  return (std::abs(p.v(0)) <= ratio * std::abs(p.v(1))) ? Chart::Standard
                                                        : Chart::Reciprocal;
}

// Coordinate of vec(A) at p in the given affine chart.  In the standard
// chart this is q_A(z); in the reciprocal chart w = 1/z it is
// -b w^2 - 2a w + c.
template <typename S>
Cx<S> field_value_in(const Sl2<S>& A, const ProjPoint<S>& p, Chart chart) {
  if (chart == Chart::Standard) {
    const Cx<S> z = p.v(0) / p.v(1);
    return -A.c * z * z + S(2) * A.a * z + A.b;
  }
  const Cx<S> w = p.v(1) / p.v(0);
  return -A.b * w * w - S(2) * A.a * w + A.c;
}

template <typename S>
Cx<S> field_value(const Sl2<S>& A, const ProjPoint<S>& p) {
  return field_value_in(A, p, chart_for(p));
}

// The unique (up to complex scale) sl2 element whose field has a double
// zero at p: for p = [z0:z1], A = (z0,z1)^T (-z1, z0).
template <typename S>
Sl2<S> nilpotent_at(const ProjPoint<S>& p) {
  const Cx<S> z0 = p.v(0), z1 = p.v(1);
  return Sl2<S>(-z0 * z1, z0 * z0, -z1 * z1);
}

// ---------------------------------------------------------------------------
// Möbius maps (det-1 representatives of PSL(2,C))

template <typename S>
struct Moebius {
  Mat2<S> m;

  Moebius() : m(Mat2<S>::Identity()) {}
  explicit Moebius(const Mat2<S>& raw) : m(raw) {
    const Cx<S> det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(det) < S(1e-14)) throw GeometryError("singular Möbius map");
    if (std::abs(det - Cx<S>(1)) > S(1e-12))
      m /= std::sqrt(det);
  }

  static Moebius identity() { return Moebius(); }

  Moebius inverse() const {
    Moebius r;
    r.m << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return r;
  }
  Moebius operator*(const Moebius& o) const {
    Moebius r;
    r.m = m * o.m;
    return r;
  }
  ProjPoint<S> operator()(const ProjPoint<S>& p) const {
    return ProjPoint<S>(Vec2<S>(m * p.v));
  }
};

template <typename S>
Herm2<S> act_on_herm(const Moebius<S>& B, const Herm2<S>& X) {
  const Mat2<S> Binv = B.inverse().m;
  const Mat2<S> r =
      Binv.transpose() * X.matrix() * Binv.conjugate();
  // re-hermitize to absorb roundoff
  return Herm2<S>(r(0, 0).real(),
                  (r(0, 1) + std::conj(r(1, 0))) / S(2), r(1, 1).real());
}

template <typename S>
DiskPoint<S> act_on_disk(const Moebius<S>& B, const DiskPoint<S>& X) {
  DiskPoint<S> r;
  r.X = act_on_herm(B, X.X);
  return r;
}

template <typename S>
Sl2<S> ad(const Moebius<S>& B, const Sl2<S>& A) {
  return Sl2<S>::from_matrix(Mat2<S>(B.m * A.matrix() * B.inverse().m));
}

// Y_A(X) = -A^T X - X conj(A); the derivative of act_on_herm(exp(tA), X).
template <typename S>
Herm2<S> infinitesimal_action(const Sl2<S>& A, const Herm2<S>& X) {
  const Mat2<S> Am = A.matrix();
  const Mat2<S> r = -Am.transpose() * X.matrix() - X.matrix() * Am.conjugate();
  return Herm2<S>(r(0, 0).real(), (r(0, 1) + std::conj(r(1, 0))) / S(2),
                  r(1, 1).real());
}

// Closed-form exponential: A^2 = (a^2 + bc) I for traceless A.
template <typename S>
Moebius<S> exp_sl2(const Sl2<S>& A) {
  const Cx<S> mu2 = A.a * A.a + A.b * A.c;
  const Cx<S> mu = std::sqrt(mu2);
  Cx<S> ch, sh;  // cosh(mu), sinh(mu)/mu
  if (std::abs(mu) < S(1e-6)) {
    ch = S(1) + mu2 / S(2) + mu2 * mu2 / S(24);
    sh = S(1) + mu2 / S(6) + mu2 * mu2 / S(120);
  } else {
    ch = std::cosh(mu);
    sh = std::sinh(mu) / mu;
  }
  Mat2<S> m = ch * Mat2<S>::Identity() + sh * A.matrix();
  return Moebius<S>(m);
}

// ---------------------------------------------------------------------------
// Tangency

template <typename S>
struct Tangency {
  bool tangent = false;
  bool antipodal = false;  // X' == -X: complementary hemispheres
  std::optional<ProjPoint<S>> point;
};

template <typename S>
Tangency<S> tangency_check(const DiskPoint<S>& X, const DiskPoint<S>& Xp,
                           S tol = S(1e-10)) {
  Tangency<S> res;
  const Herm2<S> sum = X.X + Xp.X;
  if (norm4(sum) <= tol) {
    res.antipodal = true;
    return res;
  }
  if (std::abs(mink(X.X, Xp.X) + S(1)) > tol) return res;
  // future-directed test: psd <=> trace >= 0 and det >= -tol
  if (sum.trace() < S(0) || sum.det() < -tol) return res;
  res.tangent = true;
  // null vector of the rank-1 psd matrix, then conjugate
  Vec2<S> k;
  if (std::abs(sum.a) >= std::abs(sum.d)) {
    k << -sum.b, Cx<S>(sum.a);
  } else {
    k << Cx<S>(sum.d), -std::conj(sum.b);
  }
  res.point = ProjPoint<S>(Vec2<S>(k.conjugate()));
  return res;
}

// ---------------------------------------------------------------------------
// Stabilizers and normal representatives

namespace detail {
template <typename S>
std::array<Sl2<S>, 6> sl2_real_basis() {
  const Cx<S> i(0, 1);
  return {Sl2<S>(1, 0, 0), Sl2<S>(i, 0, 0), Sl2<S>(0, 1, 0),
          Sl2<S>(0, i, 0), Sl2<S>(0, 0, 1), Sl2<S>(0, 0, i)};
}
}  // namespace detail

// Real 4x6 matrix of A -> Y_A(X) in real coordinates.
template <typename S>
Eigen::Matrix<S, 4, 6> infinitesimal_action_matrix(const Herm2<S>& X) {
  Eigen::Matrix<S, 4, 6> M;
  const auto basis = detail::sl2_real_basis<S>();
  for (int k = 0; k < 6; ++k)
    M.col(k) = infinitesimal_action(basis[k], X).coords();
  return M;
}

// Real basis of st(X) = { A : Y_A(X) = 0 }.
template <typename S>
std::array<Sl2<S>, 3> stabilizer_basis(const DiskPoint<S>& X) {
  Eigen::Matrix<S, 4, 6> M = infinitesimal_action_matrix(X.X);
  Eigen::JacobiSVD<Eigen::Matrix<S, 4, 6>> svd(
      M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  std::array<Sl2<S>, 3> out;
  for (int k = 0; k < 3; ++k) {
    Eigen::Matrix<S, 6, 1> v = svd.matrixV().col(3 + k);
    out[k] = Sl2<S>::from_real_coords(v);
  }
  return out;
}

// Orthonormal (Euclidean) basis of the tangent space { H : mink(X,H) = 0 }.
template <typename S>
std::array<Herm2<S>, 3> tangent_basis(const DiskPoint<S>& X) {
  // mink(X, H) = -1/2 (a_X d_H + d_X a_H - 2 Re(b_X conj(b_H)))
  Eigen::Matrix<S, 1, 4> row;
  row << X.X.d, S(-2) * X.X.b.real(), S(-2) * X.X.b.imag(), X.X.a;
  Eigen::JacobiSVD<Eigen::Matrix<S, 1, 4>> svd(
      row, Eigen::ComputeFullU | Eigen::ComputeFullV);
  std::array<Herm2<S>, 3> out;
  for (int k = 0; k < 3; ++k)
    out[k] = Herm2<S>::from_coords(svd.matrixV().col(1 + k));
  return out;
}

// Unique A in i*st(X) with Y_A(X) = Xdot (fields normal to the boundary).
template <typename S>
Sl2<S> normal_representative(const DiskPoint<S>& X, const Herm2<S>& Xdot,
                             S tol = S(1e-10)) {
  if (std::abs(mink(X.X, Xdot)) > tol * std::max(S(1), norm4(Xdot)))
    throw GeometryError("Xdot is not tangent to dS3 at X");
  const auto st = stabilizer_basis(X);
  Eigen::Matrix<S, 4, 3> M;
  std::array<Sl2<S>, 3> ist;
  for (int k = 0; k < 3; ++k) {
    ist[k] = st[k] * Cx<S>(0, 1);
    M.col(k) = infinitesimal_action(ist[k], X.X).coords();
  }
  Eigen::Matrix<S, 3, 1> c =
      M.colPivHouseholderQr().solve(Xdot.coords());
  const S resid = (M * c - Xdot.coords()).norm();
  if (resid > S(1e-8) * std::max(S(1), norm4(Xdot)))
    throw GeometryError("normal representative system is inconsistent");
  Sl2<S> A = ist[0] * Cx<S>(c(0)) + ist[1] * Cx<S>(c(1)) + ist[2] * Cx<S>(c(2));
  return A;
}

// ---------------------------------------------------------------------------
// Three-point frames and circles through three points

// Möbius map sending (p1, p2, p3) -> (0, 1, infinity).
template <typename S>
Moebius<S> three_point_frame(const ProjPoint<S>& p1, const ProjPoint<S>& p2,
                             const ProjPoint<S>& p3) {
  const Cx<S> lam = p3.v(1) * p2.v(0) - p3.v(0) * p2.v(1);
  const Cx<S> mu = p1.v(1) * p2.v(0) - p1.v(0) * p2.v(1);
  Mat2<S> m;
  m << lam * p1.v(1), -lam * p1.v(0), mu * p3.v(1), -mu * p3.v(0);
  const Cx<S> det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (std::abs(det) < S(1e-14))
    throw GeometryError("three-point frame: points are not distinct");
  return Moebius<S>(m);
}

enum class DiskSide { Left, Right };

// Disk whose boundary passes through the three points; Left selects the
// disk seen on the left of the circle oriented p1 -> p2 -> p3.
template <typename S>
DiskPoint<S> circle_through(const ProjPoint<S>& p1, const ProjPoint<S>& p2,
                            const ProjPoint<S>& p3,
                            DiskSide side = DiskSide::Left) {
  const Moebius<S> frame = three_point_frame(p1, p2, p3);
  DiskPoint<S> d = act_on_disk(frame.inverse(), DiskPoint<S>::upper_half_plane());
  return side == DiskSide::Left ? d : d.complement();
}

using Real = double;
using HermMatrix = Herm2<Real>;
using DS3Point = DiskPoint<Real>;
using Sl2Elem = Sl2<Real>;
using MoebiusMap = Moebius<Real>;
using RP1Point = ProjPoint<Real>;
using cx = Cx<Real>;

}  // namespace cpk
