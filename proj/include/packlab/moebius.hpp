#pragma once

// Inversive geometry on the Riemann sphere and the upper half-space model
// of hyperbolic 3-space.

#include <complex>
#include <array>

namespace packlab {

using cplx = std::complex<double>;

/// Tolerances used throughout: algebraic identities, sampled/transported
/// identities, and limit-based quantities.
inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kTransportTol = 1e-9;
inline constexpr double kLimitTol = 1e-6;

/// A point of the extended complex plane. Non-finite input collapses to
/// Infinity, so a finite SpherePoint never carries NaN or inf components.
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(cplx z);  // NOLINT(google-explicit-constructor)
  SpherePoint(double re, double im = 0.0) : SpherePoint(cplx(re, im)) {}

  static SpherePoint infinity() {
    SpherePoint p;
    p.infinite_ = true;
    return p;
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }
  /// Finite coordinate. Undefined for Infinity (returns 0).
  cplx value() const noexcept { return z_; }

  friend bool operator==(const SpherePoint& p, const SpherePoint& q) {
    if (p.infinite_ || q.infinite_) return p.infinite_ == q.infinite_;
    return p.z_ == q.z_;
  }

 private:
  cplx z_{0.0, 0.0};
  bool infinite_ = false;
};

/// Chordal distance on the unit sphere (diameter 2); Infinity is the north pole.
double chordal_distance(const SpherePoint& p, const SpherePoint& q);

/// Element of PSL(2,C), stored with ad - bc = 1.
class MoebiusMap {
 public:
  MoebiusMap() = default;  // identity
  /// Normalizes by a square root of the determinant. Throws InvalidInput
  /// when the determinant vanishes or the entries are not finite.
  MoebiusMap(cplx a, cplx b, cplx c, cplx d);

  static MoebiusMap identity() { return {}; }
  /// z -> lambda z, as diag(sqrt(lambda), 1/sqrt(lambda)).
  static MoebiusMap scaling(cplx lambda);
  static MoebiusMap translation(cplx tau);

  cplx a() const noexcept { return a_; }
  cplx b() const noexcept { return b_; }
  cplx c() const noexcept { return c_; }
  cplx d() const noexcept { return d_; }

  cplx trace() const noexcept { return a_ + d_; }
  cplx det() const noexcept { return a_ * d_ - b_ * c_; }
  MoebiusMap inverse() const noexcept;

  friend MoebiusMap operator*(const MoebiusMap& m, const MoebiusMap& n);

 private:
  struct Unchecked {};
  MoebiusMap(Unchecked, cplx a, cplx b, cplx c, cplx d) : a_(a), b_(b), c_(c), d_(d) {}

  cplx a_{1.0, 0.0};
  cplx b_{0.0, 0.0};
  cplx c_{0.0, 0.0};
  cplx d_{1.0, 0.0};
};

/// True when m = n or m = -n entrywise within tol.
bool projectively_equal(const MoebiusMap& m, const MoebiusMap& n, double tol = kAlgebraicTol);

/// Circle or line with locus A|z|^2 + conj(B) z + B conj(z) + C = 0.
///
/// Stored canonically: |B|^2 - AC = 1; A > 0 for circles; for lines
/// (A = 0) the sign is fixed so that B lies in the half-plane Re B > 0
/// (or Re B = 0, Im B > 0). Under this normalization a circle has
/// center -B/A and radius 1/A.
class GeneralizedCircle {
 public:
  /// Unit circle.
  GeneralizedCircle() : GeneralizedCircle(1.0, cplx(0.0, 0.0), -1.0) {}
  /// Normalizes; throws InvalidInput when |B|^2 - AC <= 0.
  GeneralizedCircle(double A, cplx B, double C);

  /// Coefficients already satisfying |B|^2 - AC = 1; only the sign is
  /// canonicalized. Avoids recomputing the discriminant, which cancels
  /// badly for small circles far from the origin.
  static GeneralizedCircle from_normalized(double A, cplx B, double C);
  static GeneralizedCircle from_center_radius(cplx center, double radius);
  /// Line through p in direction dir (dir != 0).
  static GeneralizedCircle line_through(cplx p, cplx dir);

  double A() const noexcept { return A_; }
  cplx B() const noexcept { return B_; }
  double C() const noexcept { return C_; }

  bool is_line() const noexcept;
  cplx center() const noexcept { return -B_ / A_; }
  double radius() const noexcept { return 1.0 / A_; }

  /// Value of the Hermitian form at z.
  double locus_value(cplx z) const noexcept;
  /// Euclidean distance from z to the locus.
  double distance_to(cplx z) const noexcept;
  bool contains(const SpherePoint& z, double tol = kTransportTol) const noexcept;
  /// Point of the locus at parameter theta in [0, 2 pi). For lines the
  /// parameter is mapped through tan(theta / 2).
  SpherePoint sample(double theta) const noexcept;

 private:
  struct Trusted {};
  GeneralizedCircle(Trusted, double A, cplx B, double C);

  double A_;
  cplx B_;
  double C_;
};

/// Point (z, t) of the upper half-space, t > 0.
struct H3Point {
  cplx z{0.0, 0.0};
  double t = 1.0;

  /// Throws InvalidInput when t <= 0 or a coordinate is not finite.
  static H3Point make(cplx z, double t);
  static H3Point origin() { return {}; }
};

SpherePoint apply_point(const MoebiusMap& m, const SpherePoint& z);
GeneralizedCircle apply_circle(const MoebiusMap& m, const GeneralizedCircle& c);
/// Image of c under z -> lambda z (lambda > 0) by coefficient scaling:
/// (A / lambda, B, C lambda). Exact when lambda is a power of two.
GeneralizedCircle dilate(const GeneralizedCircle& c, double lambda);
/// Reflection (inversion) in c: the anti-Moebius involution fixing c pointwise.
SpherePoint invert_point(const GeneralizedCircle& c, const SpherePoint& z);
/// ((z1-z3)(z2-z4)) / ((z1-z4)(z2-z3)), with factors containing Infinity
/// cancelled. Throws DegenerateQuadruple when two inputs coincide.
cplx cross_ratio(const SpherePoint& z1, const SpherePoint& z2, const SpherePoint& z3,
                 const SpherePoint& z4);

/// Poincare extension of m to the upper half-space.
H3Point h3_apply(const MoebiusMap& m, const H3Point& p);
double h3_distance(const H3Point& p, const H3Point& q);

/// beta_inf(p, q) = log t_q - log t_p, the limit of d(x_s, p) - d(x_s, q)
/// along a ray x_s going up the vertical axis.
double busemann_at_infinity(const H3Point& p, const H3Point& q);
/// beta_xi(p, q), by transporting xi to Infinity.
double busemann(const SpherePoint& xi, const H3Point& p, const H3Point& q);

/// The two fixed points of a non-identity map (equal for parabolics).
std::array<SpherePoint, 2> fixed_points(const MoebiusMap& m);
/// Attracting fixed point of a loxodromic map.
SpherePoint attracting_fixed_point(const MoebiusMap& m);
bool is_loxodromic(const MoebiusMap& m, double margin = 1e-9);

}  // namespace packlab
