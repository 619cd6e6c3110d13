#include "packlab/moebius.hpp"

#include <cmath>

#include "packlab/error.hpp"

namespace packlab {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Line tolerance on the normalized A coefficient (radius >= 1e12).
constexpr double kLineTol = 1e-12;

}  // namespace

SpherePoint::SpherePoint(cplx z) : z_(z) {
  if (!finite(z)) {
    z_ = cplx(0.0, 0.0);
    infinite_ = true;
  }
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
  if (p.is_infinite() && q.is_infinite()) return 0.0;
  if (p.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(q.value()));
  if (q.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(p.value()));
  const cplx z = p.value();
  const cplx w = q.value();
  return 2.0 * std::abs(z - w) / std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

MoebiusMap::MoebiusMap(cplx a, cplx b, cplx c, cplx d) {
  if (!finite(a) || !finite(b) || !finite(c) || !finite(d)) {
    throw Error(ErrorCode::invalid_input, "Moebius entries must be finite");
  }
  const cplx det = a * d - b * c;
  if (std::abs(det) == 0.0) {
    throw Error(ErrorCode::invalid_input, "Moebius map with zero determinant");
  }
  const cplx s = std::sqrt(det);
  a_ = a / s;
  b_ = b / s;
  c_ = c / s;
  d_ = d / s;
}

MoebiusMap MoebiusMap::scaling(cplx lambda) {
  const cplx s = std::sqrt(lambda);
  return MoebiusMap(Unchecked{}, s, 0.0, 0.0, 1.0 / s);
}

MoebiusMap MoebiusMap::translation(cplx tau) { return MoebiusMap(Unchecked{}, 1.0, tau, 0.0, 1.0); }

MoebiusMap MoebiusMap::inverse() const noexcept { return MoebiusMap(Unchecked{}, d_, -b_, -c_, a_); }

MoebiusMap operator*(const MoebiusMap& m, const MoebiusMap& n) {
  return MoebiusMap(MoebiusMap::Unchecked{}, m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_,
                    m.c_ * n.a_ + m.d_ * n.c_, m.c_ * n.b_ + m.d_ * n.d_);
}

bool projectively_equal(const MoebiusMap& m, const MoebiusMap& n, double tol) {
  auto close = [tol](const MoebiusMap& x, const MoebiusMap& y, double sign) {
    return std::abs(x.a() - sign * y.a()) <= tol && std::abs(x.b() - sign * y.b()) <= tol &&
           std::abs(x.c() - sign * y.c()) <= tol && std::abs(x.d() - sign * y.d()) <= tol;
  };
  return close(m, n, 1.0) || close(m, n, -1.0);
}

GeneralizedCircle::GeneralizedCircle(double A, cplx B, double C) {
  if (!std::isfinite(A) || !finite(B) || !std::isfinite(C)) {
    throw Error(ErrorCode::invalid_input, "circle coefficients must be finite");
  }
  const double disc = std::norm(B) - A * C;
  if (!(disc > 0.0)) {
    throw Error(ErrorCode::invalid_input, "degenerate circle (|B|^2 - AC <= 0)");
  }
  const double s = 1.0 / std::sqrt(disc);
  *this = GeneralizedCircle(Trusted{}, A * s, B * s, C * s);
}

GeneralizedCircle::GeneralizedCircle(Trusted, double A, cplx B, double C) {
  bool flip = false;
  if (std::abs(A) > kLineTol) {
    flip = A < 0.0;
  } else {
    flip = B.real() < 0.0 || (B.real() == 0.0 && B.imag() < 0.0);
  }
  A_ = flip ? -A : A;
  B_ = flip ? -B : B;
  C_ = flip ? -C : C;
}

GeneralizedCircle GeneralizedCircle::from_normalized(double A, cplx B, double C) {
  if (!std::isfinite(A) || !finite(B) || !std::isfinite(C)) {
    throw Error(ErrorCode::invalid_input, "circle coefficients must be finite");
  }
  return {Trusted{}, A, B, C};
}

GeneralizedCircle GeneralizedCircle::from_center_radius(cplx center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::invalid_input, "circle radius must be finite and positive");
  }
  // (|z - c|^2 - r^2) / r, which has discriminant exactly 1.
  return from_normalized(1.0 / radius, -center / radius, (std::norm(center) - radius * radius) / radius);
}

GeneralizedCircle GeneralizedCircle::line_through(cplx p, cplx dir) {
  if (std::abs(dir) == 0.0) {
    throw Error(ErrorCode::invalid_input, "line direction must be nonzero");
  }
  // Normal n = i * dir; locus Re(conj(n) (z - p)) = 0, i.e. B = n / 2.
  const cplx n = cplx(0.0, 1.0) * dir / std::abs(dir);
  const cplx B = n / 2.0;
  const double C = -2.0 * (std::conj(B) * p).real();
  return {0.0, B, C};
}

bool GeneralizedCircle::is_line() const noexcept { return std::abs(A_) <= kLineTol; }

double GeneralizedCircle::locus_value(cplx z) const noexcept {
  return A_ * std::norm(z) + 2.0 * (std::conj(B_) * z).real() + C_;
}

double GeneralizedCircle::distance_to(cplx z) const noexcept {
  if (is_line()) {
    // conj(B) z + B conj(z) + C = 0 has unit normal B / |B| and |B| = 1.
    return std::abs(2.0 * (std::conj(B_) * z).real() + C_) / (2.0 * std::abs(B_));
  }
  return std::abs(std::abs(z - center()) - radius());
}

bool GeneralizedCircle::contains(const SpherePoint& z, double tol) const noexcept {
  if (z.is_infinite()) return is_line();
  return distance_to(z.value()) <= tol;
}

SpherePoint GeneralizedCircle::sample(double theta) const noexcept {
  if (is_line()) {
    // Foot of the perpendicular from the origin, then move along the line.
    const cplx unit_normal = B_ / std::abs(B_);
    const cplx foot = -unit_normal * (C_ / (2.0 * std::abs(B_)));
    const cplx dir = cplx(0.0, 1.0) * unit_normal;
    return SpherePoint(foot + dir * std::tan(theta / 2.0));
  }
  return SpherePoint(center() + radius() * std::polar(1.0, theta));
}

H3Point H3Point::make(cplx z, double t) {
  if (!finite(z) || !std::isfinite(t) || !(t > 0.0)) {
    throw Error(ErrorCode::invalid_input, "H3 point requires finite z and t > 0");
  }
  return {z, t};
}

SpherePoint apply_point(const MoebiusMap& m, const SpherePoint& z) {
  if (z.is_infinite()) {
    if (m.c() == cplx(0.0, 0.0)) return SpherePoint::infinity();
    return SpherePoint(m.a() / m.c());
  }
  const cplx den = m.c() * z.value() + m.d();
  if (den == cplx(0.0, 0.0)) return SpherePoint::infinity();
  return SpherePoint((m.a() * z.value() + m.b()) / den);
}

GeneralizedCircle apply_circle(const MoebiusMap& m, const GeneralizedCircle& c) {
  // H' = N^* H N with N = m^{-1} = [[d, -b], [-c, a]], H = [[A, B], [conj B, C]].
  const cplx n11 = m.d(), n12 = -m.b(), n21 = -m.c(), n22 = m.a();
  const cplx A = c.A(), B = c.B(), Bc = std::conj(c.B()), C = c.C();
  // H N
  const cplx h11 = A * n11 + B * n21;
  const cplx h12 = A * n12 + B * n22;
  const cplx h21 = Bc * n11 + C * n21;
  const cplx h22 = Bc * n12 + C * n22;
  // N^* (H N)
  const cplx A2 = std::conj(n11) * h11 + std::conj(n21) * h21;
  const cplx B2 = std::conj(n11) * h12 + std::conj(n21) * h22;
  const cplx C2 = std::conj(n12) * h12 + std::conj(n22) * h22;
  // Congruence by a unimodular matrix preserves the discriminant.
  return GeneralizedCircle::from_normalized(A2.real(), B2, C2.real());
}

GeneralizedCircle dilate(const GeneralizedCircle& c, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorCode::invalid_input, "dilation factor must be positive");
  return GeneralizedCircle::from_normalized(c.A() / lambda, c.B(), c.C() * lambda);
}

SpherePoint invert_point(const GeneralizedCircle& c, const SpherePoint& z) {
  // z* = -(B conj(z) + C) / (A conj(z) + conj(B)).
  if (z.is_infinite()) {
    if (c.is_line()) return SpherePoint::infinity();
    return SpherePoint(c.center());
  }
  const cplx zc = std::conj(z.value());
  const cplx den = c.A() * zc + std::conj(c.B());
  if (den == cplx(0.0, 0.0)) return SpherePoint::infinity();
  return SpherePoint(-(c.B() * zc + c.C()) / den);
}

cplx cross_ratio(const SpherePoint& z1, const SpherePoint& z2, const SpherePoint& z3,
                 const SpherePoint& z4) {
  const std::array<SpherePoint, 4> z{z1, z2, z3, z4};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (z[i] == z[j]) {
        throw Error(ErrorCode::degenerate_quadruple, "cross-ratio of coincident points");
      }
    }
  }
  // Differences involving Infinity cancel pairwise between numerator and denominator.
  auto diff = [](const SpherePoint& p, const SpherePoint& q) -> cplx {
    if (p.is_infinite() || q.is_infinite()) return 1.0;
    return p.value() - q.value();
  };
  const cplx num = diff(z1, z3) * diff(z2, z4);
  const cplx den = diff(z1, z4) * diff(z2, z3);
  return num / den;
}

H3Point h3_apply(const MoebiusMap& m, const H3Point& p) {
  const cplx w = m.c() * p.z + m.d();
  const double t2 = p.t * p.t;
  const double denom = std::norm(w) + std::norm(m.c()) * t2;
  const cplx z = ((m.a() * p.z + m.b()) * std::conj(w) + m.a() * std::conj(m.c()) * t2) / denom;
  return {z, p.t / denom};
}

double h3_distance(const H3Point& p, const H3Point& q) {
  const double dt = p.t - q.t;
  const double num = std::norm(p.z - q.z) + dt * dt;
  // arccosh(1 + x) = log1p(x + sqrt(x (x + 2))) is accurate near x = 0.
  const double x = num / (2.0 * p.t * q.t);
  return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

double busemann_at_infinity(const H3Point& p, const H3Point& q) {
  return std::log(q.t) - std::log(p.t);
}

double busemann(const SpherePoint& xi, const H3Point& p, const H3Point& q) {
  if (xi.is_infinite()) return busemann_at_infinity(p, q);
  // z -> 1 / (xi - z) sends xi to Infinity.
  const MoebiusMap to_inf(0.0, 1.0, -1.0, xi.value());
  return busemann_at_infinity(h3_apply(to_inf, p), h3_apply(to_inf, q));
}

std::array<SpherePoint, 2> fixed_points(const MoebiusMap& m) {
  const cplx tr = m.trace();
  const cplx s = std::sqrt(tr * tr - 4.0);
  std::array<SpherePoint, 2> out;
  for (int k = 0; k < 2; ++k) {
    const cplx lambda = (tr + (k == 0 ? s : -s)) / 2.0;
    // Fixed point z satisfies c z + d = lambda and z (lambda - a) = b.
    const cplx via_c = lambda - m.d();
    const cplx via_a = lambda - m.a();
    if (std::abs(m.c()) >= std::abs(via_a)) {
      out[k] = m.c() == cplx(0.0, 0.0) ? SpherePoint::infinity() : SpherePoint(via_c / m.c());
    } else {
      out[k] = SpherePoint(m.b() / via_a);
    }
  }
  return out;
}

bool is_loxodromic(const MoebiusMap& m, double margin) { return std::abs(m.trace()) > 2.0 + margin; }

SpherePoint attracting_fixed_point(const MoebiusMap& m) {
  // The attracting point has multiplier 1 / lambda^2 with |lambda| > 1.
  const cplx tr = m.trace();
  const cplx s = std::sqrt(tr * tr - 4.0);
  const auto fps = fixed_points(m);
  return std::abs(tr + s) >= std::abs(tr - s) ? fps[0] : fps[1];
}

}  // namespace packlab
