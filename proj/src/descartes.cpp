#include "packlab/descartes.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <deque>
#include <exception>

#include "packlab/error.hpp"

namespace packlab {

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  // Work with negative values so the minimum representable value is safe.
  i128 x = neg ? v : -v;
  std::string digits;
  while (x != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(x % 10)));
    x /= 10;
  }
  if (neg) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

i128 parse_i128(const std::string& text) {
  std::size_t pos = 0;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  bool neg = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    neg = text[pos] == '-';
    ++pos;
  }
  std::size_t end = text.size();
  while (end > pos && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (pos == end) throw Error(ErrorCode::invalid_input, "empty integer '" + text + "'");
  i128 v = 0;
  for (std::size_t i = pos; i < end; ++i) {
    const char ch = text[i];
    if (ch < '0' || ch > '9') throw Error(ErrorCode::invalid_input, "malformed integer '" + text + "'");
    v = checked::sub(checked::mul(v, 10), ch - '0');
  }
  return neg ? v : checked::sub(0, v);
}

namespace checked {

i128 add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::overflow, "128-bit addition overflow");
  return r;
}

i128 sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::overflow, "128-bit subtraction overflow");
  return r;
}

i128 mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::overflow, "128-bit multiplication overflow");
  return r;
}

}  // namespace checked

namespace {

using checked::add;
using checked::mul;
using checked::sub;

GaussianInt gadd(GaussianInt x, GaussianInt y) { return {add(x.re, y.re), add(x.im, y.im)}; }
GaussianInt gsub(GaussianInt x, GaussianInt y) { return {sub(x.re, y.re), sub(x.im, y.im)}; }
GaussianInt gmul(GaussianInt x, GaussianInt y) {
  return {sub(mul(x.re, y.re), mul(x.im, y.im)), add(mul(x.re, y.im), mul(x.im, y.re))};
}
GaussianInt gscale(GaussianInt x, i128 s) { return {mul(x.re, s), mul(x.im, s)}; }

// Bilinear form of 2 sum v^2 - (sum v)^2.
i128 descartes_bilinear(const std::array<i128, 4>& u, const std::array<i128, 4>& v) {
  i128 dot = 0, su = 0, sv = 0;
  for (int i = 0; i < 4; ++i) {
    dot = add(dot, mul(u[i], v[i]));
    su = add(su, u[i]);
    sv = add(sv, v[i]);
  }
  return sub(mul(2, dot), mul(su, sv));
}

double to_double(i128 v) { return static_cast<double>(v); }

}  // namespace

i128 descartes_form(const std::array<i128, 4>& k) { return descartes_bilinear(k, k); }

bool satisfies_descartes(const DescartesQuadruple& q) { return descartes_form(q.k) == 0; }

bool satisfies_extended(const DescartesQuadruple& q) {
  GaussianInt sum, sum_sq;
  for (const auto& w : q.w) {
    sum = gadd(sum, w);
    sum_sq = gadd(sum_sq, gmul(w, w));
  }
  return gscale(sum_sq, 2) == gmul(sum, sum);
}

DescartesQuadruple reflect(const DescartesQuadruple& q, int i) {
  if (i < 0 || i > 3) throw Error(ErrorCode::invalid_input, "reflection index out of range");
  DescartesQuadruple r = q;
  i128 ks = 0;
  GaussianInt ws;
  for (int j = 0; j < 4; ++j) {
    if (j == i) continue;
    ks = add(ks, q.k[j]);
    ws = gadd(ws, q.w[j]);
  }
  r.k[i] = sub(mul(2, ks), q.k[i]);
  r.w[i] = gsub(gscale(ws, 2), q.w[i]);
  return r;
}

DescartesQuadruple root_quadruple_bounded() {
  DescartesQuadruple q;
  q.k = {-1, 2, 2, 3};
  q.w = {GaussianInt{0, 0}, GaussianInt{0, 1}, GaussianInt{0, -1}, GaussianInt{2, 0}};
  return q;
}

namespace {

void validate_bounded(const std::array<i128, 4>& k) {
  int negatives = 0;
  for (i128 v : k) {
    if (v == 0) throw Error(ErrorCode::unbounded_root, "root contains a line (zero curvature)");
    if (v < 0) ++negatives;
  }
  if (negatives != 1) {
    throw Error(ErrorCode::unbounded_root, "root must have exactly one negative curvature");
  }
}

// Solves sum_i x_i c_i = 0 for x_free when c_free != 0; false if not integral.
bool solve_last(const std::array<i128, 4>& coef, std::array<i128, 4>& x, int free_idx) {
  i128 partial = 0;
  for (int i = 0; i < 4; ++i) {
    if (i != free_idx) partial = add(partial, mul(coef[i], x[i]));
  }
  if (coef[free_idx] == 0 || partial % coef[free_idx] != 0) return false;
  x[free_idx] = -partial / coef[free_idx];
  return true;
}

}  // namespace

DescartesQuadruple root_from_curvatures(const std::array<i128, 4>& k) {
  if (descartes_form(k) != 0) {
    throw Error(ErrorCode::invalid_input, "curvatures violate 2 sum k^2 = (sum k)^2");
  }
  validate_bounded(k);
  if (k == std::array<i128, 4>{-1, 2, 2, 3}) return root_quadruple_bounded();

  // Real and imaginary parts x, y of the curvature-centers satisfy
  // B(k, x) = B(k, y) = B(x, y) = 0 and Q(x) = Q(y) = 4, where B is the
  // bilinear form of Q(v) = 2 sum v^2 - (sum v)^2. Search a box for a
  // Gaussian-integer solution and confirm it with the tangency oracle.
  const int neg = static_cast<int>(std::find_if(k.begin(), k.end(), [](i128 v) { return v < 0; }) - k.begin());
  i128 total = 0;
  for (i128 v : k) total = add(total, v);
  std::array<i128, 4> lin{};
  for (int i = 0; i < 4; ++i) lin[i] = sub(mul(2, k[i]), total);

  const double bound_radius = 1.0 / std::abs(to_double(k[neg]));
  std::array<i128, 4> range{};
  for (int i = 0; i < 4; ++i) {
    range[i] = i == neg ? -k[neg] - 1 : static_cast<i128>(std::ceil(to_double(k[i]) * (1.0 + bound_radius)));
  }
  int free_idx = -1;
  for (int i = 3; i >= 0; --i) {
    if (i != neg && lin[i] != 0) {
      free_idx = i;
      break;
    }
  }
  if (free_idx < 0) throw Error(ErrorCode::invalid_input, "no placement search axis for this root");
  std::array<int, 2> loop_idx{};
  {
    int n = 0;
    for (int i = 0; i < 4; ++i) {
      if (i != neg && i != free_idx) loop_idx[n++] = i;
    }
  }

  auto candidates = [&]() {
    std::vector<std::array<i128, 4>> out;
    for (i128 a = 0; a <= range[neg]; ++a) {
      for (i128 b = -range[loop_idx[0]]; b <= range[loop_idx[0]]; ++b) {
        for (i128 c = -range[loop_idx[1]]; c <= range[loop_idx[1]]; ++c) {
          std::array<i128, 4> x{};
          x[neg] = -a;
          x[loop_idx[0]] = b;
          x[loop_idx[1]] = c;
          if (!solve_last(lin, x, free_idx)) continue;
          if (descartes_bilinear(x, x) == 4) out.push_back(x);
        }
      }
    }
    return out;
  };
  const auto xs = candidates();
  for (const auto& x : xs) {
    for (const auto& y : xs) {
      if (descartes_bilinear(x, y) != 0) continue;
      DescartesQuadruple q;
      q.k = k;
      for (int i = 0; i < 4; ++i) q.w[i] = GaussianInt{x[i], y[i]};
      if (satisfies_extended(q) && pairwise_tangent(q)) return q;
    }
  }
  throw Error(ErrorCode::invalid_input, "no Gaussian-integer placement found for this root");
}

std::array<GeneralizedCircle, 4> realize(const DescartesQuadruple& q) {
  std::array<GeneralizedCircle, 4> out;
  for (int i = 0; i < 4; ++i) {
    if (q.k[i] == 0) throw Error(ErrorCode::zero_curvature, "cannot realize a line as a circle");
    out[i] = PackedCircle{q.k[i], q.w[i], 0}.circle();
  }
  return out;
}

bool pairwise_tangent(const DescartesQuadruple& q, double tol) {
  const auto circles = realize(q);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double d = std::abs(circles[i].center() - circles[j].center());
      const double ri = circles[i].radius();
      const double rj = circles[j].radius();
      const bool internal = q.k[i] < 0 || q.k[j] < 0;
      const double expected = internal ? std::abs(ri - rj) : ri + rj;
      if (std::abs(d - expected) > tol) return false;
    }
  }
  return true;
}

cplx PackedCircle::center() const {
  const double k = to_double(curvature);
  // Avoid emitting -0.0 for the origin-centered bounding circle.
  return {curvature_center.re == 0 ? 0.0 : to_double(curvature_center.re) / k,
          curvature_center.im == 0 ? 0.0 : to_double(curvature_center.im) / k};
}

double PackedCircle::radius() const { return 1.0 / std::abs(to_double(curvature)); }

GeneralizedCircle PackedCircle::circle() const {
  // A = |k|, B = -|k| center = -sign(k) w, C = (|w|^2 - 1) / |k|.
  const double ka = std::abs(to_double(curvature));
  const cplx w(to_double(curvature_center.re), to_double(curvature_center.im));
  const cplx B = curvature > 0 ? -w : w;
  return GeneralizedCircle::from_normalized(ka, B, (std::norm(w) - 1.0) / ka);
}

bool canonical_less(const PackedCircle& a, const PackedCircle& b) {
  if (a.curvature != b.curvature) return a.curvature < b.curvature;
  return a.curvature_center < b.curvature_center;
}

namespace {

struct Node {
  DescartesQuadruple q;
  int last;
  int depth;
};

// Breadth-first exploration of the subtree below reflect(root, first).
std::vector<PackedCircle> explore_subtree(const DescartesQuadruple& root, int first, i128 t) {
  std::vector<PackedCircle> out;
  const DescartesQuadruple start = reflect(root, first);
  if (start.k[first] > t) return out;
  out.push_back({start.k[first], start.w[first], 1});
  std::deque<Node> frontier{{start, first, 1}};
  while (!frontier.empty()) {
    const Node node = frontier.front();
    frontier.pop_front();
    for (int i = 0; i < 4; ++i) {
      if (i == node.last) continue;
      DescartesQuadruple child = reflect(node.q, i);
      if (child.k[i] > t) continue;
      out.push_back({child.k[i], child.w[i], node.depth + 1});
      frontier.push_back({child, i, node.depth + 1});
    }
  }
  return out;
}

}  // namespace

PackingRun generate(const DescartesQuadruple& root, i128 t) {
  validate_bounded(root.k);
  if (!satisfies_descartes(root) || !satisfies_extended(root)) {
    throw Error(ErrorCode::invalid_input, "root is not a Descartes quadruple");
  }
  const i128 kmax = *std::max_element(root.k.begin(), root.k.end());
  if (t < kmax) throw Error(ErrorCode::invalid_input, "threshold below the largest root curvature");

  std::array<std::vector<PackedCircle>, 4> parts;
  std::array<std::exception_ptr, 4> failures{};
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < 4; ++i) {
    try {
      parts[i] = explore_subtree(root, i, t);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  PackingRun run;
  run.root = root;
  run.max_curvature = t;
  std::size_t total = 4;
  for (const auto& p : parts) total += p.size();
  run.circles.reserve(total);
  for (int i = 0; i < 4; ++i) run.circles.push_back({root.k[i], root.w[i], 0});
  for (auto& p : parts) run.circles.insert(run.circles.end(), p.begin(), p.end());

  // Set union by exact (k, w); a duplicate keeps its shortest word.
  std::sort(run.circles.begin(), run.circles.end(), [](const PackedCircle& a, const PackedCircle& b) {
    if (canonical_less(a, b)) return true;
    if (canonical_less(b, a)) return false;
    return a.word_len < b.word_len;
  });
  run.circles.erase(std::unique(run.circles.begin(), run.circles.end(),
                                [](const PackedCircle& a, const PackedCircle& b) {
                                  return a.curvature == b.curvature && a.curvature_center == b.curvature_center;
                                }),
                    run.circles.end());
  return run;
}

std::map<i128, std::int64_t> curvature_census(const PackingRun& run) {
  std::map<i128, std::int64_t> census;
  for (const auto& c : run.circles) ++census[c.curvature];
  return census;
}

}  // namespace packlab
