#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "packlab/error.hpp"
#include "packlab/reference.hpp"

namespace packlab::reference {

namespace {

std::array<long long, 8> projective_key(const MoebiusMap& m) {
  std::array<double, 8> v{m.a().real(), m.a().imag(), m.b().real(), m.b().imag(),
                          m.c().real(), m.c().imag(), m.d().real(), m.d().imag()};
  for (double x : v) {
    if (std::abs(x) > 1e-7) {
      if (x < 0) {
        for (double& y : v) y = -y;
      }
      break;
    }
  }
  std::array<long long, 8> key{};
  for (int i = 0; i < 8; ++i) key[i] = std::llround(v[i] * 1e7);
  return key;
}

}  // namespace

Enumeration enumerate(const GroupPresentation& pres, const H3Point& o, double T, int L_max,
                      const EnumerateOptions& options) {
  if (!(T > 0.0)) throw Error(ErrorCode::invalid_input, "enumeration radius must be positive");
  if (L_max < 1) throw Error(ErrorCode::invalid_input, "L_max must be at least 1");
  Enumeration e;
  e.T = T;
  e.max_length = L_max;
  e.margin = 2.0 * pres.max_displacement(o);
  e.complete = true;
  const double limit = T + e.margin;
  std::vector<std::array<long long, 8>> keys{projective_key(MoebiusMap::identity())};
  e.records.push_back({Word{}, o, 0.0});

  // The frontier cap applies per first letter, as in the parallel kernel.
  int current_len = 0;
  std::vector<std::size_t> counts(pres.alphabet_size(), 0);
  for_each_reduced_word(pres, L_max, [&](const Word& w, const MoebiusMap& m) {
    if (static_cast<int>(w.size()) != current_len) {
      current_len = static_cast<int>(w.size());
      std::fill(counts.begin(), counts.end(), 0);
    }
    const H3Point p = h3_apply(m, o);
    const double d = h3_distance(o, p);
    if (d <= T) {
      e.records.push_back({w, p, d});
      keys.push_back(projective_key(m));
    }
    if (d > limit) return false;
    if (static_cast<int>(w.size()) == L_max) {
      e.complete = false;
      return false;
    }
    counts[w.front()] += pres.alphabet_size() - 1;
    if (counts[w.front()] > options.frontier_cap) {
      throw Error(ErrorCode::frontier_overflow, "orbit frontier exceeds cap; lower T or L_max");
    }
    return true;
  });

  std::sort(e.records.begin(), e.records.end(), [](const OrbitRecord& a, const OrbitRecord& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.word < b.word;
  });
  std::sort(keys.begin(), keys.end());
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (keys[i] == keys[i - 1]) ++e.collisions;
  }
  return e;
}

LimitSample limit_sample(const GroupPresentation& pres, int depth, LimitMethod method) {
  if (depth < 2) throw Error(ErrorCode::invalid_input, "limit sample depth must be at least 2");
  const H3Point o = H3Point::origin();
  std::vector<SpherePoint> raw;
  std::vector<double> dist;
  for_each_reduced_word(pres, depth, [&](const Word&, const MoebiusMap& m) {
    if (method == LimitMethod::loxodromic_fixed_points) {
      if (is_loxodromic(m)) raw.push_back(attracting_fixed_point(m));
    } else {
      const H3Point p = h3_apply(m, o);
      raw.emplace_back(p.z);
      dist.push_back(h3_distance(o, p));
    }
    return true;
  });
  if (method == LimitMethod::loxodromic_fixed_points) {
    if (raw.empty()) throw Error(ErrorCode::no_loxodromics, "no enumerated word passes |trace| > 2");
  } else {
    std::vector<double> sorted = dist;
    std::sort(sorted.begin(), sorted.end());
    const double threshold = sorted[sorted.size() * 9 / 10];
    std::vector<SpherePoint> kept;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (dist[i] >= threshold) kept.push_back(raw[i]);
    }
    raw = std::move(kept);
  }

  LimitSample sample;
  sample.method = method;
  sample.depth = depth;
  for (const auto& p : raw) {
    if (p.is_infinite() || std::abs(p.value()) > Chart::kChartBound) sample.chart.rotated = true;
  }
  for (const auto& p : raw) {
    const SpherePoint q = sample.chart.to_chart(p);
    sample.points.push_back(q.is_infinite() ? cplx(0.0, 1.0) * Chart::kChartBound : q.value());
  }
  return sample;
}

std::vector<BoxCount> box_counts(const std::vector<cplx>& points, int level_lo, int level_hi) {
  if (level_hi < level_lo) throw Error(ErrorCode::invalid_input, "empty box-count level range");
  if (level_hi > 50 || level_lo < -50) throw Error(ErrorCode::invalid_input, "box-count levels out of range");
  std::vector<BoxCount> out;
  for (int level = level_lo; level <= level_hi; ++level) {
    const double scale = std::ldexp(1.0, level);
    std::set<std::pair<long long, long long>> cells;
    for (const auto& p : points) {
      cells.emplace(static_cast<long long>(std::floor(p.real() * scale)),
                    static_cast<long long>(std::floor(p.imag() * scale)));
    }
    out.push_back({level, cells.size()});
  }
  return out;
}

}  // namespace packlab::reference
