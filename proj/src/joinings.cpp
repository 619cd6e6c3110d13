#include "packlab/joinings.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>

#include "packlab/error.hpp"

namespace packlab {

void verify_pingpong(const GroupPresentation& pres, const std::vector<PingPongDisks>& disks) {
  if (disks.size() != pres.rank()) {
    throw Error(ErrorCode::not_schottky, "need one disk pair per generator");
  }
  struct Disk {
    cplx c;
    double r;
  };
  std::vector<Disk> all;
  for (std::size_t i = 0; i < disks.size(); ++i) {
    const auto& d = disks[i];
    if (d.name != pres.generators()[i].name) {
      throw Error(ErrorCode::not_schottky, "ping-pong disks must follow generator order; got " + d.name);
    }
    if (!(d.radius > 0.0) || !(d.inv_radius > 0.0)) throw Error(ErrorCode::not_schottky, "disk radius must be positive");
    all.push_back({d.center, d.radius});
    all.push_back({d.inv_center, d.inv_radius});
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (std::abs(all[i].c - all[j].c) <= all[i].r + all[j].r) {
        throw Error(ErrorCode::not_schottky, "ping-pong disks overlap");
      }
    }
  }
  for (std::size_t i = 0; i < disks.size(); ++i) {
    const auto& d = disks[i];
    const MoebiusMap& g = pres.generators()[i].map;
    const auto image = apply_circle(g, GeneralizedCircle::from_center_radius(d.center, d.radius));
    const double scale = std::max(1.0, std::abs(d.inv_center) + d.inv_radius);
    if (image.is_line() || std::abs(image.center() - d.inv_center) > 1e-7 * scale ||
        std::abs(image.radius() - d.inv_radius) > 1e-7 * scale) {
      throw Error(ErrorCode::not_schottky, "generator " + d.name + " does not pair its disks");
    }
    // Infinity lies outside every disk, so its image must land inside the partner.
    const SpherePoint inf_image = apply_point(g, SpherePoint::infinity());
    if (inf_image.is_infinite() || std::abs(inf_image.value() - d.inv_center) >= d.inv_radius) {
      throw Error(ErrorCode::not_schottky, "generator " + d.name + " maps the disk exterior the wrong way");
    }
  }
}

RepresentationPair::RepresentationPair(GroupPresentation rho1, GroupPresentation rho2,
                                       std::vector<PingPongDisks> pingpong1, std::vector<PingPongDisks> pingpong2)
    : rho1_(std::move(rho1)),
      rho2_(std::move(rho2)),
      pingpong1_(std::move(pingpong1)),
      pingpong2_(std::move(pingpong2)) {
  if (rho1_.rank() != rho2_.rank()) throw Error(ErrorCode::invalid_input, "representations differ in rank");
  for (std::size_t i = 0; i < rho1_.rank(); ++i) {
    if (rho1_.generators()[i].name != rho2_.generators()[i].name) {
      throw Error(ErrorCode::invalid_input, "generator names must match in order");
    }
  }
}

namespace {

struct PairItem {
  std::uint8_t last;
  Word word;
  MoebiusMap m1;
  MoebiusMap m2;
};

// Children of every item, both representations evaluated on the same word.
std::vector<PairItem> expand(const RepresentationPair& pair, const std::vector<PairItem>& level) {
  std::vector<PairItem> next;
  const std::size_t n = pair.rho1().alphabet_size();
  next.reserve(level.size() * (n - 1));
  for (const auto& item : level) {
    const std::size_t forbidden = GroupPresentation::inverse_letter(item.last);
    for (std::size_t l = 0; l < n; ++l) {
      if (l == forbidden) continue;
      Word w = item.word;
      w.push_back(static_cast<std::uint8_t>(l));
      next.push_back({static_cast<std::uint8_t>(l), std::move(w), item.m1 * pair.rho1().letter(l),
                      item.m2 * pair.rho2().letter(l)});
    }
  }
  return next;
}

PairItem first_item(const RepresentationPair& pair, std::size_t l) {
  return {static_cast<std::uint8_t>(l), Word{static_cast<std::uint8_t>(l)}, pair.rho1().letter(l),
          pair.rho2().letter(l)};
}

}  // namespace

BoundaryPairSample boundary_pairs(const RepresentationPair& pair, int depth) {
  if (depth < 4) throw Error(ErrorCode::invalid_input, "boundary sample depth must be at least 4");
  if (!pair.pingpong1().empty()) verify_pingpong(pair.rho1(), pair.pingpong1());
  if (!pair.pingpong2().empty()) verify_pingpong(pair.rho2(), pair.pingpong2());

  const auto n = static_cast<int>(pair.rho1().alphabet_size());
  std::vector<std::vector<BoundaryPair>> parts(n);
  std::vector<std::size_t> rejected(n, 0);
#pragma omp parallel for schedule(dynamic, 1)
  for (int l = 0; l < n; ++l) {
    std::vector<PairItem> level{first_item(pair, static_cast<std::size_t>(l))};
    for (int len = 2; len <= depth; ++len) level = expand(pair, level);
    for (auto& item : level) {
      const bool lox1 = is_loxodromic(item.m1);
      const bool lox2 = is_loxodromic(item.m2);
      if (lox1 && lox2) {
        parts[l].push_back({attracting_fixed_point(item.m1), attracting_fixed_point(item.m2), std::move(item.word)});
      } else {
        ++rejected[l];
      }
    }
  }
  BoundaryPairSample out;
  out.depth = depth;
  for (int l = 0; l < n; ++l) {
    out.pairs.insert(out.pairs.end(), std::make_move_iterator(parts[l].begin()),
                     std::make_move_iterator(parts[l].end()));
    out.rejected += rejected[l];
  }
  if (out.pairs.empty()) throw Error(ErrorCode::not_loxodromic, "no matched word is loxodromic on both sides");
  return out;
}

ConformalityReport conformality_stat(const BoundaryPairSample& sample, std::size_t n_quadruples, double tol_in,
                                     std::uint64_t seed) {
  const std::size_t n = sample.pairs.size();
  if (n < 4) throw Error(ErrorCode::insufficient_data, "conformality test needs at least 4 pairs");
  if (!(tol_in > 0.0)) throw Error(ErrorCode::invalid_input, "tol_in must be positive");
  if (n_quadruples == 0) throw Error(ErrorCode::invalid_input, "n_quadruples must be positive");

  std::mt19937_64 rng(seed);
  ConformalityReport rep;
  rep.tol_in = tol_in;
  std::size_t violating = 0;
  const std::size_t max_draws = 10 * n_quadruples;
  while (rep.quadruples_tested < n_quadruples && rep.draws < max_draws) {
    ++rep.draws;
    std::array<std::size_t, 4> idx{};
    for (int i = 0; i < 4; ++i) {
      bool fresh = false;
      while (!fresh) {
        idx[i] = static_cast<std::size_t>(rng() % n);
        fresh = std::find(idx.begin(), idx.begin() + i, idx[i]) == idx.begin() + i;
      }
    }
    const auto& p = sample.pairs;
    cplx cr_in, cr_out;
    try {
      cr_in = cross_ratio(p[idx[0]].xi, p[idx[1]].xi, p[idx[2]].xi, p[idx[3]].xi);
      cr_out = cross_ratio(p[idx[0]].eta, p[idx[1]].eta, p[idx[2]].eta, p[idx[3]].eta);
    } catch (const Error&) {
      continue;
    }
    const double im_in = std::abs(cr_in.imag());
    if (!(im_in < tol_in)) continue;
    ++rep.quadruples_tested;
    const double im_out = std::abs(cr_out.imag());
    rep.max_imag_in = std::max(rep.max_imag_in, im_in);
    rep.max_imag_out = std::max(rep.max_imag_out, im_out);
    if (im_out > 10.0 * tol_in) ++violating;
  }
  if (rep.quadruples_tested * 10 < n_quadruples) {
    throw Error(ErrorCode::insufficient_concyclic, "too few near-concyclic source quadruples");
  }
  rep.violating_fraction = static_cast<double>(violating) / static_cast<double>(rep.quadruples_tested);
  return rep;
}

JointEnumeration joint_enumerate(const RepresentationPair& pair, const H3Point& o, double T, int L_max) {
  if (!(T > 0.0) || L_max < 1) throw Error(ErrorCode::invalid_input, "joint enumeration needs T > 0, L_max >= 1");
  const double limit = T + 2.0 * pair.rho1().max_displacement(o) + 2.0 * pair.rho2().max_displacement(o);
  const auto n = static_cast<int>(pair.rho1().alphabet_size());

  struct Part {
    std::vector<double> values;
    bool complete = true;
  };
  std::vector<Part> parts(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (int l = 0; l < n; ++l) {
    std::vector<PairItem> level{first_item(pair, static_cast<std::size_t>(l))};
    for (int len = 1; len <= L_max && !level.empty(); ++len) {
      std::vector<PairItem> keep;
      for (auto& item : level) {
        const double d = h3_distance(o, h3_apply(item.m1, o)) + h3_distance(o, h3_apply(item.m2, o));
        if (d <= T) parts[l].values.push_back(d);
        if (d > limit) continue;
        if (len == L_max) {
          parts[l].complete = false;
          continue;
        }
        keep.push_back(std::move(item));
      }
      level = len < L_max ? expand(pair, keep) : std::vector<PairItem>{};
    }
  }
  JointEnumeration e;
  e.T = T;
  e.complete = true;
  e.summed.push_back(0.0);
  for (auto& p : parts) {
    e.complete = e.complete && p.complete;
    e.summed.insert(e.summed.end(), p.values.begin(), p.values.end());
  }
  std::sort(e.summed.begin(), e.summed.end());
  return e;
}

ExponentEstimate joint_exponent(const JointEnumeration& e, double T1, double T2) {
  if (!e.complete) throw Error(ErrorCode::insufficient_data, "joint enumeration is incomplete; raise L_max");
  if (T2 > e.T) throw Error(ErrorCode::insufficient_data, "window extends past the enumeration radius");
  return shell_slope(e.summed, T1, T2);
}

std::vector<GeneralizedCircle> circles_of(const PackingRun& run) {
  std::vector<GeneralizedCircle> out;
  out.reserve(run.circles.size());
  for (const auto& c : run.circles) out.push_back(c.circle());
  return out;
}

std::vector<GeneralizedCircle> transport(const std::vector<GeneralizedCircle>& circles, const MoebiusMap& m) {
  std::vector<GeneralizedCircle> out;
  out.reserve(circles.size());
  for (const auto& c : circles) out.push_back(apply_circle(m, c));
  return out;
}

std::vector<TorusRecord> torus_records(const std::vector<GeneralizedCircle>& first, const TorusPairing& pairing) {
  if (pairing.paired != nullptr && pairing.paired->size() != first.size()) {
    throw Error(ErrorCode::mismatched_pairing, "paired circle lists differ in length");
  }
  std::vector<TorusRecord> out;
  out.reserve(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    const GeneralizedCircle& c1 = first[i];
    GeneralizedCircle c2 = c1;
    if (pairing.paired != nullptr) {
      c2 = (*pairing.paired)[i];
    } else if (pairing.moebius) {
      c2 = apply_circle(*pairing.moebius, c1);
    }
    if (c1.is_line() || c2.is_line()) throw Error(ErrorCode::invalid_input, "torus component is a line");
    out.push_back({c1, c2, c1.radius() * c2.radius()});
  }
  return out;
}

CountSeries torus_count(const std::vector<TorusRecord>& tori, const std::vector<double>& thresholds) {
  std::vector<double> inv;
  inv.reserve(tori.size());
  for (const auto& t : tori) inv.push_back(t.inverse_volume());
  return CountSeries::from_values(std::move(inv), thresholds);
}

}  // namespace packlab
