// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "oracles.hpp"
#include "packlab/config.hpp"
#include "packlab/joinings.hpp"
#include "packlab/orbits.hpp"
#include "packlab/stats.hpp"

using namespace packlab;

namespace {

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("%s %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string fixture(const std::string& name) { return std::string(PACKLAB_FIXTURES) + "/" + name; }

void guarded(const char* id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

constexpr double kDelta = 1.3057;

}  // namespace

int main() {
  const auto root = root_quadruple_bounded();
  PackingRun big;

  guarded("AC1", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    big = generate(root, 65536);
    const double gen_s = seconds_since(t0);
    const auto series = CountSeries::from_run(big, geometric_grid(256.0, 65536.0));
    const auto fit = fit_power_law(series, 256.0, 65536.0);
    const bool ok = std::abs(fit.exponent - kDelta) <= 0.05 && gen_s < 60.0;
    report("AC1", ok,
           fmt("exponent %.5f (target 1.3057 +- 0.05), %zu circles, generate %.2f s", fit.exponent,
               big.circles.size(), gen_s));
  });

  guarded("AC2", [&] {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> len(1, 20), idx(0, 3);
    bool ok = true;
    int checked = 0;
    for (int n = 0; n < 10000; ++n) {
      DescartesQuadruple q = root;
      int last = -1;
      const int L = len(rng);
      for (int i = 0; i < L; ++i) {
        int r = idx(rng);
        while (r == last) r = idx(rng);
        q = reflect(q, r);
        last = r;
      }
      ok = ok && satisfies_descartes(q) && satisfies_extended(q) && pairwise_tangent(q, 1e-9);
      ++checked;
    }
    report("AC2", ok, fmt("%d random words of length <= 20: both relations exact, tangency within 1e-9", checked));
  });

  guarded("AC3", [&] {
    bool ok = true;
    std::string detail;
    for (i128 t : {3, 6, 15, 100}) {
      const auto run = generate(root, t);
      std::set<oracle::CircleKey> got;
      for (const auto& c : run.circles) got.emplace(c.curvature, c.curvature_center.re, c.curvature_center.im);
      const auto want = oracle::brute_force_packing(root, t, 11);
      const bool stable = want == oracle::brute_force_packing(root, t, 12);
      const bool same = got == want && got.size() == run.circles.size();
      ok = ok && stable && same;
      detail += fmt("t=%d: %zu circles%s; ", static_cast<int>(t), run.circles.size(), same ? "" : " MISMATCH");
    }
    report("AC3", ok, detail);
  });

  guarded("AC4", [&] {
    struct Case {
      const char* file;
      double T;
    };
    bool ok = true;
    std::string detail;
    for (const Case& c : {Case{"schottky_fuchsian.json", 26.0}, Case{"schottky_loxodromic.json", 22.0}}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto pres = parse_presentation(read_file(fixture(c.file)));
      const auto e = enumerate(pres, H3Point::origin(), c.T, 400);
      const auto ce = critical_exponent(e, c.T / 2, c.T);
      const auto sample = limit_sample(pres, 10, LimitMethod::loxodromic_fixed_points);
      const auto [lo, hi] = auto_box_window(sample.points, 6);
      const auto box = box_dimension(sample, lo, hi);
      const double secs = seconds_since(t0);
      const double gap = std::abs(ce.value - box.value);
      ok = ok && e.complete && sample.points.size() >= 100000 && gap <= 0.05 && secs < 120.0;
      detail += fmt("%s: delta %.4f dim %.4f gap %.4f, %zu points, complete %d, %.1f s; ", c.file, ce.value, box.value,
                    gap, sample.points.size(), e.complete ? 1 : 0, secs);
    }
    report("AC4", ok, detail);
  });

  guarded("AC5", [&] {
    const auto R1 = Region::disk(cplx(0.31, 0.17), 0.12);
    const auto R2 = Region::rectangle(-0.62, -0.18, -0.55, 0.08);
    bool ok = true;
    std::string detail;
    for (double t : {4096.0, 8192.0, 16384.0, 32768.0}) {
      const double a = equidistribution_ratio(big, R1, R2, t);
      const double b = equidistribution_ratio(big, R1, R2, 2 * t);
      const double rel = std::abs(a - b) / b;
      ok = ok && rel < 0.1;
      detail += fmt("t=%g rel %.4f; ", t, rel);
    }
    const auto up = Region::rectangle(-0.7, 0.4, 0.05, 0.6);
    const auto down = Region::rectangle(-0.7, 0.4, -0.6, -0.05);
    bool mirror = true;
    for (double t = 4.0; t <= 65536.0; t *= 2) mirror = mirror && equidistribution_ratio(big, up, down, t) == 1.0;
    ok = ok && mirror;
    detail += mirror ? "mirror ratio exactly 1" : "mirror ratio not 1";
    report("AC5", ok, detail);
  });

  guarded("AC6", [&] {
    const auto run = generate(root, 100000);
    const auto census = curvature_census(run);
    bool ok = true;
    double lo = INFINITY, hi = 0.0;
    std::int64_t last_p = 0;
    std::string detail;
    for (std::int64_t T : {1000, 10000, 100000}) {
      const auto rep = sieve(census, T, 3);
      const double norm = static_cast<double>(rep.prime_count) * std::log(static_cast<double>(T)) /
                          std::pow(static_cast<double>(T), kDelta);
      lo = std::min(lo, norm);
      hi = std::max(hi, norm);
      ok = ok && rep.prime_count >= last_p && rep.almost_prime_counts.at(1) <= rep.almost_prime_counts.at(2) &&
           rep.almost_prime_counts.at(2) <= rep.almost_prime_counts.at(3);
      last_p = rep.prime_count;
      detail += fmt("T=%lld primes %lld norm %.4f; ", static_cast<long long>(T), static_cast<long long>(rep.prime_count),
                    norm);
    }
    ok = ok && hi / lo < 3.0;
    report("AC6", ok, detail + fmt("spread x%.3f", hi / lo));
  });

  guarded("AC7", [&] {
    const double tol = 1e-6;
    auto stat = [&](const char* f) {
      const auto pair = parse_pair(read_file(fixture(f)));
      return conformality_stat(boundary_pairs(pair, 6), 1000, tol, 1);
    };
    const auto conj = stat("pair_conjugate.json");
    const auto dup = stat("pair_duplicated.json");
    const auto non = stat("pair_nonconjugate.json");
    const auto again = stat("pair_nonconjugate.json");
    const bool ok = conj.violating_fraction == 0.0 && conj.max_imag_out <= 10 * tol && dup.violating_fraction == 0.0 &&
                    non.violating_fraction > 0.0 && again.violating_fraction == non.violating_fraction &&
                    again.max_imag_out == non.max_imag_out;
    report("AC7", ok,
           fmt("conjugate %.3f (max Im %.2e), duplicated %.3f, non-conjugate %.3f, repeat identical %d",
               conj.violating_fraction, conj.max_imag_out, dup.violating_fraction, non.violating_fraction,
               again.violating_fraction == non.violating_fraction ? 1 : 0));
  });

  guarded("AC8", [&] {
    const H3Point o = H3Point::origin();
    const double T = 52.0;
    const auto single = critical_exponent(
        enumerate(parse_presentation(read_file(fixture("schottky_fuchsian.json"))), o, T / 2, 400), T / 4, T / 2);
    bool ok = true;
    std::string detail = fmt("single %.4f; ", single.value);
    for (const char* f : {"pair_duplicated.json", "pair_conjugate.json", "pair_nonconjugate.json"}) {
      const auto e = joint_enumerate(parse_pair(read_file(fixture(f))), o, T, 400);
      const auto v = joint_exponent(e, T / 2, T).value;
      ok = ok && v > 0.0 && v < 2.0 / std::sqrt(2.0);
      if (std::string(f) == "pair_duplicated.json") ok = ok && std::abs(v - single.value / 2) <= 0.05;
      detail += fmt("%s %.4f; ", f, v);
    }
    report("AC8", ok, detail + "bound 1.414");
  });

  guarded("AC9", [&] {
    const auto run = generate(root, 4096);
    const auto circles = circles_of(run);
    const auto tori = torus_records(circles, TorusPairing::identity());
    std::vector<double> roots, ts, quarter;
    for (double r = 1.0; r <= 4096.0; r *= 1.1) {
      roots.push_back(r);
      ts.push_back(r * r);
      quarter.push_back(r * r / 4);
    }
    const auto nt = torus_count(tori, ts);
    const auto nc = CountSeries::from_run(run, roots);
    bool ok = true;
    for (std::size_t i = 0; i < ts.size(); ++i) ok = ok && nt.points()[i].n == nc.points()[i].n;
    std::vector<GeneralizedCircle> dilated;
    for (const auto& c : circles) dilated.push_back(dilate(c, 2.0));
    const auto ns = torus_count(torus_records(dilated, TorusPairing::identity()), quarter);
    bool scaled = true;
    for (std::size_t i = 0; i < ts.size(); ++i) scaled = scaled && ns.points()[i].n == nt.points()[i].n;
    for (std::size_t i = 0; i < tori.size(); ++i) {
      const double v = dilate(circles[i], 2.0).radius() * dilate(circles[i], 2.0).radius();
      scaled = scaled && v == 4.0 * tori[i].vol;
    }
    report("AC9", ok && scaled,
           fmt("%zu tori over %zu thresholds: sqrt identity %d, factor-4 identity %d", tori.size(), ts.size(),
               ok ? 1 : 0, scaled ? 1 : 0));
  });

  guarded("AC10", [&] {
    auto run = [](std::vector<std::string> args) {
      std::ostringstream out, err;
      const int code = cli::run(args, out, err);
      return std::pair{code, out.str()};
    };
    const std::string csv_path = "acceptance_g4096.csv";
    {
      std::ostringstream out, err;
      cli::run({"gen", "--root-default", "--max-curv", "4096", "--out", csv_path}, out, err);
    }
    const std::vector<std::vector<std::string>> commands = {
        {"gen", "--root-default", "--max-curv", "4096"},
        {"fit", "--in", csv_path},
        {"sieve", "--in", csv_path, "--max", "4096", "--factors", "3"},
        {"dim", "--group", fixture("schottky_loxodromic.json"), "--depth", "8", "--T", "14"},
        {"cr-test", "--pair", fixture("pair_nonconjugate.json"), "--seed", "1"},
        {"joint", "--pair", fixture("pair_nonconjugate.json"), "--T", "24"},
        {"render", "--in", csv_path},
        {"render", "--in", fixture("schottky_fuchsian.json"), "--depth", "8"},
    };
    bool ok = true;
    std::string detail;
    for (const auto& cmd : commands) {
      auto a = cmd, b = cmd;
      a.insert(a.end(), {"--threads", "1"});
      b.insert(b.end(), {"--threads", "8"});
      const auto ra = run(a);
      const auto rb = run(b);
      const bool same = ra.first == 0 && rb.first == 0 && ra.second == rb.second && !ra.second.empty();
      ok = ok && same;
      detail += cmd[0] + (same ? " ok; " : " DIFFERS; ");
    }
    report("AC10", ok, detail);
  });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
