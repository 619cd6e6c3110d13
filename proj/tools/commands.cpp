#include "commands.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "packlab/config.hpp"
#include "packlab/descartes.hpp"
#include "packlab/error.hpp"
#include "packlab/io_render.hpp"
#include "packlab/joinings.hpp"
#include "packlab/orbits.hpp"
#include "packlab/stats.hpp"

#ifndef PACKLAB_VERSION
#define PACKLAB_VERSION "0.0.0"
#endif

namespace packlab::cli {

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct Manifest {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> flags;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> inputs;  // path -> hash
  int threads = 0;
  double wall_time = 0.0;

  std::string json() const {
    JsonWriter w;
    w.begin_object();
    w.field("tool", "packlab").field("version", PACKLAB_VERSION).field("subcommand", subcommand);
    w.key("flags").begin_object();
    for (const auto& [k, v] : flags) w.field(k, v);
    w.end_object();
    w.key("seed");
    if (seed) {
      w.value(*seed);
    } else {
      w.null();
    }
    w.key("inputs").begin_array();
    for (const auto& [path, hash] : inputs) {
      w.begin_object().field("path", path).field("fnv1a64", hash).end_object();
    }
    w.end_array();
    w.field("threads", threads).field("wall_time_s", wall_time);
    w.end_object();
    return w.str();
  }
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  Manifest manifest;
  std::string out_path;
  std::string manifest_path;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::invalid_input, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorCode::invalid_input, "write failed for " + path);
}

std::string load_input(Context& ctx, const std::string& path) {
  std::string text = read_file(path);
  ctx.manifest.inputs.emplace_back(path, content_hash(text));
  return text;
}

void emit(Context& ctx, const std::string& data) {
  if (ctx.out_path.empty()) {
    ctx.out << data;
  } else {
    write_text(ctx.out_path, data);
  }
}

void write_manifest(Context& ctx) {
  const std::string text = ctx.manifest.json();
  if (!ctx.manifest_path.empty()) {
    write_text(ctx.manifest_path, text);
  } else if (!ctx.out_path.empty()) {
    write_text(ctx.out_path + ".manifest.json", text);
  } else {
    ctx.err << "manifest: " << text;
  }
}

// Integers or decimal reals; reals are floored.
i128 parse_curvature_bound(const std::string& text) {
  try {
    return parse_i128(text);
  } catch (const Error&) {
  }
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !std::isfinite(v) || std::abs(v) > 1e30) {
    throw Error(ErrorCode::invalid_input, "not a number: " + text);
  }
  return static_cast<i128>(std::floor(v));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

void write_estimate(JsonWriter& w, const ExponentEstimate& e) {
  w.begin_object()
      .field("value", e.value)
      .field("std_error", e.std_error)
      .field("window_lo", e.window_lo)
      .field("window_hi", e.window_hi)
      .field("sample_count", static_cast<std::uint64_t>(e.sample_count))
      .end_object();
}

bool is_json(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

LimitMethod parse_method(const std::string& m) {
  if (m == "loxodromic" || m == "fixed-points") return LimitMethod::loxodromic_fixed_points;
  if (m == "orbit") return LimitMethod::orbit_accumulation;
  throw Error(ErrorCode::invalid_input, "unknown method " + m + " (loxodromic | orbit)");
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string root;
  bool root_default = false;
  std::string max_curv;
};

void cmd_gen(Context& ctx, const GenArgs& a) {
  if (a.root_default == !a.root.empty()) {
    throw Error(ErrorCode::invalid_input, "give exactly one of --root and --root-default");
  }
  DescartesQuadruple root = root_quadruple_bounded();
  if (!a.root_default) {
    const auto parts = split(a.root, ',');
    if (parts.size() != 4) throw Error(ErrorCode::invalid_input, "--root needs four comma-separated curvatures");
    std::array<i128, 4> k{};
    for (int i = 0; i < 4; ++i) k[i] = parse_i128(parts[i]);
    root = root_from_curvatures(k);
  }
  const i128 t = parse_curvature_bound(a.max_curv);
  const i128 kmax = *std::max_element(root.k.begin(), root.k.end());
  PackingRun run = generate(root, std::max(t, kmax));
  // Below the root's own curvatures only part of the root survives.
  std::erase_if(run.circles, [t](const PackedCircle& c) { return c.curvature > t; });
  emit(ctx, emit_circles_csv(run.circles));
}

struct FitArgs {
  std::string in;
  std::optional<double> tmin, tmax, data_max;
  int per_octave = 16;
};

void cmd_fit(Context& ctx, const FitArgs& a) {
  const std::string text = load_input(ctx, a.in);
  CountSeries series;
  double lo_data = 0.0, hi_data = 0.0;
  if (text.rfind(kSeriesCsvHeader, 0) == 0 && text.rfind(kCircleCsvHeader, 0) != 0) {
    series = parse_series_csv(text);
    if (series.empty()) throw Error(ErrorCode::invalid_input, "empty series");
    lo_data = series.points().front().t;
    hi_data = series.points().back().t;
  } else {
    const auto rows = parse_circles_csv(text);
    std::vector<double> k;
    for (const auto& r : rows) k.push_back(static_cast<double>(r.curvature));
    if (k.empty()) throw Error(ErrorCode::invalid_input, "empty circle list");
    lo_data = 1.0;
    hi_data = a.data_max.value_or(*std::max_element(k.begin(), k.end()));
    series = CountSeries::from_values(std::move(k), geometric_grid(lo_data, hi_data, a.per_octave));
  }
  auto [lo, hi] = default_fit_window(series);
  if (a.tmin) lo = *a.tmin;
  if (a.tmax) hi = *a.tmax;
  const double slack = 1e-9 * hi_data;
  if (!(lo < hi) || lo < lo_data - slack || hi > hi_data + slack) {
    throw Error(ErrorCode::invalid_input, "fit window lies outside the data range [" + format_real(lo_data) +
                                              ", " + format_real(hi_data) + "]");
  }
  PowerLawFit fit;
  try {
    fit = fit_power_law(series, lo, hi);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::insufficient_data) throw Error(ErrorCode::invalid_input, e.what());
    throw;
  }
  JsonWriter w;
  w.begin_object()
      .field("exponent", fit.exponent)
      .field("std_error", fit.std_error)
      .field("window_lo", fit.window_lo)
      .field("window_hi", fit.window_hi)
      .field("points", static_cast<std::uint64_t>(fit.points))
      .field("data_lo", lo_data)
      .field("data_hi", hi_data)
      .end_object();
  emit(ctx, w.str());
}

struct DimArgs {
  std::string group;
  int depth = 10;
  std::string method = "loxodromic";
  int eps_decades = 6;
  double T = 8.0;
  std::optional<double> T1;
  int L_max = 200;
  bool normalize = false;
};

void cmd_dim(Context& ctx, const DimArgs& a) {
  const GroupPresentation pres = parse_presentation(load_input(ctx, a.group), LoadOptions{a.normalize});
  const LimitSample sample = limit_sample(pres, a.depth, parse_method(a.method));
  const auto [level_lo, level_hi] = auto_box_window(sample.points, a.eps_decades);
  const ExponentEstimate box = box_dimension(sample, level_lo, level_hi);
  const Enumeration e = enumerate(pres, H3Point::origin(), a.T, a.L_max);
  const ExponentEstimate ce = critical_exponent(e, a.T1.value_or(a.T / 2), a.T);

  JsonWriter w;
  w.begin_object();
  w.key("critical_exponent");
  write_estimate(w, ce);
  w.key("box_dimension");
  write_estimate(w, box);
  w.field("gap", ce.value - box.value);
  w.key("enumeration")
      .begin_object()
      .field("T", e.T)
      .field("max_length", e.max_length)
      .field("complete", e.complete)
      .field("records", static_cast<std::uint64_t>(e.records.size()))
      .field("collisions", static_cast<std::uint64_t>(e.collisions))
      .end_object();
  w.key("limit_sample")
      .begin_object()
      .field("method", a.method)
      .field("depth", sample.depth)
      .field("points", static_cast<std::uint64_t>(sample.points.size()))
      .field("chart_rotated", sample.chart.rotated)
      .field("level_lo", level_lo)
      .field("level_hi", level_hi)
      .end_object();
  w.end_object();
  emit(ctx, w.str());
}

struct SieveArgs {
  std::string in;
  std::string max;
  int factors = 2;
  double delta = 1.3057;
};

void cmd_sieve(Context& ctx, const SieveArgs& a) {
  const auto rows = parse_circles_csv(load_input(ctx, a.in));
  std::map<i128, std::int64_t> census;
  for (const auto& r : rows) ++census[r.curvature];
  const i128 T = parse_curvature_bound(a.max);
  if (T < 2 || T > static_cast<i128>(INT64_MAX)) throw Error(ErrorCode::invalid_input, "--max must be in [2, 2^63)");
  const SieveReport rep = sieve(census, static_cast<std::int64_t>(T), a.factors, a.delta);
  const double Td = static_cast<double>(rep.T);
  JsonWriter w;
  w.begin_object().field("T", rep.T).field("prime_count", rep.prime_count);
  w.key("almost_prime_counts").begin_object();
  for (const auto& [r, n] : rep.almost_prime_counts) w.field(std::to_string(r), n);
  w.end_object();
  w.field("delta_used", rep.delta_used)
      .field("normalized_prime_count", static_cast<double>(rep.prime_count) * std::log(Td) / std::pow(Td, rep.delta_used))
      .end_object();
  emit(ctx, w.str());
}

struct CrArgs {
  std::string pair;
  int depth = 6;
  std::size_t samples = 1000;
  double tol = 1e-6;
  std::optional<std::uint64_t> seed;
  bool normalize = false;
};

void cmd_crtest(Context& ctx, const CrArgs& a) {
  if (!a.seed) throw Error(ErrorCode::invalid_input, "--seed is required");
  ctx.manifest.seed = *a.seed;
  const RepresentationPair pair = parse_pair(load_input(ctx, a.pair), LoadOptions{a.normalize});
  const BoundaryPairSample sample = boundary_pairs(pair, a.depth);
  const ConformalityReport rep = conformality_stat(sample, a.samples, a.tol, *a.seed);
  JsonWriter w;
  w.begin_object()
      .field("quadruples_tested", static_cast<std::uint64_t>(rep.quadruples_tested))
      .field("draws", static_cast<std::uint64_t>(rep.draws))
      .field("max_imag_in", rep.max_imag_in)
      .field("max_imag_out", rep.max_imag_out)
      .field("violating_fraction", rep.violating_fraction)
      .field("tol_in", rep.tol_in)
      .field("depth", sample.depth)
      .field("pairs", static_cast<std::uint64_t>(sample.pairs.size()))
      .field("rejected", static_cast<std::uint64_t>(sample.rejected))
      .end_object();
  emit(ctx, w.str());
}

struct JointArgs {
  std::string pair;
  double T = 0.0;
  std::optional<double> T1;
  std::string o = "default";
  int L_max = 200;
  bool normalize = false;
};

H3Point parse_basepoint(const std::string& s) {
  if (s == "default") return H3Point::origin();
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw Error(ErrorCode::invalid_input, "--o takes 'default' or x,y,t");
  try {
    return H3Point::make({std::stod(parts[0]), std::stod(parts[1])}, std::stod(parts[2]));
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::invalid_input, "malformed base point " + s);
  }
}

void cmd_joint(Context& ctx, const JointArgs& a) {
  const RepresentationPair pair = parse_pair(load_input(ctx, a.pair), LoadOptions{a.normalize});
  const H3Point o = parse_basepoint(a.o);
  const JointEnumeration e = joint_enumerate(pair, o, a.T, a.L_max);
  const ExponentEstimate est = joint_exponent(e, a.T1.value_or(a.T / 2), a.T);
  const double bound = 2.0 / std::sqrt(2.0);
  JsonWriter w;
  w.begin_object()
      .field("value", est.value)
      .field("std_error", est.std_error)
      .field("window_lo", est.window_lo)
      .field("window_hi", est.window_hi)
      .field("sample_count", static_cast<std::uint64_t>(est.sample_count))
      .field("complete", e.complete)
      .field("bound", bound)
      .field("below_bound", est.value < bound)
      .end_object();
  emit(ctx, w.str());
}

struct RenderArgs {
  std::string in;
  std::string viewport = "auto";
  int depth = 8;
  std::string method = "loxodromic";
  bool normalize = false;
};

void cmd_render(Context& ctx, const RenderArgs& a) {
  const std::string text = load_input(ctx, a.in);
  std::optional<Viewport> vp;
  if (a.viewport != "auto") {
    const auto parts = split(a.viewport, ',');
    if (parts.size() != 4) throw Error(ErrorCode::invalid_input, "--viewport takes 'auto' or x0,x1,y0,y1");
    try {
      vp = Viewport{std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2]), std::stod(parts[3])};
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::invalid_input, "malformed viewport " + a.viewport);
    }
  }
  Scene scene;
  if (is_json(text)) {
    const GroupPresentation pres = parse_presentation(text, LoadOptions{a.normalize});
    scene = limit_set_scene(limit_sample(pres, a.depth, parse_method(a.method)), vp);
  } else {
    scene = packing_scene(parse_circles_csv(text), vp);
  }
  if (scene.empty()) ctx.err << "warning: empty scene\n";
  emit(ctx, emit_svg(scene));
}

int configure_threads(std::optional<int> flag) {
  int threads = 0;
  if (flag) {
    threads = *flag;
  } else if (const char* env = std::getenv("PACKLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0') throw Error(ErrorCode::invalid_input, "PACKLAB_THREADS must be an integer");
    threads = static_cast<int>(v);
  }
  if (threads < 0) throw Error(ErrorCode::invalid_input, "thread count must be positive");
  if (threads > 0) omp_set_num_threads(threads);
  return threads > 0 ? threads : omp_get_max_threads();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"packlab: Apollonian packings, Kleinian orbits and joinings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PACKLAB_VERSION);
  std::optional<int> threads;
  app.add_option("--threads", threads, "Worker threads (default: PACKLAB_THREADS or all cores)");
  std::string out_path, manifest_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Output file (default stdout)");
    sub->add_option("--manifest", manifest_path, "Manifest file (default <out>.manifest.json, or stderr)");
    sub->add_option("--threads", threads, "Worker threads");
  };

  GenArgs gen;
  auto* s_gen = app.add_subcommand("gen", "Generate a bounded Apollonian packing as CSV");
  s_gen->add_option("--root", gen.root, "Root curvatures k1,k2,k3,k4");
  s_gen->add_flag("--root-default", gen.root_default, "Use the root (-1,2,2,3)");
  s_gen->add_option("--max-curv", gen.max_curv, "Largest curvature kept")->required();
  common(s_gen);

  FitArgs fit;
  auto* s_fit = app.add_subcommand("fit", "Fit the counting exponent of a circle CSV or t,n series");
  s_fit->add_option("--in", fit.in)->required();
  s_fit->add_option("--tmin", fit.tmin);
  s_fit->add_option("--tmax", fit.tmax);
  s_fit->add_option("--data-max", fit.data_max, "Generation threshold of the circle list");
  s_fit->add_option("--per-octave", fit.per_octave)->check(CLI::PositiveNumber);
  common(s_fit);

  DimArgs dim;
  auto* s_dim = app.add_subcommand("dim", "Critical exponent and box dimension of a group");
  s_dim->add_option("--group", dim.group)->required();
  s_dim->add_option("--depth", dim.depth);
  s_dim->add_option("--method", dim.method);
  s_dim->add_option("--eps-decades", dim.eps_decades, "Number of dyadic box levels");
  s_dim->add_option("--T", dim.T, "Enumeration radius");
  s_dim->add_option("--T1", dim.T1, "Lower end of the shell window (default T/2)");
  s_dim->add_option("--L-max", dim.L_max);
  s_dim->add_flag("--normalize", dim.normalize);
  common(s_dim);

  SieveArgs sv;
  auto* s_sieve = app.add_subcommand("sieve", "Prime and almost-prime curvature counts");
  s_sieve->add_option("--in", sv.in)->required();
  s_sieve->add_option("--max", sv.max)->required();
  s_sieve->add_option("--factors", sv.factors);
  s_sieve->add_option("--delta", sv.delta);
  common(s_sieve);

  CrArgs cr;
  auto* s_cr = app.add_subcommand("cr-test", "Cross-ratio conformality statistic of a pair");
  s_cr->add_option("--pair", cr.pair)->required();
  s_cr->add_option("--depth", cr.depth);
  s_cr->add_option("--samples", cr.samples);
  s_cr->add_option("--tol", cr.tol);
  s_cr->add_option("--seed", cr.seed)->required();
  s_cr->add_flag("--normalize", cr.normalize);
  common(s_cr);

  JointArgs joint;
  auto* s_joint = app.add_subcommand("joint", "Joint exponent of a pair in the summed metric");
  s_joint->add_option("--pair", joint.pair)->required();
  s_joint->add_option("--T", joint.T)->required();
  s_joint->add_option("--T1", joint.T1);
  s_joint->add_option("--o", joint.o);
  s_joint->add_option("--L-max", joint.L_max);
  s_joint->add_flag("--normalize", joint.normalize);
  common(s_joint);

  RenderArgs render;
  auto* s_render = app.add_subcommand("render", "SVG of a circle CSV or of a group's limit set");
  s_render->add_option("--in", render.in)->required();
  s_render->add_option("--viewport", render.viewport);
  s_render->add_option("--depth", render.depth);
  s_render->add_option("--method", render.method);
  s_render->add_flag("--normalize", render.normalize);
  common(s_render);

  std::vector<const char*> argv{"packlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  Context ctx{out, err, {}, out_path, manifest_path};
  ctx.manifest.subcommand = sub->get_name();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_name();
    if (opt->count() == 0 || name == "--threads" || name == "--help" || name == "--manifest") continue;
    std::string joined;
    for (const auto& r : opt->results()) joined += (joined.empty() ? "" : " ") + r;
    ctx.manifest.flags.emplace_back(name, joined);
  }
  std::sort(ctx.manifest.flags.begin(), ctx.manifest.flags.end());

  const auto start = std::chrono::steady_clock::now();
  try {
    ctx.manifest.threads = configure_threads(threads);
    const std::string name = sub->get_name();
    if (name == "gen") cmd_gen(ctx, gen);
    else if (name == "fit") cmd_fit(ctx, fit);
    else if (name == "dim") cmd_dim(ctx, dim);
    else if (name == "sieve") cmd_sieve(ctx, sv);
    else if (name == "cr-test") cmd_crtest(ctx, cr);
    else if (name == "joint") cmd_joint(ctx, joint);
    else if (name == "render") cmd_render(ctx, render);
    ctx.manifest.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(ctx);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace packlab::cli
