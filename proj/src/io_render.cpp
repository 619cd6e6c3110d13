#include "packlab/io_render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "packlab/error.hpp"

namespace packlab {

void Viewport::validate() const {
  if (!(x1 > x0) || !(y1 > y0) || !std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(y0) ||
      !std::isfinite(y1)) {
    throw Error(ErrorCode::invalid_input, "viewport must have positive finite area");
  }
}

bool Scene::empty() const noexcept {
  return std::all_of(layers.begin(), layers.end(),
                     [](const Layer& l) { return l.circles.empty() && l.points.empty(); });
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_fixed6(double v) {
  char buf[64];
  if (std::abs(v) < 5e-7) v = 0.0;
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

namespace {

std::string attr(const char* name, double v) { return std::string(" ") + name + "=\"" + format_fixed6(v) + "\""; }

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* palette(int index) { return kPalette[static_cast<std::size_t>(((index % 8) + 8) % 8)]; }

}  // namespace

std::string emit_svg(const Scene& scene) {
  const Viewport& v = scene.viewport;
  v.validate();
  const double auto_stroke = 0.001 * std::max(v.width(), v.height());

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + format_fixed6(v.x0) + " " +
         format_fixed6(-v.y1) + " " + format_fixed6(v.width()) + " " + format_fixed6(v.height()) + "\">\n";
  out += "<rect" + attr("x", v.x0) + attr("y", -v.y1) + attr("width", v.width()) + attr("height", v.height()) +
         " fill=\"white\"/>\n";

  for (const auto& layer : scene.layers) {
    std::vector<SceneCircle> circles = layer.circles;
    std::sort(circles.begin(), circles.end(), [](const SceneCircle& a, const SceneCircle& b) {
      return std::make_tuple(a.sort_key, a.center.real(), a.center.imag(), a.radius) <
             std::make_tuple(b.sort_key, b.center.real(), b.center.imag(), b.radius);
    });
    std::vector<ScenePoint> points = layer.points;
    std::sort(points.begin(), points.end(), [](const ScenePoint& a, const ScenePoint& b) {
      return std::make_tuple(a.z.real(), a.z.imag(), a.size, a.color) <
             std::make_tuple(b.z.real(), b.z.imag(), b.size, b.color);
    });

    out += "<g id=\"" + xml_escape(layer.name) + "\">\n";
    for (const auto& c : circles) {
      const double sw = c.style.stroke_width > 0.0 ? c.style.stroke_width : std::min(auto_stroke, 0.1 * c.radius);
      const char* colour = palette(c.style.color);
      out += "<circle" + attr("cx", c.center.real()) + attr("cy", -c.center.imag()) + attr("r", c.radius) +
             " fill=\"" + (c.style.fill ? colour : "none") + "\" stroke=\"" + colour + "\"" +
             attr("stroke-width", sw) + "/>\n";
    }
    for (const auto& p : points) {
      const double s = p.size > 0.0 ? p.size : auto_stroke;
      out += "<rect" + attr("x", p.z.real() - s / 2) + attr("y", -p.z.imag() - s / 2) + attr("width", s) +
             attr("height", s) + " fill=\"" + palette(p.color) + "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

Scene packing_scene(const std::vector<CircleRow>& rows, std::optional<Viewport> viewport) {
  Scene scene;
  Layer layer;
  layer.name = "packing";
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& c : rows) {
    const cplx z(c.center_re, c.center_im);
    const double r = c.radius;
    layer.circles.push_back({z, r, static_cast<double>(c.curvature), Style{0.0, false, c.word_len}});
    x0 = std::min(x0, z.real() - r);
    x1 = std::max(x1, z.real() + r);
    y0 = std::min(y0, z.imag() - r);
    y1 = std::max(y1, z.imag() + r);
  }
  if (viewport) {
    scene.viewport = *viewport;
  } else if (!rows.empty()) {
    const double m = 0.02 * std::max(x1 - x0, y1 - y0);
    scene.viewport = {x0 - m, x1 + m, y0 - m, y1 + m};
  }
  scene.viewport.validate();
  scene.layers.push_back(std::move(layer));
  return scene;
}

Scene packing_scene(const std::vector<PackedCircle>& circles, std::optional<Viewport> viewport) {
  std::vector<CircleRow> rows;
  rows.reserve(circles.size());
  for (const auto& c : circles) rows.push_back(to_row(c));
  return packing_scene(rows, viewport);
}

Scene limit_set_scene(const LimitSample& sample, std::optional<Viewport> viewport) {
  Scene scene;
  Layer layer;
  layer.name = "limit-set";
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& p : sample.points) {
    layer.points.push_back({p, 0.0, 2});
    x0 = std::min(x0, p.real());
    x1 = std::max(x1, p.real());
    y0 = std::min(y0, p.imag());
    y1 = std::max(y1, p.imag());
  }
  if (viewport) {
    scene.viewport = *viewport;
  } else if (!sample.points.empty()) {
    const double span = std::max({x1 - x0, y1 - y0, 1e-6});
    const double m = 0.05 * span;
    const double cx = (x0 + x1) / 2, cy = (y0 + y1) / 2;
    scene.viewport = {cx - span / 2 - m, cx + span / 2 + m, cy - span / 2 - m, cy + span / 2 + m};
  }
  scene.viewport.validate();
  scene.layers.push_back(std::move(layer));
  return scene;
}

// ---------------------------------------------------------------------------
// CSV

CircleRow to_row(const PackedCircle& c) {
  const cplx z = c.center();
  return {c.curvature, z.real(), z.imag(), c.radius(), c.word_len};
}

std::string emit_rows_csv(const std::vector<CircleRow>& rows) {
  std::string out(kCircleCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += to_string(r.curvature);
    out += ',';
    out += format_real(r.center_re);
    out += ',';
    out += format_real(r.center_im);
    out += ',';
    out += format_real(r.radius);
    out += ',';
    out += std::to_string(r.word_len);
    out += '\n';
  }
  return out;
}

std::string emit_circles_csv(const std::vector<PackedCircle>& circles) {
  std::vector<CircleRow> rows;
  rows.reserve(circles.size());
  for (const auto& c : circles) rows.push_back(to_row(c));
  return emit_rows_csv(rows);
}

std::string emit_series_csv(const CountSeries& series) {
  std::string out(kSeriesCsvHeader);
  out += '\n';
  for (const auto& p : series.points()) {
    out += format_real(p.t);
    out += ',';
    out += std::to_string(p.n);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double parse_real(std::string_view s, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::invalid_input, "malformed number on line " + std::to_string(line_no));
  }
  return v;
}

template <class Int>
Int parse_int(std::string_view s, std::size_t line_no) {
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::invalid_input, "malformed integer on line " + std::to_string(line_no));
  }
  return v;
}

}  // namespace

std::vector<CircleRow> parse_circles_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != kCircleCsvHeader) {
    throw Error(ErrorCode::invalid_input, "expected header " + std::string(kCircleCsvHeader));
  }
  std::vector<CircleRow> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_fields(lines[i]);
    if (f.size() != 5) throw Error(ErrorCode::invalid_input, "expected 5 fields on line " + std::to_string(i + 1));
    CircleRow r;
    try {
      r.curvature = parse_i128(std::string(f[0]));
    } catch (const Error&) {
      throw Error(ErrorCode::invalid_input, "malformed curvature on line " + std::to_string(i + 1));
    }
    r.center_re = parse_real(f[1], i + 1);
    r.center_im = parse_real(f[2], i + 1);
    r.radius = parse_real(f[3], i + 1);
    r.word_len = parse_int<int>(f[4], i + 1);
    rows.push_back(r);
  }
  return rows;
}

CountSeries parse_series_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != kSeriesCsvHeader) {
    throw Error(ErrorCode::invalid_input, "expected header " + std::string(kSeriesCsvHeader));
  }
  std::vector<CountPoint> pts;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_fields(lines[i]);
    if (f.size() != 2) throw Error(ErrorCode::invalid_input, "expected 2 fields on line " + std::to_string(i + 1));
    pts.push_back({parse_real(f[0], i + 1), parse_int<std::int64_t>(f[1], i + 1)});
  }
  return CountSeries(std::move(pts));
}

// ---------------------------------------------------------------------------
// JSON

std::string json_escape(std::string_view s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
  return out;
}

void JsonWriter::separate() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!first_.empty()) {
    if (!first_.back()) out_ += ',';
    first_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  separate();
  out_ += '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  first_.pop_back();
  out_ += '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separate();
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  first_.pop_back();
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  separate();
  out_ += json_escape(k);
  out_ += ':';
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  if (!std::isfinite(v)) return null();
  separate();
  out_ += format_real(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
  separate();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  separate();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separate();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  separate();
  out_ += json_escape(v);
  return *this;
}

JsonWriter& JsonWriter::value_i128(i128 v) {
  separate();
  out_ += to_string(v);
  return *this;
}

JsonWriter& JsonWriter::null() {
  separate();
  out_ += "null";
  return *this;
}

std::string JsonWriter::str() const {
  if (!first_.empty()) throw std::logic_error("JSON document has open containers");
  return out_ + "\n";
}

}  // namespace packlab
