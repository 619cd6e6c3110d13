#pragma once

// Deterministic emitters: SVG scenes, CSV circle lists and count series,
// and a small JSON writer with 17-significant-digit reals.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "packlab/descartes.hpp"
#include "packlab/orbits.hpp"
#include "packlab/stats.hpp"

namespace packlab {

/// 8-colour palette indexed by word length mod 8.
inline constexpr std::array<const char*, 8> kPalette{"#1b1b1b", "#d62728", "#1f77b4", "#2ca02c",
                                                     "#9467bd", "#ff7f0e", "#17becf", "#8c564b"};

struct Style {
  double stroke_width = 0.0;  // scene units; 0 selects an automatic width
  bool fill = false;
  int color = 0;  // palette index, reduced mod 8
};

struct SceneCircle {
  cplx center;
  double radius = 0.0;
  double sort_key = 0.0;  // curvature for packings
  Style style;
};

struct ScenePoint {
  cplx z;
  double size = 0.0;  // side of the square marker; 0 selects automatic
  int color = 0;
};

struct Layer {
  std::string name;
  std::vector<SceneCircle> circles;
  std::vector<ScenePoint> points;
};

struct Viewport {
  double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;

  /// Throws InvalidInput unless the area is positive.
  void validate() const;
  double width() const noexcept { return x1 - x0; }
  double height() const noexcept { return y1 - y0; }
};

struct Scene {
  Viewport viewport;
  std::vector<Layer> layers;  // emitted in this order

  bool empty() const noexcept;
};

/// SVG 1.1 document. Within a layer circles are ordered by (sort_key,
/// center, radius) and points by coordinate. Numbers use 6 decimals and the
/// y axis points up. An empty scene yields the viewport rect alone.
std::string emit_svg(const Scene& scene);

/// Scene of a packing: one layer, colour = word_len mod 8, sort key =
/// curvature. Without an explicit viewport the bounding circle's box plus a
/// 2% margin is used.
Scene packing_scene(const std::vector<PackedCircle>& circles, std::optional<Viewport> viewport = std::nullopt);
struct CircleRow;
Scene packing_scene(const std::vector<CircleRow>& rows, std::optional<Viewport> viewport = std::nullopt);
/// Scene of a limit-set sample with the viewport fitted to the points.
Scene limit_set_scene(const LimitSample& sample, std::optional<Viewport> viewport = std::nullopt);

/// %.17g, with "nan"/"inf" spelled out for non-finite values.
std::string format_real(double v);
/// %.6f with negative zero printed as 0.000000.
std::string format_fixed6(double v);

inline constexpr std::string_view kCircleCsvHeader = "curvature,center_re,center_im,radius,word_len";
inline constexpr std::string_view kSeriesCsvHeader = "t,n";

struct CircleRow {
  i128 curvature = 0;
  double center_re = 0.0;
  double center_im = 0.0;
  double radius = 0.0;
  int word_len = 0;

  friend bool operator==(const CircleRow&, const CircleRow&) = default;
};

CircleRow to_row(const PackedCircle& c);
std::string emit_circles_csv(const std::vector<PackedCircle>& circles);
std::string emit_rows_csv(const std::vector<CircleRow>& rows);
std::string emit_series_csv(const CountSeries& series);
/// Throws InvalidInput on a wrong header, a malformed field or a row with
/// the wrong number of fields. Accepts CRLF.
std::vector<CircleRow> parse_circles_csv(std::string_view text);
CountSeries parse_series_csv(std::string_view text);

/// Compact JSON builder. Reals are written with 17 significant digits,
/// non-finite reals as null, keys in insertion order.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);

  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  /// Exact integer, as a JSON number.
  JsonWriter& value_i128(i128 v);
  JsonWriter& null();

  template <class T>
  JsonWriter& field(std::string_view k, const T& v) {
    key(k);
    return value(v);
  }

  /// Document text with a trailing newline. Throws if containers are open.
  std::string str() const;

 private:
  void separate();

  std::string out_;
  std::vector<bool> first_;  // per open container
  bool after_key_ = false;
};

std::string json_escape(std::string_view s);

}  // namespace packlab
