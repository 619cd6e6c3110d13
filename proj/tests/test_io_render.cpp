#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "packlab/error.hpp"
#include "packlab/io_render.hpp"

using namespace packlab;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::size_t lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

std::optional<ErrorCode> code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_SUITE("io_render") {

TEST_CASE("empty scene") {
  const Scene scene;
  CHECK(scene.empty());
  const std::string svg = emit_svg(scene);
  CHECK(svg.starts_with("<?xml"));
  CHECK(svg.ends_with("</svg>\n"));
  CHECK(count_of(svg, "<circle") == 0);
  CHECK(count_of(svg, "<svg") == 1);
}

TEST_CASE("unit circle") {
  Scene scene;
  scene.layers.push_back({"c", {{0.0, 1.0, 1.0, {}}}, {}});
  const std::string svg = emit_svg(scene);
  CHECK(count_of(svg, "<circle") == 1);
  CHECK(count_of(svg, "r=\"1.000000\"") == 1);
  CHECK(count_of(svg, "cy=\"0.000000\"") == 1);
  Scene bad;
  bad.viewport = {0.0, 0.0, 0.0, 1.0};
  CHECK(code_of([&] { emit_svg(bad); }) == ErrorCode::invalid_input);
}

TEST_CASE("fixed six decimals") {
  CHECK(format_fixed6(0.5) == "0.500000");
  CHECK(format_fixed6(-0.0) == "0.000000");
  CHECK(format_fixed6(-1e-9) == "0.000000");
  CHECK(format_fixed6(2.0 / 3.0) == "0.666667");
  CHECK(format_real(0.1) == "0.10000000000000001");
}

TEST_CASE("root packing scene") {
  const auto run = generate(root_quadruple_bounded(), 3);
  const std::vector<PackedCircle> root(run.circles.begin(), run.circles.begin() + 4);
  const auto scene = packing_scene(root);
  std::size_t n = 0;
  for (const auto& l : scene.layers) n += l.circles.size();
  CHECK(n == 4);
  const std::string a = emit_svg(scene);
  CHECK(count_of(a, "<circle") == 4);
  CHECK(a == emit_svg(packing_scene(root)));
  auto shuffled = root;
  std::reverse(shuffled.begin(), shuffled.end());
  CHECK(a == emit_svg(packing_scene(shuffled)));
  // auto viewport keeps the bounding circle inside
  CHECK(scene.viewport.x0 < -1.0);
  CHECK(scene.viewport.x1 > 1.0);
}

TEST_CASE("limit set scene") {
  LimitSample s;
  s.points = {0.0, cplx(0.5, 0.5), cplx(-0.25, 1.0)};
  const auto svg = emit_svg(limit_set_scene(s));
  CHECK(count_of(svg, "<rect") == 4);
}

TEST_CASE("circle CSV") {
  CHECK(emit_circles_csv({}) == std::string(kCircleCsvHeader) + "\n");
  const auto run = generate(root_quadruple_bounded(), 3);
  const std::string csv = emit_circles_csv(run.circles);
  CHECK(lines(csv) == 6);
  CHECK(csv.starts_with(std::string(kCircleCsvHeader) + "\n-1,"));
  const auto rows = parse_circles_csv(csv);
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i] == to_row(run.circles[i]));
  CHECK(emit_rows_csv(rows) == csv);

  std::string crlf;
  for (char ch : csv) {
    if (ch == '\n') crlf += '\r';
    crlf += ch;
  }
  CHECK(parse_circles_csv(crlf) == rows);
  CHECK(code_of([] { parse_circles_csv("a,b\n1,2\n"); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { parse_circles_csv(std::string(kCircleCsvHeader) + "\n1,x,0,1,0\n"); }) ==
        ErrorCode::invalid_input);
}

TEST_CASE("series CSV round trip") {
  const CountSeries s({{1.5, 2}, {3.25, 9}, {1e10, 123456789012}});
  const std::string csv = emit_series_csv(s);
  CHECK(csv.starts_with("t,n\n"));
  CHECK(parse_series_csv(csv).points() == s.points());
}

TEST_CASE("json writer") {
  JsonWriter w;
  w.begin_object()
      .field("a", 1)
      .field("b", 0.1)
      .field("s", "q\"\n")
      .key("v")
      .begin_array()
      .value(true)
      .null()
      .value_i128(-(i128(1) << 70))
      .end_array()
      .end_object();
  CHECK(w.str() == "{\"a\":1,\"b\":0.10000000000000001,\"s\":\"q\\\"\\n\",\"v\":[true,null,-1180591620717411303424]}\n");
  CHECK(json_escape(std::string_view("\x01", 1)) == "\"\\u0001\"");
}

}  // TEST_SUITE
