#include "packlab/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "packlab/error.hpp"
#include "packlab/io_render.hpp"

namespace packlab {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_input, std::string("malformed JSON: ") + e.what());
  }
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw Error(ErrorCode::invalid_input, what + " must be a number");
  return j.get<double>();
}

cplx complex_entry(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::invalid_input, what + " must be [re, im]");
  return {number(j[0], what), number(j[1], what)};
}

GroupPresentation presentation_from(const json& j, const LoadOptions& options) {
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array()) {
    throw Error(ErrorCode::invalid_input, "presentation needs a \"generators\" array");
  }
  std::vector<Generator> gens;
  for (const auto& g : j["generators"]) {
    if (!g.is_object() || !g.contains("name") || !g["name"].is_string() || !g.contains("matrix")) {
      throw Error(ErrorCode::invalid_input, "generator needs \"name\" and \"matrix\"");
    }
    const std::string name = g["name"].get<std::string>();
    const json& m = g["matrix"];
    if (!m.is_array() || m.size() != 4) {
      throw Error(ErrorCode::invalid_input, "matrix of " + name + " must list a, b, c, d");
    }
    const cplx a = complex_entry(m[0], name + ".a");
    const cplx b = complex_entry(m[1], name + ".b");
    const cplx c = complex_entry(m[2], name + ".c");
    const cplx d = complex_entry(m[3], name + ".d");
    const cplx det = a * d - b * c;
    if (!options.normalize && std::abs(det - cplx(1.0, 0.0)) > kTransportTol) {
      throw Error(ErrorCode::invalid_input,
                  "generator " + name + " has determinant " + format_real(det.real()) + " + " +
                      format_real(det.imag()) + "i; pass --normalize to rescale");
    }
    gens.push_back({name, MoebiusMap(a, b, c, d)});
  }
  return GroupPresentation(std::move(gens));
}

std::vector<PingPongDisks> pingpong_from(const json& list, const GroupPresentation& pres) {
  if (!list.is_array()) throw Error(ErrorCode::invalid_input, "\"pingpong\" must be an array");
  std::map<std::string, PingPongDisks> by_name;
  auto disk = [](const json& d, const std::string& what, cplx& center, double& r) {
    if (!d.is_array() || d.size() != 3) throw Error(ErrorCode::invalid_input, what + " must be [cx, cy, r]");
    center = {number(d[0], what), number(d[1], what)};
    r = number(d[2], what);
  };
  for (const auto& e : list) {
    if (!e.is_object() || !e.contains("name") || !e["name"].is_string() || !e.contains("disk") ||
        !e.contains("disk_inv")) {
      throw Error(ErrorCode::invalid_input, "ping-pong entry needs name, disk, disk_inv");
    }
    PingPongDisks p;
    p.name = e["name"].get<std::string>();
    disk(e["disk"], p.name + ".disk", p.center, p.radius);
    disk(e["disk_inv"], p.name + ".disk_inv", p.inv_center, p.inv_radius);
    if (!by_name.emplace(p.name, p).second) {
      throw Error(ErrorCode::invalid_input, "duplicate ping-pong entry " + p.name);
    }
  }
  std::vector<PingPongDisks> out;
  for (const auto& g : pres.generators()) {
    const auto it = by_name.find(g.name);
    if (it == by_name.end()) throw Error(ErrorCode::invalid_input, "no ping-pong disks for " + g.name);
    out.push_back(it->second);
  }
  if (by_name.size() != out.size()) throw Error(ErrorCode::invalid_input, "ping-pong entry for unknown generator");
  return out;
}

}  // namespace

GroupPresentation parse_presentation(std::string_view json_text, const LoadOptions& options) {
  return presentation_from(parse_json(json_text), options);
}

std::vector<PingPongDisks> parse_pingpong(std::string_view json_text) {
  const json j = parse_json(json_text);
  const GroupPresentation pres = presentation_from(j, LoadOptions{true});
  if (!j.contains("pingpong")) return {};
  return pingpong_from(j["pingpong"], pres);
}

RepresentationPair parse_pair(std::string_view json_text, const LoadOptions& options) {
  const json j = parse_json(json_text);
  if (!j.is_object() || !j.contains("rho1") || !j.contains("rho2")) {
    throw Error(ErrorCode::invalid_input, "pair config needs \"rho1\" and \"rho2\"");
  }
  GroupPresentation rho1 = presentation_from(j["rho1"], options);
  GroupPresentation rho2 = presentation_from(j["rho2"], options);
  std::vector<PingPongDisks> pp1, pp2;
  if (j.contains("pingpong")) pp1 = pingpong_from(j["pingpong"], rho1);
  if (j["rho1"].contains("pingpong")) {
    if (!pp1.empty()) throw Error(ErrorCode::invalid_input, "rho1 ping-pong disks given twice");
    pp1 = pingpong_from(j["rho1"]["pingpong"], rho1);
  }
  if (j["rho2"].contains("pingpong")) pp2 = pingpong_from(j["rho2"]["pingpong"], rho2);
  return RepresentationPair(std::move(rho1), std::move(rho2), std::move(pp1), std::move(pp2));
}

std::string presentation_to_json(const GroupPresentation& pres) {
  JsonWriter w;
  w.begin_object().key("generators").begin_array();
  for (const auto& g : pres.generators()) {
    w.begin_object().field("name", g.name).key("matrix").begin_array();
    for (const cplx v : {g.map.a(), g.map.b(), g.map.c(), g.map.d()}) {
      w.begin_array().value(v.real()).value(v.imag()).end_array();
    }
    w.end_array().end_object();
  }
  w.end_array().end_object();
  return w.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace packlab
