#include "pseudoseg/io.hpp"

#include <istream>

#include "pseudoseg/errors.hpp"

namespace pseudoseg {

using nlohmann::json;

namespace {

json int_component(const mpz_class& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

std::string component_string(const json& j) {
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number_unsigned()) return std::to_string(j.get<unsigned long long>());
  if (j.is_string()) return j.get<std::string>();
  throw InvalidInput("rational component must be an integer or decimal string");
}

}  // namespace

json rat_to_json(const Rat& r) {
  return json::array({int_component(r.raw().get_num()), int_component(r.raw().get_den())});
}

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_array() || j.size() != 2) throw InvalidInput("rational must be [numerator, denominator]");
  return Rat::parse(component_string(j[0]), component_string(j[1]));
}

json family_to_json(const CurveFamily& f) {
  json out;
  if (f.strip()) {
    out["strip"] = json::array({rat_to_json(f.strip()->x0), rat_to_json(f.strip()->x1)});
  } else {
    out["strip"] = nullptr;
  }
  json curves = json::array();
  for (const auto& c : f.curves()) {
    json pts = json::array();
    for (const auto& p : c.vertices()) pts.push_back(json::array({rat_to_json(p.x), rat_to_json(p.y)}));
    curves.push_back({{"id", c.id()}, {"pts", std::move(pts)}});
  }
  out["curves"] = std::move(curves);
  return out;
}

CurveFamily family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("curves") || !j["curves"].is_array()) {
    throw InvalidInput("curve family JSON needs a \"curves\" array");
  }
  std::optional<Strip> strip;
  if (j.contains("strip") && !j["strip"].is_null()) {
    const json& s = j["strip"];
    if (!s.is_array() || s.size() != 2) throw InvalidInput("strip must be [x0, x1]");
    strip = Strip{rat_from_json(s[0]), rat_from_json(s[1])};
  }
  std::vector<MonotoneCurve> curves;
  for (const json& c : j["curves"]) {
    if (!c.contains("id") || !c.contains("pts")) throw InvalidInput("curve needs \"id\" and \"pts\"");
    std::vector<Point> pts;
    for (const json& p : c["pts"]) {
      if (!p.is_array() || p.size() != 2) throw InvalidInput("point must be [x, y]");
      pts.push_back(Point{rat_from_json(p[0]), rat_from_json(p[1])});
    }
    curves.emplace_back(c["id"].get<std::string>(), std::move(pts));
  }
  return CurveFamily(std::move(curves), std::move(strip));
}

json graph_to_json(const LabelledGraph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back(json::array({g.label(a), g.label(b)}));
  return json{{"vertices", g.labels()}, {"edges", std::move(edges)}};
}

LabelledGraph graph_from_json(const json& j) {
  LabelledGraph g(j.at("vertices").get<std::vector<std::string>>());
  for (const json& e : j.at("edges")) g.add_edge(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  return g;
}

json read_json(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace pseudoseg
