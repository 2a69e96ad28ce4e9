#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>

#include "pseudoseg/geom_kernel.hpp"
#include "pseudoseg/graph.hpp"

namespace pseudoseg {

inline constexpr const char* kVersion = "pseudoseg 1.0.0";

/// [numerator, denominator]; components that do not fit in 64 bits are
/// written as decimal strings.
nlohmann::json rat_to_json(const Rat& r);
Rat rat_from_json(const nlohmann::json& j);

/// Curve-family interchange format:
/// {"strip": [[n,d],[n,d]] | null, "curves": [{"id": "...", "pts": [[[xn,xd],[yn,yd]], ...]}]}
nlohmann::json family_to_json(const CurveFamily& f);
CurveFamily family_from_json(const nlohmann::json& j);

/// {"vertices": [...], "edges": [[a,b], ...]} with label pairs in vertex order.
nlohmann::json graph_to_json(const LabelledGraph& g);
LabelledGraph graph_from_json(const nlohmann::json& j);

nlohmann::json read_json(std::istream& in);

}  // namespace pseudoseg
