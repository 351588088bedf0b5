#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "tritile/barriers.hpp"
#include "tritile/constructions.hpp"
#include "tritile/fracmatch.hpp"
#include "tritile/pipeline.hpp"
#include "tritile/regularity.hpp"
#include "tritile/spantree.hpp"
#include "tritile/tiling.hpp"

namespace tritile {

// JSON reports. Every top-level object carries a versioned "schema" field.

nlohmann::json to_json(const Graph& g);
nlohmann::json to_json(const TriangleTiling& t, int n);
nlohmann::json to_json(const ExactTilingResult& r, int n);
nlohmann::json to_json(const ProcedureTrace& tr);
ProcedureTrace trace_from_json(const nlohmann::json& j);
nlohmann::json to_json(const IndependenceBound& a);
nlohmann::json to_json(const WeightedFractionalMatching& w, const WfmReport& rep);
nlohmann::json to_json(const FarkasCertificate& c);
nlohmann::json to_json(const RegularityCertificate& c);
nlohmann::json to_json(const SlicingStats& s);
nlohmann::json to_json(const DivisibilityReport& r);
nlohmann::json to_json(const SpaceReport& r);
nlohmann::json to_json(const BarrierVerification& v);
nlohmann::json to_json(const ConstructionReport& r);
nlohmann::json to_json(const SpanTreeResult& r);
nlohmann::json to_json(const PipelineRun& run);

/// Stable text form: two-space indentation and a trailing newline.
std::string dump(const nlohmann::json& j);

// Static SVG plots.

std::string svg_bar_chart(const std::string& title, const std::vector<std::string>& labels,
                          const std::vector<double>& values);
/// Cells in [0, 1] shaded from white to dark blue; rows may have different lengths.
std::string svg_heatmap(const std::string& title, const std::vector<std::vector<double>>& cells);

}  // namespace tritile
