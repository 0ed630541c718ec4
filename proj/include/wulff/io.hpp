#pragma once

// JSON ingestion and emission for integrands, bodies and reports.
//
// Malformed documents raise Errc::Schema; well-formed documents describing an
// invalid integrand or body raise Errc::InvalidIntegrand / Errc::InvalidBody.

#include <string>

#include <json.hpp>

#include "wulff/approx.hpp"
#include "wulff/integrand.hpp"
#include "wulff/metrics.hpp"
#include "wulff/spherical_body.hpp"
#include "wulff/wulff_shape.hpp"

namespace wulff::io {

using json = nlohmann::ordered_json;

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

ConvexIntegrand integrand_from_json(const json& j);
SphericalBody body_from_json(const json& j);

json body_to_json(const SphericalBody& c);
json to_json(const WulffPolygon& w);
json to_json(const DualWulff& d);
json to_json(const ApexReport& r);
json to_json(const Theorem1Report& r);
json to_json(const PipelineReport& r);
json to_json(const DistanceResult& r);
json to_json(const WidthReport& r);

/// CSV with a header row: param, center_x, center_y, center_z, width.
std::string width_csv(const WidthReport& r);

}  // namespace wulff::io
