#pragma once

#include <string>

#include "lunekit/body.hpp"
#include "lunekit/generators.hpp"
#include "lunekit/metrics.hpp"
#include "lunekit/wulff.hpp"

namespace lunekit {

// JSON (de)serialization as text. Numbers round-trip exactly: parsing the
// emitted text reproduces the original doubles bit for bit. Parsers throw
// SchemaError on malformed or incomplete documents.

std::string body_to_json(const Body& body);
Body body_from_json(const std::string& text, const ToleranceConfig& cfg = {});

std::string gamma_to_json(const GammaField& g);
GammaField gamma_from_json(const std::string& text);
// CSV rows: one direction per line, components then the gamma value.
GammaField gamma_from_csv(const std::string& text);

std::string wulff_to_json(const WulffPolytope& w);
WulffPolytope wulff_from_json(const std::string& text);

std::string width_report_to_json(const WidthReport& r);
std::string constancy_report_to_json(const ConstancyReport& r);
std::string equivalence_report_to_json(const ConstancyEquivalenceReport& r);
std::string boundary_duality_report_to_json(const BoundaryDualityReport& r);
std::string projection_diagram_report_to_json(const ProjectionDiagramReport& r);
std::string self_dual_report_to_json(const SelfDualReport& r);
std::string thickness_sum_report_to_json(const ThicknessSumReport& r);

// Boundary mesh of a 3-dimensional body in OFF format: a closed triangulated
// disk (Euler characteristic 1). Polytopes use their own vertex ring, cap
// bodies a sampled boundary ring, fanned after angular ordering around the
// projection to the tangent plane at an interior point.
std::string export_off(const Body& body, int samples, std::uint64_t seed,
                       const ToleranceConfig& cfg = {});

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace lunekit
