#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mantel/proplab.hpp"

namespace mantel {

inline constexpr std::string_view kReportSchema = "mantel-report/1";

nlohmann::json to_json(const PaperConstants& c);
nlohmann::json to_json(const ConcentrationReport& r);
nlohmann::json to_json(const LowPairs& r);
/// Edge sets are written as vertex lists: F-relative sets (B_i, B_1 parts,
/// F[Pi]) via f, G-relative sets (M, G[Pi]) via g.
nlohmann::json to_json(const DecompositionReport& r, const Hypergraph& g, const Hypergraph& f);
nlohmann::json to_json(const AuditReport& r);
nlohmann::json to_json(const GapReport& r);
nlohmann::json to_json(const Prop10Report& r);

/// Shortest decimal that round-trips (std::to_chars); locale-independent.
std::string format_double(double x);
/// Quotes a CSV field when it holds a comma, quote or line break.
std::string csv_field(std::string_view s);
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace mantel
