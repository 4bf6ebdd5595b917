#include "mantel/report_json.hpp"

#include <charconv>
#include <cmath>

namespace mantel {

using nlohmann::json;

namespace {

json vertices(const std::vector<Vertex>& vs) { return json(vs); }

json edge_list(const Hypergraph& h, const std::vector<EdgeId>& ids) {
    json out = json::array();
    for (EdgeId id : ids) {
        const Edge e = h.edge(id);
        out.push_back(std::vector<Vertex>(e.begin(), e.end()));
    }
    return out;
}

json pair_list(const PairGraph& g) {
    json out = json::array();
    for (const auto& [u, v] : g.pairs()) out.push_back({u, v});
    return out;
}

json number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    out += '\n';
    return out;
}

json to_json(const PaperConstants& c) {
    json out = json::object();
    for (const auto& [name, value] : c.named()) out[name] = {{"exact", to_string(value)}, {"value", to_double(value)}};
    out["delta_admissible"] = {{"gamma_formula", c.delta_admissible(GammaChoice::Formula)},
                               {"gamma_decimal", c.delta_admissible(GammaChoice::Decimal)}};
    return out;
}

json to_json(const ConcentrationReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        json j = {{"name", row.name},
                  {"proposition", row.proposition},
                  {"expectation", number(row.expectation)},
                  {"observed_min", number(row.observed_min)},
                  {"observed_max", number(row.observed_max)},
                  {"eps", number(row.eps)},
                  {"samples", row.samples},
                  {"applicable", row.applicable},
                  {"pass", row.pass}};
        j["source_class"] = row.source_class ? json(*row.source_class) : json(nullptr);
        rows.push_back(std::move(j));
    }
    json props = json::object();
    for (int prop = 4; prop <= 8; ++prop)
        props[std::to_string(prop)] = {{"applicable", r.proposition_applicable(prop)},
                                       {"pass", r.proposition_pass(prop)}};
    return {{"schema", kReportSchema},
            {"kind", "concentration"},
            {"n", r.n},
            {"p", number(r.p)},
            {"p_source", r.p_source == PSource::Generative ? "generative" : "empirical"},
            {"eps", number(r.eps)},
            {"rows", std::move(rows)},
            {"propositions", std::move(props)}};
}

json to_json(const LowPairs& r) {
    return {{"threshold", number(r.threshold)},
            {"pairs", pair_list(r.pairs)},
            {"size", r.pairs.size()},
            {"degree", r.degree},
            {"max_degree", r.max_degree}};
}

json to_json(const DecompositionReport& r, const Hypergraph& g, const Hypergraph& f) {
    json b = json::array();
    for (const auto& bi : r.b) b.push_back(edge_list(f, bi));
    json parts = json::array();
    for (const auto& part : r.b1_parts) parts.push_back(edge_list(f, part));
    std::vector<int> assignment(r.partition.assignment().begin(), r.partition.assignment().end());
    return {{"schema", kReportSchema},
            {"kind", "decomposition"},
            {"p", number(r.p)},
            {"relabeling", r.relabeling},
            {"partition", assignment},
            {"low_pairs", to_json(r.low)},
            {"B", std::move(b)},
            {"M", edge_list(g, r.m)},
            {"G_crossing_size", r.g_crossing.size()},
            {"F_crossing_size", r.f_crossing.size()},
            {"L", pair_list(r.l)},
            {"C", vertices(r.c)},
            {"D", vertices(r.d)},
            {"C1", vertices(r.c1)},
            {"C2", vertices(r.c2)},
            {"B1_parts", std::move(parts)},
            {"c_threshold", number(r.c_threshold)},
            {"c1_threshold", number(r.c1_threshold)},
            {"degenerate_c_threshold", r.degenerate_c},
            {"degenerate_c1_threshold", r.degenerate_c1},
            {"constants", to_json(r.constants)}};
}

json to_json(const AuditReport& r) {
    json lines = json::array();
    for (const auto& l : r.lines)
        lines.push_back({{"name", l.name},
                         {"lhs", number(l.lhs)},
                         {"relation", l.relation},
                         {"rhs", number(l.rhs)},
                         {"holds", l.holds},
                         {"note", l.note}});
    json quantities = json::object();
    for (const auto& [k, v] : r.quantities) quantities[k] = number(v);
    return {{"schema", kReportSchema},
            {"kind", r.name},
            {"diagnostic", true},
            {"lines", std::move(lines)},
            {"quantities", std::move(quantities)},
            {"flags", r.flags}};
}

json to_json(const GapReport& r) {
    return {{"schema", kReportSchema},
            {"kind", "cut_gap"},
            {"q_value", number(r.q_value)},
            {"q_certified", r.q_certified},
            {"crossing", r.crossing},
            {"low_pairs", r.low_pairs},
            {"penalty", number(r.penalty)},
            {"gap", number(r.gap)},
            {"verdict", verdict_name(r.verdict)}};
}

json to_json(const Prop10Report& r) {
    return {{"schema", kReportSchema},
            {"kind", "size_and_balance"},
            {"f_size", r.f_size},
            {"bound", number(r.bound)},
            {"size_holds", r.size_holds},
            {"balanced", r.balanced}};
}

}  // namespace mantel
