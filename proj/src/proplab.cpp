#include "mantel/proplab.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "mantel/combinatorics.hpp"
#include "mantel/core_index.hpp"
#include "mantel/link_bitsets.hpp"

namespace mantel {

namespace {

using boost::multiprecision::cpp_int;

cpp_int pow10(unsigned e) {
    cpp_int r = 1;
    for (unsigned i = 0; i < e; ++i) r *= 10;
    return r;
}

Rational parse_decimal(const std::string& text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
    std::string digits;
    long frac = 0;
    bool any = false, dot = false;
    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits += ch;
            any = true;
            if (dot) ++frac;
        } else if (ch == '.' && !dot) {
            dot = true;
        } else {
            break;
        }
    }
    if (!any) throw InputError("not a number: '" + text + "'");
    long exponent = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        std::size_t used = 0;
        try {
            exponent = std::stol(text.substr(i), &used);
        } catch (const std::exception&) {
            throw InputError("bad exponent in '" + text + "'");
        }
        if (used == 0 || std::labs(exponent) > 4000) throw InputError("bad exponent in '" + text + "'");
        i += used;
    }
    if (i != text.size()) throw InputError("trailing characters in '" + text + "'");

    // cpp_int reads a leading 0 as an octal prefix
    const auto nonzero = digits.find_first_not_of('0');
    Rational value{nonzero == std::string::npos ? cpp_int(0) : cpp_int(digits.substr(nonzero))};
    const long shift = exponent - frac;
    if (shift >= 0)
        value *= Rational(pow10(static_cast<unsigned>(shift)));
    else
        value /= Rational(pow10(static_cast<unsigned>(-shift)));
    return negative ? -value : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return parse_decimal(text);
    const Rational num = parse_decimal(text.substr(0, slash));
    const Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + text + "'");
    return num / den;
}

std::string to_string(const Rational& q) { return q.str(); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

PaperConstants PaperConstants::defaults() {
    PaperConstants c;
    c.derive();
    return c;
}

void PaperConstants::derive() {
    delta = eps1 * eps1 * eps1 * eps2 / (320 * 110 * 16);
    eps3 = 16 * 80 * delta / eps1;
    gamma_formula = (1 - gap_eps) / 64;
    alpha_prime = 2 * alpha / (1 - gap_eps);
}

std::map<std::string, Rational> PaperConstants::named() const {
    return {{"alpha", alpha},     {"eps1", eps1},
            {"eps2", eps2},       {"delta", delta},
            {"eps3", eps3},       {"gap_eps", gap_eps},
            {"xi", xi},           {"gamma_formula", gamma_formula},
            {"gamma_decimal", gamma_decimal}, {"alpha_prime", alpha_prime},
            {"phi", phi}};
}

PaperConstants with_overrides(PaperConstants base, const std::map<std::string, std::string>& overrides) {
    const std::map<std::string, Rational PaperConstants::*> primary = {
        {"alpha", &PaperConstants::alpha}, {"eps1", &PaperConstants::eps1},
        {"eps2", &PaperConstants::eps2},   {"gap_eps", &PaperConstants::gap_eps},
        {"xi", &PaperConstants::xi},       {"phi", &PaperConstants::phi},
        {"gamma_decimal", &PaperConstants::gamma_decimal}};
    const std::map<std::string, Rational PaperConstants::*> derived = {
        {"delta", &PaperConstants::delta},
        {"eps3", &PaperConstants::eps3},
        {"gamma_formula", &PaperConstants::gamma_formula},
        {"alpha_prime", &PaperConstants::alpha_prime}};

    for (const auto& [name, text] : overrides)
        if (!primary.count(name) && !derived.count(name)) throw InputError("unknown constant '" + name + "'");
    for (const auto& [name, text] : overrides)
        if (auto it = primary.find(name); it != primary.end()) base.*(it->second) = parse_rational(text);
    base.derive();
    for (const auto& [name, text] : overrides)
        if (auto it = derived.find(name); it != derived.end()) base.*(it->second) = parse_rational(text);
    return base;
}

double chernoff_c(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw InputError("chernoff_c needs eps > 0");
    const double first = (1.0 + eps) * std::log1p(eps) - eps;
    return std::min(first, eps * eps / 2.0);
}

// ---- concentration -------------------------------------------------------------

bool ConcentrationReport::proposition_applicable(int proposition) const {
    return std::any_of(rows.begin(), rows.end(),
                       [&](const ConcentrationRow& r) { return r.proposition == proposition && r.applicable; });
}

bool ConcentrationReport::proposition_pass(int proposition) const {
    bool any = false;
    for (const auto& r : rows) {
        if (r.proposition != proposition || !r.applicable) continue;
        if (!r.pass) return false;
        any = true;
    }
    return any;
}

double empirical_p(const Hypergraph& g) {
    const auto total = binomial_real(g.num_vertices(), static_cast<std::uint64_t>(g.uniformity()));
    return total > 0 ? static_cast<double>(g.size()) / total : 0.0;
}

namespace {

void require_probability(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw InputError("p must lie in (0, 1]");
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::uint64_t samples = 0;
    void add(double x) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
        ++samples;
    }
};

// The band is closed; the 1e-12 relative slack only absorbs rounding in
// (1 ± eps) * expectation so that integer observations on the boundary pass.
bool in_band(const Range& r, double expectation, double eps) {
    if (r.samples == 0) return false;
    const double slack = 1e-12 * std::abs(expectation);
    return r.lo >= (1.0 - eps) * expectation - slack && r.hi <= (1.0 + eps) * expectation + slack;
}

ConcentrationRow make_row(std::string name, int prop, double expectation, const Range& r, double eps) {
    ConcentrationRow row;
    row.name = std::move(name);
    row.proposition = prop;
    row.expectation = expectation;
    row.observed_min = r.samples ? r.lo : 0.0;
    row.observed_max = r.samples ? r.hi : 0.0;
    row.eps = eps;
    row.samples = r.samples;
    row.pass = in_band(r, expectation, eps);
    return row;
}

}  // namespace

ConcentrationReport concentration_report(const Hypergraph& g, double p, const VertexPartition* partition, double eps,
                                         PSource source) {
    if (g.uniformity() != 4) throw InputError("concentration statistics are defined for 4-uniform hosts");
    require_probability(p);
    if (!(eps >= 0.0)) throw InputError("band eps must be non-negative");
    const std::size_t n = g.num_vertices();
    if (n < 4) throw InputError("concentration statistics need n >= 4");
    if (partition && (partition->num_classes() != 4 || partition->num_vertices() != n))
        throw InputError("crossing degrees need a 4-partition of the host's vertex set");

    const double nd = static_cast<double>(n);
    ConcentrationReport rep;
    rep.n = n;
    rep.p = p;
    rep.p_source = source;
    rep.eps = eps;

    {
        // Triples outside every edge have co-degree 0.
        const CoreIndex cores(g);
        Range r;
        for (std::size_t i = 0; i < cores.num_cores(); ++i) r.add(static_cast<double>(cores.completions(i).size()));
        const std::uint64_t total = binomial(n, 3);
        if (cores.num_cores() < total) r.add(0.0);
        r.samples = total;
        rep.rows.push_back(make_row("triple_codegree", 4, p * nd, r, eps));
    }
    {
        const PairIndex pairs(g);
        Range r;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) r.add(static_cast<double>(pairs.edges_with(u, v).size()));
        rep.rows.push_back(make_row("pair_codegree", 5, p / 2.0 * nd * nd, r, eps));
    }
    {
        const BitRows rows = link_rows(g);
        Range r;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) r.add(static_cast<double>(rows.intersection(u, v)));
        rep.rows.push_back(make_row("common_degree", 6, p * p / 6.0 * nd * nd * nd, r, eps));
    }
    {
        Range r;
        for (Vertex v = 0; v < n; ++v) r.add(static_cast<double>(g.degree(v)));
        rep.rows.push_back(make_row("degree", 7, p / 6.0 * nd * nd * nd, r, eps));
    }
    if (partition) {
        std::vector<std::size_t> cdeg(n, 0);
        const EdgeSet cross = crossing_edges(g, *partition);
        for (EdgeId id : cross.ids())
            for (Vertex v : g.edge(id)) ++cdeg[v];
        for (int c = 0; c < 4; ++c) {
            double product = 1.0;
            bool applicable = true;
            for (int o = 0; o < 4; ++o) {
                if (o == c) continue;
                const auto size = static_cast<double>(partition->class_size(o));
                product *= size;
                if (size < nd / 80.0) applicable = false;
            }
            Range r;
            for (Vertex v = 0; v < n; ++v)
                if (partition->class_of(v) == c) r.add(static_cast<double>(cdeg[v]));
            auto row = make_row("crossing_degree", 8, p * product, r, eps);
            row.source_class = c;
            row.applicable = applicable && r.samples > 0;
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

// ---- low co-degree pairs ----------------------------------------------------------

LowPairs low_pairs(const Hypergraph& g, const VertexPartition& partition, double p, double alpha) {
    const double nd = static_cast<double>(g.num_vertices());
    LowPairs out;
    out.threshold = alpha / 32.0 * p * p * nd * nd * nd;
    const CrossingLinkRows links = crossing_link_rows(g, partition, 0);

    std::vector<PairGraph::Pair> pairs;
    const std::size_t m = links.members.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (static_cast<double>(links.rows.intersection(i, j)) < out.threshold)
                pairs.emplace_back(links.members[i], links.members[j]);
    out.pairs = PairGraph(g.num_vertices(), std::move(pairs));
    out.degree.resize(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        out.degree[v] = out.pairs.degree(v);
        out.max_degree = std::max(out.max_degree, out.degree[v]);
    }
    return out;
}

std::uint64_t lemma12_count(const Hypergraph& g, const std::vector<Vertex>& a, double eps, double p) {
    if (g.uniformity() != 4) throw InputError("triple co-neighborhoods need a 4-uniform host");
    const std::size_t n = g.num_vertices();
    std::vector<bool> in_a(n, false);
    for (Vertex v : a) {
        if (v >= n) throw InputError("vertex " + std::to_string(v) + " outside the host");
        in_a[v] = true;
    }
    const double threshold = 2.0 * eps * p * static_cast<double>(n);
    const CoreIndex cores(g);
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < cores.num_cores(); ++i) {
        std::size_t hits = 0;
        for (Vertex x : cores.completions(i)) hits += in_a[x];
        if (static_cast<double>(hits) > threshold) ++count;
    }
    if (0.0 > threshold && n >= 3) count += binomial(n, 3) - cores.num_cores();
    return count;
}

}  // namespace mantel
