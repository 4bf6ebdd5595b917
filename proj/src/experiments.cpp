#include "mantel/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>
#include <type_traits>

#include "mantel/hypergraph_io.hpp"
#include "mantel/report_json.hpp"

namespace mantel {

using nlohmann::json;

std::string_view kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::PhaseSweep: return "phase-sweep";
        case ExperimentKind::Concentration: return "concentration";
        case ExperimentKind::Audit: return "audit";
        case ExperimentKind::TuranTable: return "turan-table";
        case ExperimentKind::Solve: return "solve";
    }
    return "?";
}

std::string_view tier_name(Tier t) { return t == Tier::Exact ? "exact" : "heuristic"; }

double PValue::resolve(std::size_t n) const {
    if (!scaled) return value;
    const double nd = static_cast<double>(n);
    return value * std::log(nd) / nd;
}

std::string PValue::label() const { return scaled ? "c=" + format_double(value) : format_double(value); }

// ---- configuration -------------------------------------------------------------

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    if constexpr (std::is_unsigned_v<T>)
        if (const json& v = j.at(key); !(v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)))
            throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("bad value for '") + key + "'");
    }
}

Tier parse_tier(const std::string& s) {
    if (s == "exact") return Tier::Exact;
    if (s == "heuristic") return Tier::Heuristic;
    throw ConfigError("tier must be 'exact' or 'heuristic', got '" + s + "'");
}

std::string constant_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_double(v.get<double>());
    throw ConfigError("constants must be numbers or strings such as \"1/4200\"");
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
    static const std::vector<std::string> known = {
        "kind", "n",     "k",       "p",        "trials",    "seed",   "tier",  "tfree_tier", "budgets",
        "sampler", "eps", "empirical_p", "gamma", "constants", "cap", "inputs", "output"};
    for (const auto& [key, value] : doc.items())
        if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown key '" + key + "'");

    ExperimentConfig cfg;
    cfg.source = doc;

    const auto kind = get_or<std::string>(doc, "kind", "");
    if (kind == "phase-sweep")
        cfg.kind = ExperimentKind::PhaseSweep;
    else if (kind == "concentration")
        cfg.kind = ExperimentKind::Concentration;
    else if (kind == "audit")
        cfg.kind = ExperimentKind::Audit;
    else if (kind == "turan-table")
        cfg.kind = ExperimentKind::TuranTable;
    else if (kind == "solve")
        cfg.kind = ExperimentKind::Solve;
    else
        throw ConfigError("kind must be one of phase-sweep, concentration, audit, turan-table, solve");

    cfg.k = get_or<int>(doc, "k", 4);
    if (cfg.k < 2 || cfg.k > kMaxUniformity) throw ConfigError("k must be 2, 3 or 4");
    if ((cfg.kind == ExperimentKind::Concentration || cfg.kind == ExperimentKind::Audit) && cfg.k != 4)
        throw ConfigError(std::string(kind_name(cfg.kind)) + " needs k = 4");

    const bool needs_grid = cfg.kind != ExperimentKind::Solve;
    const bool needs_p = needs_grid && cfg.kind != ExperimentKind::TuranTable;
    if (needs_grid) {
        if (!doc.contains("n") || !doc["n"].is_array() || doc["n"].empty()) throw ConfigError("n list is empty");
        for (const auto& v : doc["n"]) {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                throw ConfigError("n entries must be non-negative integers");
            const auto n = v.get<std::size_t>();
            if (n < static_cast<std::size_t>(cfg.k) || n > kMaxVertices) throw ConfigError("n out of range");
            cfg.n.push_back(n);
        }
    }
    if (needs_p) {
        if (!doc.contains("p") || !doc["p"].is_array() || doc["p"].empty()) throw ConfigError("p grid is empty");
        for (const auto& v : doc["p"]) {
            PValue pv;
            if (v.is_number()) {
                pv.value = v.get<double>();
            } else if (v.is_object() && v.size() == 1 && v.contains("c") && v["c"].is_number()) {
                pv.value = v["c"].get<double>();
                pv.scaled = true;
            } else {
                throw ConfigError("p entries are numbers or {\"c\": multiplier of ln(n)/n}");
            }
            if (!std::isfinite(pv.value) || pv.value < 0) throw ConfigError("p entries must be finite and >= 0");
            cfg.p.push_back(pv);
        }
    }

    const auto trials = get_or<long long>(doc, "trials", 1);
    if (trials < 1) throw ConfigError("trials must be >= 1");
    cfg.trials = static_cast<std::size_t>(trials);
    cfg.master_seed = get_or<std::uint64_t>(doc, "seed", 0);
    cfg.tier = parse_tier(get_or<std::string>(doc, "tier", "exact"));
    if (doc.contains("tfree_tier")) cfg.tfree_tier = parse_tier(get_or<std::string>(doc, "tfree_tier", ""));

    if (doc.contains("budgets")) {
        const json& b = doc["budgets"];
        if (!b.is_object()) throw ConfigError("budgets must be an object");
        cfg.tfree_budget.max_nodes = get_or<std::uint64_t>(b, "tfree_nodes", cfg.tfree_budget.max_nodes);
        cfg.tfree_budget.max_seconds = get_or<double>(b, "tfree_seconds", cfg.tfree_budget.max_seconds);
        cfg.cut_budget.max_nodes = get_or<std::uint64_t>(b, "cut_nodes", cfg.cut_budget.max_nodes);
        cfg.cut_budget.max_seconds = get_or<double>(b, "cut_seconds", cfg.cut_budget.max_seconds);
        cfg.copy_limit = get_or<std::uint64_t>(b, "copy_limit", cfg.copy_limit);
        cfg.repair_restarts = get_or<int>(b, "repair_restarts", cfg.repair_restarts);
        cfg.local_restarts = get_or<int>(b, "local_restarts", cfg.local_restarts);
        if (cfg.repair_restarts < 1 || cfg.local_restarts < 1) throw ConfigError("restarts must be >= 1");
    }

    const auto sampler = get_or<std::string>(doc, "sampler", "skip");
    if (sampler == "skip")
        cfg.sampler = Sampler::Skip;
    else if (sampler == "bernoulli")
        cfg.sampler = Sampler::Bernoulli;
    else
        throw ConfigError("sampler must be 'skip' or 'bernoulli'");

    cfg.eps = get_or<double>(doc, "eps", cfg.eps);
    if (!(cfg.eps >= 0)) throw ConfigError("eps must be >= 0");
    cfg.empirical_p = get_or<bool>(doc, "empirical_p", false);

    if (doc.contains("gamma")) {
        const auto g = get_or<std::string>(doc, "gamma", "");
        if (g == "formula")
            cfg.gamma = GammaChoice::Formula;
        else if (g == "decimal")
            cfg.gamma = GammaChoice::Decimal;
        else
            throw ConfigError("gamma must be 'formula' or 'decimal'");
    }
    if (cfg.kind == ExperimentKind::Audit && !cfg.gamma)
        throw ConfigError("audit runs must choose gamma: 'formula' ((1 - eps)/64) or 'decimal' (0.146)");

    if (doc.contains("constants")) {
        if (!doc["constants"].is_object()) throw ConfigError("constants must be an object");
        for (const auto& [name, value] : doc["constants"].items()) cfg.constant_overrides[name] = constant_text(value);
        try {
            cfg.constants = with_overrides(PaperConstants::defaults(), cfg.constant_overrides);
        } catch (const InputError& e) {
            throw ConfigError(e.what());
        }
    }

    if (doc.contains("cap")) cfg.cap = get_or<std::size_t>(doc, "cap", 0);
    if (cfg.kind == ExperimentKind::Solve) {
        if (!doc.contains("inputs") || !doc["inputs"].is_array() || doc["inputs"].empty())
            throw ConfigError("solve needs a non-empty inputs list");
        for (const auto& v : doc["inputs"]) {
            if (!v.is_string()) throw ConfigError("inputs are file paths");
            cfg.inputs.push_back(v.get<std::string>());
        }
    }
    cfg.output = get_or<std::string>(doc, "output", "");
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + ": " + e.what());
    }
    return parse_config(doc);
}

std::size_t default_threads() {
    if (const char* env = std::getenv("MANTEL_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// ---- shared pieces -------------------------------------------------------------

VertexPartition random_equal_partition(std::size_t n, int r, const TrialSeed& seed) {
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    SplitMix64 rng(seed.derived);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    const VertexPartition blocks = turan_partition(n, r);
    std::vector<std::uint8_t> a(n);
    for (std::size_t i = 0; i < n; ++i) a[order[i]] = static_cast<std::uint8_t>(blocks.class_of(static_cast<Vertex>(i)));
    return VertexPartition(r, std::move(a));
}

InstanceResult solve_instance(const Hypergraph& g, Tier tier, const ExperimentConfig& cfg, const TrialSeed& seed) {
    InstanceResult out;
    if (tier == Tier::Exact) {
        out.cut = max_cut_exact(g, cfg.cut_budget);
        out.tfree = max_tfree_exact(g, cfg.tfree_budget, cfg.copy_limit);
        out.partite = is_kpartite(out.tfree.witness_edges(g).to_hypergraph(), cfg.cut_budget);
    } else {
        out.cut = max_cut_local(g, seed, cfg.local_restarts);
        out.tfree = max_tfree_repair(g, seed, cfg.repair_restarts);
        const Hypergraph f = out.tfree.witness_edges(g).to_hypergraph();
        // a local cut covering F proves it partite; otherwise undecided
        out.partite = max_cut_local(f, seed, cfg.local_restarts).value == f.size() ? Tri::True : Tri::Indeterminate;
    }
    out.cut_certified = out.cut.optimal;
    out.tfree_certified = out.tfree.optimal;
    return out;
}

namespace {

std::string flag(bool b) { return b ? "1" : "0"; }
std::string num(std::uint64_t x) { return std::to_string(x); }

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    std::string lap() {
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
        start_ = now;
        return format_double(std::round(ms * 1000.0) / 1000.0);
    }

private:
    std::chrono::steady_clock::time_point start_;
};

struct TrialOutput {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> timing;  // stage=ms entries
    json detail;                      // audit trials
    bool skipped = false;
};

/// Runs jobs[i] for every i on `threads` workers; results land in slot i.
/// The first exception (lowest index) is rethrown after all workers stop.
void run_pool(std::vector<std::function<TrialOutput()>>& jobs, std::vector<TrialOutput>& results, std::size_t threads) {
    results.assign(jobs.size(), {});
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
            try {
                results[i] = jobs[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    threads = std::max<std::size_t>(1, std::min(threads, jobs.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

TrialOutput skip_output(std::vector<std::string> row, std::size_t status_col, const std::string& reason) {
    row[status_col] = "skipped";
    row[status_col + 1] = reason;
    TrialOutput out;
    out.rows.push_back(std::move(row));
    out.skipped = true;
    return out;
}

struct Cell {
    std::size_t n = 0;
    PValue pv;
    double p = 0.0;
    std::uint64_t first_index = 0;
    std::optional<std::string> skip;
};

std::vector<Cell> grid(const ExperimentConfig& cfg) {
    std::vector<Cell> cells;
    std::uint64_t index = 0;
    for (std::size_t n : cfg.n) {
        for (const PValue& pv : cfg.p) {
            Cell c;
            c.n = n;
            c.pv = pv;
            c.p = pv.resolve(n);
            c.first_index = index;
            index += cfg.trials;
            if (!(c.p >= 0.0 && c.p <= 1.0)) c.skip = "p = " + format_double(c.p) + " outside [0, 1]";
            cells.push_back(c);
        }
    }
    return cells;
}

std::string header_block(const ExperimentConfig& cfg, std::uint64_t master, const std::string& build_id) {
    std::ostringstream h;
    h << "# schema: " << kTrialSchema << '\n';
    h << "# kind: " << kind_name(cfg.kind) << '\n';
    h << "# config: " << cfg.source.dump() << '\n';
    h << "# master_seed: " << master << '\n';
    h << "# constants:";
    for (const auto& [name, value] : cfg.constants.named()) h << ' ' << name << '=' << to_string(value);
    h << '\n';
    h << "# gamma: " << (cfg.gamma ? (*cfg.gamma == GammaChoice::Formula ? "formula" : "decimal") : "unset");
    if (cfg.gamma) h << " delta_admissible=" << flag(cfg.constants.delta_admissible(*cfg.gamma));
    h << '\n';
    h << "# build: " << build_id << '\n';
    return h.str();
}

// ---- phase sweep -----------------------------------------------------------------

const std::vector<std::string> kPhaseColumns = {
    "row_type", "n",           "k",       "p_spec",    "p",     "trial", "seed",   "edges", "q_value",
    "q_optimal", "tfree_value", "tfree_optimal", "partite", "low_pairs", "match", "status", "note"};

void phase_jobs(const ExperimentConfig& cfg, std::uint64_t master, const Cell& cell,
                std::vector<std::function<TrialOutput()>>& jobs) {
    const std::size_t cap = cfg.tier == Tier::Exact ? 12 : 200;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        jobs.push_back([&cfg, master, cell, t, cap] {
            const TrialSeed seed = derive_seed(master, cell.first_index + t);
            std::vector<std::string> row(kPhaseColumns.size());
            row[0] = "trial";
            row[1] = num(cell.n);
            row[2] = std::to_string(cfg.k);
            row[3] = cell.pv.label();
            row[4] = format_double(cell.p);
            row[5] = num(t);
            row[6] = num(seed.derived);
            if (cell.skip) return skip_output(row, 15, *cell.skip);
            if (cell.n > cap)
                return skip_output(row, 15, std::string(tier_name(cfg.tier)) + " tier needs n <= " + num(cap));

            TrialOutput out;
            Stopwatch sw;
            const Hypergraph g = sample_gknp(cell.n, cfg.k, cell.p, seed, cfg.sampler);
            out.timing.push_back("sample=" + sw.lap());
            InstanceResult r;
            try {
                r = solve_instance(g, cfg.tier, cfg, seed);
            } catch (const SolverLimitError& e) {
                row[7] = num(g.size());
                return skip_output(row, 15, e.what());
            }
            out.timing.push_back("solve=" + sw.lap());
            std::size_t low = 0;
            if (cfg.k == 4 && r.cut.partition && g.num_vertices() >= 4)
                low = low_pairs(g, *r.cut.partition, cell.p, to_double(cfg.constants.alpha)).pairs.size();
            out.timing.push_back("low_pairs=" + sw.lap());

            row[7] = num(g.size());
            row[8] = num(r.cut.value);
            row[9] = flag(r.cut_certified);
            row[10] = num(r.tfree.value);
            row[11] = flag(r.tfree_certified);
            row[12] = std::string(tri_name(r.partite));
            row[13] = cfg.k == 4 ? num(low) : "";
            row[14] = flag(r.tfree.value == r.cut.value);
            row[15] = "ok";
            out.rows.push_back(std::move(row));
            return out;
        });
    }
}

std::vector<std::string> phase_summary(const ExperimentConfig& cfg, const Cell& cell,
                                       const std::vector<TrialOutput>& results, std::size_t first) {
    std::size_t ok = 0, matches = 0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        const auto& r = results[first + t];
        if (r.skipped) continue;
        ++ok;
        matches += r.rows[0][14] == "1";
    }
    std::vector<std::string> row(kPhaseColumns.size());
    row[0] = "summary";
    row[1] = num(cell.n);
    row[2] = std::to_string(cfg.k);
    row[3] = cell.pv.label();
    row[4] = format_double(cell.p);
    row[5] = num(ok);
    row[14] = ok ? format_double(static_cast<double>(matches) / static_cast<double>(ok)) : "";
    row[15] = ok == cfg.trials ? "ok" : "partial";
    row[16] = cfg.tier == Tier::Exact ? "rate of best-found T-free value equal to q"
                                      : "proxy: rate of repair value equal to local-cut value";
    return row;
}

// ---- concentration ---------------------------------------------------------------

const std::vector<std::string> kConcentrationColumns = {
    "row_type", "n",          "p_spec",     "p",     "trial",       "seed",         "edges",
    "p_used",   "p_source",   "triple_min", "triple_max", "pair_min", "pair_max", "common_min",
    "common_max", "degree_min", "degree_max", "crossing_min", "crossing_max", "prop4",
    "prop5",    "prop6",      "prop7",      "prop8", "all_pass",   "status",       "note"};

std::string prop_state(const ConcentrationReport& r, int prop) {
    if (!r.proposition_applicable(prop)) return "na";
    return r.proposition_pass(prop) ? "pass" : "fail";
}

void concentration_jobs(const ExperimentConfig& cfg, std::uint64_t master, const Cell& cell,
                        std::vector<std::function<TrialOutput()>>& jobs) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        jobs.push_back([&cfg, master, cell, t] {
            const TrialSeed seed = derive_seed(master, cell.first_index + t);
            const auto& cols = kConcentrationColumns;
            std::vector<std::string> row(cols.size());
            row[0] = "trial";
            row[1] = num(cell.n);
            row[2] = cell.pv.label();
            row[3] = format_double(cell.p);
            row[4] = num(t);
            row[5] = num(seed.derived);
            const std::size_t status = cols.size() - 2;
            if (cell.skip) return skip_output(row, status, *cell.skip);
            if (cell.p <= 0.0) return skip_output(row, status, "bands are degenerate at p = 0");

            TrialOutput out;
            Stopwatch sw;
            const Hypergraph g = sample_gknp(cell.n, 4, cell.p, seed, cfg.sampler);
            const VertexPartition pi = random_equal_partition(cell.n, 4, derive_seed(seed.derived, 0));
            out.timing.push_back("sample=" + sw.lap());
            row[6] = num(g.size());
            const double p_used = cfg.empirical_p ? empirical_p(g) : cell.p;
            if (!(p_used > 0.0)) return skip_output(row, status, "empirical p is 0");
            const auto rep = concentration_report(g, p_used, &pi, cfg.eps,
                                                  cfg.empirical_p ? PSource::Empirical : PSource::Generative);
            out.timing.push_back("report=" + sw.lap());

            row[7] = format_double(p_used);
            row[8] = cfg.empirical_p ? "empirical" : "generative";
            double cmin = 0, cmax = 0;
            bool first = true;
            for (const auto& r : rep.rows) {
                std::size_t col = 0;
                if (r.name == "triple_codegree") col = 9;
                if (r.name == "pair_codegree") col = 11;
                if (r.name == "common_degree") col = 13;
                if (r.name == "degree") col = 15;
                if (col) {
                    row[col] = format_double(r.observed_min);
                    row[col + 1] = format_double(r.observed_max);
                } else if (r.samples) {
                    cmin = first ? r.observed_min : std::min(cmin, r.observed_min);
                    cmax = first ? r.observed_max : std::max(cmax, r.observed_max);
                    first = false;
                }
            }
            row[17] = first ? "" : format_double(cmin);
            row[18] = first ? "" : format_double(cmax);
            bool all = true;
            for (int prop = 4; prop <= 8; ++prop) {
                row[19 + prop - 4] = prop_state(rep, prop);
                all = all && rep.proposition_pass(prop);
            }
            row[24] = flag(all);
            row[25] = "ok";
            out.rows.push_back(std::move(row));
            return out;
        });
    }
}

std::vector<std::string> concentration_summary(const ExperimentConfig& cfg, const Cell& cell,
                                               const std::vector<TrialOutput>& results, std::size_t first) {
    std::array<std::size_t, 6> passes{};
    std::size_t ok = 0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        const auto& r = results[first + t];
        if (r.skipped) continue;
        ++ok;
        for (int j = 0; j < 5; ++j) passes[j] += r.rows[0][19 + j] == "pass";
        passes[5] += r.rows[0][24] == "1";
    }
    std::vector<std::string> row(kConcentrationColumns.size());
    row[0] = "summary";
    row[1] = num(cell.n);
    row[2] = cell.pv.label();
    row[3] = format_double(cell.p);
    row[4] = num(ok);
    for (int j = 0; j < 6; ++j)
        row[19 + j] = ok ? format_double(static_cast<double>(passes[j]) / static_cast<double>(ok)) : "";
    row[25] = ok == cfg.trials ? "ok" : "partial";
    row[26] = "pass rates; band eps = " + format_double(cfg.eps);
    return row;
}

// ---- audit -----------------------------------------------------------------------

const std::vector<std::string> kAuditColumns = {
    "row_type", "n",     "p_spec", "p",      "trial", "seed",  "edges",  "tfree_value", "tfree_optimal",
    "q_value",  "q_certified", "crossing", "low_pairs", "gap", "verdict", "B1", "M",   "C",
    "C1",       "C2",    "conclusion", "conclusion_nonstrict", "degenerate", "status", "note"};

void audit_jobs(const ExperimentConfig& cfg, std::uint64_t master, const Cell& cell,
                std::vector<std::function<TrialOutput()>>& jobs) {
    const Tier tfree_tier = cfg.tfree_tier.value_or(cfg.tier);
    const std::size_t cap = cfg.tier == Tier::Exact ? 16 : 200;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        jobs.push_back([&cfg, master, cell, t, tfree_tier, cap] {
            const TrialSeed seed = derive_seed(master, cell.first_index + t);
            const auto& cols = kAuditColumns;
            const std::size_t status = cols.size() - 2;
            std::vector<std::string> row(cols.size());
            row[0] = "trial";
            row[1] = num(cell.n);
            row[2] = cell.pv.label();
            row[3] = format_double(cell.p);
            row[4] = num(t);
            row[5] = num(seed.derived);
            if (cell.skip) return skip_output(row, status, *cell.skip);
            if (cell.p <= 0.0) return skip_output(row, status, "thresholds are degenerate at p = 0");
            if (cell.n > cap)
                return skip_output(row, status, std::string(tier_name(cfg.tier)) + " tier needs n <= " + num(cap));

            TrialOutput out;
            Stopwatch sw;
            const Hypergraph g = sample_gknp(cell.n, 4, cell.p, seed, cfg.sampler);
            row[6] = num(g.size());
            out.timing.push_back("sample=" + sw.lap());
            SolveResult tf;
            try {
                tf = tfree_tier == Tier::Exact ? max_tfree_exact(g, cfg.tfree_budget, cfg.copy_limit)
                                               : max_tfree_repair(g, seed, cfg.repair_restarts);
            } catch (const SolverLimitError& e) {
                return skip_output(row, status, e.what());
            }
            const Hypergraph f = tf.witness_edges(g).to_hypergraph();
            out.timing.push_back("tfree=" + sw.lap());
            const CutMethod method = cfg.tier == Tier::Exact ? CutMethod::Exact : CutMethod::Local;
            const SolveResult fcut = best_partition_for(f, method, seed, cfg.cut_budget, cfg.local_restarts);
            const SolveResult q = cfg.tier == Tier::Exact ? max_cut4_exact(g, cfg.cut_budget)
                                                          : max_cut4_local(g, seed, cfg.local_restarts);
            out.timing.push_back("cuts=" + sw.lap());

            const DecompositionReport dec = decomposition(g, f, *fcut.partition, cell.p, cfg.constants);
            const AuditReport audit = lemma13_audit(g, f, dec);
            const GapReport gap = lemma14_gap(g, dec.partition, cell.p, cfg.constants, q.value, q.optimal);
            const Prop10Report size = prop10_check(g, f, dec.partition, cell.p, cfg.eps);
            out.timing.push_back("reports=" + sw.lap());

            row[7] = num(tf.value);
            row[8] = flag(tf.optimal);
            row[9] = num(q.value);
            row[10] = flag(q.optimal);
            row[11] = num(gap.crossing);
            row[12] = num(gap.low_pairs);
            row[13] = format_double(gap.gap);
            row[14] = std::string(verdict_name(gap.verdict));
            row[15] = num(dec.b[0].size());
            row[16] = num(dec.m.size());
            row[17] = num(dec.c.size());
            row[18] = num(dec.c1.size());
            row[19] = num(dec.c2.size());
            row[20] = flag(audit.line("conclusion")->holds);
            row[21] = flag(audit.line("conclusion_nonstrict")->holds);
            row[22] = flag(dec.degenerate_c || dec.degenerate_c1);
            row[23] = "ok";
            out.rows.push_back(row);

            out.detail = {{"n", cell.n},
                          {"p_spec", cell.pv.label()},
                          {"p", cell.p},
                          {"trial", t},
                          {"seed", seed.derived},
                          {"edges", g.size()},
                          {"tfree", {{"tier", tier_name(tfree_tier)}, {"value", tf.value}, {"optimal", tf.optimal}}},
                          {"q", {{"tier", tier_name(cfg.tier)}, {"value", q.value}, {"certified", q.optimal}}},
                          {"decomposition", to_json(dec, g, f)},
                          {"defect_edge_audit", to_json(audit)},
                          {"cut_gap", to_json(gap)},
                          {"size_and_balance", to_json(size)}};
            return out;
        });
    }
}

// ---- turan table -----------------------------------------------------------------

const std::vector<std::string> kTuranColumns = {
    "k", "n", "ex", "certified", "turan_size", "equal", "witness_kpartite", "some_optimum_kpartite", "nodes",
    "status", "note"};

void turan_jobs(const ExperimentConfig& cfg, std::vector<std::function<TrialOutput()>>& jobs) {
    const std::size_t cap = cfg.cap.value_or(cfg.k == 4 ? 7 : 9);
    for (std::size_t n : cfg.n) {
        jobs.push_back([&cfg, n, cap] {
            std::vector<std::string> row(kTuranColumns.size());
            row[0] = std::to_string(cfg.k);
            row[1] = num(n);
            if (n > cap) return skip_output(row, 9, "n exceeds the cap " + num(cap));
            TrialOutput out;
            Stopwatch sw;
            const Hypergraph host = Hypergraph::complete(n, cfg.k);
            SolveResult ex;
            try {
                ex = max_tfree_exact(host, cfg.tfree_budget, cfg.copy_limit);
            } catch (const SolverLimitError& e) {
                return skip_output(row, 9, e.what());
            }
            const std::size_t turan = turan_hypergraph(n, cfg.k).size();
            const Tri witness = is_kpartite(ex.witness_edges(host).to_hypergraph(), cfg.cut_budget);
            // The largest k-partite subgraph of a complete host is T_k(n).
            Tri some = Tri::Indeterminate;
            if (ex.value == turan)
                some = Tri::True;
            else if (ex.value > turan || ex.optimal)
                some = Tri::False;
            out.timing.push_back("solve=" + sw.lap());
            row[2] = num(ex.value);
            row[3] = flag(ex.optimal);
            row[4] = num(turan);
            row[5] = flag(ex.value == turan);
            row[6] = std::string(tri_name(witness));
            row[7] = std::string(tri_name(some));
            row[8] = num(ex.stats.nodes);
            row[9] = "ok";
            out.rows.push_back(std::move(row));
            return out;
        });
    }
}

// ---- solve -------------------------------------------------------------------------

const std::vector<std::string> kSolveColumns = {
    "input", "n", "k", "edges", "q_value", "q_certified", "tfree_value", "tfree_certified", "partite", "status", "note"};

void solve_jobs(const ExperimentConfig& cfg, std::uint64_t master, std::vector<std::function<TrialOutput()>>& jobs) {
    for (std::size_t i = 0; i < cfg.inputs.size(); ++i) {
        jobs.push_back([&cfg, master, i] {
            std::vector<std::string> row(kSolveColumns.size());
            row[0] = cfg.inputs[i];
            Hypergraph g;
            try {
                g = load_hypergraph(cfg.inputs[i]);
            } catch (const std::exception& e) {
                return skip_output(row, 9, e.what());
            }
            row[1] = num(g.num_vertices());
            row[2] = std::to_string(g.uniformity());
            row[3] = num(g.size());
            TrialOutput out;
            Stopwatch sw;
            InstanceResult r;
            try {
                r = solve_instance(g, cfg.tier, cfg, derive_seed(master, i));
            } catch (const SolverLimitError& e) {
                return skip_output(row, 9, e.what());
            }
            out.timing.push_back("solve=" + sw.lap());
            row[4] = num(r.cut.value);
            row[5] = flag(r.cut_certified);
            row[6] = num(r.tfree.value);
            row[7] = flag(r.tfree_certified);
            row[8] = std::string(tri_name(r.partite));
            row[9] = "ok";
            out.rows.push_back(std::move(row));
            return out;
        });
    }
}

std::filesystem::path output_path(const ExperimentConfig& cfg, const RunOptions& options) {
    std::string out = options.output_override.value_or(cfg.output);
    if (out.empty()) out = std::string(kind_name(cfg.kind)) + ".csv";
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

RunSummary run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
    const std::uint64_t master = options.seed_override.value_or(cfg.master_seed);
    RunSummary summary;
    summary.csv = output_path(cfg, options);
    summary.timing = summary.csv;
    summary.timing += ".timing.csv";

    std::vector<Cell> cells;
    std::vector<std::function<TrialOutput()>> jobs;
    const std::vector<std::string>* columns = nullptr;
    switch (cfg.kind) {
        case ExperimentKind::PhaseSweep:
            cells = grid(cfg);
            for (const Cell& c : cells) phase_jobs(cfg, master, c, jobs);
            columns = &kPhaseColumns;
            break;
        case ExperimentKind::Concentration:
            cells = grid(cfg);
            for (const Cell& c : cells) concentration_jobs(cfg, master, c, jobs);
            columns = &kConcentrationColumns;
            break;
        case ExperimentKind::Audit:
            cells = grid(cfg);
            for (const Cell& c : cells) audit_jobs(cfg, master, c, jobs);
            columns = &kAuditColumns;
            break;
        case ExperimentKind::TuranTable:
            turan_jobs(cfg, jobs);
            columns = &kTuranColumns;
            break;
        case ExperimentKind::Solve:
            solve_jobs(cfg, master, jobs);
            columns = &kSolveColumns;
            break;
    }

    std::vector<TrialOutput> results;
    run_pool(jobs, results, options.threads);

    std::string csv = header_block(cfg, master, options.build_id);
    csv += csv_line(*columns);
    std::string timing = csv_line({"job", "stages"});
    auto emit = [&](std::size_t i) {
        for (const auto& row : results[i].rows) {
            csv += csv_line(row);
            ++summary.rows;
        }
        summary.skipped += results[i].skipped;
        std::string stages;
        for (const auto& s : results[i].timing) stages += (stages.empty() ? "" : ";") + s;
        timing += csv_line({num(i), stages});
    };

    json details = json::array();
    if (cells.empty()) {
        for (std::size_t i = 0; i < results.size(); ++i) emit(i);
    } else {
        std::size_t job = 0;
        for (const Cell& cell : cells) {
            const std::size_t first = job;
            for (std::size_t t = 0; t < cfg.trials; ++t, ++job) {
                emit(job);
                if (!results[job].detail.is_null()) details.push_back(results[job].detail);
            }
            if (cfg.kind == ExperimentKind::PhaseSweep) {
                csv += csv_line(phase_summary(cfg, cell, results, first));
                ++summary.rows;
            } else if (cfg.kind == ExperimentKind::Concentration) {
                csv += csv_line(concentration_summary(cfg, cell, results, first));
                ++summary.rows;
            }
        }
    }

    write_file(summary.csv, csv);
    write_file(summary.timing, timing);
    if (cfg.kind == ExperimentKind::Audit) {
        std::filesystem::path jpath = summary.csv;
        jpath.replace_extension(".json");
        const json doc = {{"schema", kReportSchema},
                          {"kind", "audit"},
                          {"config", cfg.source},
                          {"master_seed", master},
                          {"constants", to_json(cfg.constants)},
                          {"gamma", *cfg.gamma == GammaChoice::Formula ? "formula" : "decimal"},
                          {"build", options.build_id},
                          {"trials", std::move(details)}};
        write_file(jpath, doc.dump(1) + "\n");
        summary.json = jpath;
    }
    return summary;
}

}  // namespace mantel
