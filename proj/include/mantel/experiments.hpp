#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mantel/proplab.hpp"
#include "mantel/randgen.hpp"
#include "mantel/solvers.hpp"

namespace mantel {

inline constexpr std::string_view kTrialSchema = "mantel-trials/1";

enum class ExperimentKind { PhaseSweep, Concentration, Audit, TuranTable, Solve };
enum class Tier { Exact, Heuristic };

std::string_view kind_name(ExperimentKind k);
std::string_view tier_name(Tier t);

/// Rejected configuration; nothing has run yet.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One p-grid entry: an absolute probability, or c · ln(n) / n.
struct PValue {
    double value = 0.0;
    bool scaled = false;

    double resolve(std::size_t n) const;
    std::string label() const;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::PhaseSweep;
    std::vector<std::size_t> n;
    int k = 4;
    std::vector<PValue> p;
    std::size_t trials = 1;
    std::uint64_t master_seed = 0;
    Tier tier = Tier::Exact;
    std::optional<Tier> tfree_tier;  // audit only; defaults to tier
    Budget tfree_budget{20'000'000, 0.0};
    Budget cut_budget{};
    std::uint64_t copy_limit = kDefaultCopyLimit;
    int repair_restarts = 4;
    int local_restarts = 8;
    Sampler sampler = Sampler::Skip;
    double eps = 0.25;
    bool empirical_p = false;
    std::optional<GammaChoice> gamma;
    std::map<std::string, std::string> constant_overrides;
    PaperConstants constants = PaperConstants::defaults();
    std::optional<std::size_t> cap;  // turan-table
    std::vector<std::string> inputs; // solve
    std::string output;

    /// The configuration document as given, echoed into every output header.
    nlohmann::json source;
};

/// Parses and validates; throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

struct RunOptions {
    std::size_t threads = 1;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> output_override;
    std::string build_id;
};

/// MANTEL_THREADS when set and positive, else the hardware concurrency.
std::size_t default_threads();

struct RunSummary {
    std::size_t rows = 0;
    std::size_t skipped = 0;  // skipped cells or trials
    std::filesystem::path csv;
    std::optional<std::filesystem::path> json;
    std::filesystem::path timing;

    int exit_code() const { return skipped ? 2 : 0; }
};

/// Runs the configured experiment. The CSV (and JSON for audits) depend only
/// on the configuration and master seed; wall times go to a separate timing
/// file next to the CSV.
RunSummary run_experiment(const ExperimentConfig& cfg, const RunOptions& options);

/// What the harness computes for one host.
struct InstanceResult {
    SolveResult cut;
    SolveResult tfree;
    Tri partite = Tri::Indeterminate;
    bool cut_certified = false;
    bool tfree_certified = false;
};

InstanceResult solve_instance(const Hypergraph& g, Tier tier, const ExperimentConfig& cfg, const TrialSeed& seed);

/// A uniformly random near-equal partition (part sizes as in turan_partition).
VertexPartition random_equal_partition(std::size_t n, int r, const TrialSeed& seed);

}  // namespace mantel
