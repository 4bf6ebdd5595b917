#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mantel/experiments.hpp"
#include "mantel/hypergraph_io.hpp"
#include "mantel/randgen.hpp"

#ifndef MANTEL_BUILD_ID
#define MANTEL_BUILD_ID "mantel-dev"
#endif

using namespace mantel;

namespace {

struct RunFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> threads;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, bool config_required = true) {
    auto* opt = cmd->add_option("config", f.config, "Experiment configuration (JSON)");
    if (config_required) opt->required();
    cmd->add_option("--seed", f.seed, "Override the master seed");
    cmd->add_option("--out", f.out, "Override the output CSV path");
    cmd->add_option("--threads", f.threads, "Worker threads (default: MANTEL_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
}

RunOptions options_from(const RunFlags& f) {
    RunOptions o;
    o.threads = f.threads.value_or(default_threads());
    o.seed_override = f.seed;
    o.output_override = f.out;
    o.build_id = MANTEL_BUILD_ID;
    return o;
}

int report(const RunSummary& s) {
    std::cerr << "wrote " << s.rows << " rows to " << s.csv.string();
    if (s.json) std::cerr << " and " << s.json->string();
    std::cerr << '\n';
    if (s.skipped) std::cerr << s.skipped << " cells or trials skipped; see the status column\n";
    return s.exit_code();
}

int run_kind(const RunFlags& f, ExperimentKind expected) {
    const ExperimentConfig cfg = load_config(f.config);
    if (cfg.kind != expected)
        throw ConfigError("config kind is '" + std::string(kind_name(cfg.kind)) + "', expected '" +
                          std::string(kind_name(expected)) + "'");
    return report(run_experiment(cfg, options_from(f)));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized-triangle experiments on random hypergraphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", MANTEL_BUILD_ID);

    // generate
    std::size_t gen_n = 0;
    int gen_k = 4;
    double gen_p = 0.5;
    std::uint64_t gen_seed = 0;
    std::uint64_t gen_index = 0;
    std::string gen_sampler = "skip";
    std::optional<std::string> gen_out;
    auto* generate = app.add_subcommand("generate", "Sample G^k(n, p) and write it in the text format");
    generate->add_option("-n,--n", gen_n, "Vertices")->required();
    generate->add_option("-k,--k", gen_k, "Uniformity")->check(CLI::Range(2, 4));
    generate->add_option("-p,--p", gen_p, "Edge probability")->check(CLI::Range(0.0, 1.0));
    generate->add_option("--seed", gen_seed, "Master seed");
    generate->add_option("--index", gen_index, "Trial index mixed into the master seed");
    generate->add_option("--sampler", gen_sampler, "skip or bernoulli")
        ->check(CLI::IsMember({"skip", "bernoulli"}));
    generate->add_option("--out", gen_out, "Output file (default stdout)");

    // solve
    std::vector<std::string> solve_inputs;
    std::string solve_tier = "exact";
    RunFlags solve_flags;
    auto* solve = app.add_subcommand("solve", "Cut, T-free and partiteness for hypergraph files");
    solve->add_option("inputs", solve_inputs, "Hypergraph text files")->required();
    solve->add_option("--tier", solve_tier, "exact or heuristic")->check(CLI::IsMember({"exact", "heuristic"}));
    solve->add_option("--seed", solve_flags.seed, "Master seed");
    solve->add_option("--out", solve_flags.out, "Output CSV path");
    solve->add_option("--threads", solve_flags.threads, "Worker threads")->check(CLI::PositiveNumber);

    RunFlags phase_flags, conc_flags, audit_flags, turan_flags;
    auto* phase = app.add_subcommand("phase", "Phase sweep over (n, p)");
    add_run_flags(phase, phase_flags);
    auto* conc = app.add_subcommand("concentration", "Degree and co-degree concentration bands");
    add_run_flags(conc, conc_flags);
    auto* audit = app.add_subcommand("audit", "Structural decomposition audits");
    add_run_flags(audit, audit_flags);
    auto* turan = app.add_subcommand("turan-table", "Exact T-free numbers of complete hosts");
    add_run_flags(turan, turan_flags);

    std::string rt_input;
    std::optional<std::string> rt_out;
    auto* roundtrip = app.add_subcommand("fmt-roundtrip", "Parse and rewrite a hypergraph file; exit 0 iff unchanged");
    roundtrip->add_option("input", rt_input, "Hypergraph text file")->required();
    roundtrip->add_option("--out", rt_out, "Write the canonical text here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*generate) {
            const Sampler s = gen_sampler == "bernoulli" ? Sampler::Bernoulli : Sampler::Skip;
            const Hypergraph g = sample_gknp(gen_n, gen_k, gen_p, derive_seed(gen_seed, gen_index), s);
            if (gen_out)
                save_hypergraph(*gen_out, g);
            else
                write_text(std::cout, g);
            std::cerr << "sampled " << g.size() << " edges\n";
            return 0;
        }
        if (*solve) {
            nlohmann::json doc = {{"kind", "solve"}, {"inputs", solve_inputs}, {"tier", solve_tier}};
            if (solve_flags.seed) doc["seed"] = *solve_flags.seed;
            const ExperimentConfig cfg = parse_config(doc);
            return report(run_experiment(cfg, options_from(solve_flags)));
        }
        if (*phase) return run_kind(phase_flags, ExperimentKind::PhaseSweep);
        if (*conc) return run_kind(conc_flags, ExperimentKind::Concentration);
        if (*audit) return run_kind(audit_flags, ExperimentKind::Audit);
        if (*turan) return run_kind(turan_flags, ExperimentKind::TuranTable);
        if (*roundtrip) {
            const std::string original = slurp(rt_input);
            const std::string canonical = to_text(parse_text(original));
            if (rt_out) {
                std::ofstream out(*rt_out, std::ios::binary | std::ios::trunc);
                out << canonical;
            }
            const bool same = canonical == original;
            std::cerr << (same ? "round-trip identical\n" : "round-trip changed the bytes (input not canonical)\n");
            return same ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
