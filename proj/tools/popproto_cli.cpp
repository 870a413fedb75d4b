// Command-line front end for the popproto shared library. Talks to the
// core exclusively through the C API in popproto.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "popproto.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTooLarge = 3;

struct GraphDeleter {
    void operator()(pp_graph* g) const { pp_graph_free(g); }
};
using GraphPtr = std::unique_ptr<pp_graph, GraphDeleter>;

struct StringDeleter {
    void operator()(char* s) const { pp_string_free(s); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

int die(pp_status st) {
    std::cerr << "error: " << pp_last_error() << "\n";
    switch (st) {
        case PP_ERR_INVARIANT: return kExitInvariant;
        case PP_ERR_TOO_LARGE: return kExitTooLarge;
        default: return kExitUsage;
    }
}

bool emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return true;
    }
    std::ofstream out(path);
    out << content;
    return static_cast<bool>(out);
}

struct GraphArgs {
    std::string kind = "complete";
    std::string file;
    int32_t n = 0;
    uint64_t seed = 0;
};

void add_graph_options(CLI::App* cmd, GraphArgs& args, bool need_n) {
    cmd->add_option("--graph", args.kind, "graph generator kind")->capture_default_str();
    cmd->add_option("--graph-file", args.file, "read the graph from a file instead");
    auto* n_opt = cmd->add_option("--n", args.n, "population size for generated graphs");
    cmd->add_option("--graph-seed", args.seed, "seed for random graph generation");
    if (need_n) n_opt->required(false);
}

int open_graph(const GraphArgs& args, GraphPtr& out) {
    pp_graph* raw = nullptr;
    pp_status st;
    if (!args.file.empty()) {
        st = pp_graph_read(args.file.c_str(), &raw);
    } else {
        if (args.n < 2) {
            std::cerr << "error: --n (>= 2) is required with a generated graph\n";
            return kExitUsage;
        }
        st = pp_graph_generate(args.kind.c_str(), args.n, args.seed, &raw);
    }
    if (st != PP_OK) return die(st);
    out.reset(raw);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"population-protocol simulation and verification toolkit"};
    app.require_subcommand(1);

    // simulate ------------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "run seeded trials of one protocol");
    GraphArgs sim_graph;
    std::string sim_protocol, sim_schedule = "uniform_random", sim_mode = "positive";
    std::string sim_out;
    int32_t sim_k = 0, sim_trials = 1, sim_jobs = 1;
    uint64_t sim_seed = 0, sim_max_steps = 0;
    bool sim_no_invariants = false, sim_census = false;
    sim->add_option("--protocol", sim_protocol, "ciw_n | ciw_nk | cig")->required();
    sim->add_option("--k", sim_k, "group count (ciw_nk)");
    add_graph_options(sim, sim_graph, true);
    sim->add_option("--schedule", sim_schedule)->capture_default_str();
    sim->add_option("--seed", sim_seed);
    sim->add_option("--trials", sim_trials);
    sim->add_option("--max-steps", sim_max_steps, "0 = protocol-scale default");
    sim->add_option("--mode", sim_mode, "positive | negative")
        ->check(CLI::IsMember({"positive", "negative"}));
    sim->add_flag("--no-invariant-checks", sim_no_invariants);
    sim->add_flag("--census", sim_census);
    sim->add_option("--jobs", sim_jobs);
    sim->add_option("--out", sim_out, "output path (default stdout)");

    // sweep ---------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "scaling measurements on complete graphs");
    std::string sweep_protocol, sweep_out;
    std::vector<int32_t> sweep_sizes, sweep_ks;
    int32_t sweep_trials = 30, sweep_jobs = 1;
    uint64_t sweep_seed = 0;
    sweep->add_option("--protocol", sweep_protocol, "ciw_n | ciw_nk | cig")->required();
    sweep->add_option("--sizes", sweep_sizes, "population sizes")
        ->required()
        ->expected(-1)
        ->delimiter(',');
    sweep->add_option("--ks", sweep_ks, "k values (ciw_nk)")->expected(-1)->delimiter(',');
    sweep->add_option("--trials", sweep_trials)->capture_default_str();
    sweep->add_option("--seed", sweep_seed);
    sweep->add_option("--jobs", sweep_jobs);
    sweep->add_option("--out", sweep_out, "CSV output path (default stdout)");

    // modelcheck ----------------------------------------------------------
    auto* mc = app.add_subcommand("modelcheck", "exhaustive global-fairness verification");
    GraphArgs mc_graph;
    std::string mc_protocol, mc_expected, mc_out;
    int32_t mc_k = 0;
    uint64_t mc_cap = 0;
    mc->add_option("--protocol", mc_protocol, "ciw_n | ciw_nk | cig")->required();
    mc->add_option("--k", mc_k, "group count (ciw_nk)");
    add_graph_options(mc, mc_graph, true);
    mc->add_option("--expected", mc_expected, "yes | no (default: yes iff graph is complete)");
    mc->add_option("--cap", mc_cap, "configuration cap (0 = default)");
    mc->add_option("--out", mc_out, "output path (default stdout)");

    // transform -----------------------------------------------------------
    auto* tf = app.add_subcommand("transform", "write the transformed graph f(G)");
    std::string tf_in, tf_out;
    tf->add_option("--in", tf_in, "input graph file")->required();
    tf->add_option("--out", tf_out, "output graph file")->required();

    // mirror-demo ---------------------------------------------------------
    auto* md = app.add_subcommand("mirror-demo",
                                  "lockstep run on K_n and f(K_n) under a mirrored schedule");
    std::string md_protocol = "ciw_n", md_out;
    int32_t md_n = 2, md_k = 0;
    uint64_t md_steps = 10000, md_seed = 0;
    md->add_option("--protocol", md_protocol)->capture_default_str();
    md->add_option("--n", md_n)->capture_default_str();
    md->add_option("--k", md_k);
    md->add_option("--steps", md_steps, "base interaction count")->capture_default_str();
    md->add_option("--seed", md_seed);
    md->add_option("--out", md_out, "output path (default stdout)");

    // hitting-time --------------------------------------------------------
    auto* ht = app.add_subcommand("hitting-time",
                                  "max hitting time of the derived undirected multigraph");
    GraphArgs ht_graph;
    add_graph_options(ht, ht_graph, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (sim->parsed()) {
        GraphPtr g;
        if (int rc = open_graph(sim_graph, g); rc != kExitOk) return rc;
        pp_run_opts opts{};
        opts.protocol = sim_protocol.c_str();
        opts.k = sim_k;
        opts.schedule = sim_schedule.c_str();
        opts.seed = sim_seed;
        opts.trials = sim_trials;
        opts.max_steps = sim_max_steps;
        opts.negative_mode = sim_mode == "negative" ? 1 : 0;
        opts.invariant_checks = sim_no_invariants ? 0 : 1;
        opts.census = sim_census ? 1 : 0;
        opts.jobs = sim_jobs;
        char* json = nullptr;
        int32_t all_ok = 0;
        const pp_status st = pp_simulate(g.get(), &opts, &json, &all_ok);
        StringPtr guard(json);
        if (json) emit(sim_out, json);
        if (st != PP_OK) return die(st);
        return all_ok ? kExitOk : kExitInvariant;
    }

    if (sweep->parsed()) {
        char* csv = nullptr;
        const pp_status st = pp_sweep(sweep_protocol.c_str(), sweep_sizes.data(),
                                      static_cast<int32_t>(sweep_sizes.size()),
                                      sweep_ks.empty() ? nullptr : sweep_ks.data(),
                                      static_cast<int32_t>(sweep_ks.size()), sweep_seed,
                                      sweep_trials, sweep_jobs, &csv);
        StringPtr guard(csv);
        if (st != PP_OK) return die(st);
        emit(sweep_out, csv);
        return kExitOk;
    }

    if (mc->parsed()) {
        GraphPtr g;
        if (int rc = open_graph(mc_graph, g); rc != kExitOk) return rc;
        std::string expected = mc_expected;
        if (expected.empty()) expected = pp_graph_is_complete(g.get()) ? "yes" : "no";
        char* json = nullptr;
        int32_t solves = 0;
        const pp_status st =
            pp_modelcheck(g.get(), mc_protocol.c_str(), mc_k, expected.c_str(), mc_cap,
                          &json, &solves);
        StringPtr guard(json);
        if (json) {
            emit(mc_out, std::string(json) + "\n");
        }
        if (st != PP_OK) return die(st);
        return solves ? kExitOk : kExitInvariant;
    }

    if (tf->parsed()) {
        pp_graph* in = nullptr;
        pp_status st = pp_graph_read(tf_in.c_str(), &in);
        if (st != PP_OK) return die(st);
        GraphPtr in_guard(in);
        pp_graph* out = nullptr;
        st = pp_graph_f_transform(in, &out);
        if (st != PP_OK) return die(st);
        GraphPtr out_guard(out);
        st = pp_graph_write(out, tf_out.c_str());
        if (st != PP_OK) return die(st);
        std::cout << "wrote f(G): " << pp_graph_node_count(out) << " nodes, "
                  << pp_graph_arc_count(out) << " arcs, complete="
                  << (pp_graph_is_complete(out) ? "true" : "false") << "\n";
        return kExitOk;
    }

    if (md->parsed()) {
        char* json = nullptr;
        const pp_status st = pp_mirror_demo(md_protocol.c_str(), md_n, md_k, md_steps,
                                            md_seed, &json);
        StringPtr guard(json);
        if (st != PP_OK) return die(st);
        emit(md_out, std::string(json) + "\n");
        return kExitOk;
    }

    if (ht->parsed()) {
        GraphPtr g;
        if (int rc = open_graph(ht_graph, g); rc != kExitOk) return rc;
        double h = 0;
        const pp_status st = pp_graph_max_hitting_time(g.get(), &h);
        if (st != PP_OK) return die(st);
        std::cout << h << "\n";
        return kExitOk;
    }

    return kExitUsage;
}
