#include "popproto.h"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "popproto/engine.hpp"
#include "popproto/graph.hpp"
#include "popproto/modelcheck.hpp"
#include "popproto/protocols.hpp"
#include "popproto/scheduler.hpp"
#include "popproto/stats.hpp"
#include "popproto/transform.hpp"

using namespace popproto;

struct pp_graph {
    Digraph g;
    std::string desc;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

pp_status fail(pp_status st, const std::string& msg) {
    set_error(msg);
    return st;
}

void parallel_for(int jobs, int count, const std::function<void(int)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    const int workers_n = std::min(jobs, count);
    for (int w = 0; w < workers_n; ++w)
        workers.emplace_back([&, w] {
            for (int i = w; i < count; i += workers_n) fn(i);
        });
    for (auto& t : workers) t.join();
}

struct SimOptions {
    std::string protocol;
    std::int32_t k = 0;
    ScheduleKind schedule = ScheduleKind::uniform_random;
    std::uint64_t seed = 0;
    std::int32_t trials = 1;
    RunOptions run_opts;
    std::int32_t jobs = 1;
};

template <class P>
std::vector<RunRecord> run_trials(const P& p, const Digraph& g, const SimOptions& o,
                                  const std::string& desc) {
    std::vector<RunRecord> recs(o.trials);
    parallel_for(o.jobs, o.trials, [&](int t) {
        Schedule sched(o.schedule, g, derive_seed(o.seed, static_cast<std::uint64_t>(t)));
        recs[t] = run(p, g, sched, o.run_opts, desc);
    });
    return recs;
}

bool validate_protocol_params(const std::string& protocol, std::int32_t n, std::int32_t k,
                              std::string& err) {
    if (protocol != "ciw_n" && protocol != "ciw_nk" && protocol != "cig") {
        err = "unknown protocol: " + protocol;
        return false;
    }
    if (protocol == "ciw_nk" && (k < 1 || k > n)) {
        err = "ciw_nk requires k in [1, n]";
        return false;
    }
    if (protocol != "ciw_nk" && k != 0) {
        err = "k is only valid with ciw_nk";
        return false;
    }
    return true;
}

}  // namespace

extern "C" {

const char* pp_last_error(void) { return g_last_error.c_str(); }

void pp_string_free(char* s) { std::free(s); }

void pp_graph_free(pp_graph* g) { delete g; }

pp_status pp_graph_generate(const char* kind, int32_t n, uint64_t seed, pp_graph** out) {
    if (!kind || !out) return fail(PP_ERR_ARGUMENT, "null argument");
    GraphKind gk;
    if (!parse_graph_kind(kind, gk)) return fail(PP_ERR_ARGUMENT, "unknown graph kind");
    try {
        *out = new pp_graph{generate(gk, n, seed), kind};
    } catch (const std::exception& e) {
        return fail(PP_ERR_ARGUMENT, e.what());
    }
    return PP_OK;
}

pp_status pp_graph_read(const char* path, pp_graph** out) {
    if (!path || !out) return fail(PP_ERR_ARGUMENT, "null argument");
    try {
        auto g = read_graph_file(path);
        if (auto v = validate(g); !v.ok) return fail(PP_ERR_PARSE, "invalid graph: " + v.diagnostic);
        *out = new pp_graph{std::move(g), std::string("file:") + path};
    } catch (const GraphParseError& e) {
        return fail(PP_ERR_PARSE, e.what());
    } catch (const std::exception& e) {
        return fail(PP_ERR_IO, e.what());
    }
    return PP_OK;
}

pp_status pp_graph_write(const pp_graph* g, const char* path) {
    if (!g || !path) return fail(PP_ERR_ARGUMENT, "null argument");
    try {
        write_graph_file(g->g, path);
    } catch (const std::exception& e) {
        return fail(PP_ERR_IO, e.what());
    }
    return PP_OK;
}

pp_status pp_graph_validate(const pp_graph* g, int32_t* ok, char** diagnostic) {
    if (!g || !ok) return fail(PP_ERR_ARGUMENT, "null argument");
    auto v = validate(g->g);
    *ok = v.ok ? 1 : 0;
    if (diagnostic) *diagnostic = dup_string(v.diagnostic);
    return PP_OK;
}

int32_t pp_graph_is_complete(const pp_graph* g) { return g && is_complete(g->g) ? 1 : 0; }

int32_t pp_graph_node_count(const pp_graph* g) { return g ? g->g.node_count() : 0; }

int64_t pp_graph_arc_count(const pp_graph* g) {
    return g ? static_cast<int64_t>(g->g.arc_count()) : 0;
}

pp_status pp_graph_f_transform(const pp_graph* g, pp_graph** out) {
    if (!g || !out) return fail(PP_ERR_ARGUMENT, "null argument");
    *out = new pp_graph{f_transform(g->g), "f(" + g->desc + ")"};
    return PP_OK;
}

pp_status pp_graph_max_hitting_time(const pp_graph* g, double* out) {
    if (!g || !out) return fail(PP_ERR_ARGUMENT, "null argument");
    try {
        *out = hitting_times(to_undirected_multigraph(g->g)).max_hitting;
    } catch (const std::exception& e) {
        return fail(PP_ERR_ARGUMENT, e.what());
    }
    return PP_OK;
}

pp_status pp_simulate(const pp_graph* g, const pp_run_opts* opts, char** json_out,
                      int32_t* all_ok) {
    if (!g || !opts || !opts->protocol || !opts->schedule || !json_out)
        return fail(PP_ERR_ARGUMENT, "null argument");

    SimOptions o;
    o.protocol = opts->protocol;
    o.k = opts->k;
    o.seed = opts->seed;
    o.trials = std::max<std::int32_t>(1, opts->trials);
    o.jobs = opts->jobs;
    o.run_opts.max_steps = opts->max_steps;
    o.run_opts.invariant_checks = opts->invariant_checks != 0;
    o.run_opts.census = opts->census != 0;
    o.run_opts.negative_mode = opts->negative_mode != 0;
    if (!parse_schedule_kind(opts->schedule, o.schedule))
        return fail(PP_ERR_ARGUMENT, "unknown schedule kind");

    const NodeId n = g->g.node_count();
    std::string err;
    if (!validate_protocol_params(o.protocol, n, o.k, err)) return fail(PP_ERR_ARGUMENT, err);

    std::vector<RunRecord> recs;
    try {
        if (o.protocol == "ciw_n")
            recs = run_trials(CiwProtocol(n), g->g, o, g->desc);
        else if (o.protocol == "ciw_nk")
            recs = run_trials(CiwkProtocol(n, o.k), g->g, o, g->desc);
        else
            recs = run_trials(CigProtocol{}, g->g, o, g->desc);
    } catch (const std::exception& e) {
        return fail(PP_ERR_ARGUMENT, e.what());
    }

    std::ostringstream os;
    bool ok = true, violated = false;
    for (const auto& rec : recs) {
        os << run_record_to_json(rec) << "\n";
        if (!rec.invariant_violations.empty()) violated = true;
        if (o.run_opts.negative_mode)
            ok = ok && rec.wrong_yes_sightings == 0;
        else
            ok = ok && rec.stabilized;
    }
    ok = ok && !violated;
    *json_out = dup_string(os.str());
    if (all_ok) *all_ok = ok ? 1 : 0;
    if (violated) return fail(PP_ERR_INVARIANT, "protocol invariant violated");
    return PP_OK;
}

pp_status pp_sweep(const char* protocol, const int32_t* sizes, int32_t num_sizes,
                   const int32_t* ks, int32_t num_ks, uint64_t seed, int32_t trials,
                   int32_t jobs, char** csv_out) {
    if (!protocol || !sizes || !csv_out) return fail(PP_ERR_ARGUMENT, "null argument");
    if (num_sizes <= 0) return fail(PP_ERR_ARGUMENT, "empty size list");
    const std::string proto = protocol;
    if (proto == "ciw_nk" && (!ks || num_ks <= 0))
        return fail(PP_ERR_ARGUMENT, "ciw_nk sweep needs a k list");
    if (proto != "ciw_nk" && ks && num_ks > 0)
        return fail(PP_ERR_ARGUMENT, "k list is only valid with ciw_nk");

    struct Point {
        std::int32_t n, k;
    };
    std::vector<Point> points;
    for (int32_t i = 0; i < num_sizes; ++i) {
        if (proto == "ciw_nk")
            for (int32_t j = 0; j < num_ks; ++j) points.push_back({sizes[i], ks[j]});
        else
            points.push_back({sizes[i], 0});
    }
    std::string err;
    for (auto pt : points)
        if (pt.n < 2 || !validate_protocol_params(proto, pt.n, pt.k, err))
            return fail(PP_ERR_ARGUMENT, err.empty() ? "n must be >= 2" : err);

    RunOptions ro;
    ro.invariant_checks = false;  // scaling runs
    std::vector<ScalingRow> rows(points.size());
    try {
        parallel_for(jobs, static_cast<int>(points.size()), [&](int i) {
            const auto [n, k] = points[i];
            const Digraph g = generate(GraphKind::complete, n);
            // decorrelate trial streams across sweep points
            const std::uint64_t point_seed = derive_seed(seed, 1000003ULL * n + k);
            if (proto == "ciw_n")
                rows[i] = measure_scaling_point(CiwProtocol(n), g, "complete", trials,
                                                point_seed, ScheduleKind::uniform_random, ro);
            else if (proto == "ciw_nk")
                rows[i] = measure_scaling_point(CiwkProtocol(n, k), g, "complete", trials,
                                                point_seed, ScheduleKind::uniform_random, ro);
            else
                rows[i] = measure_scaling_point(CigProtocol{}, g, "complete", trials,
                                                point_seed, ScheduleKind::uniform_random, ro);
        });
    } catch (const std::exception& e) {
        return fail(PP_ERR_ARGUMENT, e.what());
    }

    std::ostringstream os;
    os << scaling_csv_header() << "\n";
    for (const auto& row : rows) os << scaling_csv_row(row) << "\n";
    *csv_out = dup_string(os.str());
    return PP_OK;
}

pp_status pp_modelcheck(const pp_graph* g, const char* protocol, int32_t k,
                        const char* expected, uint64_t cap, char** json_out,
                        int32_t* solves) {
    if (!g || !protocol || !expected || !json_out)
        return fail(PP_ERR_ARGUMENT, "null argument");
    const std::string proto = protocol;
    const std::string want = expected;
    if (want != "yes" && want != "no") return fail(PP_ERR_ARGUMENT, "expected must be yes or no");
    const NodeId n = g->g.node_count();
    std::string err;
    if (!validate_protocol_params(proto, n, k, err)) return fail(PP_ERR_ARGUMENT, err);

    const std::size_t config_cap = cap ? static_cast<std::size_t>(cap) : (1u << 22);
    const Output expect = want == "yes" ? Output::yes : Output::no;

    Verdict verdict;
    try {
        if (proto == "ciw_n")
            verdict = check_global_fairness(explore(CiwProtocol(n), g->g, config_cap), expect);
        else if (proto == "ciw_nk")
            verdict = check_global_fairness(explore(CiwkProtocol(n, k), g->g, config_cap), expect);
        else
            verdict = check_global_fairness(explore(CigProtocol{}, g->g, config_cap), expect);
    } catch (const std::exception& e) {
        return fail(PP_ERR_ARGUMENT, e.what());
    }

    *json_out = dup_string(verdict_to_json(verdict, proto, g->desc, n, k));
    if (solves) *solves = verdict.solves ? 1 : 0;
    if (verdict.status == ExploreStatus::capped)
        return fail(PP_ERR_TOO_LARGE, "instance too large");
    if (verdict.status == ExploreStatus::bound_violated)
        return fail(PP_ERR_INVARIANT, "state bound violated during exploration");
    return PP_OK;
}

pp_status pp_mirror_demo(const char* protocol, int32_t n, int32_t k, uint64_t steps,
                         uint64_t seed, char** json_out) {
    if (!protocol || !json_out) return fail(PP_ERR_ARGUMENT, "null argument");
    const std::string proto = protocol;
    std::string err;
    if (!validate_protocol_params(proto, n, k, err)) return fail(PP_ERR_ARGUMENT, err);
    if (n < 2) return fail(PP_ERR_ARGUMENT, "n must be >= 2");

    const Digraph g = generate(GraphKind::complete, n);
    Schedule sched(ScheduleKind::uniform_random, g, seed);
    MirrorRunResult res;
    if (proto == "ciw_n")
        res = mirrored_run(CiwProtocol(n), g, std::move(sched), steps);
    else if (proto == "ciw_nk")
        res = mirrored_run(CiwkProtocol(n, k), g, std::move(sched), steps);
    else
        res = mirrored_run(CigProtocol{}, g, std::move(sched), steps);

    std::ostringstream os;
    os << "{\"protocol\":\"" << proto << "\",\"n\":" << n << ",\"base_steps\":" << steps
       << ",\"invariant_held\":" << (res.invariant_held ? "true" : "false");
    if (!res.invariant_held) os << ",\"first_divergence_step\":" << res.first_divergence_step;
    auto emit = [&os](const char* name, const std::vector<int>& v) {
        os << ",\"" << name << "\":[";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << "]";
    };
    emit("base_outputs", res.base_outputs);
    emit("image_outputs", res.image_outputs);
    os << "}";
    *json_out = dup_string(os.str());
    return PP_OK;
}

}  // extern "C"
