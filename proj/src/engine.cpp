#include "popproto/engine.hpp"

#include <sstream>

#include <json.hpp>

namespace popproto {

std::string run_record_to_json(const RunRecord& rec) {
    nlohmann::json j;
    j["protocol"] = rec.protocol;
    j["graph"] = rec.graph;
    j["schedule"] = rec.schedule;
    j["n"] = rec.n;
    if (rec.k > 0) j["k"] = rec.k;
    j["seed"] = rec.seed;
    if (rec.stabilized)
        j["interactions_to_stabilize"] = rec.steps_to_stabilize;
    else
        j["interactions_to_stabilize"] = "not observed";
    j["rounds_to_stabilize"] = rec.rounds_to_stabilize;
    j["total_steps"] = rec.total_steps;
    j["wrong_yes_sightings"] = rec.wrong_yes_sightings;
    j["invariant_violations"] = rec.invariant_violations;
    if (!rec.invariant_violations.empty()) j["violation_step"] = rec.violation_step;
    j["state_census"] = {{"distinct_states_seen", rec.census.distinct_states},
                         {"nominal_bound", rec.census.nominal_bound}};
    j["final_outputs"] = rec.final_outputs;
    return j.dump();
}

std::string scaling_csv_header() {
    return "protocol,n,k,graph,schedule,seed,trials,mean_steps,std_steps,mean_rounds";
}

std::string scaling_csv_row(const ScalingRow& row) {
    std::ostringstream os;
    os << row.protocol << ',' << row.n << ',' << row.k << ',' << row.graph << ','
       << row.schedule << ',' << row.seed << ',' << row.trials << ',' << row.mean_steps << ','
       << row.std_steps << ',' << row.mean_rounds;
    if (!row.all_stabilized) os << ",FLAGGED";
    return os.str();
}

}  // namespace popproto
