#pragma once
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bcm/knowledge.hpp"
#include "bcm/oracle.hpp"

namespace bcm {

struct Scenario {
    std::shared_ptr<Network> net = std::make_shared<Network>();
    std::vector<External> externals;
    std::optional<Task> task;
    Time horizon = 20;
    std::size_t budget = 200000;
    std::map<std::pair<NodeRef, ProcId>, Time> deliveries;
    std::string hash;

    // Each external may move anywhere in [1, latest] of its window.
    std::vector<ExternalSpec> external_space(Time window) const;
};

// Line-oriented format; '#' starts a comment.
//   proc <id>
//   chan <src> <dst> <lower> <upper>
//   ext <id> <proc> <time>
//   task late|early <A> <B> <C> <x>
//   horizon <T>
//   budget <max_runs>
//   deliver <src>@<k> <dst> <time>
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);
// Canonical text: processes in declaration order, channels by endpoints,
// then externals, task, horizon, budget and deliveries.
std::string format_scenario(const Scenario& s);

Run run_scenario(const Scenario& s, const Schedule& schedule);

std::string write_trace(const Run& run, const std::string& scenario_hash);
Run read_trace(const Scenario& s, std::string_view text);

nlohmann::json to_json(const Run& run, const GeneralNode& g);
nlohmann::json to_json(const Run& run, const Zigzag& z);
nlohmann::json to_json(const Run& run, const Verdict& v);
Zigzag zigzag_from_json(const Run& run, const nlohmann::json& j);
nlohmann::json to_json(const Run& run, const BoundsGraph& g);
nlohmann::json timing_json(const Run& run, const BoundsGraph& g, const Timing& t);

std::string read_file(const std::string& path);

} // namespace bcm
