#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "bcm/scenario.hpp"

using namespace bcm;

namespace {

enum Exit { ok = 0, negative = 1, usage = 2, input = 3 };

Policy policy_of(const std::string& s) {
    if (s == "earliest")
        return Policy::earliest;
    if (s == "random")
        return Policy::random;
    return Policy::latest;
}

Run load_run(const Scenario& s, const std::string& trace, const std::string& policy, std::uint64_t seed) {
    if (!trace.empty())
        return read_trace(s, read_file(trace));
    Schedule sch;
    sch.policy = policy_of(policy);
    sch.seed = seed;
    return run_scenario(s, sch);
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f)
        throw Error(ErrorKind::parse_error, "cannot write " + out);
    f << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clockless bounded-communication simulator and knowledge checker"};
    app.require_subcommand(1);

    std::string scn, trace, out, policy = "latest", kind = "basic", node, theta1, theta2, format = "dot",
                                 timing;
    std::uint64_t seed = 0;
    long long x = 0, horizon = -1, window = 0, gamma = 0;
    std::size_t budget = 0;
    const std::vector<std::string> policies{"latest", "earliest", "random"};

    auto add_run_opts = [&](CLI::App* c) {
        c->add_option("scenario", scn, "Scenario file")->required();
        c->add_option("--trace", trace, "Trace file recorded for this scenario");
        c->add_option("--policy,--schedule", policy, "Delivery policy when no trace is given")
            ->check(CLI::IsMember(policies));
        c->add_option("--seed", seed, "Seed for the random policy");
    };

    auto* sim = app.add_subcommand("simulate", "Run the scenario and print its trace");
    add_run_opts(sim);
    sim->add_option("--horizon", horizon, "Override the scenario horizon");
    sim->add_option("-o,--output", out, "Write the trace here instead of stdout");

    auto* ver = app.add_subcommand("verify", "Check a trace against the model's run conditions");
    add_run_opts(ver);

    auto* gr = app.add_subcommand("graph", "Export a bounds graph");
    add_run_opts(gr);
    gr->add_option("--kind", kind, "basic, local or extended")
        ->check(CLI::IsMember({"basic", "local", "extended"}));
    gr->add_option("--node", node, "Viewpoint node P@k for local and extended graphs");
    gr->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
    gr->add_option("--timing", timing, "Also print a timing: slow (basic graph) or fast (extended)")
        ->check(CLI::IsMember({"slow", "fast"}));
    gr->add_option("--source", theta1, "Source node for the fast timing");
    gr->add_option("--gamma", gamma, "Gap parameter for the fast timing");

    auto* chk = app.add_subcommand("check", "Decide whether a node knows a timed precedence");
    add_run_opts(chk);
    chk->add_option("--node", node, "Knowing node P@k")->required();
    chk->add_option("--theta1", theta1, "Earlier node, P@k[/Q/...]")->required();
    chk->add_option("--theta2", theta2, "Later node, P@k[/Q/...]")->required();
    chk->add_option("--x", x, "Required separation")->required();

    auto* co = app.add_subcommand("coordinate", "Run the scenario's task under the optimal protocol");
    add_run_opts(co);

    auto* orc = app.add_subcommand("oracle", "Decide knowledge by enumerating runs");
    add_run_opts(orc);
    orc->add_option("--node", node, "Knowing node P@k")->required();
    orc->add_option("--theta1", theta1, "Earlier node")->required();
    orc->add_option("--theta2", theta2, "Later node")->required();
    orc->add_option("--x", x, "Required separation")->required();
    orc->add_option("--window", window, "Latest time for each external (default: its scenario time + 3)");
    orc->add_option("--horizon", horizon, "Enumeration horizon (default: scenario horizon)");
    orc->add_option("--budget", budget, "Maximum number of runs (default: scenario budget)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        Scenario s = load_scenario(scn);
        if (*sim) {
            if (horizon >= 0)
                s.horizon = horizon;
            Run run = load_run(s, trace, policy, seed);
            emit(write_trace(run, s.hash), out);
            return ok;
        }
        Run run = load_run(s, trace, policy, seed);
        if (*ver) {
            auto vs = validate(run);
            if (vs.empty()) {
                std::cout << "valid\n";
                return ok;
            }
            for (auto& v : vs)
                std::cout << to_string(v.kind) << " " << v.detail << "\n";
            return negative;
        }
        if (*gr) {
            BoundsGraph g;
            std::optional<NodeRef> sigma;
            if (kind != "basic" || timing == "fast") {
                if (node.empty())
                    throw Error(ErrorKind::parse_error, "--node is required for this graph");
                sigma = run.parse_address(node);
            }
            if (kind == "basic")
                g = basic_graph(run);
            else if (kind == "local")
                g = local_graph(run, *sigma);
            else
                g = extended_graph(run, *sigma);
            if (format == "dot")
                std::cout << to_dot(g, run);
            else
                std::cout << to_json(run, g).dump(2) << "\n";
            if (timing == "slow") {
                if (!sigma)
                    throw Error(ErrorKind::parse_error, "--node is required for the slow timing");
                BoundsGraph gb = basic_graph(run);
                std::cout << timing_json(run, gb, slow_timing(gb, gb.at(*sigma))).dump(2) << "\n";
            } else if (timing == "fast") {
                NodeRef src = theta1.empty() ? *sigma : run.parse_address(theta1);
                FastTiming ft = fast_timing(run, *sigma, src, gamma);
                std::cout << timing_json(run, ft.graph, ft.times).dump(2) << "\n";
            }
            return ok;
        }
        if (*chk) {
            NodeRef sigma = run.parse_address(node);
            Verdict v = knows_precedence(run, sigma, parse_general(run, theta1), parse_general(run, theta2), x);
            std::cout << to_json(run, v).dump(2) << "\n";
            return v.holds ? ok : negative;
        }
        if (*co) {
            if (!s.task)
                throw Error(ErrorKind::parse_error, "scenario has no task line");
            TaskOutcome t = evaluate_task(run, *s.task);
            nlohmann::json j;
            auto at = [&](const std::optional<NodeRef>& r) {
                return r ? nlohmann::json(run.address(*r)) : nlohmann::json(nullptr);
            };
            auto when = [&](const std::optional<NodeRef>& r) {
                return r ? nlohmann::json(run.node(*r).time) : nlohmann::json(nullptr);
            };
            j["go"] = at(t.go);
            j["a_act"] = at(t.a_act);
            j["b_act"] = at(t.b_act);
            j["t_a"] = when(t.a_act);
            j["t_b"] = when(t.b_act);
            j["compliant"] = t.compliant;
            j["complete"] = t.complete;
            std::cout << j.dump(2) << "\n";
            return t.compliant ? ok : negative;
        }
        if (*orc) {
            NodeRef sigma = run.parse_address(node);
            GeneralNode a = parse_general(run, theta1), b = parse_general(run, theta2);
            Time latest = 1;
            for (auto& e : s.externals)
                latest = std::max(latest, e.time + 3);
            Limits lim;
            lim.horizon = horizon >= 0 ? horizon : s.horizon;
            lim.budget = budget ? budget : s.budget;
            Tri t = oracle_knows(s.net, s.external_space(window ? window : latest), lim, viewpoint(run, sigma),
                                 portable(run, a), portable(run, b), x);
            std::cout << to_string(t) << "\n";
            return t == Tri::yes ? ok : negative;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input;
    }
    return usage;
}
