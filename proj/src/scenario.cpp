#include "bcm/scenario.hpp"

#include <sodium.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace bcm {

namespace {

std::vector<std::string> words(const std::string& line) {
    std::istringstream is(line.substr(0, line.find('#')));
    std::vector<std::string> w;
    std::string s;
    while (is >> s)
        w.push_back(s);
    return w;
}

Time number(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::parse_error, "line " + std::to_string(line) + ": expected a number, got '" + s + "'");
}

std::string short_hash(const std::string& text) {
    if (sodium_init() < 0)
        throw Error(ErrorKind::internal, "libsodium init failed");
    unsigned char out[8];
    crypto_generichash(out, sizeof out, reinterpret_cast<const unsigned char*>(text.data()), text.size(), nullptr,
                       0);
    static const char* xs = "0123456789abcdef";
    std::string s;
    for (auto b : out) {
        s += xs[b >> 4];
        s += xs[b & 15];
    }
    return s;
}

NodeRef parse_ref(const Network& net, const std::string& s, std::size_t line) {
    auto at = s.find('@');
    if (at == std::string::npos)
        throw Error(ErrorKind::parse_error, "line " + std::to_string(line) + ": expected P@k");
    Time k = number(s.substr(at + 1), line);
    if (k < 0)
        throw Error(ErrorKind::parse_error, "line " + std::to_string(line) + ": negative node index");
    return {net.id(s.substr(0, at)), static_cast<std::uint32_t>(k)};
}

} // namespace

std::vector<ExternalSpec> Scenario::external_space(Time window) const {
    std::vector<ExternalSpec> v;
    for (auto& e : externals)
        v.push_back({e.id, e.target, 1, std::max<Time>(window, 1), true});
    return v;
}

Scenario parse_scenario(std::string_view text) {
    Scenario s;
    std::istringstream in{std::string(text)};
    std::string line, canon;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        auto w = words(line);
        if (w.empty())
            continue;
        for (auto& x : w)
            canon += x + " ";
        canon += "\n";
        auto need = [&](std::size_t k) {
            if (w.size() != k)
                throw Error(ErrorKind::parse_error, "line " + std::to_string(n) + ": '" + w[0] + "' takes " +
                                                        std::to_string(k - 1) + " arguments");
        };
        // Errors raised by the network carry no position; add the line here.
        try {
            const std::string& kw = w[0];
            if (kw == "proc") {
                need(2);
                s.net->add_process(w[1]);
            } else if (kw == "chan") {
                need(5);
                s.net->add_channel(s.net->id(w[1]), s.net->id(w[2]), number(w[3], n), number(w[4], n));
            } else if (kw == "ext") {
                need(4);
                Time t = number(w[3], n);
                if (t < 1)
                    throw Error(ErrorKind::external_at_zero, "line " + std::to_string(n));
                for (auto& e : s.externals)
                    if (e.id == w[1])
                        throw Error(ErrorKind::duplicate_external, w[1]);
                s.externals.push_back({w[1], s.net->id(w[2]), t});
            } else if (kw == "task") {
                need(6);
                Task t;
                if (w[1] == "late")
                    t.kind = TaskKind::late;
                else if (w[1] == "early")
                    t.kind = TaskKind::early;
                else
                    throw Error(ErrorKind::parse_error, "line " + std::to_string(n) + ": task kind is late or early");
                t.a = s.net->id(w[2]);
                t.b = s.net->id(w[3]);
                t.c = s.net->id(w[4]);
                t.x = number(w[5], n);
                s.net->require_channel(t.c, t.a);
                s.task = t;
            } else if (kw == "horizon") {
                need(2);
                s.horizon = number(w[1], n);
                if (s.horizon < 0)
                    throw Error(ErrorKind::parse_error, "negative horizon");
            } else if (kw == "budget") {
                need(2);
                Time b = number(w[1], n);
                if (b < 1)
                    throw Error(ErrorKind::parse_error, "budget must be positive");
                s.budget = static_cast<std::size_t>(b);
            } else if (kw == "deliver") {
                need(4);
                NodeRef r = parse_ref(*s.net, w[1], n);
                s.deliveries[{r, s.net->id(w[2])}] = number(w[3], n);
            } else {
                throw Error(ErrorKind::parse_error, "line " + std::to_string(n) + ": unknown keyword '" + kw + "'");
            }
        } catch (const Error& e) {
            if (e.detail().rfind("line ", 0) == 0)
                throw;
            throw Error(e.kind(), "line " + std::to_string(n) + ": " + e.detail());
        }
    }
    if (s.net->size() == 0)
        throw Error(ErrorKind::parse_error, "no processes declared");
    for (auto& e : s.externals)
        if (e.time > s.horizon)
            throw Error(ErrorKind::parse_error, "external " + e.id + " falls after the horizon");
    s.hash = short_hash(canon);
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorKind::parse_error, "cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

Scenario load_scenario(const std::string& path) {
    return parse_scenario(read_file(path));
}

std::string format_scenario(const Scenario& s) {
    const Network& net = *s.net;
    std::ostringstream os;
    for (ProcId p = 0; p < net.size(); ++p)
        os << "proc " << net.name(p) << "\n";
    for (const Channel& c : net.channels())
        os << "chan " << net.name(c.src) << " " << net.name(c.dst) << " " << c.lower << " " << c.upper << "\n";
    for (auto& e : s.externals)
        os << "ext " << e.id << " " << net.name(e.target) << " " << e.time << "\n";
    if (s.task)
        os << "task " << (s.task->kind == TaskKind::late ? "late" : "early") << " " << net.name(s.task->a) << " "
           << net.name(s.task->b) << " " << net.name(s.task->c) << " " << s.task->x << "\n";
    os << "horizon " << s.horizon << "\n";
    os << "budget " << s.budget << "\n";
    for (auto& [k, t] : s.deliveries)
        os << "deliver " << net.name(k.first.proc) << "@" << k.first.index << " " << net.name(k.second) << " " << t
           << "\n";
    return os.str();
}

Run run_scenario(const Scenario& s, const Schedule& schedule) {
    Schedule sch = schedule;
    for (auto& [k, t] : s.deliveries)
        sch.fixed.emplace(k, t);
    return execute(s.net, s.externals, sch, s.horizon);
}

std::string write_trace(const Run& run, const std::string& scenario_hash) {
    const Network& net = run.network();
    std::ostringstream os;
    os << "# bcm trace\n";
    os << "scenario " << scenario_hash << "\n";
    os << "horizon " << run.horizon << "\n";
    for (auto& e : run.externals)
        os << "ext " << e.id << " " << net.name(e.target) << " " << e.time << "\n";
    std::vector<const Message*> ms;
    for (auto& m : run.messages)
        if (m.receiver)
            ms.push_back(&m);
    std::sort(ms.begin(), ms.end(), [](const Message* a, const Message* b) {
        return std::tie(*a->delivered, a->dst, a->sender) < std::tie(*b->delivered, b->dst, b->sender);
    });
    for (auto* m : ms)
        os << "deliver " << run.address(m->sender) << " " << net.name(m->dst) << " " << *m->delivered << "\n";
    return os.str();
}

Run read_trace(const Scenario& s, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t n = 0;
    std::optional<Time> horizon;
    std::vector<External> ext;
    std::map<std::pair<NodeRef, ProcId>, Time> del;
    bool saw_hash = false;
    while (std::getline(in, line)) {
        ++n;
        auto w = words(line);
        if (w.empty())
            continue;
        if (w[0] == "scenario" && w.size() == 2) {
            if (w[1] != s.hash)
                throw Error(ErrorKind::inconsistent, "trace was recorded for scenario " + w[1] + ", not " + s.hash);
            saw_hash = true;
        } else if (w[0] == "horizon" && w.size() == 2) {
            horizon = number(w[1], n);
        } else if (w[0] == "ext" && w.size() == 4) {
            ext.push_back({w[1], s.net->id(w[2]), number(w[3], n)});
        } else if (w[0] == "deliver" && w.size() == 4) {
            NodeRef r = parse_ref(*s.net, w[1], n);
            if (!del.emplace(std::make_pair(r, s.net->id(w[2])), number(w[3], n)).second)
                throw Error(ErrorKind::parse_error, "line " + std::to_string(n) + ": message delivered twice");
        } else {
            throw Error(ErrorKind::parse_error, "line " + std::to_string(n) + ": unrecognized trace line");
        }
    }
    if (!saw_hash || !horizon)
        throw Error(ErrorKind::parse_error, "trace header needs scenario and horizon lines");
    return synthesize_run(s.net, ext, del, *horizon);
}

nlohmann::json to_json(const Run& run, const GeneralNode& g) {
    return address(run, g);
}

nlohmann::json to_json(const Run& run, const Zigzag& z) {
    nlohmann::json forks = nlohmann::json::array();
    for (auto& f : z.forks)
        forks.push_back({{"base", address(run, f.base)},
                         {"head", run.network().path_name(f.head)},
                         {"tail", run.network().path_name(f.tail)},
                         {"weight", fork_weight(run.network(), f)}});
    nlohmann::json joins = nlohmann::json::array();
    for (Join j : z.joins)
        joins.push_back(j == Join::joined ? "joined" : "separated");
    return {{"forks", forks}, {"joins", joins}, {"weight", zigzag_weight(run.network(), z)}};
}

nlohmann::json to_json(const Run& run, const Verdict& v) {
    nlohmann::json j;
    j["holds"] = v.holds;
    j["max_weight"] = v.max_weight ? nlohmann::json(*v.max_weight) : nlohmann::json("-inf");
    j["from"] = address(run, v.from);
    j["to"] = address(run, v.to);
    j["certificate"] = v.certificate ? to_json(run, *v.certificate) : nlohmann::json(nullptr);
    return j;
}

Zigzag zigzag_from_json(const Run& run, const nlohmann::json& j) {
    try {
        Zigzag z;
        for (auto& f : j.at("forks"))
            z.forks.push_back({parse_general(run, f.at("base").get<std::string>()),
                               run.network().parse_path(f.at("head").get<std::string>()),
                               run.network().parse_path(f.at("tail").get<std::string>())});
        for (auto& x : j.at("joins")) {
            std::string k = x.get<std::string>();
            if (k != "joined" && k != "separated")
                throw Error(ErrorKind::parse_error, "join must be joined or separated");
            z.joins.push_back(k == "joined" ? Join::joined : Join::separated);
        }
        if (z.joins.size() + 1 != z.forks.size())
            throw Error(ErrorKind::parse_error, "a zigzag has one join fewer than forks");
        return z;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::parse_error, e.what());
    }
}

nlohmann::json to_json(const Run& run, const BoundsGraph& g) {
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t v = 0; v < g.size(); ++v)
        nodes.push_back(g.label(v, run));
    std::sort(nodes.begin(), nodes.end());
    nlohmann::json edges = nlohmann::json::array();
    for (auto& e : g.edges())
        edges.push_back({{"from", g.label(e.from, run)}, {"to", g.label(e.to, run)}, {"weight", e.weight}});
    std::sort(edges.begin(), edges.end(), [](const nlohmann::json& a, const nlohmann::json& b) {
        return std::tie(a["from"], a["to"]) < std::tie(b["from"], b["to"]);
    });
    return {{"nodes", nodes}, {"edges", edges}};
}

nlohmann::json timing_json(const Run& run, const BoundsGraph& g, const Timing& t) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t v = 0; v < g.size(); ++v)
        if (t.at(v))
            j[g.label(v, run)] = *t[v];
    return j;
}

} // namespace bcm
