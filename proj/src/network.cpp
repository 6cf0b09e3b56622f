#include "bcm/network.hpp"

#include <algorithm>
#include <sstream>

namespace bcm {

ProcId Network::add_process(const std::string& name) {
    if (name.empty() || name.find_first_of("@/ \t") != std::string::npos)
        throw Error(ErrorKind::parse_error, "bad process name '" + name + "'");
    if (ids_.count(name))
        throw Error(ErrorKind::duplicate_process, name);
    ProcId id = static_cast<ProcId>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, id);
    out_.emplace_back();
    in_.emplace_back();
    return id;
}

void Network::add_channel(ProcId src, ProcId dst, Time lower, Time upper) {
    if (src >= size() || dst >= size())
        throw Error(ErrorKind::unknown_process, "channel endpoint out of range");
    if (src == dst)
        throw Error(ErrorKind::invalid_bounds, "self-channel at " + name(src));
    if (lower < 1 || upper < lower)
        throw Error(ErrorKind::invalid_bounds, name(src) + "->" + name(dst) + " [" +
                                                   std::to_string(lower) + "," + std::to_string(upper) + "]");
    auto key = std::make_pair(src, dst);
    auto it = chans_.find(key);
    if (it == chans_.end()) {
        chans_.emplace(key, Channel{src, dst, lower, upper});
        auto& o = out_[src];
        o.insert(std::upper_bound(o.begin(), o.end(), dst), dst);
        auto& i = in_[dst];
        i.insert(std::upper_bound(i.begin(), i.end(), src), src);
        return;
    }
    Channel& c = it->second;
    Time lo = std::max(c.lower, lower);
    Time hi = std::min(c.upper, upper);
    if (hi < lo)
        throw Error(ErrorKind::invalid_bounds, "parallel declarations of " + name(src) + "->" + name(dst) +
                                                   " have an empty intersection");
    c.lower = lo;
    c.upper = hi;
}

const std::string& Network::name(ProcId p) const {
    if (p >= names_.size())
        throw Error(ErrorKind::unknown_process, "#" + std::to_string(p));
    return names_[p];
}

std::optional<ProcId> Network::find(std::string_view name) const {
    auto it = ids_.find(name);
    if (it == ids_.end())
        return std::nullopt;
    return it->second;
}

ProcId Network::id(std::string_view name) const {
    auto p = find(name);
    if (!p)
        throw Error(ErrorKind::unknown_process, std::string(name));
    return *p;
}

const Channel* Network::channel(ProcId src, ProcId dst) const {
    auto it = chans_.find({src, dst});
    return it == chans_.end() ? nullptr : &it->second;
}

const Channel& Network::require_channel(ProcId src, ProcId dst) const {
    const Channel* c = channel(src, dst);
    if (!c)
        throw Error(ErrorKind::invalid_path, "no channel " + name(src) + "->" + name(dst));
    return *c;
}

std::vector<Channel> Network::channels() const {
    std::vector<Channel> v;
    for (auto& [k, c] : chans_)
        v.push_back(c);
    return v;
}

bool Network::is_path(const Path& p) const {
    if (p.empty())
        return false;
    for (ProcId q : p)
        if (q >= size())
            return false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (!channel(p[i], p[i + 1]))
            return false;
    return true;
}

Time Network::lower(const Path& p) const {
    Time s = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        s += require_channel(p[i], p[i + 1]).lower;
    return s;
}

Time Network::upper(const Path& p) const {
    Time s = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        s += require_channel(p[i], p[i + 1]).upper;
    return s;
}

std::string Network::path_name(const Path& p) const {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i)
            s += '/';
        s += name(p[i]);
    }
    return s;
}

Path Network::parse_path(std::string_view text) const {
    Path p;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('/', start);
        if (end == std::string_view::npos)
            end = text.size();
        p.push_back(id(text.substr(start, end - start)));
        start = end + 1;
    }
    if (!is_path(p))
        throw Error(ErrorKind::invalid_path, std::string(text));
    return p;
}

Time Network::max_upper() const {
    Time m = 0;
    for (auto& [k, c] : chans_)
        m = std::max(m, c.upper);
    return m;
}

Path compose(const Path& p, const Path& q) {
    if (p.empty() || q.empty() || p.back() != q.front())
        throw Error(ErrorKind::invalid_path, "composition needs a shared joint process");
    Path r = p;
    r.insert(r.end(), q.begin() + 1, q.end());
    return r;
}

bool is_prefix(const Path& prefix, const Path& p) {
    return prefix.size() <= p.size() && std::equal(prefix.begin(), prefix.end(), p.begin());
}

} // namespace bcm
