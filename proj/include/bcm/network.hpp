#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcm/error.hpp"

namespace bcm {

using ProcId = std::uint32_t;
using Time = std::int64_t;
using Weight = std::int64_t;

struct Channel {
    ProcId src = 0;
    ProcId dst = 0;
    Time lower = 1;
    Time upper = 1;
};

// A sequence of processes, each consecutive pair joined by a channel.
// A singleton path [i] denotes staying put at process i.
using Path = std::vector<ProcId>;

class Network {
  public:
    ProcId add_process(const std::string& name);

    // Parallel declarations of the same channel collapse to the tightest window.
    void add_channel(ProcId src, ProcId dst, Time lower, Time upper);

    std::size_t size() const { return names_.size(); }
    const std::string& name(ProcId p) const;
    std::optional<ProcId> find(std::string_view name) const;
    ProcId id(std::string_view name) const;

    const Channel* channel(ProcId src, ProcId dst) const;
    const Channel& require_channel(ProcId src, ProcId dst) const;
    const std::vector<ProcId>& out(ProcId p) const { return out_.at(p); }
    const std::vector<ProcId>& in(ProcId p) const { return in_.at(p); }
    std::vector<Channel> channels() const;

    bool is_path(const Path& p) const;
    Time lower(const Path& p) const;
    Time upper(const Path& p) const;

    std::string path_name(const Path& p) const;
    Path parse_path(std::string_view text) const;

    Time max_upper() const;

  private:
    std::vector<std::string> names_;
    std::map<std::string, ProcId, std::less<>> ids_;
    std::map<std::pair<ProcId, ProcId>, Channel> chans_;
    std::vector<std::vector<ProcId>> out_;
    std::vector<std::vector<ProcId>> in_;
};

// p ⊙ q: requires p.back() == q.front(); the joint process appears once.
Path compose(const Path& p, const Path& q);

bool is_prefix(const Path& prefix, const Path& p);

} // namespace bcm
