#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tempograph {

using UserId = std::uint32_t;
using Timestamp = std::int64_t;  // seconds since Unix epoch, UTC

constexpr Timestamp kTimestampMin = INT64_MIN;
constexpr Timestamp kTimestampMax = INT64_MAX;

/// One directed reply event: src replied to dst at time ts.
struct Interaction {
    UserId src;
    UserId dst;
    Timestamp ts;

    bool operator==(const Interaction&) const = default;
};

/// Packs an ordered user pair into one hashable key.
inline std::uint64_t pair_key(UserId u, UserId v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
}
inline UserId pair_src(std::uint64_t key) { return static_cast<UserId>(key >> 32); }
inline UserId pair_dst(std::uint64_t key) { return static_cast<UserId>(key & 0xffffffffu); }

/// Bijective mapping between external user identifier strings and dense ids.
/// Ids are handed out contiguously from 0 in first-seen order.
class UserTable {
public:
    UserId intern(std::string_view name) {
        auto it = ids_.find(std::string(name));
        if (it != ids_.end()) return it->second;
        UserId id = static_cast<UserId>(names_.size());
        names_.emplace_back(name);
        ids_.emplace(names_.back(), id);
        return id;
    }

    const std::string& name(UserId id) const { return names_.at(id); }

    /// Returns the id for a known name, or UINT32_MAX if absent.
    UserId lookup(std::string_view name) const {
        auto it = ids_.find(std::string(name));
        return it == ids_.end() ? UINT32_MAX : it->second;
    }

    std::size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, UserId> ids_;
};

}  // namespace tempograph
