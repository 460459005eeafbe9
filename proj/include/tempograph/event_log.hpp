#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tempograph/types.hpp"

namespace tempograph {

enum class InputFormat { Csv, Jsonl };

struct ParseReport {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t self_replies = 0;  // accepted rows with src == dst

    std::size_t total() const { return accepted + rejected; }
};

/// Raised in strict mode when a malformed row is encountered.
struct ParseError : std::runtime_error {
    std::size_t line;
    ParseError(std::size_t line_, const std::string& what_)
        : std::runtime_error(what_), line(line_) {}
};

struct ParseOptions {
    InputFormat format = InputFormat::Csv;
    bool strict = false;  // abort on the first malformed row instead of skipping
};

/// Immutable time-sorted sequence of interactions. The sorted event vector
/// doubles as the time index (binary search over ts).
class EventLog {
public:
    EventLog() = default;
    EventLog(std::vector<Interaction> events, UserTable users);

    const std::vector<Interaction>& events() const { return events_; }
    const UserTable& users() const { return users_; }
    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }

    Timestamp min_ts() const;
    Timestamp max_ts() const;

    /// Index of the first event with ts > x.
    std::size_t first_after(Timestamp x) const;

    /// Events with ts in (lo, hi], in log order. Zero-copy view.
    /// lo > hi yields an empty view.
    std::span<const Interaction> slice(Timestamp lo, Timestamp hi) const;

private:
    std::vector<Interaction> events_;  // ascending ts, ties in input order
    UserTable users_;
};

/// Parses CSV (header src,dst,ts) or JSONL ({"src":..,"dst":..,"ts":..}).
/// Timestamps are epoch seconds or RFC3339, auto-detected from the first
/// well-formed row and applied uniformly. Malformed rows are counted and
/// skipped unless opts.strict is set.
EventLog parse_interactions(std::istream& input, const ParseOptions& opts,
                            ParseReport* report = nullptr);

EventLog parse_interactions_file(const std::string& path, const ParseOptions& opts,
                                 ParseReport* report = nullptr);

/// Native export: CSV with header src,dst,ts, epoch-second timestamps.
/// Round-trips bit-exactly through parse_interactions.
void write_csv(const EventLog& log, std::ostream& out);
void write_csv_file(const EventLog& log, const std::string& path);

/// RFC3339 timestamp (e.g. 2017-08-12T15:04:05Z or with numeric offset)
/// to epoch seconds. Fractional seconds are truncated.
std::optional<Timestamp> parse_rfc3339(std::string_view s);

/// Epoch seconds, or RFC3339 if the string is not a plain integer.
std::optional<Timestamp> parse_timestamp(std::string_view s);

}  // namespace tempograph
