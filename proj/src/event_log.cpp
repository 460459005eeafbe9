#include "tempograph/event_log.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace tempograph {

EventLog::EventLog(std::vector<Interaction> events, UserTable users)
    : events_(std::move(events)), users_(std::move(users)) {
    std::stable_sort(events_.begin(), events_.end(),
                     [](const Interaction& a, const Interaction& b) { return a.ts < b.ts; });
}

Timestamp EventLog::min_ts() const {
    if (events_.empty()) throw std::logic_error("min_ts on empty log");
    return events_.front().ts;
}

Timestamp EventLog::max_ts() const {
    if (events_.empty()) throw std::logic_error("max_ts on empty log");
    return events_.back().ts;
}

std::size_t EventLog::first_after(Timestamp x) const {
    auto it = std::upper_bound(events_.begin(), events_.end(), x,
                               [](Timestamp t, const Interaction& e) { return t < e.ts; });
    return static_cast<std::size_t>(it - events_.begin());
}

std::span<const Interaction> EventLog::slice(Timestamp lo, Timestamp hi) const {
    if (lo > hi) return {};
    std::size_t b = first_after(lo);
    std::size_t e = first_after(hi);
    return {events_.data() + b, e - b};
}

namespace {

// Howard Hinnant's days-from-civil; avoids timegm portability issues.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool parse_int(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

bool all_digits(std::string_view s) {
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return !s.empty();
}

}  // namespace

std::optional<Timestamp> parse_rfc3339(std::string_view s) {
    // YYYY-MM-DDTHH:MM:SS[.frac](Z|+hh:mm|-hh:mm)
    if (s.size() < 20) return std::nullopt;
    auto num = [&](std::size_t pos, std::size_t len, int& out) {
        std::int64_t v;
        if (!all_digits(s.substr(pos, len)) || !parse_int(s.substr(pos, len), v)) return false;
        out = static_cast<int>(v);
        return true;
    };
    int Y, M, D, h, m, sec;
    if (!num(0, 4, Y) || s[4] != '-' || !num(5, 2, M) || s[7] != '-' || !num(8, 2, D))
        return std::nullopt;
    if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') return std::nullopt;
    if (!num(11, 2, h) || s[13] != ':' || !num(14, 2, m) || s[16] != ':' || !num(17, 2, sec))
        return std::nullopt;
    if (M < 1 || M > 12 || D < 1 || D > 31 || h > 23 || m > 59 || sec > 60) return std::nullopt;
    std::size_t i = 19;
    if (i < s.size() && s[i] == '.') {
        ++i;
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) return std::nullopt;  // truncate fractional seconds
    }
    if (i >= s.size()) return std::nullopt;
    std::int64_t offset = 0;
    if (s[i] == 'Z' || s[i] == 'z') {
        if (i + 1 != s.size()) return std::nullopt;
    } else if (s[i] == '+' || s[i] == '-') {
        int oh, om;
        if (s.size() != i + 6 || !num(i + 1, 2, oh) || s[i + 3] != ':' || !num(i + 4, 2, om))
            return std::nullopt;
        offset = (oh * 3600 + om * 60) * (s[i] == '+' ? 1 : -1);
    } else {
        return std::nullopt;
    }
    std::int64_t days = days_from_civil(Y, static_cast<unsigned>(M), static_cast<unsigned>(D));
    return days * 86400 + h * 3600 + m * 60 + sec - offset;
}

std::optional<Timestamp> parse_timestamp(std::string_view s) {
    std::int64_t v;
    if (parse_int(s, v)) return v;
    return parse_rfc3339(s);
}

namespace {

struct RawRow {
    std::string src, dst, ts;
};

// Splits a CSV line on commas. No quoting: user ids and timestamps never
// contain commas in this format.
bool split_csv(const std::string& line, RawRow& row) {
    std::size_t c1 = line.find(',');
    if (c1 == std::string::npos) return false;
    std::size_t c2 = line.find(',', c1 + 1);
    if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos) return false;
    row.src = line.substr(0, c1);
    row.dst = line.substr(c1 + 1, c2 - c1 - 1);
    row.ts = line.substr(c2 + 1);
    return !row.src.empty() && !row.dst.empty() && !row.ts.empty();
}

bool split_jsonl(const std::string& line, RawRow& row) {
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return false;
    auto get = [&](const char* key, std::string& out) {
        auto it = j.find(key);
        if (it == j.end()) return false;
        if (it->is_string())
            out = it->get<std::string>();
        else if (it->is_number_integer())
            out = std::to_string(it->get<std::int64_t>());
        else
            return false;
        return !out.empty();
    };
    return get("src", row.src) && get("dst", row.dst) && get("ts", row.ts);
}

}  // namespace

EventLog parse_interactions(std::istream& input, const ParseOptions& opts, ParseReport* report) {
    std::vector<Interaction> events;
    UserTable users;
    ParseReport rep;

    enum class TsMode { Unknown, Epoch, Rfc3339 } ts_mode = TsMode::Unknown;
    std::string line;
    std::size_t lineno = 0;
    bool header_checked = false;

    auto fail = [&](const std::string& why) {
        if (opts.strict) throw ParseError(lineno, why + " at line " + std::to_string(lineno));
        ++rep.rejected;
    };

    while (std::getline(input, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        if (opts.format == InputFormat::Csv && !header_checked) {
            header_checked = true;
            if (line == "src,dst,ts") continue;  // header optional
        }

        RawRow row;
        bool ok = opts.format == InputFormat::Csv ? split_csv(line, row) : split_jsonl(line, row);
        if (!ok) {
            fail("malformed row");
            continue;
        }

        std::optional<Timestamp> ts;
        if (ts_mode == TsMode::Unknown) {
            std::int64_t v;
            if (parse_int(row.ts, v)) {
                ts_mode = TsMode::Epoch;
                ts = v;
            } else if ((ts = parse_rfc3339(row.ts))) {
                ts_mode = TsMode::Rfc3339;
            }
        } else if (ts_mode == TsMode::Epoch) {
            std::int64_t v;
            if (parse_int(row.ts, v)) ts = v;
        } else {
            ts = parse_rfc3339(row.ts);
        }
        if (!ts) {
            fail("unparseable timestamp");
            continue;
        }

        UserId src = users.intern(row.src);
        UserId dst = users.intern(row.dst);
        events.push_back({src, dst, *ts});
        ++rep.accepted;
        if (src == dst) ++rep.self_replies;
    }

    if (report) *report = rep;
    return EventLog(std::move(events), std::move(users));
}

EventLog parse_interactions_file(const std::string& path, const ParseOptions& opts,
                                 ParseReport* report) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input file: " + path);
    return parse_interactions(f, opts, report);
}

void write_csv(const EventLog& log, std::ostream& out) {
    out << "src,dst,ts\n";
    for (const auto& e : log.events())
        out << log.users().name(e.src) << ',' << log.users().name(e.dst) << ',' << e.ts << '\n';
}

void write_csv_file(const EventLog& log, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    write_csv(log, f);
}

}  // namespace tempograph
