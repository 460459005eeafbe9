#include "tempograph/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace tempograph {

namespace {

constexpr std::int64_t kDay = 86400;
constexpr double kSessionHalf = 1.0 * 3600;    // session covers its center +- 1h
constexpr double kSessionSpread = 3.0 * 3600;  // session centers spread peak +- 3h

double diurnal_factor(double t, std::int64_t phase, double amplitude) {
    // 1 at the trough (t == phase mod day), amplitude at the peak 12h later
    double x = 2.0 * std::numbers::pi * (t - static_cast<double>(phase)) / kDay;
    return 1.0 + (amplitude - 1.0) * (0.5 - 0.5 * std::cos(x));
}

double burst_multiplier(const std::vector<BurstSpec>& bursts, double t) {
    double m = 1.0;
    for (const auto& b : bursts)
        if (t >= static_cast<double>(b.t_start) &&
            t < static_cast<double>(b.t_start + b.duration))
            m *= b.rate_multiplier;
    return m;
}

// wraps x into (-day/2, day/2]
double circ(double x) {
    x = std::fmod(x, static_cast<double>(kDay));
    if (x > kDay / 2.0) x -= kDay;
    if (x <= -kDay / 2.0) x += kDay;
    return x;
}

struct Group {
    std::uint32_t first = 0;  // first member id
    std::uint32_t count = 0;
    double weight = 0.0;      // normalized rate share
    std::int64_t phase = 0;
    double peak_tod = 0.0;    // time of day of the group's rate peak

    // Session centers are evenly spaced over [peak - spread, peak + spread]
    // in member order, so the session-active members at any instant form a
    // contiguous index range.
    std::pair<std::uint32_t, std::uint32_t> active_range(double t) const {
        if (count == 0) return {0, 0};
        double d = circ(t - peak_tod);
        double lo_off = std::max(-kSessionSpread, d - kSessionHalf);
        double hi_off = std::min(kSessionSpread, d + kSessionHalf);
        if (lo_off > hi_off) return {first, first};
        if (count == 1) return {first, first + 1};
        double scale = (count - 1) / (2.0 * kSessionSpread);
        auto lo = static_cast<std::uint32_t>(std::ceil((lo_off + kSessionSpread) * scale));
        auto hi = static_cast<std::uint32_t>(std::floor((hi_off + kSessionSpread) * scale));
        if (hi >= count) hi = count - 1;
        return {first + lo, first + hi + 1};
    }
};

}  // namespace

void GeneratorConfig::validate() const {
    if (n_users < 2) throw std::invalid_argument("generator: need at least 2 users");
    if (duration <= 0) throw std::invalid_argument("generator: duration must be positive");
    if (base_rate <= 0) throw std::invalid_argument("generator: base_rate must be positive");
    if (diurnal_amplitude < 1.0)
        throw std::invalid_argument("generator: diurnal_amplitude must be >= 1");
    if (population_mix.empty()) throw std::invalid_argument("generator: empty population mix");
    double total = 0;
    for (const auto& g : population_mix) {
        if (g.fraction < 0 || g.fraction > 1)
            throw std::invalid_argument("generator: group fraction outside [0,1]");
        total += g.fraction;
    }
    if (total <= 0) throw std::invalid_argument("generator: group fractions sum to zero");
    auto prob = [](double p, const char* name) {
        if (p < 0 || p > 1)
            throw std::invalid_argument(std::string("generator: ") + name + " outside [0,1]");
    };
    prob(hub_fraction, "hub_fraction");
    prob(hub_attention, "hub_attention");
    prob(stranger_prob, "stranger_prob");
    std::uint64_t injected = 0;
    for (const auto& b : bursts) {
        if (b.duration <= 0) throw std::invalid_argument("generator: burst duration must be positive");
        if (b.rate_multiplier < 1.0)
            throw std::invalid_argument("generator: burst rate_multiplier must be >= 1");
        if (b.t_start < 0 || b.t_start + b.duration > duration)
            throw std::invalid_argument("generator: burst outside the run");
        injected += b.new_user_count;
    }
    if (injected + 2 > n_users)
        throw std::invalid_argument("generator: burst new users exceed the n_users budget");
}

double rate_at(const GeneratorConfig& c, double t) {
    double total = 0;
    for (const auto& g : c.population_mix) total += g.fraction;
    double rate = 0;
    for (const auto& g : c.population_mix)
        rate += (g.fraction / total) * diurnal_factor(t, g.phase_offset, c.diurnal_amplitude);
    return rate * c.base_rate / 3600.0 * burst_multiplier(c.bursts, t);
}

double expected_event_count(const GeneratorConfig& c) {
    // trapezoid integration at 1s resolution is plenty for 3-sigma checks
    double sum = 0;
    const std::int64_t step = 10;
    for (std::int64_t t = 0; t < c.duration; t += step) {
        double w = static_cast<double>(std::min(step, c.duration - t));
        sum += 0.5 * (rate_at(c, static_cast<double>(t)) +
                      rate_at(c, static_cast<double>(t) + w)) * w;
    }
    std::uint64_t injected = 0;
    for (const auto& b : c.bursts) injected += b.new_user_count;
    return sum + static_cast<double>(injected);
}

EventLog generate(const GeneratorConfig& c) {
    c.validate();
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    std::uint64_t injected_total = 0;
    for (const auto& b : c.bursts) injected_total += b.new_user_count;
    const std::uint32_t regular = c.n_users - static_cast<std::uint32_t>(injected_total);
    const auto n_hubs = static_cast<std::uint32_t>(
        std::min<double>(regular, std::llround(c.hub_fraction * regular)));

    // contiguous group membership over the regular users
    std::vector<Group> groups;
    {
        double total = 0;
        for (const auto& g : c.population_mix) total += g.fraction;
        std::uint32_t next = 0;
        for (std::size_t i = 0; i < c.population_mix.size(); ++i) {
            Group g;
            g.weight = c.population_mix[i].fraction / total;
            g.phase = c.population_mix[i].phase_offset;
            g.peak_tod = std::fmod(static_cast<double>(g.phase) + kDay / 2.0, kDay);
            g.first = next;
            g.count = (i + 1 == c.population_mix.size())
                          ? regular - next
                          : static_cast<std::uint32_t>(g.weight * regular);
            next += g.count;
            groups.push_back(g);
        }
    }

    auto pick_group = [&](double t) -> const Group& {
        double sum = 0;
        for (const auto& g : groups)
            sum += g.weight * diurnal_factor(t, g.phase, c.diurnal_amplitude);
        double r = uni(rng) * sum;
        for (const auto& g : groups) {
            r -= g.weight * diurnal_factor(t, g.phase, c.diurnal_amplitude);
            if (r <= 0) return g;
        }
        return groups.back();
    };

    auto uniform_in = [&](std::uint32_t lo, std::uint32_t hi) {  // [lo, hi)
        return lo + static_cast<std::uint32_t>(uni(rng) * (hi - lo));
    };

    auto pick_src = [&](const Group& g, double t) -> std::uint32_t {
        auto [lo, hi] = g.active_range(t);
        if (lo >= hi) return uniform_in(g.first, g.first + g.count);
        return uniform_in(lo, hi);
    };

    // uniformly among all session-active regular users, falling back to the
    // whole regular population when almost nobody is active
    auto pick_active = [&](double t, std::uint32_t exclude) -> std::uint32_t {
        std::uint64_t total_active = 0;
        for (const auto& g : groups) {
            auto [lo, hi] = g.active_range(t);
            total_active += hi - lo;
        }
        for (int tries = 0; total_active >= 2 && tries < 16; ++tries) {
            double r = uni(rng) * static_cast<double>(total_active);
            for (const auto& g : groups) {
                auto [lo, hi] = g.active_range(t);
                if (r < static_cast<double>(hi - lo)) {
                    auto u = lo + static_cast<std::uint32_t>(r);
                    if (u != exclude) return u;
                    break;
                }
                r -= static_cast<double>(hi - lo);
            }
        }
        std::uint32_t u;
        do {
            u = uniform_in(0, regular);
        } while (u == exclude);
        return u;
    };

    std::vector<std::vector<std::uint32_t>> history(c.n_users);

    auto pick_dst = [&](std::uint32_t src, double t) -> std::uint32_t {
        if (n_hubs >= 1 && uni(rng) < c.hub_attention && !(n_hubs == 1 && src == 0)) {
            std::uint32_t h;
            do {
                h = uniform_in(0, n_hubs);
            } while (h == src);
            return h;
        }
        auto& hist = history[src];
        if (hist.empty() || uni(rng) < c.stranger_prob) return pick_active(t, src);
        return hist[static_cast<std::size_t>(uni(rng) * static_cast<double>(hist.size()))];
    };

    std::vector<Interaction> raw;
    raw.reserve(static_cast<std::size_t>(expected_event_count(c) * 1.1) + 64);

    // background stream: thinning against the global rate ceiling
    double max_mult = 1.0;
    for (const auto& b : c.bursts) max_mult = std::max(max_mult, b.rate_multiplier);
    const double lambda_max = c.base_rate / 3600.0 * c.diurnal_amplitude * max_mult;
    std::exponential_distribution<double> exp_dist(lambda_max);
    double t = exp_dist(rng);
    while (t < static_cast<double>(c.duration)) {
        if (uni(rng) * lambda_max < rate_at(c, t)) {
            const Group& g = pick_group(t);
            std::uint32_t src = pick_src(g, t);
            std::uint32_t dst = pick_dst(src, t);
            history[src].push_back(dst);
            raw.push_back({src, dst, static_cast<Timestamp>(t)});
        }
        t += exp_dist(rng);
    }

    // burst users: one guaranteed event each inside the span
    std::uint32_t next_new = regular;
    for (const auto& b : c.bursts) {
        for (std::uint32_t i = 0; i < b.new_user_count; ++i) {
            double bt = static_cast<double>(b.t_start) +
                        uni(rng) * static_cast<double>(b.duration);
            std::uint32_t src = next_new++;
            std::uint32_t dst = pick_dst(src, bt);
            history[src].push_back(dst);
            raw.push_back({src, dst, static_cast<Timestamp>(bt)});
        }
    }

    std::stable_sort(raw.begin(), raw.end(),
                     [](const Interaction& a, const Interaction& b) { return a.ts < b.ts; });

    // renumber in first-appearance order so the log round-trips through the
    // native CSV format unchanged
    UserTable users;
    std::vector<Interaction> events;
    events.reserve(raw.size());
    for (const auto& e : raw) {
        UserId src = users.intern("u" + std::to_string(e.src));
        UserId dst = users.intern("u" + std::to_string(e.dst));
        events.push_back({src, dst, e.ts});
    }
    return EventLog(std::move(events), std::move(users));
}

GeneratorConfig demo_config() {
    GeneratorConfig c;
    c.n_users = 20000;
    c.duration = 7 * kDay;
    c.base_rate = 700.0;       // trough events/hour
    c.diurnal_amplitude = 12.0;
    c.population_mix = {{0.55, 0}, {0.45, 6 * 3600}};
    c.hub_fraction = 0.0005;   // ten hubs
    c.hub_attention = 0.10;
    c.stranger_prob = 0.50;
    c.seed = 42;
    return c;
}

}  // namespace tempograph
