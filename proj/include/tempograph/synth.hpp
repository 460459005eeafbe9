#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tempograph/event_log.hpp"
#include "tempograph/null_models.hpp"

namespace tempograph {

struct DiurnalGroup {
    double fraction;             // share of users (and of the event rate)
    std::int64_t phase_offset;   // seconds; shifts the group's daily cycle
};

struct BurstSpec {
    Timestamp t_start;           // seconds from the start of the run
    std::int64_t duration;       // seconds, > 0
    double rate_multiplier;      // >= 1, applied to the background rate
    std::uint32_t new_user_count;  // never-before-seen users injected over the span
};

struct GeneratorConfig {
    std::uint32_t n_users = 1000;
    std::int64_t duration = 7 * 86400;     // seconds
    double base_rate = 100.0;              // expected interactions/hour at trough
    double diurnal_amplitude = 1.0;        // peak/trough ratio, >= 1
    std::vector<DiurnalGroup> population_mix = {{1.0, 0}};
    double hub_fraction = 0.0;             // fraction of users designated hubs
    double hub_attention = 0.0;            // P(interaction targets a hub)
    double stranger_prob = 0.5;            // P(fresh pair) when not targeting a hub
    std::vector<BurstSpec> bursts;
    RandomSeed seed = 1;

    /// Throws std::invalid_argument on an infeasible configuration.
    void validate() const;
};

/// Synthetic interaction log. Events are drawn from an inhomogeneous
/// Poisson process with a sinusoidal daily rate per population group
/// (thinning method). Each group's members hold daily activity sessions
/// spread around the group's peak; the event source is drawn uniformly
/// from the session-active users of the firing group (whole group when no
/// session covers the instant). The target is a hub with probability
/// hub_attention, otherwise a fresh partner with probability stranger_prob
/// (drawn from the currently session-active users, so fresh pairs carry
/// the co-activity correlations seen in real interaction data), otherwise
/// a uniformly chosen entry of the source's partner history. Bursts scale
/// the background rate over their span and inject brand-new users, each of
/// which emits one event inside the span.
EventLog generate(const GeneratorConfig& config);

/// Analytic expected event count for a configuration (rate integral plus
/// injected burst events). Used as the oracle for total-count checks.
double expected_event_count(const GeneratorConfig& config);

/// Instantaneous event rate in events/second at t seconds into the run.
double rate_at(const GeneratorConfig& config, double t);

/// The pinned demo configuration used throughout the docs: two diurnal
/// groups six hours apart, a small hub core, and enough co-activity to
/// show hourly LCC shattering, window-size densification, and CDF
/// separation.
GeneratorConfig demo_config();

}  // namespace tempograph
