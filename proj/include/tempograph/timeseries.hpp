#pragma once

#include <cstdint>
#include <vector>

#include "tempograph/event_log.hpp"
#include "tempograph/novelty.hpp"
#include "tempograph/sweep.hpp"
#include "tempograph/window.hpp"

namespace tempograph {

/// Uniformly spaced (t, value) sequence.
struct WindowSeries {
    Timestamp t0 = 0;
    std::int64_t spacing = 1;  // seconds between consecutive points
    std::vector<double> values;

    Timestamp time_at(std::size_t i) const {
        return t0 + static_cast<Timestamp>(i) * spacing;
    }
    std::size_t size() const { return values.size(); }
};

struct CdfPoint {
    double x;
    double f;  // fraction of samples <= x
};

/// Empirical CDF evaluated at the sorted distinct sample values.
std::vector<CdfPoint> empirical_cdf(std::vector<double> values);

struct DensificationPoint {
    std::int64_t tau;
    double mean_nodes, std_nodes;
    double mean_edges, std_edges;
    double mean_avg_degree, std_avg_degree;
    std::size_t n_windows;
};

/// Per-tau mean and population standard deviation of the basic counts over
/// a sliding schedule with the given offset. All scheduled windows count,
/// including partially filled ones at the dataset edges.
std::vector<DensificationPoint> densification_curve(const EventLog& log,
                                                    const std::vector<std::int64_t>& taus,
                                                    std::int64_t delta, int threads = 0);

/// Sharp spectral low-pass: DFT the series, zero every coefficient whose
/// period is shorter than cutoff_period, inverse-transform. The cutoff must
/// be above the Nyquist period (2 x spacing).
WindowSeries low_pass(const WindowSeries& series, std::int64_t cutoff_period);

struct ChurnEntry {
    UserId user;
    std::size_t windows_in_topk;
    double proportion;  // windows_in_topk / total windows
    Timestamp first_t;
    Timestamp last_t;
};

struct CurvePoint {
    double proportion;    // realized proportion p
    std::size_t n_users;  // users in the top-k for >= p of the windows
};

struct ChurnReport {
    std::size_t n_windows = 0;
    std::size_t k = 0;
    std::vector<ChurnEntry> entries;  // descending count, ties by ascending user
    std::vector<CurvePoint> curve;    // evaluated at every realized proportion
};

/// Runs top-k by in-degree over every window and tallies membership.
ChurnReport topk_persistence(const EventLog& log, const SlidingSchedule& sched, std::size_t k,
                             bool include_self_loops = false);

/// Per-user normalized in-degree trajectory: distinct in-neighbors divided
/// by window node count, 0 when the user is absent from the window.
std::vector<WindowSeries> top_user_trajectories(const EventLog& log,
                                                const SlidingSchedule& sched,
                                                const std::vector<UserId>& users,
                                                bool include_self_loops = false);

}  // namespace tempograph
