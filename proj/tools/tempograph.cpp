// Command-line front end: ingestion, window sweeps, metrics, null models,
// and synthetic log generation. All outputs are CSV.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "tempograph/durations.hpp"
#include "tempograph/event_log.hpp"
#include "tempograph/metrics.hpp"
#include "tempograph/novelty.hpp"
#include "tempograph/null_models.hpp"
#include "tempograph/sweep.hpp"
#include "tempograph/synth.hpp"
#include "tempograph/timeseries.hpp"
#include "tempograph/window.hpp"

namespace tg = tempograph;
namespace fs = std::filesystem;

namespace {

struct CommonOpts {
    std::string input;
    std::string format = "csv";
    std::vector<std::string> windows;
    std::string offset = "1d";
    std::string from, to;
    std::string metrics = "counts,novelty,components";
    std::size_t k = 20;
    std::uint64_t seed = 1;
    std::string cutoff = "6h";
    std::string out = ".";
    int threads = 0;
    bool self_loops = false;
    bool strict = false;
};

int env_threads() {
    const char* v = std::getenv("TEMPOGRAPH_THREADS");
    if (!v) return 0;
    return std::atoi(v);
}

std::int64_t duration_or_die(const std::string& s, const char* what) {
    auto d = tg::parse_duration(s);
    if (!d) throw CLI::ValidationError(std::string(what) + ": bad duration '" + s + "'");
    return *d;
}

tg::Timestamp timestamp_or_die(const std::string& s, const char* what) {
    auto t = tg::parse_timestamp(s);
    if (!t) throw CLI::ValidationError(std::string(what) + ": bad timestamp '" + s + "'");
    return *t;
}

tg::EventLog load_log(const CommonOpts& o) {
    tg::ParseOptions popts;
    popts.format = o.format == "jsonl" ? tg::InputFormat::Jsonl : tg::InputFormat::Csv;
    popts.strict = o.strict;
    tg::ParseReport rep;
    tg::EventLog log = tg::parse_interactions_file(o.input, popts, &rep);
    std::cerr << "parsed " << rep.accepted << " rows (" << rep.rejected << " rejected, "
              << rep.self_replies << " self-replies)\n";
    return log;
}

tg::SlidingSchedule make_schedule(const tg::EventLog& log, std::int64_t tau,
                                  std::int64_t delta, const CommonOpts& o) {
    tg::SlidingSchedule s = tg::default_schedule(log, tau, delta);
    if (!o.from.empty()) {
        tg::Timestamp from = timestamp_or_die(o.from, "--from");
        while (s.t_first < from) s.t_first += delta;
    }
    if (!o.to.empty()) s.t_last = std::min(s.t_last, timestamp_or_die(o.to, "--to"));
    return s;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

std::string out_path(const CommonOpts& o, const std::string& name) {
    if (o.out == "-") return "-";
    fs::create_directories(o.out);
    return (fs::path(o.out) / name).string();
}

std::vector<std::int64_t> window_list(const CommonOpts& o) {
    std::vector<std::string> specs = o.windows;
    if (specs.empty()) specs = {"1h", "1d", "7d", "30d"};
    std::vector<std::int64_t> taus;
    for (const auto& w : specs) {
        std::stringstream ss(w);
        std::string part;
        while (std::getline(ss, part, ','))
            if (!part.empty()) taus.push_back(duration_or_die(part, "--window"));
    }
    return taus;
}

tg::SweepOptions sweep_options(const CommonOpts& o) {
    tg::SweepOptions s;
    s.include_self_loops = o.self_loops;
    s.threads = o.threads;
    s.counts = o.metrics.find("counts") != std::string::npos;
    s.novelty = o.metrics.find("novelty") != std::string::npos;
    s.components = o.metrics.find("components") != std::string::npos;
    if (!s.counts && !s.novelty && !s.components)
        throw CLI::ValidationError("--metrics: no known metric selected");
    return s;
}

// reads one numeric column (plus t) out of a headered CSV
std::vector<tg::SeriesPoint> read_series(const std::string& path, const std::string& column) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input file: " + path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("empty input: " + path);
    std::vector<std::string> cols;
    std::stringstream hs(line);
    std::string c;
    while (std::getline(hs, c, ',')) cols.push_back(c);
    std::size_t t_idx = SIZE_MAX, v_idx = SIZE_MAX;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == "t") t_idx = i;
        if (cols[i] == column) v_idx = i;
    }
    if (t_idx == SIZE_MAX || v_idx == SIZE_MAX)
        throw std::runtime_error("column not found: " + column);
    std::vector<tg::SeriesPoint> out;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::vector<std::string> fields;
        while (std::getline(ls, c, ',')) fields.push_back(c);
        if (fields.size() <= std::max(t_idx, v_idx)) continue;
        out.push_back({std::stoll(fields[t_idx]), std::stod(fields[v_idx])});
    }
    return out;
}

void write_histogram(const tg::Histogram& h, const std::string& path) {
    std::ofstream file;
    std::ostream& os = open_out(path, file);
    os << "value,count\n";
    for (const auto& [v, n] : h) os << v << ',' << n << '\n';
}

int cmd_sweep(const CommonOpts& o) {
    tg::EventLog log = load_log(o);
    auto tables = tg::build_first_seen(log);
    auto opts = sweep_options(o);
    std::int64_t delta = duration_or_die(o.offset, "--offset");
    for (std::int64_t tau : window_list(o)) {
        auto sched = make_schedule(log, tau, delta, o);
        auto rows = tg::sweep_metrics(log, sched, tables, opts);
        std::string path = out_path(o, "sweep_" + tg::format_duration(tau) + ".csv");
        std::ofstream file;
        tg::write_metrics_csv(rows, open_out(path, file));
        std::cerr << "tau=" << tg::format_duration(tau) << ": " << rows.size()
                  << " windows -> " << path << '\n';
    }
    return 0;
}

int cmd_cdf(const CommonOpts& o, const std::string& column) {
    auto series = read_series(o.input, column);
    std::vector<double> values;
    for (const auto& p : series) values.push_back(p.value);
    auto cdf = tg::empirical_cdf(std::move(values));
    std::ofstream file;
    std::ostream& os = open_out(o.out == "." ? "-" : o.out, file);
    os << "x,F\n";
    for (const auto& p : cdf)
        os << tg::format_double(p.x) << ',' << tg::format_double(p.f) << '\n';
    return 0;
}

int cmd_distributions(const CommonOpts& o) {
    tg::EventLog log = load_log(o);
    auto d = tg::aggregate_distributions(log);
    write_histogram(d.node_degree, out_path(o, "node_degree.csv"));
    write_histogram(d.interaction_degree, out_path(o, "interaction_degree.csv"));
    write_histogram(d.edge_weight, out_path(o, "edge_weight.csv"));
    return 0;
}

int cmd_churn(const CommonOpts& o) {
    tg::EventLog log = load_log(o);
    std::int64_t delta = duration_or_die(o.offset, "--offset");
    for (std::int64_t tau : window_list(o)) {
        auto sched = make_schedule(log, tau, delta, o);
        auto report = tg::topk_persistence(log, sched, o.k, o.self_loops);
        std::string tag = tg::format_duration(tau);
        {
            std::ofstream file;
            std::ostream& os = open_out(out_path(o, "churn_" + tag + ".csv"), file);
            os << "user,count,proportion,first_t,last_t\n";
            for (const auto& e : report.entries)
                os << log.users().name(e.user) << ',' << e.windows_in_topk << ','
                   << tg::format_double(e.proportion) << ',' << e.first_t << ',' << e.last_t
                   << '\n';
        }
        {
            std::ofstream file;
            std::ostream& os = open_out(out_path(o, "churn_curve_" + tag + ".csv"), file);
            os << "proportion,n_users\n";
            for (const auto& p : report.curve)
                os << tg::format_double(p.proportion) << ',' << p.n_users << '\n';
        }
    }
    return 0;
}

int cmd_trajectories(const CommonOpts& o) {
    tg::EventLog log = load_log(o);
    std::int64_t delta = duration_or_die(o.offset, "--offset");
    auto top = tg::aggregate_top_indegree(log, o.k);
    for (std::int64_t tau : window_list(o)) {
        auto sched = make_schedule(log, tau, delta, o);
        auto series = tg::top_user_trajectories(log, sched, top, o.self_loops);
        std::ofstream file;
        std::ostream& os =
            open_out(out_path(o, "trajectories_" + tg::format_duration(tau) + ".csv"), file);
        os << "user,t,value\n";
        for (std::size_t u = 0; u < top.size(); ++u)
            for (std::size_t i = 0; i < series[u].size(); ++i)
                os << log.users().name(top[u]) << ',' << series[u].time_at(i) << ','
                   << tg::format_double(series[u].values[i]) << '\n';
    }
    return 0;
}

int cmd_nullmodel(const CommonOpts& o, const std::string& model, const std::string& at) {
    tg::EventLog log = load_log(o);
    if (model == "shuffle") {
        tg::EventLog shuffled = tg::shuffle_timestamps(log, o.seed);
        std::ofstream file;
        tg::write_csv(shuffled, open_out(o.out == "." ? "-" : o.out, file));
        return 0;
    }
    if (model == "rewire") {
        if (at.empty()) throw CLI::ValidationError("--model rewire requires --at");
        std::int64_t tau = window_list(o).front();
        tg::WindowSpec spec{timestamp_or_die(at, "--at"), tau};
        auto g = tg::window_view(log, spec, o.self_loops);
        auto rewired = tg::degree_preserving_graph(g, o.seed);
        std::ofstream file;
        std::ostream& os = open_out(o.out == "." ? "-" : o.out, file);
        os << "src,dst\n";
        for (const auto& e : rewired.edges)
            os << log.users().name(e.src) << ',' << log.users().name(e.dst) << '\n';
        return 0;
    }
    throw CLI::ValidationError("unknown --model: " + model);
}

int cmd_filter(const CommonOpts& o, const std::string& column) {
    auto points = read_series(o.input, column);
    if (points.size() < 2) throw std::runtime_error("series too short to filter");
    tg::WindowSeries s;
    s.t0 = points.front().t;
    s.spacing = points[1].t - points[0].t;
    for (const auto& p : points) s.values.push_back(p.value);
    auto filtered = tg::low_pass(s, duration_or_die(o.cutoff, "--cutoff"));
    std::ofstream file;
    std::ostream& os = open_out(o.out == "." ? "-" : o.out, file);
    os << "t,value\n";
    for (std::size_t i = 0; i < filtered.size(); ++i)
        os << filtered.time_at(i) << ',' << tg::format_double(filtered.values[i]) << '\n';
    return 0;
}

tg::GeneratorConfig parse_generator_flags(CLI::App* synth, CommonOpts& o, bool& demo,
                                          std::string& mix, std::vector<std::string>& bursts,
                                          std::string& config_file,
                                          tg::GeneratorConfig& c) {
    synth->add_flag("--demo", demo, "use the documented demo configuration");
    synth->add_option("--users", c.n_users, "total user budget");
    synth->add_option("--duration", [&c](const std::vector<std::string>& v) {
        c.duration = duration_or_die(v[0], "--duration");
        return true;
    }, "run length (e.g. 7d)");
    synth->add_option("--base-rate", c.base_rate, "trough interactions/hour");
    synth->add_option("--amplitude", c.diurnal_amplitude, "peak/trough rate ratio");
    synth->add_option("--mix", mix, "groups as frac:phase[,frac:phase...] (e.g. 0.55:0s,0.45:6h)");
    synth->add_option("--hub-fraction", c.hub_fraction, "fraction of users that are hubs");
    synth->add_option("--hub-attention", c.hub_attention, "P(target is a hub)");
    synth->add_option("--stranger-prob", c.stranger_prob, "P(fresh pair)");
    synth->add_option("--burst", bursts,
                      "burst as start:duration:multiplier:new_users (repeatable)");
    synth->add_option("--config", config_file, "key=value file with the flag names as keys");
    return c;
}

void apply_mix(const std::string& mix, tg::GeneratorConfig& c) {
    if (mix.empty()) return;
    c.population_mix.clear();
    std::stringstream ss(mix);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto colon = part.find(':');
        if (colon == std::string::npos) throw CLI::ValidationError("--mix: expected frac:phase");
        tg::DiurnalGroup g;
        g.fraction = std::stod(part.substr(0, colon));
        g.phase_offset = duration_or_die(part.substr(colon + 1), "--mix phase");
        c.population_mix.push_back(g);
    }
}

void apply_bursts(const std::vector<std::string>& bursts, tg::GeneratorConfig& c) {
    for (const auto& b : bursts) {
        std::stringstream ss(b);
        std::string f[4];
        for (auto& s : f)
            if (!std::getline(ss, s, ':'))
                throw CLI::ValidationError("--burst: expected start:duration:multiplier:new_users");
        tg::BurstSpec spec;
        spec.t_start = duration_or_die(f[0], "--burst start");
        spec.duration = duration_or_die(f[1], "--burst duration");
        spec.rate_multiplier = std::stod(f[2]);
        spec.new_user_count = static_cast<std::uint32_t>(std::stoul(f[3]));
        c.bursts.push_back(spec);
    }
}

int cmd_synth(const CommonOpts& o, bool seed_given, tg::GeneratorConfig c, bool demo,
              const std::string& mix, const std::vector<std::string>& bursts,
              const std::string& config_file) {
    if (demo) {
        c = tg::demo_config();
    } else {
        if (!config_file.empty()) {
            std::ifstream f(config_file);
            if (!f) throw std::runtime_error("cannot open config file: " + config_file);
            std::string line, mix_line;
            std::vector<std::string> burst_lines;
            while (std::getline(f, line)) {
                if (line.empty() || line[0] == '#') continue;
                auto eq = line.find('=');
                if (eq == std::string::npos) continue;
                std::string key = line.substr(0, eq), val = line.substr(eq + 1);
                if (key == "users") c.n_users = static_cast<std::uint32_t>(std::stoul(val));
                else if (key == "duration") c.duration = duration_or_die(val, "duration");
                else if (key == "base-rate") c.base_rate = std::stod(val);
                else if (key == "amplitude") c.diurnal_amplitude = std::stod(val);
                else if (key == "mix") mix_line = val;
                else if (key == "hub-fraction") c.hub_fraction = std::stod(val);
                else if (key == "hub-attention") c.hub_attention = std::stod(val);
                else if (key == "stranger-prob") c.stranger_prob = std::stod(val);
                else if (key == "burst") burst_lines.push_back(val);
                else if (key == "seed") c.seed = std::stoull(val);
                else throw std::runtime_error("unknown config key: " + key);
            }
            apply_mix(mix_line, c);
            apply_bursts(burst_lines, c);
        }
        apply_mix(mix, c);
        apply_bursts(bursts, c);
    }
    if (seed_given || !demo) c.seed = o.seed;
    tg::EventLog log = tg::generate(c);
    std::cerr << "generated " << log.size() << " events, " << log.users().size() << " users\n";
    std::ofstream file;
    tg::write_csv(log, open_out(o.out == "." ? "-" : o.out, file));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"temporal interaction-graph analytics"};
    app.require_subcommand(1);

    CommonOpts o;
    o.threads = env_threads();
    o.seed = 1;

    auto add_common = [&](CLI::App* cmd, bool needs_input = true) {
        if (needs_input) cmd->add_option("--input", o.input, "input event log")->required();
        cmd->add_option("--format", o.format, "csv or jsonl")
            ->check(CLI::IsMember({"csv", "jsonl"}));
        cmd->add_option("--window", o.windows, "window sizes, e.g. 1h,1d,7d");
        cmd->add_option("--offset", o.offset, "slide offset (default 1d)");
        cmd->add_option("--from", o.from, "first window center (epoch or RFC3339)");
        cmd->add_option("--to", o.to, "last window center");
        cmd->add_option("--metrics", o.metrics, "comma list of counts,novelty,components");
        cmd->add_option("--k", o.k, "top-k size (default 20)");
        cmd->add_option("--seed", o.seed, "random seed");
        cmd->add_option("--cutoff", o.cutoff, "low-pass cutoff period (default 6h)");
        cmd->add_option("--out", o.out, "output file or directory ('-' for stdout)");
        cmd->add_option("--threads", o.threads,
                        "worker count (default: TEMPOGRAPH_THREADS or all cores)");
        cmd->add_flag("--self-loops", o.self_loops, "keep self-replies in graphs");
        cmd->add_flag("--strict", o.strict, "abort on the first malformed input row");
    };

    auto* sweep = app.add_subcommand("sweep", "per-window metrics CSV per window size");
    add_common(sweep);

    std::string column = "lcc_prop";
    auto* cdf = app.add_subcommand("cdf", "empirical CDF of a metrics column");
    add_common(cdf);
    cdf->add_option("--column", column, "metrics column (default lcc_prop)");

    auto* dist = app.add_subcommand("distributions", "aggregate-graph degree/weight histograms");
    add_common(dist);

    auto* churn = app.add_subcommand("churn", "top-k persistence report per window size");
    add_common(churn);

    auto* traj = app.add_subcommand("trajectories",
                                    "normalized in-degree series for aggregate top-k users");
    add_common(traj);

    std::string model = "shuffle", at;
    auto* null = app.add_subcommand("nullmodel", "randomized reference models");
    add_common(null);
    null->add_option("--model", model, "shuffle or rewire");
    null->add_option("--at", at, "window center for --model rewire");

    auto* filter = app.add_subcommand("filter", "low-pass filter a (t,value) series");
    add_common(filter);
    filter->add_option("--column", column, "input column (default lcc_prop; use 'value' for plain series)");

    tg::GeneratorConfig gen;
    bool demo = false;
    std::string mix, config_file;
    std::vector<std::string> burst_flags;
    auto* synth = app.add_subcommand("synth", "generate a synthetic interaction log");
    add_common(synth, false);
    parse_generator_flags(synth, o, demo, mix, burst_flags, config_file, gen);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) return cmd_sweep(o);
        if (cdf->parsed()) return cmd_cdf(o, column);
        if (dist->parsed()) return cmd_distributions(o);
        if (churn->parsed()) return cmd_churn(o);
        if (traj->parsed()) return cmd_trajectories(o);
        if (null->parsed()) return cmd_nullmodel(o, model, at);
        if (filter->parsed()) return cmd_filter(o, column);
        if (synth->parsed())
            return cmd_synth(o, synth->count("--seed") > 0, gen, demo, mix, burst_flags,
                             config_file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
