// runner.cpp

#include "qedchain/runner.hpp"

#include "qedchain/dynamics.hpp"
#include "qedchain/heisenberg.hpp"
#include "qedchain/meanfield.hpp"
#include "qedchain/sampling.hpp"
#include "qedchain/trajectory_io.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

namespace qedchain {

using nlohmann::json;

bool RunReport::passed() const {
    if (!body.contains("checks")) return false;
    for (const auto& c : body.at("checks"))
        if (!c.at("pass").get<bool>()) return false;
    return true;
}

json RunReport::without_timing() const {
    json j = body;
    j.erase("timing");
    if (j.contains("points"))
        for (auto& p : j["points"])
            if (p.contains("report")) p["report"].erase("timing");
    return j;
}

namespace {

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

class Context {
public:
    Context(const RunConfig& c, const RunOptions& o) : config(c), options(o) {}

    const RunConfig& config;
    const RunOptions& options;
    json checks = json::array();
    json results = json::object();
    json files = json::array();

    void log(const std::string& msg) const {
        if (options.log) options.log(msg);
    }

    void check(const std::string& name, double measured, double tolerance, bool must_exceed = false) {
        const bool pass = std::isfinite(measured) && (must_exceed ? measured > tolerance : measured <= tolerance);
        checks.push_back({{"name", name}, {"measured", measured}, {"tolerance", tolerance},
                          {"comparison", must_exceed ? ">" : "<="}, {"pass", pass}});
    }

    void write(const Trajectory& traj, const std::string& stem) {
        const TrajectoryLayout layout{static_cast<std::size_t>(config.space.n_sites), config.space.field_modes.size(),
                                      config.space.phonon_modes.size()};
        if (config.output.csv) {
            export_trajectory(traj, TrajectoryFormat::csv, options.out_dir / (stem + ".csv"), layout);
            files.push_back(stem + ".csv");
        }
        if (config.output.json) {
            export_trajectory(traj, TrajectoryFormat::json, options.out_dir / (stem + ".json"), layout);
            files.push_back(stem + ".json");
        }
    }
};

bool time_independent(const SystemParams& p) {
    return p.drives.empty() && (p.coupling_mode == CouplingMode::static_phase_at_t0 || p.field_modes.empty());
}

double max_energy_drift(const Trajectory& traj) {
    if (traj.empty()) return 0.0;
    const double e0 = traj.samples.front().energy;
    const double scale = std::abs(e0) > 1e-12 ? std::abs(e0) : 1.0;
    double d = 0.0;
    for (const auto& s : traj.samples) d = std::max(d, std::abs(s.energy - e0) / scale);
    return d;
}

// Parameter sets for operator-identity checks: the configured system followed by seeded draws of the same shape.
std::vector<std::pair<std::string, SystemParams>> parameter_sets(const RunConfig& c) {
    std::vector<std::pair<std::string, SystemParams>> sets{{"config", c.system}};
    ParameterSampler sampler(c.seed);
    DrawSpec spec;
    spec.n_sites = c.space.n_sites;
    spec.n_field = static_cast<int>(c.space.field_modes.size());
    spec.n_phonon = static_cast<int>(c.space.phonon_modes.size());
    spec.boundary = c.system.boundary;
    spec.coupling_mode = c.system.coupling_mode;
    for (int d = 0; d < c.checks.draws; ++d) {
        char name[16];
        std::snprintf(name, sizeof name, "draw_%03d", d);
        sets.emplace_back(name, sampler.system(spec));
    }
    return sets;
}

bool has_field_coupling(const SpaceIndex& space, const SystemParams& p, double t) {
    for (int l = 0; l < p.n_sites(); ++l) {
        for (int k = 0; k < space.n_field_modes(); ++k)
            if (std::abs(coupling_q(p, l, k, t)) > 0.0) return true;
        if (drive_field(p, l, t) != 0.0) return true;
    }
    return false;
}

void task_propagate(Context& ctx) {
    const RunConfig& c = ctx.config;
    const SpaceIndex space(c.space);
    PropagationSettings settings = c.propagation;
    settings.keep_states = settings.keep_states || !c.checks.ehrenfest.empty();
    const StateVector psi = product_state(space, c.initial, c.t0);
    ctx.log("propagating dimension " + std::to_string(space.dimension()) + " to t = " + std::to_string(settings.t_end));
    const Trajectory traj = propagate(space, c.system, psi, settings);
    ctx.write(traj, c.output.prefix);

    ctx.check("norm_drift", traj.meta.max_norm_drift, c.checks.norm_tolerance);
    ctx.check("top_fock_population", traj.meta.max_top_population, kTruncationFlagThreshold);
    if (time_independent(c.system)) ctx.check("energy_drift_relative", max_energy_drift(traj), c.checks.energy_tolerance);
    json ehrenfest = json::array();
    for (const auto& name : c.checks.ehrenfest) {
        const EhrenfestReport rep = ehrenfest_check(traj, space, c.system, parse_observable(name), c.checks.ehrenfest_tolerance);
        ctx.check("ehrenfest/" + rep.observable, rep.max_deviation, rep.tolerance);
        ehrenfest.push_back({{"observable", rep.observable}, {"max_deviation", rep.max_deviation}, {"worst_time", rep.worst_time},
                             {"step", rep.step}, {"truncation_bound", rep.truncation_bound}, {"points", rep.points_checked}});
    }
    ctx.results = {{"records", traj.size()},
                   {"dimension", space.dimension()},
                   {"accepted_steps", traj.meta.accepted_steps},
                   {"rejected_steps", traj.meta.rejected_steps},
                   {"max_norm_drift", traj.meta.max_norm_drift},
                   {"max_top_population", traj.meta.max_top_population},
                   {"truncation_flagged", traj.meta.truncation_flagged},
                   {"warnings", traj.meta.warnings},
                   {"ehrenfest", ehrenfest}};
}

void task_verify_eom(Context& ctx) {
    const RunConfig& c = ctx.config;
    const SpaceIndex space(c.space);
    json table = json::array();
    for (const auto& [name, params] : parameter_sets(c)) {
        ctx.log("verify_eom " + name);
        const EomResiduals r = verify_eom(space, params, c.checks.time);
        json row = {{"set", name}};
        json sigma = json::array(), field = json::array(), phonon = json::array(), term = json::array();
        for (const auto& s : r.sigma) sigma.push_back({{"minus", s[0]}, {"plus", s[1]}, {"z", s[2]}});
        for (const auto& f : r.field) field.push_back({{"a", f[0]}, {"a_dag", f[1]}});
        for (const auto& p : r.phonon) phonon.push_back({{"b", p[0]}, {"b_dag", p[1]}});
        for (const auto& p : r.phonon_term) term.push_back({{"minus", p[0]}, {"plus", p[1]}});
        row["sigma"] = sigma;
        row["field"] = field;
        row["phonon"] = phonon;
        row["phonon_term"] = term;
        row["conjugation"] = r.conjugation;
        table.push_back(row);
        ctx.check("eom/" + name + "/sigma", r.max_sigma(), c.checks.eom_tolerance);
        ctx.check("eom/" + name + "/bosonic", r.max_bosonic(), c.checks.eom_tolerance);
        ctx.check("eom/" + name + "/phonon_term", r.max_phonon_term(), c.checks.eom_tolerance);
    }
    ctx.results = {{"time", c.checks.time}, {"residual_norm", "frobenius"}, {"sets", table}};
}

void task_verify_compact(Context& ctx) {
    const RunConfig& c = ctx.config;
    const SpaceIndex space(c.space);
    json table = json::array();
    for (const auto& [name, params] : parameter_sets(c)) {
        ctx.log("verify_compact " + name);
        double worst = 0.0, control = 0.0;
        json sites = json::array();
        for (int l = 0; l < params.n_sites(); ++l) {
            const double r = verify_compact_form(space, params, l, c.checks.time, kTransitionMetric);
            const double rc = verify_compact_form(space, params, l, c.checks.time, kIdentityMetric);
            worst = std::max(worst, r);
            control = std::max(control, rc);
            sites.push_back({{"site", l}, {"residual", r}, {"identity_metric_residual", rc}});
        }
        table.push_back({{"set", name}, {"sites", sites}});
        ctx.check("compact/" + name, worst, c.checks.compact_tolerance);
        if (has_field_coupling(space, params, c.checks.time))
            ctx.check("compact/" + name + "/identity_metric_control", control, c.checks.control_threshold, true);
    }
    ctx.results = {{"time", c.checks.time}, {"metric", {1.0, 1.0, 4.0}}, {"sets", table}};
}

Trajectory run_meanfield(const RunConfig& c) {
    const MeanFieldState mf = mean_field_state(c.initial, c.space.n_sites, static_cast<int>(c.space.field_modes.size()),
                                               static_cast<int>(c.space.phonon_modes.size()), c.t0);
    MeanFieldSettings s;
    s.t_end = c.propagation.t_end;
    s.output_dt = c.propagation.output_dt;
    s.integrator = c.propagation.integrator;
    return mf_propagate(mf, c.system, s);
}

void task_meanfield(Context& ctx) {
    const RunConfig& c = ctx.config;
    ctx.log("mean-field propagation to t = " + std::to_string(c.propagation.t_end));
    const Trajectory traj = run_meanfield(c);
    ctx.write(traj, c.output.prefix);
    const double drift = max_bloch_drift(traj);
    ctx.check("bloch_invariant_drift", drift, c.checks.bloch_tolerance);
    ctx.results = {{"records", traj.size()},
                   {"accepted_steps", traj.meta.accepted_steps},
                   {"rejected_steps", traj.meta.rejected_steps},
                   {"max_bloch_drift", drift}};
}

void task_compare(Context& ctx) {
    const RunConfig& c = ctx.config;
    const SpaceIndex space(c.space);
    ctx.log("compare: exact propagation");
    const Trajectory exact = propagate(space, c.system, product_state(space, c.initial, c.t0), c.propagation);
    ctx.log("compare: mean-field propagation");
    const Trajectory mf = run_meanfield(c);
    ctx.write(exact, c.output.prefix + "_exact");
    ctx.write(mf, c.output.prefix + "_meanfield");

    const double window_end = c.checks.compare_window > 0.0 ? c.t0 + c.checks.compare_window : c.propagation.t_end;
    json sites = json::array();
    double worst_window = 0.0;
    for (int l = 0; l < c.space.n_sites; ++l) {
        double max_all = 0.0, max_win = 0.0, worst_t = c.t0, sq = 0.0;
        for (std::size_t i = 0; i < exact.size() && i < mf.size(); ++i) {
            const double d = std::abs(exact.samples[i].sites[l].z - mf.samples[i].sites[l].z);
            sq += d * d;
            if (d > max_all) {
                max_all = d;
                worst_t = exact.samples[i].time;
            }
            if (exact.samples[i].time <= window_end + 1e-12) max_win = std::max(max_win, d);
        }
        worst_window = std::max(worst_window, max_win);
        sites.push_back({{"site", l},
                         {"max_sz_deviation", max_all},
                         {"worst_time", worst_t},
                         {"rms_sz_deviation", std::sqrt(sq / static_cast<double>(std::max<std::size_t>(1, exact.size())))},
                         {"max_sz_deviation_in_window", max_win}});
    }
    ctx.check("compare/sz_deviation_in_window", worst_window, c.checks.compare_tolerance);
    ctx.check("compare/top_fock_population", exact.meta.max_top_population, kTruncationFlagThreshold);
    ctx.results = {{"window_end", window_end}, {"sites", sites}, {"exact_truncation_flagged", exact.meta.truncation_flagged}};
}

json run_single(const RunConfig& c, const RunOptions& o);

void task_sweep(Context& ctx, json& points) {
    const RunConfig& c = ctx.config;
    const std::vector<RunConfig> derived = expand_sweep(c);
    std::vector<json> reports(derived.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < derived.size(); i = next++) {
            char dir[32];
            std::snprintf(dir, sizeof dir, "point_%03zu", i);
            RunOptions sub = ctx.options;
            sub.out_dir = ctx.options.out_dir / dir;
            sub.task.reset();
            sub.seed.reset();
            if (ctx.options.log)
                sub.log = [&, i](const std::string& m) {
                    std::lock_guard lock(log_mutex);
                    ctx.options.log("[" + std::to_string(i) + "] " + m);
                };
            try {
                reports[i] = run_single(derived[i], sub);
            } catch (const std::exception& e) {
                reports[i] = {{"error", e.what()}, {"checks", json::array({{{"name", "completed"}, {"measured", 1.0}, {"tolerance", 0.0}, {"comparison", "<="}, {"pass", false}}})}};
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(ctx.options.workers, static_cast<unsigned>(derived.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < derived.size(); ++i) {
        char dir[32];
        std::snprintf(dir, sizeof dir, "point_%03zu", i);
        json values = json::object();
        for (const auto& axis : c.sweep->axes) values[axis.path] = derived[i].document.at(json::json_pointer(axis.path));
        for (const auto& chk : reports[i].at("checks")) {
            json copy = chk;
            copy["name"] = std::string(dir) + "/" + chk.at("name").get<std::string>();
            ctx.checks.push_back(copy);
        }
        if (reports[i].contains("files"))
            for (const auto& f : reports[i].at("files")) ctx.files.push_back(std::string(dir) + "/" + f.get<std::string>());
        points.push_back({{"index", i}, {"directory", dir}, {"values", values}, {"report", reports[i]}});
    }
    ctx.results = {{"points", derived.size()}, {"task", to_string(c.sweep->task)}};
}

json run_single(const RunConfig& c, const RunOptions& o) {
    const auto start = std::chrono::steady_clock::now();
    std::filesystem::create_directories(o.out_dir);
    Context ctx(c, o);
    json points = json::array();
    try {
        switch (c.task) {
            case Task::propagate: task_propagate(ctx); break;
            case Task::verify_eom: task_verify_eom(ctx); break;
            case Task::verify_compact: task_verify_compact(ctx); break;
            case Task::meanfield: task_meanfield(ctx); break;
            case Task::compare: task_compare(ctx); break;
            case Task::sweep: task_sweep(ctx, points); break;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw RunError("task '" + to_string(c.task) + "' failed: " + e.what());
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json body = {{"task", to_string(c.task)},
                 {"config_hash", hex(config_hash(c))},
                 {"seed", c.seed},
                 {"checks", ctx.checks},
                 {"results", ctx.results},
                 {"files", ctx.files},
                 {"timing", {{"wall_seconds", wall}}}};
    if (c.task == Task::sweep) body["points"] = points;
    std::ofstream out(o.out_dir / "report.json", std::ios::binary | std::ios::trunc);
    if (!out) throw RunError("cannot write report to '" + (o.out_dir / "report.json").string() + "'");
    out << body.dump(2) << "\n";
    return body;
}

}  // namespace

RunReport run(const RunConfig& config, const RunOptions& options) {
    RunConfig c = config;
    if (options.seed || options.task) {
        json doc = c.document;
        if (options.seed) doc["seed"] = *options.seed;
        if (options.task) doc["task"] = to_string(*options.task);
        c = parse_config(doc);
    }
    return {run_single(c, options)};
}

}  // namespace qedchain
