// config.cpp: JSON config parsing with aggregated validation

#include "qedchain/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qedchain {

using nlohmann::json;

std::string to_string(Task t) {
    switch (t) {
        case Task::propagate: return "propagate";
        case Task::verify_eom: return "verify_eom";
        case Task::verify_compact: return "verify_compact";
        case Task::meanfield: return "meanfield";
        case Task::compare: return "compare";
        case Task::sweep: return "sweep";
    }
    return "unknown";
}

std::optional<Task> parse_task(const std::string& name) {
    for (Task t : {Task::propagate, Task::verify_eom, Task::verify_compact, Task::meanfield, Task::compare, Task::sweep})
        if (to_string(t) == name) return t;
    return std::nullopt;
}

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
    std::string s = "invalid configuration (" + std::to_string(errors.size()) + " error" + (errors.size() == 1 ? "" : "s") + ")";
    for (const auto& e : errors) s += "\n  " + e;
    return s;
}

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

class Reader {
public:
    std::vector<std::string> errors;

    void error(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }

    // Reports keys outside `allowed`; returns false when `j` is not an object.
    bool expect_object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
        if (!j.is_object()) {
            error(path, "expected an object");
            return false;
        }
        std::set<std::string> ok(allowed.begin(), allowed.end());
        for (const auto& [k, v] : j.items())
            if (!ok.count(k)) error(child(path, k), "unknown key");
        return true;
    }

    double number(const json& obj, const char* key, const std::string& path, double def, bool required = false) {
        if (!obj.contains(key)) {
            if (required) error(child(path, key), "required number is missing");
            return def;
        }
        const json& v = obj.at(key);
        if (!v.is_number()) {
            error(child(path, key), "expected a number");
            return def;
        }
        const double x = v.get<double>();
        if (!std::isfinite(x)) error(child(path, key), "must be finite");
        return x;
    }

    double positive(const json& obj, const char* key, const std::string& path, double def, bool required = false) {
        const double x = number(obj, key, path, def, required);
        if (obj.contains(key) && obj.at(key).is_number() && !(x > 0.0)) error(child(path, key), "must be positive");
        return x;
    }

    long long integer(const json& obj, const char* key, const std::string& path, long long def, long long min,
                      bool required = false) {
        if (!obj.contains(key)) {
            if (required) error(child(path, key), "required integer is missing");
            return def;
        }
        const json& v = obj.at(key);
        if (!v.is_number_integer()) {
            error(child(path, key), "expected an integer");
            return def;
        }
        const long long x = v.get<long long>();
        if (x < min) error(child(path, key), "must be >= " + std::to_string(min));
        return x;
    }

    std::string string(const json& obj, const char* key, const std::string& path, const std::string& def) {
        if (!obj.contains(key)) return def;
        if (!obj.at(key).is_string()) {
            error(child(path, key), "expected a string");
            return def;
        }
        return obj.at(key).get<std::string>();
    }

    bool boolean(const json& obj, const char* key, const std::string& path, bool def) {
        if (!obj.contains(key)) return def;
        if (!obj.at(key).is_boolean()) {
            error(child(path, key), "expected true or false");
            return def;
        }
        return obj.at(key).get<bool>();
    }

    // A number broadcast to n entries or an explicit list of n numbers.
    std::vector<double> per_site(const json& obj, const char* key, const std::string& path, std::size_t n, double def) {
        if (!obj.contains(key)) return std::vector<double>(n, def);
        const json& v = obj.at(key);
        if (v.is_number()) return std::vector<double>(n, v.get<double>());
        if (!v.is_array()) {
            error(child(path, key), "expected a number or a list of numbers");
            return std::vector<double>(n, def);
        }
        if (v.size() != n)
            error(child(path, key), "has " + std::to_string(v.size()) + " entries for " + std::to_string(n) + " sites");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) {
                error(child(child(path, key), i), "expected a number");
                out.push_back(def);
            } else {
                out.push_back(v[i].get<double>());
            }
        }
        out.resize(n, def);
        return out;
    }

    // A real number or a [re, im] pair.
    cplx complex(const json& v, const std::string& path) {
        if (v.is_number()) return v.get<double>();
        if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
            return {v[0].get<double>(), v[1].get<double>()};
        error(path, "expected a number or a [re, im] pair");
        return 0.0;
    }
};

SpaceSpec read_space(Reader& r, const json& doc) {
    SpaceSpec s;
    if (!doc.contains("space")) {
        r.error("space", "required section is missing");
        return s;
    }
    const json& j = doc.at("space");
    if (!r.expect_object(j, "space", {"sites", "field_cutoffs", "phonon_cutoffs", "max_dimension"})) return s;
    s.n_sites = static_cast<int>(r.integer(j, "sites", "space", 1, 1, true));
    auto cutoffs = [&](const char* key, std::vector<ModeSpec>& out) {
        if (!j.contains(key)) return;
        const json& v = j.at(key);
        if (!v.is_array()) {
            r.error(child("space", key), "expected a list of integers");
            return;
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number_integer() || v[i].get<long long>() < 1) {
                r.error(child(child("space", key), i), "cutoff must be an integer >= 1");
                out.push_back({1});
            } else {
                out.push_back({static_cast<int>(v[i].get<long long>())});
            }
        }
    };
    cutoffs("field_cutoffs", s.field_modes);
    cutoffs("phonon_cutoffs", s.phonon_modes);
    s.max_dimension = static_cast<std::size_t>(r.integer(j, "max_dimension", "space", static_cast<long long>(s.max_dimension), 1));
    return s;
}

FieldMode read_mode(Reader& r, const json& j, const std::string& path, std::size_t n_sites, bool drive, cplx* alpha) {
    FieldMode m;
    std::initializer_list<const char*> keys = {"omega", "wavevector", "amplitude", "overlap"};
    std::initializer_list<const char*> drive_keys = {"omega", "wavevector", "amplitude", "overlap", "alpha"};
    if (!r.expect_object(j, path, drive ? drive_keys : keys)) return m;
    m.omega = r.positive(j, "omega", path, 1.0, true);
    m.wavevector = r.number(j, "wavevector", path, 0.0);
    m.amplitude = r.number(j, "amplitude", path, 0.0);
    m.polarization_overlap = r.per_site(j, "overlap", path, n_sites, 1.0);
    if (drive) {
        if (j.contains("alpha"))
            *alpha = r.complex(j.at("alpha"), child(path, "alpha"));
        else
            r.error(child(path, "alpha"), "required coherent amplitude is missing");
    }
    return m;
}

SystemParams read_system(Reader& r, const json& doc, int n_sites_hint) {
    SystemParams p;
    if (!doc.contains("system")) {
        r.error("system", "required section is missing");
        return p;
    }
    const json& j = doc.at("system");
    if (!r.expect_object(j, "system",
                         {"omega", "sites", "exchange_J", "boundary", "coupling_mode", "dipole", "lattice_spacing",
                          "positions", "field_modes", "phonon_modes", "drives"}))
        return p;
    const std::size_t n = static_cast<std::size_t>(std::max(1, n_sites_hint));

    if (j.contains("sites")) {
        if (j.contains("omega")) r.error("system.omega", "give either omega or sites, not both");
        const json& s = j.at("sites");
        if (!s.is_array()) {
            r.error("system.sites", "expected a list of {E_alpha, E_beta} objects");
        } else {
            if (s.size() != n) r.error("system.sites", "lists " + std::to_string(s.size()) + " sites but space declares " + std::to_string(n));
            for (std::size_t i = 0; i < s.size(); ++i) {
                const std::string path = child("system.sites", i);
                if (!r.expect_object(s[i], path, {"E_alpha", "E_beta"})) continue;
                p.site_energies.push_back({r.number(s[i], "E_alpha", path, 0.0, true), r.number(s[i], "E_beta", path, 1.0, true)});
            }
        }
    } else {
        const double w = r.positive(j, "omega", "system", 1.0, true);
        p.site_energies.assign(n, LevelPair{0.0, w});
    }
    p.exchange_J = r.number(j, "exchange_J", "system", 0.0);

    const std::string boundary = r.string(j, "boundary", "system", "open");
    if (boundary == "open") p.boundary = Boundary::open;
    else if (boundary == "periodic") p.boundary = Boundary::periodic;
    else r.error("system.boundary", "expected 'open' or 'periodic', got '" + boundary + "'");

    const std::string mode = r.string(j, "coupling_mode", "system", "static");
    if (mode == "static") p.coupling_mode = CouplingMode::static_phase_at_t0;
    else if (mode == "literal") p.coupling_mode = CouplingMode::literal_time_dependent;
    else r.error("system.coupling_mode", "expected 'static' or 'literal', got '" + mode + "'");

    p.dipole_p = r.per_site(j, "dipole", "system", n, 1.0);
    p.lattice_spacing = r.positive(j, "lattice_spacing", "system", 1.0);
    if (j.contains("positions")) p.site_positions = r.per_site(j, "positions", "system", n, 0.0);

    auto list = [&](const char* key) -> const json* {
        if (!j.contains(key)) return nullptr;
        if (!j.at(key).is_array()) {
            r.error(child("system", key), "expected a list");
            return nullptr;
        }
        return &j.at(key);
    };
    if (const json* modes = list("field_modes"))
        for (std::size_t k = 0; k < modes->size(); ++k)
            p.field_modes.push_back(read_mode(r, (*modes)[k], child("system.field_modes", k), n, false, nullptr));
    if (const json* phonons = list("phonon_modes"))
        for (std::size_t q = 0; q < phonons->size(); ++q) {
            const std::string path = child("system.phonon_modes", q);
            if (!r.expect_object((*phonons)[q], path, {"nu", "lambda"})) continue;
            p.phonon_modes.push_back({r.positive((*phonons)[q], "nu", path, 1.0, true), r.number((*phonons)[q], "lambda", path, 0.0)});
        }
    if (const json* drives = list("drives"))
        for (std::size_t d = 0; d < drives->size(); ++d) {
            ClassicalDrive cd;
            cd.mode = read_mode(r, (*drives)[d], child("system.drives", d), n, true, &cd.coherent_amplitude);
            p.drives.push_back(std::move(cd));
        }
    return p;
}

ModeState read_mode_state(Reader& r, const json& v, const std::string& path, int cutoff) {
    if (v.is_string()) {
        if (v.get<std::string>() == "vacuum") return ModeState::vacuum();
        r.error(path, "expected 'vacuum', {\"fock\": n} or {\"coherent\": alpha}");
        return {};
    }
    if (!r.expect_object(v, path, {"fock", "coherent"})) return {};
    if (v.contains("fock") && v.contains("coherent")) {
        r.error(path, "give either fock or coherent, not both");
        return {};
    }
    if (v.contains("coherent")) return ModeState::coherent_state(r.complex(v.at("coherent"), child(path, "coherent")));
    const auto n = static_cast<int>(r.integer(v, "fock", path, 0, 0, true));
    if (cutoff > 0 && n > cutoff) r.error(child(path, "fock"), "Fock level " + std::to_string(n) + " exceeds cutoff " + std::to_string(cutoff));
    return ModeState::number(n);
}

InitialState read_initial(Reader& r, const json& doc, const SpaceSpec& space, double& t0) {
    InitialState s;
    const std::size_t n = static_cast<std::size_t>(std::max(1, space.n_sites));
    s.sites.assign(n, SiteState::lower());
    s.field.assign(space.field_modes.size(), ModeState::vacuum());
    s.phonons.assign(space.phonon_modes.size(), ModeState::vacuum());
    if (!doc.contains("initial")) return s;
    const json& j = doc.at("initial");
    if (!r.expect_object(j, "initial", {"t0", "sites", "field", "phonons"})) return s;
    t0 = r.number(j, "t0", "initial", 0.0);

    if (j.contains("sites")) {
        const json& v = j.at("sites");
        if (!v.is_array()) {
            r.error("initial.sites", "expected a list");
        } else {
            if (v.size() != n)
                r.error("initial.sites", "lists " + std::to_string(v.size()) + " sites but space declares " + std::to_string(n));
            for (std::size_t i = 0; i < v.size() && i < n; ++i) {
                const std::string path = child("initial.sites", i);
                if (v[i].is_string()) {
                    const std::string name = v[i].get<std::string>();
                    if (name == "alpha") s.sites[i] = SiteState::lower();
                    else if (name == "beta") s.sites[i] = SiteState::upper();
                    else r.error(path, "expected 'alpha', 'beta' or {theta, phi}, got '" + name + "'");
                } else if (r.expect_object(v[i], path, {"theta", "phi"})) {
                    s.sites[i] = {r.number(v[i], "theta", path, 0.0, true), r.number(v[i], "phi", path, 0.0)};
                }
            }
        }
    }
    auto modes = [&](const char* key, const std::vector<ModeSpec>& declared, std::vector<ModeState>& out, const char* what) {
        if (!j.contains(key)) return;
        const json& v = j.at(key);
        const std::string path = child("initial", key);
        if (!v.is_array()) {
            r.error(path, "expected a list");
            return;
        }
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k >= declared.size()) {
                r.error(child(path, k), std::string(what) + " mode " + std::to_string(k) + " is not declared in space (" +
                                            std::to_string(declared.size()) + " declared)");
                continue;
            }
            out[k] = read_mode_state(r, v[k], child(path, k), declared[k].cutoff);
        }
    };
    modes("field", space.field_modes, s.field, "field");
    modes("phonons", space.phonon_modes, s.phonons, "phonon");
    return s;
}

void read_integrator(Reader& r, const json& doc, RunConfig& c) {
    if (!doc.contains("integrator")) {
        r.error("integrator", "required section is missing");
        return;
    }
    const json& j = doc.at("integrator");
    if (!r.expect_object(j, "integrator", {"t_end", "output_dt", "rtol", "atol", "max_step", "keep_states"})) return;
    auto& p = c.propagation;
    p.t_end = r.number(j, "t_end", "integrator", 1.0, true);
    p.output_dt = r.positive(j, "output_dt", "integrator", 0.1, true);
    p.integrator.rtol = r.positive(j, "rtol", "integrator", p.integrator.rtol);
    p.integrator.atol = r.positive(j, "atol", "integrator", p.integrator.atol);
    p.integrator.max_step = r.positive(j, "max_step", "integrator", p.integrator.max_step);
    p.keep_states = r.boolean(j, "keep_states", "integrator", false);
    if (!(p.t_end > c.t0)) r.error("integrator.t_end", "must exceed the start time " + std::to_string(c.t0));
}

void read_checks(Reader& r, const json& doc, RunConfig& c) {
    if (!doc.contains("checks")) return;
    const json& j = doc.at("checks");
    if (!r.expect_object(j, "checks",
                         {"time", "draws", "eom_tolerance", "compact_tolerance", "control_threshold", "norm_tolerance",
                          "energy_tolerance", "bloch_tolerance", "compare_tolerance", "compare_window", "ehrenfest",
                          "ehrenfest_tolerance"}))
        return;
    auto& k = c.checks;
    k.time = r.number(j, "time", "checks", k.time);
    k.draws = static_cast<int>(r.integer(j, "draws", "checks", k.draws, 0));
    k.eom_tolerance = r.positive(j, "eom_tolerance", "checks", k.eom_tolerance);
    k.compact_tolerance = r.positive(j, "compact_tolerance", "checks", k.compact_tolerance);
    k.control_threshold = r.positive(j, "control_threshold", "checks", k.control_threshold);
    k.norm_tolerance = r.positive(j, "norm_tolerance", "checks", k.norm_tolerance);
    k.energy_tolerance = r.positive(j, "energy_tolerance", "checks", k.energy_tolerance);
    k.bloch_tolerance = r.positive(j, "bloch_tolerance", "checks", k.bloch_tolerance);
    k.compare_tolerance = r.positive(j, "compare_tolerance", "checks", k.compare_tolerance);
    k.compare_window = r.number(j, "compare_window", "checks", k.compare_window);
    k.ehrenfest_tolerance = r.positive(j, "ehrenfest_tolerance", "checks", k.ehrenfest_tolerance);
    if (j.contains("ehrenfest")) {
        const json& v = j.at("ehrenfest");
        if (!v.is_array()) {
            r.error("checks.ehrenfest", "expected a list of observable names");
            return;
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string path = child("checks.ehrenfest", i);
            if (!v[i].is_string()) {
                r.error(path, "expected an observable name");
                continue;
            }
            const std::string name = v[i].get<std::string>();
            try {
                const ObservableRef ref = parse_observable(name);
                const bool site = ref.kind == ObservableRef::Kind::sigma_minus || ref.kind == ObservableRef::Kind::sigma_plus ||
                                  ref.kind == ObservableRef::Kind::sigma_z;
                const bool field = ref.kind == ObservableRef::Kind::field_a || ref.kind == ObservableRef::Kind::field_a_dag;
                const int limit = site ? c.space.n_sites
                                       : static_cast<int>(field ? c.space.field_modes.size() : c.space.phonon_modes.size());
                if (ref.index >= limit)
                    r.error(path, "'" + name + "' refers to index " + std::to_string(ref.index) + " but only " +
                                      std::to_string(limit) + (site ? " sites" : field ? " field modes" : " phonon modes") +
                                      " are declared");
                c.checks.ehrenfest.push_back(name);
            } catch (const std::invalid_argument&) {
                r.error(path, "unknown observable '" + name + "'");
            }
        }
    }
}

void read_sweep(Reader& r, const json& doc, RunConfig& c) {
    if (!doc.contains("sweep")) {
        if (c.task == Task::sweep) r.error("sweep", "task 'sweep' requires a sweep section");
        return;
    }
    const json& j = doc.at("sweep");
    if (!r.expect_object(j, "sweep", {"task", "axes"})) return;
    SweepConfig s;
    const std::string task = r.string(j, "task", "sweep", "propagate");
    if (auto t = parse_task(task); t && *t != Task::sweep) s.task = *t;
    else r.error("sweep.task", "expected a non-sweep task, got '" + task + "'");
    if (!j.contains("axes") || !j.at("axes").is_array() || j.at("axes").empty()) {
        r.error("sweep.axes", "expected a non-empty list of axes");
        c.sweep = s;
        return;
    }
    const json& axes = j.at("axes");
    for (std::size_t a = 0; a < axes.size(); ++a) {
        const std::string path = child("sweep.axes", a);
        if (!r.expect_object(axes[a], path, {"path", "values", "linspace"})) continue;
        SweepAxis axis;
        axis.path = r.string(axes[a], "path", path, "");
        try {
            const json::json_pointer ptr(axis.path);
            if (!doc.contains(ptr)) r.error(child(path, "path"), "'" + axis.path + "' does not name an existing value");
            else if (!doc.at(ptr).is_number()) r.error(child(path, "path"), "'" + axis.path + "' is not a number");
            else if (axis.path.rfind("/sweep", 0) == 0) r.error(child(path, "path"), "cannot sweep the sweep section");
        } catch (const json::exception&) {
            r.error(child(path, "path"), "'" + axis.path + "' is not a valid JSON pointer");
        }
        const bool has_values = axes[a].contains("values"), has_lin = axes[a].contains("linspace");
        if (has_values == has_lin) {
            r.error(path, "give exactly one of values or linspace");
        } else if (has_values) {
            const json& v = axes[a].at("values");
            if (!v.is_array() || v.empty()) r.error(child(path, "values"), "expected a non-empty list of numbers");
            else
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (v[i].is_number()) axis.values.push_back(v[i].get<double>());
                    else r.error(child(child(path, "values"), i), "expected a number");
                }
        } else {
            const json& l = axes[a].at("linspace");
            const std::string lp = child(path, "linspace");
            if (r.expect_object(l, lp, {"start", "stop", "count"})) {
                const double start = r.number(l, "start", lp, 0.0, true), stop = r.number(l, "stop", lp, 0.0, true);
                const auto count = r.integer(l, "count", lp, 1, 1, true);
                for (long long i = 0; i < count; ++i)
                    axis.values.push_back(count == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
            }
        }
        s.axes.push_back(std::move(axis));
    }
    c.sweep = s;
}

void read_output(Reader& r, const json& doc, RunConfig& c) {
    if (!doc.contains("output")) return;
    const json& j = doc.at("output");
    if (!r.expect_object(j, "output", {"prefix", "formats"})) return;
    c.output.prefix = r.string(j, "prefix", "output", c.output.prefix);
    if (c.output.prefix.empty() || c.output.prefix.find('/') != std::string::npos)
        r.error("output.prefix", "must be a non-empty file name without '/'");
    if (j.contains("formats")) {
        const json& f = j.at("formats");
        c.output.csv = c.output.json = false;
        if (!f.is_array()) {
            r.error("output.formats", "expected a list containing 'csv' and/or 'json'");
            return;
        }
        for (std::size_t i = 0; i < f.size(); ++i) {
            const std::string name = f[i].is_string() ? f[i].get<std::string>() : "";
            if (name == "csv") c.output.csv = true;
            else if (name == "json") c.output.json = true;
            else r.error(child("output.formats", i), "expected 'csv' or 'json'");
        }
    }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors) : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

RunConfig parse_config(const json& doc) {
    Reader r;
    RunConfig c;
    c.document = doc;
    if (!r.expect_object(doc, "config",
                         {"task", "seed", "space", "system", "initial", "integrator", "checks", "sweep", "output"}))
        throw ConfigError(r.errors);

    const std::string task = r.string(doc, "task", "", "");
    if (task.empty()) r.error("task", "required string is missing");
    else if (auto t = parse_task(task)) c.task = *t;
    else r.error("task", "unknown task '" + task + "'");
    if (doc.contains("seed")) {
        if (doc.at("seed").is_number_unsigned()) c.seed = doc.at("seed").get<std::uint64_t>();
        else if (doc.at("seed").is_number_integer() && doc.at("seed").get<long long>() >= 0) c.seed = doc.at("seed").get<std::uint64_t>();
        else r.error("seed", "expected a non-negative integer");
    }

    c.space = read_space(r, doc);
    c.system = read_system(r, doc, c.space.n_sites);
    c.initial = read_initial(r, doc, c.space, c.t0);
    read_integrator(r, doc, c);
    read_checks(r, doc, c);
    read_sweep(r, doc, c);
    read_output(r, doc, c);

    if (r.errors.empty()) {
        try {
            const SpaceIndex index(c.space);
            for (const auto& e : c.system.validate(&index)) r.errors.push_back(e);
        } catch (const std::exception& e) {
            r.error("space", e.what());
        }
    } else {
        // The space may itself be malformed; still report parameter-level problems.
        for (const auto& e : c.system.validate(nullptr)) r.errors.push_back(e);
    }
    if (static_cast<std::size_t>(c.space.n_sites) == c.system.site_energies.size()) {
        if (c.system.field_modes.size() != c.space.field_modes.size())
            r.error("system.field_modes", "defines " + std::to_string(c.system.field_modes.size()) +
                                              " modes but space.field_cutoffs declares " + std::to_string(c.space.field_modes.size()));
        if (c.system.phonon_modes.size() != c.space.phonon_modes.size())
            r.error("system.phonon_modes", "defines " + std::to_string(c.system.phonon_modes.size()) +
                                               " modes but space.phonon_cutoffs declares " + std::to_string(c.space.phonon_modes.size()));
    }
    if (!r.errors.empty()) {
        // Deduplicate while keeping first occurrence order.
        std::vector<std::string> unique;
        std::set<std::string> seen;
        for (auto& e : r.errors)
            if (seen.insert(e).second) unique.push_back(std::move(e));
        throw ConfigError(std::move(unique));
    }
    c.propagation.integrator.initial_step = 0.0;
    return c;
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream os;
        os << origin << ":" << line << ":" << col << ": parse error: " << e.what();
        throw ConfigError({os.str()});
    }
    return parse_config(doc);
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({path.string() + ": cannot open config file"});
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path.string());
}

std::vector<RunConfig> expand_sweep(const RunConfig& config) {
    if (!config.sweep) return {config};
    const auto& axes = config.sweep->axes;
    std::vector<RunConfig> out;
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
        json doc = config.document;
        doc.erase("sweep");
        doc["task"] = to_string(config.sweep->task);
        for (std::size_t a = 0; a < axes.size(); ++a) doc[json::json_pointer(axes[a].path)] = axes[a].values[idx[a]];
        out.push_back(parse_config(doc));
        std::size_t a = axes.size();
        while (a > 0) {
            --a;
            if (++idx[a] < axes[a].values.size()) break;
            idx[a] = 0;
            if (a == 0) return out;
        }
        if (axes.empty()) return out;
    }
}

std::uint64_t config_hash(const RunConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : config.document.dump()) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace qedchain
