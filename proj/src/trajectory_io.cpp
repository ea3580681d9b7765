// trajectory_io.cpp

#include "qedchain/trajectory_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

namespace qedchain {

using nlohmann::json;

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json pair(cplx z) { return json::array({z.real(), z.imag()}); }
cplx unpair(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json mode_json(const ModeSample& m) {
    return {{"amplitude", pair(m.amplitude)}, {"occupation", m.occupation}, {"top_population", m.top_population}};
}
ModeSample mode_from(const json& j) {
    return {unpair(j.at("amplitude")), j.at("occupation").get<double>(), j.at("top_population").get<double>()};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw TrajectoryIoError("cannot write trajectory file '" + path.string() + "'");
    out << content;
    if (!out) throw TrajectoryIoError("write failed for '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TrajectoryIoError("cannot read trajectory file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string to_csv(const Trajectory& traj, const TrajectoryLayout& empty_layout) {
    const auto names = traj.empty() ? column_names(empty_layout.n_sites, empty_layout.n_field, empty_layout.n_phonon)
                                    : traj.column_names();
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
    out += '\n';
    for (std::size_t r = 0; r < traj.size(); ++r) {
        const auto row = traj.row(r);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

Trajectory trajectory_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) throw TrajectoryIoError("CSV trajectory has no header row");
    std::vector<std::string> names;
    {
        std::istringstream hs(header);
        for (std::string c; std::getline(hs, c, ',');) names.push_back(c);
    }
    std::size_t ns = 0, nf = 0, np = 0;
    static const std::regex site(R"(s\d+_z)"), field(R"(a\d+_re)"), phonon(R"(b\d+_re)");
    for (const auto& n : names) {
        if (std::regex_match(n, site)) ++ns;
        if (std::regex_match(n, field)) ++nf;
        if (std::regex_match(n, phonon)) ++np;
    }
    if (names != column_names(ns, nf, np)) throw TrajectoryIoError("CSV header does not follow the trajectory column layout");

    Trajectory traj;
    std::size_t line_no = 1;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> v;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) {
            char* end = nullptr;
            v.push_back(std::strtod(cell.c_str(), &end));
            if (end == cell.c_str() || *end != '\0')
                throw TrajectoryIoError("CSV line " + std::to_string(line_no) + ": bad number '" + cell + "'");
        }
        if (v.size() != names.size())
            throw TrajectoryIoError("CSV line " + std::to_string(line_no) + ": expected " + std::to_string(names.size()) + " values");
        Sample s;
        std::size_t p = 0;
        s.time = v[p++];
        for (std::size_t l = 0; l < ns; ++l, p += 5) s.sites.push_back({{v[p], v[p + 1]}, {v[p + 2], v[p + 3]}, v[p + 4]});
        for (std::size_t k = 0; k < nf; ++k, p += 4) s.field.push_back({{v[p], v[p + 1]}, v[p + 2], v[p + 3]});
        for (std::size_t q = 0; q < np; ++q, p += 4) s.phonons.push_back({{v[p], v[p + 1]}, v[p + 2], v[p + 3]});
        s.norm = v[p++];
        s.energy = v[p++];
        traj.samples.push_back(std::move(s));
    }
    return traj;
}

json to_json(const Trajectory& traj) {
    json samples = json::array();
    for (const auto& s : traj.samples) {
        json sites = json::array(), field = json::array(), phonons = json::array();
        for (const auto& site : s.sites) sites.push_back({{"minus", pair(site.minus)}, {"plus", pair(site.plus)}, {"z", site.z}});
        for (const auto& m : s.field) field.push_back(mode_json(m));
        for (const auto& m : s.phonons) phonons.push_back(mode_json(m));
        samples.push_back({{"time", s.time}, {"sites", sites}, {"field", field}, {"phonons", phonons}, {"norm", s.norm}, {"energy", s.energy}});
    }
    const auto& m = traj.meta;
    return {{"columns", traj.column_names()},
            {"meta",
             {{"source", m.source},
              {"max_norm_drift", m.max_norm_drift},
              {"max_top_population", m.max_top_population},
              {"truncation_flagged", m.truncation_flagged},
              {"accepted_steps", m.accepted_steps},
              {"rejected_steps", m.rejected_steps},
              {"warnings", m.warnings}}},
            {"samples", samples}};
}

Trajectory trajectory_from_json(const json& j) {
    Trajectory traj;
    try {
        const json& m = j.at("meta");
        traj.meta.source = m.at("source").get<std::string>();
        traj.meta.max_norm_drift = m.at("max_norm_drift").get<double>();
        traj.meta.max_top_population = m.at("max_top_population").get<double>();
        traj.meta.truncation_flagged = m.at("truncation_flagged").get<bool>();
        traj.meta.accepted_steps = m.at("accepted_steps").get<std::size_t>();
        traj.meta.rejected_steps = m.at("rejected_steps").get<std::size_t>();
        traj.meta.warnings = m.at("warnings").get<std::vector<std::string>>();
        for (const auto& sj : j.at("samples")) {
            Sample s;
            s.time = sj.at("time").get<double>();
            for (const auto& site : sj.at("sites")) s.sites.push_back({unpair(site.at("minus")), unpair(site.at("plus")), site.at("z").get<double>()});
            for (const auto& f : sj.at("field")) s.field.push_back(mode_from(f));
            for (const auto& p : sj.at("phonons")) s.phonons.push_back(mode_from(p));
            s.norm = sj.at("norm").get<double>();
            s.energy = sj.at("energy").get<double>();
            traj.samples.push_back(std::move(s));
        }
    } catch (const json::exception& e) {
        throw TrajectoryIoError(std::string("malformed JSON trajectory: ") + e.what());
    }
    return traj;
}

void export_trajectory(const Trajectory& traj, TrajectoryFormat format, const std::filesystem::path& path,
                       const TrajectoryLayout& empty_layout) {
    if (format == TrajectoryFormat::csv) {
        write_file(path, to_csv(traj, empty_layout));
    } else {
        json j = to_json(traj);
        if (traj.empty()) j["columns"] = column_names(empty_layout.n_sites, empty_layout.n_field, empty_layout.n_phonon);
        write_file(path, j.dump(1) + "\n");
    }
}

Trajectory import_trajectory(TrajectoryFormat format, const std::filesystem::path& path) {
    const std::string text = read_file(path);
    if (format == TrajectoryFormat::csv) return trajectory_from_csv(text);
    try {
        return trajectory_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
        throw TrajectoryIoError("'" + path.string() + "': " + e.what());
    }
}

}  // namespace qedchain
