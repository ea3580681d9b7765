#include "qedchain/runner.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qedchain;
using nlohmann::json;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "qedchain_runner_test" / name;
    std::filesystem::remove_all(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json base(const std::string& task) {
    return json::parse(R"({
        "task": ")" + task + R"(",
        "seed": 11,
        "space": {"sites": 2, "field_cutoffs": [5]},
        "system": {"omega": 1.0, "exchange_J": 0.04,
                   "field_modes": [{"omega": 1.0, "amplitude": 0.03, "wavevector": 0.4}]},
        "initial": {"sites": ["beta", "alpha"], "field": ["vacuum"]},
        "integrator": {"t_end": 20.0, "output_dt": 1.0},
        "checks": {"draws": 2, "time": 0.3, "compare_tolerance": 0.5}
    })");
}

}  // namespace

TEST(Runner, VerifyEomReport) {
    RunOptions o;
    o.out_dir = fresh_dir("eom");
    const RunReport r = run(parse_config(base("verify_eom")), o);
    EXPECT_TRUE(r.passed()) << r.body.dump(2);
    int names = 0;
    for (const auto& c : r.body.at("checks"))
        if (c.at("name").get<std::string>().rfind("eom/draw_001/", 0) == 0) ++names;
    EXPECT_EQ(names, 3);
    EXPECT_TRUE(std::filesystem::exists(o.out_dir / "report.json"));
    EXPECT_EQ(r.body.at("seed").get<std::uint64_t>(), 11u);
}

TEST(Runner, VerifyCompactHasControl) {
    RunOptions o;
    o.out_dir = fresh_dir("compact");
    const RunReport r = run(parse_config(base("verify_compact")), o);
    EXPECT_TRUE(r.passed()) << r.body.dump(2);
    bool control = false;
    for (const auto& c : r.body.at("checks"))
        control = control || c.at("name").get<std::string>().find("identity_metric_control") != std::string::npos;
    EXPECT_TRUE(control);
}

TEST(Runner, CompareWritesPairedFiles) {
    RunOptions o;
    o.out_dir = fresh_dir("compare");
    const RunReport r = run(parse_config(base("compare")), o);
    for (const char* f : {"trajectory_exact.csv", "trajectory_exact.json", "trajectory_meanfield.csv", "trajectory_meanfield.json"})
        EXPECT_TRUE(std::filesystem::exists(o.out_dir / f)) << f;
    const auto& sites = r.body.at("results").at("sites");
    ASSERT_EQ(sites.size(), 2u);
    EXPECT_TRUE(sites[0].contains("max_sz_deviation"));
    EXPECT_TRUE(sites[0].contains("worst_time"));
}

TEST(Runner, RepeatedRunsAreByteIdentical) {
    const RunConfig c = parse_config(base("propagate"));
    RunOptions a, b;
    a.out_dir = fresh_dir("repeat_a");
    b.out_dir = fresh_dir("repeat_b");
    const RunReport ra = run(c, a);
    const RunReport rb = run(c, b);
    EXPECT_EQ(ra.without_timing(), rb.without_timing());
    for (const char* f : {"trajectory.csv", "trajectory.json"}) EXPECT_EQ(slurp(a.out_dir / f), slurp(b.out_dir / f)) << f;
}

TEST(Runner, SeedOverrideChangesDraws) {
    const RunConfig c = parse_config(base("verify_eom"));
    RunOptions a;
    a.out_dir = fresh_dir("seed_a");
    RunOptions b = a;
    b.out_dir = fresh_dir("seed_b");
    b.seed = 12;
    EXPECT_NE(run(c, a).body.at("results"), run(c, b).body.at("results"));
}

TEST(Runner, SweepRunsEveryPointWithWorkers) {
    json j = base("sweep");
    j["sweep"] = {{"task", "meanfield"}, {"axes", json::array({{{"path", "/system/exchange_J"}, {"values", {0.0, 0.1, 0.2}}}})}};
    RunOptions o;
    o.out_dir = fresh_dir("sweep");
    o.workers = 3;
    const RunReport r = run(parse_config(j), o);
    EXPECT_TRUE(r.passed()) << r.body.dump(2);
    ASSERT_EQ(r.body.at("points").size(), 3u);
    for (int i = 0; i < 3; ++i) {
        const auto dir = o.out_dir / ("point_00" + std::to_string(i));
        EXPECT_TRUE(std::filesystem::exists(dir / "trajectory.csv"));
        EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
    }
    // The same sweep run serially produces the same aggregate report.
    RunOptions serial = o;
    serial.out_dir = fresh_dir("sweep_serial");
    serial.workers = 1;
    EXPECT_EQ(run(parse_config(j), serial).without_timing(), r.without_timing());
}

TEST(Runner, TaskOverride) {
    RunOptions o;
    o.out_dir = fresh_dir("override");
    o.task = Task::meanfield;
    const RunReport r = run(parse_config(base("propagate")), o);
    EXPECT_EQ(r.body.at("task"), "meanfield");
}
