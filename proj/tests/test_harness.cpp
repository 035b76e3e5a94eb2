#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>

#include "hslab/config.hpp"
#include "hslab/errors.hpp"
#include "hslab/harness.hpp"
#include "hslab/io.hpp"

using namespace hslab;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    REQUIRE(false);
    return ErrorCode::Io;
}

fs::path temp_dir(const char* tag) {
    const fs::path dir = fs::temp_directory_path() / (std::string("hslab_hn_") + tag);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// mu2/U_inf/a chosen so the sheet's curvature coefficient agrees with the
/// phase-field surface tension at c2sq = 1 and the two clocks coincide
harness::RunConfig matched_config() {
    harness::RunConfig cfg;
    cfg.physical.mu2 = 3.0;
    cfg.physical.U_inf = 2.0;
    cfg.physical.a = 8.0;
    cfg.physical.alpha_kin = 0.05;
    return cfg;
}

std::map<std::string, std::pair<std::uintmax_t, std::string>>
parse_manifest(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::map<std::string, std::pair<std::uintmax_t, std::string>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("file ", 0) != 0)
            continue;
        std::istringstream ss(line);
        std::string word, name, hash;
        std::uintmax_t bytes = 0;
        ss >> word >> name >> bytes >> hash;
        REQUIRE(ss);
        out[name] = {bytes, hash};
    }
    return out;
}

} // namespace

TEST_CASE("a phase-field run writes a complete, verifiable manifest") {
    const fs::path dir = temp_dir("pf");
    harness::RunConfig cfg;
    cfg.method = harness::Method::PhaseField;
    cfg.numerics.nx = 48;
    cfg.numerics.ny = 48;
    cfg.numerics.eps = 0.06;
    cfg.numerics.t_end = 0.002;
    cfg.output.directory = dir.string();

    const harness::RunArtifacts artifacts = harness::run(cfg);
    CHECK(artifacts.directory == dir);
    for (const char* expected : {"config.txt", "interface_final.csv", "manifest.txt",
                                 "phi_final.f64", "run.txt", "u_final.f64"})
        CHECK(std::find(artifacts.files.begin(), artifacts.files.end(), expected) !=
              artifacts.files.end());

    // every listed file exists; every hash and size re-verifies
    const auto manifest = parse_manifest(dir / "manifest.txt");
    for (const std::string& name : artifacts.files) {
        CHECK(fs::exists(dir / name));
        if (name == "manifest.txt")
            continue;
        REQUIRE(manifest.count(name) == 1);
        const auto& [bytes, hash] = manifest.at(name);
        CHECK(fs::file_size(dir / name) == bytes);
        CHECK(io::hash_hex(io::fnv1a_file(dir / name)) == hash);
    }
    // and nothing in the directory escaped the manifest
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name != "manifest.txt")
            CHECK(manifest.count(name) == 1);
    }

    const auto report = io::read_report(dir / "run.txt");
    CHECK(report.at("method") == "phase-field");
    CHECK(std::stod(report.at("final_time")) == doctest::Approx(0.002));
}

TEST_CASE("rerunning an identical config reproduces every byte") {
    const fs::path dir = temp_dir("det");
    harness::RunConfig cfg;
    cfg.method = harness::Method::PhaseField;
    cfg.numerics.nx = 48;
    cfg.numerics.ny = 48;
    cfg.numerics.eps = 0.06;
    cfg.numerics.t_end = 0.001;
    cfg.output.directory = dir.string();

    const harness::RunArtifacts first = harness::run(cfg);
    std::map<std::string, std::string> bytes;
    for (const std::string& name : first.files)
        bytes[name] = slurp(dir / name);

    fs::remove_all(dir);
    const harness::RunArtifacts second = harness::run(cfg);
    CHECK(second.files == first.files);
    for (const std::string& name : second.files)
        CHECK(slurp(dir / name) == bytes.at(name));
}

TEST_CASE("a flat undriven sheet run never moves its markers") {
    const fs::path dir = temp_dir("flat");
    harness::RunConfig cfg = matched_config();
    cfg.method = harness::Method::VortexSheet;
    cfg.numerics.initial = "flat";
    cfg.numerics.markers = 32;
    cfg.numerics.drive = 0.0;
    cfg.numerics.dt = 1e-4;
    cfg.numerics.t_end = 5e-3; // 50 steps: the clocks coincide for these params
    cfg.output.directory = dir.string();

    harness::run(cfg);
    const io::CsvTable t = io::read_csv(dir / "trajectory.csv");
    CHECK(t.columns == std::vector<std::string>{"step", "t", "marker_index", "x", "y",
                                                "gamma"});
    const std::size_t cs = t.col("step"), cm = t.col("marker_index");
    const std::size_t cx = t.col("x"), cy = t.col("y");
    double smax = 0.0;
    for (const auto& row : t.rows)
        smax = std::max(smax, row[cs]);
    CHECK(smax == 50.0);

    std::map<double, std::pair<double, double>> start;
    for (const auto& row : t.rows)
        if (row[cs] == 0.0)
            start[row[cm]] = {row[cx], row[cy]};
    CHECK(start.size() == 32);
    std::size_t compared = 0;
    for (const auto& row : t.rows)
        if (row[cs] == smax) {
            const auto& [x0, y0] = start.at(row[cm]);
            CHECK(std::abs(row[cx] - x0) <= 1e-12);
            CHECK(std::abs(row[cy] - y0) <= 1e-12);
            ++compared;
        }
    CHECK(compared == 32);

    // determinism of the sheet path too
    const std::string traj = slurp(dir / "trajectory.csv");
    fs::remove_all(dir);
    harness::run(cfg);
    CHECK(slurp(dir / "trajectory.csv") == traj);
}

TEST_CASE("initial interfaces follow the configured geometry") {
    harness::RunConfig cfg = matched_config();
    cfg.numerics.markers = 64;

    cfg.numerics.initial = "bump";
    const InterfaceCurve bump = harness::initial_interface(cfg);
    CHECK(bump.topology() == Topology::PeriodicX);
    CHECK(bump.period() == cfg.numerics.Lx);
    CHECK(bump.size() == 64);
    CHECK(bump.markers()[0].x == 0.0);
    CHECK(bump.markers()[0].y == doctest::Approx(cfg.numerics.y0).epsilon(1e-12));

    cfg.numerics.initial = "disk";
    const InterfaceCurve disk = harness::initial_interface(cfg);
    CHECK(disk.topology() == Topology::Closed);
    for (const Vec2& m : disk.markers()) {
        const double r = std::hypot(m.x - 0.5 * cfg.numerics.Lx,
                                    m.y - 0.5 * cfg.numerics.Ly);
        CHECK(r == doctest::Approx(cfg.numerics.radius).epsilon(1e-12));
    }

    cfg.numerics.initial = "noise";
    cfg.numerics.seed = 1;
    const InterfaceCurve n1 = harness::initial_interface(cfg);
    const InterfaceCurve n1b = harness::initial_interface(cfg);
    cfg.numerics.seed = 2;
    const InterfaceCurve n2 = harness::initial_interface(cfg);
    CHECK(n1.markers()[5].y == n1b.markers()[5].y); // same seed, same curve
    CHECK(n1.markers()[5].y != n2.markers()[5].y);  // different seed, different curve
    CHECK(hausdorff_distance(n1, resample_uniform(n1, 512)) < 0.01);
}

TEST_CASE("matched-initial guard trips at one grid cell") {
    const double cell = 1.0 / 96.0;
    auto flat = [](double y0) {
        return make_periodic_graph(1.0, 64, [y0](double) { return y0; });
    };
    CHECK_NOTHROW(harness::require_matched_initial(flat(0.5), flat(0.5 + 0.5 * cell), cell));
    CHECK(code_of([&] {
              harness::require_matched_initial(flat(0.5), flat(0.5 + 3.0 * cell), cell);
          }) == ErrorCode::MismatchedInitialCondition);
}

TEST_CASE("verification checks pass and land in the emitted tables") {
    harness::RunConfig cfg;
    const harness::VerifyOutcome outcome = harness::verify_asymptotics(cfg);
    REQUIRE(outcome.checks.size() >= 7);
    for (const auto& c : outcome.checks) {
        INFO(c.name, " value ", c.value, " bound ", c.bound);
        CHECK(c.pass);
    }
    CHECK(outcome.all_pass());

    const fs::path dir = temp_dir("verify");
    cfg.method = harness::Method::VerifyAsymptotics;
    cfg.output.directory = dir.string();
    harness::run(cfg);

    const io::CsvTable sigma = io::read_csv(dir / "sigma_table.csv");
    bool found = false;
    for (const auto& row : sigma.rows)
        if (row[sigma.col("n")] == 2048.0) {
            CHECK(std::abs(row[sigma.col("sigma")] - 2.0 / 3.0) <= 1e-8);
            found = true;
        }
    CHECK(found);

    const auto verify = io::read_report(dir / "verify.txt");
    CHECK(verify.at("all_pass") == "true");
    CHECK(verify.at("surface-tension-constant.pass") == "true");

    const io::CsvTable disp = io::read_csv(dir / "dispersion.csv");
    CHECK(disp.columns == std::vector<std::string>{"k", "rate"});
    CHECK(disp.rows.size() >= 3);
}

TEST_CASE("cross-method comparison produces small, recorded distances") {
    const fs::path dir = temp_dir("cmp");
    harness::RunConfig cfg = matched_config();
    cfg.method = harness::Method::Compare;
    cfg.numerics.nx = 96;
    cfg.numerics.ny = 96;
    cfg.numerics.markers = 64;
    cfg.numerics.t_end = 0.002;
    cfg.numerics.eps_schedule = {0.08, 0.05, 0.03};
    cfg.output.directory = dir.string();

    const harness::ComparisonReport rep = harness::compare_methods(cfg);
    REQUIRE(rep.eps_values.size() == 3);
    REQUIRE(rep.hausdorff_distances.size() == 3);
    CHECK(rep.runtimes_seconds.size() == 3);
    for (double d : rep.hausdorff_distances) {
        CHECK(d >= 0.0);
        CHECK(d < 0.05); // both methods track the same relaxing bump
    }

    // the CSV mirrors the report exactly
    const io::CsvTable table = io::read_csv(dir / "comparison.csv");
    REQUIRE(table.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(table.rows[i][table.col("eps")] == rep.eps_values[i]);
        CHECK(table.rows[i][table.col("hausdorff")] == rep.hausdorff_distances[i]);
    }

    const auto report = io::read_report(dir / "run.txt");
    CHECK(report.at("monotone") == (rep.monotone_flag ? "true" : "false"));
    CHECK(fs::exists(dir / "sheet_interface.csv"));
    CHECK(fs::exists(dir / "pf_interface_000001.csv"));
    CHECK(fs::exists(dir / "manifest.txt"));
}

TEST_CASE("invalid configurations are rejected before any work") {
    harness::RunConfig cfg;
    cfg.numerics.eps = -1.0;
    cfg.output.directory = (temp_dir("never")).string();
    CHECK(code_of([&] { harness::run(cfg); }) == ErrorCode::ConfigInvalid);
    CHECK(!fs::exists(cfg.output.directory));

    harness::RunConfig cmp = matched_config();
    cmp.numerics.eps_schedule = {0.08, 0.04}; // too short for a trend
    CHECK(code_of([&] { harness::compare_methods(cmp); }) == ErrorCode::ConfigInvalid);
}
