#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "chaos_target/cli.hpp"
#include "chaos_target/config.hpp"
#include "chaos_target/harness.hpp"
#include "chaos_target/report.hpp"
#include "chaos_target/rng.hpp"

using namespace chaos_target;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() /
                ("chaos_target_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }
    fs::path write(const std::string& name, const std::string& text) const {
        const fs::path p = path_ / name;
        std::ofstream(p, std::ios::binary) << text;
        return p;
    }

private:
    fs::path path_;
};

const char* kSmall = R"(map = henon
x0 = 0, 0
target = fixed-point
horizon = 6, 8
mu = 0.01
epsilon = 0.02
population_size = 6
max_generations = 20
n_runs = 3
seed = 11
)";

}  // namespace

TEST_CASE("fixed-point command") {
    auto r = run({"fixed-point"});
    CHECK(r.code == kExitOk);
    const auto out = lines(r.out);
    REQUIRE(out.size() == 2);
    CHECK(out[0] == "0.6313544770895047 0.1894063431268514");
    CHECK(out[1].rfind("residual ", 0) == 0);
    CHECK(parse_real(out[1].substr(9)) < 1e-12);

    r = run({"fixed-point", "--p", "0.5", "--q", "0"});
    CHECK(r.code == kExitOk);
    CHECK(lines(r.out)[0] == "0.7320508075688772 0");

    // (1-q)^2 + 4p = 0.49 - 0.8 < 0
    r = run({"fixed-point", "--p", "-0.2", "--q", "0.3"});
    CHECK(r.code == kExitUsage);
    CHECK(run({"fixed-point", "--p", "0"}).code == kExitUsage);
}

TEST_CASE("uncontrolled command") {
    auto r = run({"uncontrolled", "--eps", "0.02", "--eps", "10"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "epsilon,needed_iterations\n0.02,1188\n10,1\n");

    r = run({"uncontrolled", "--max-iter", "100", "--eps", "0.00001"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "epsilon,needed_iterations\n1e-05,NA\n");

    r = run({"uncontrolled", "--map", "ushio", "--x0", "0.6,-0.3", "--target", "0,0", "--eps",
             "10"});
    CHECK(r.code == kExitOk);
    CHECK(lines(r.out).at(1) == "10,1");

    // Escaping trajectory is a numeric failure.
    r = run({"uncontrolled", "--x0", "10,10", "--eps", "0.001"});
    CHECK(r.code == kExitNumeric);

    CHECK(run({"uncontrolled"}).code == kExitUsage);
    CHECK(run({"uncontrolled", "--eps", "0"}).code == kExitUsage);
    CHECK(run({"uncontrolled", "--map", "ushio", "--eps", "0.1"}).code == kExitUsage);
    CHECK(run({"uncontrolled", "--map", "ushio", "--p", "1.4", "--target", "0,0", "--eps", "0.1"})
              .code == kExitUsage);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"batch"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("batch command") {
    TempDir dir;
    const auto cfg = dir.write("small.cfg", kSmall);

    SUBCASE("CSV rows and determinism") {
        const auto a = dir.path() / "a.csv";
        const auto b = dir.path() / "b.csv";
        CHECK(run({"batch", "--config", cfg.string(), "--out", a.string()}).code == kExitOk);
        CHECK(run({"batch", "--config", cfg.string(), "--out", b.string(), "--jobs", "3"}).code ==
              kExitOk);
        const std::string text = slurp(a);
        CHECK(text == slurp(b));
        const auto rows = lines(text);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0] == "n_steps,mu,epsilon,best,worst,mean,std,sr_percent,aven,n_runs,seed");
        CHECK(rows[1].rfind("6,0.01,0.02,", 0) == 0);
        CHECK(rows[2].rfind("8,0.01,0.02,", 0) == 0);
        CHECK(rows[1].substr(rows[1].rfind(',') + 1) == std::to_string(cell_seed(11, 6, 0.01, 0.02)));
        CHECK(text.find('\r') == std::string::npos);
    }

    SUBCASE("a single run has zero spread") {
        std::string text = kSmall;
        text.replace(text.find("n_runs = 3"), 10, "n_runs = 1");
        const auto one = dir.write("one.cfg", text);
        const auto r = run({"batch", "--config", one.string()});
        REQUIRE(r.code == kExitOk);
        const auto out = lines(r.out);
        REQUIRE(out.size() == 3);
        for (std::size_t i = 1; i < out.size(); ++i) {
            const std::string& line = out[i];
            std::vector<std::string> cols;
            std::istringstream ss(line);
            for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
            REQUIRE(cols.size() == 11);
            CHECK(cols[6] == "0");
            CHECK(cols[3] == cols[4]);
        }
    }

    SUBCASE("JSON output re-parses to the in-memory results") {
        const auto r = run({"batch", "--config", cfg.string(), "--format", "json"});
        REQUIRE(r.code == kExitOk);
        const auto rows = sweep_from_json(r.out);
        const ExperimentConfig ec = load_config(cfg);
        const auto direct = sweep(ec.base_problem(), ec.tlbo_config(), ec.horizons, ec.mu_values,
                                  ec.eps_values, ec.n_runs, ec.seed);
        REQUIRE(rows.size() == direct.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i].stats == direct[i].stats);
            CHECK(rows[i].metrics == direct[i].metrics);
            CHECK(rows[i].seed == direct[i].seed);
        }
    }

    SUBCASE("per-run dump") {
        const auto runs = dir.path() / "runs.csv";
        const auto r = run({"batch", "--config", cfg.string(), "--runs-out", runs.string()});
        REQUIRE(r.code == kExitOk);
        const auto rows = lines(slurp(runs));
        REQUIRE(rows.size() == 1 + 2 * 3);
        CHECK(rows[0] == "n_steps,mu,epsilon,run_index,seed,best_fitness,success_generation");
        CHECK(rows[1].rfind("6,0.01,0.02,0," + std::to_string(run_seed(cell_seed(11, 6, 0.01, 0.02), 0)), 0) == 0);
    }

    SUBCASE("seed precedence: flag over environment over file") {
        const auto file_seed = run({"batch", "--config", cfg.string()}).out;
        ::setenv("CHAOS_TARGET_SEED", "12345", 1);
        const auto env_seed = run({"batch", "--config", cfg.string()}).out;
        const auto flag_seed = run({"batch", "--config", cfg.string(), "--seed", "11"}).out;
        ::unsetenv("CHAOS_TARGET_SEED");
        CHECK(env_seed != file_seed);
        CHECK(env_seed.find(std::to_string(cell_seed(12345, 6, 0.01, 0.02))) != std::string::npos);
        CHECK(flag_seed == file_seed);
    }

    SUBCASE("malformed config") {
        const auto bad = dir.write("bad.cfg", std::string(kSmall) + "colour = red\n");
        const auto r = run({"batch", "--config", bad.string()});
        CHECK(r.code == kExitUsage);
        CHECK(r.err.find("line 11") != std::string::npos);
        CHECK(r.err.find("colour") != std::string::npos);
        CHECK(run({"batch", "--config", (dir.path() / "missing.cfg").string()}).code == kExitUsage);
    }
}

TEST_CASE("sweep command overrides the grid") {
    TempDir dir;
    const auto cfg = dir.write("small.cfg", kSmall);
    const auto r = run({"sweep", "--config", cfg.string(), "--n", "7..8", "--mu", "0.02,0.01",
                        "--eps", "0.02"});
    REQUIRE(r.code == kExitOk);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[1].rfind("7,0.01,", 0) == 0);
    CHECK(rows[2].rfind("7,0.02,", 0) == 0);
    CHECK(rows[4].rfind("8,0.02,", 0) == 0);
    CHECK(run({"sweep", "--config", cfg.string(), "--n", "x"}).code == kExitUsage);
}

TEST_CASE("curves command") {
    TempDir dir;
    const auto cfg = dir.write("fig.cfg", R"(map = henon
x0 = 0, 0
target = fixed-point
horizon = 7
mu = 0.01, 0.02, 0.03
epsilon = 0.02
population_size = 8
max_generations = 50
n_runs = 2
seed = 3
)");
    const auto out_dir = dir.path() / "curves";
    const auto r = run({"curves", "--config", cfg.string(), "--out", out_dir.string()});
    REQUIRE(r.code == kExitOk);
    for (const char* mu : {"0.01", "0.02", "0.03"}) {
        const auto file = out_dir / ("curve_N7_mu" + std::string(mu) + ".csv");
        REQUIRE(fs::exists(file));
        const auto rows = lines(slurp(file));
        REQUIRE(rows.size() == 51);
        CHECK(rows[0] == "generation,mean_best_fitness");
        double prev = 1e300;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto comma = rows[i].find(',');
            CHECK(rows[i].substr(0, comma) == std::to_string(i));
            const double v = parse_real(rows[i].substr(comma + 1));
            CHECK(v <= prev);
            prev = v;
        }
    }
    CHECK(run({"curves", "--config", cfg.string()}).code == kExitUsage);
}

TEST_CASE("a one-run curve is that run's history") {
    TempDir dir;
    const auto cfg = dir.write("one.cfg", R"(map = ushio
x0 = 0.6, -0.3
target = 0, 0
horizon = 6
mu = 0.05
epsilon = 0.001
population_size = 6
max_generations = 30
n_runs = 1
seed = 8
)");
    const auto r = run({"curves", "--config", cfg.string(), "--out", dir.path().string()});
    REQUIRE(r.code == kExitOk);
    const auto rows = lines(slurp(dir.path() / "curve_N6_mu0.05.csv"));

    TargetingProblem p;
    p.map = ChaoticMapSpec::ushio();
    p.x0 = {0.6, -0.3};
    p.target = {0, 0};
    p.horizon = 6;
    p.mu = 0.05;
    p.epsilon = 0.001;
    const RunRecord rec = optimize(p, {6, 30, run_seed(cell_seed(8, 6, 0.05, 0.001), 0)});
    REQUIRE(rows.size() == 31);
    for (std::size_t g = 0; g < 30; ++g) {
        CHECK(rows[g + 1] == std::to_string(g + 1) + "," + format_real(rec.best_fitness_per_generation[g]));
    }
}

TEST_CASE("installed binary exit codes") {
    const std::string bin = CHAOS_TARGET_CLI_PATH;
    const auto code = [](const std::string& cmd) {
        const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(status);
    };
    CHECK(code(bin + " fixed-point") == 0);
    CHECK(code(bin + " fixed-point --p -0.2") == 2);
    CHECK(code(bin + " uncontrolled --x0 10,10 --eps 0.001") == 3);
    CHECK(code(bin) == 2);
}
