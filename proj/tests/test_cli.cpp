#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "xxz/sweep.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kBin = XXZFID_CLI_PATH;

int run(const std::string& args) {
    const int rc = std::system((kBin + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("xxzfid_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("sweep subcommand writes the expected grid") {
    TempDir tmp;
    const auto out = tmp.path / "run.csv";
    const int rc = run("sweep --L 8 --bc periodic --lambda-min -0.3 --lambda-max 0.3 --steps 3 "
                       "--dlambda 1e-3 --out " +
                       out.string());
    CHECK(rc == 0);
    std::ifstream is(out);
    const auto records = xxz::read_csv(is);
    CHECK(records.size() == 3);
    for (const auto& r : records) CHECK(r.status == "ok");
}

TEST_CASE("sweep determinism: identical invocations, identical bytes") {
    TempDir tmp;
    const auto a = tmp.path / "a.csv";
    const auto b = tmp.path / "b.csv";
    const std::string flags =
        "sweep --L 6 --lambda-min 0 --lambda-max 0.4 --steps 3 --seed 42 --out ";
    CHECK(run(flags + a.string()) == 0);
    CHECK(run(flags + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("usage errors exit with 2") {
    TempDir tmp;
    const auto out = (tmp.path / "x.csv").string();
    CHECK(run("sweep --L 7 --lambda-min 0 --lambda-max 0.5 --steps 2 --out " + out) == 2);
    CHECK(run("sweep --L 8 --lambda-min 0 --lambda-max 0.5 --steps 2 --not-a-flag 1 --out " +
              out) == 2);
    CHECK(run("sweep --L 8 --lambda-min -1.5 --lambda-max 0.5 --steps 2 --out " + out) == 2);
    CHECK(run("peak --in /nonexistent.csv") == 2);
}

TEST_CASE("analytic subcommand") {
    TempDir tmp;
    const auto out = tmp.path / "analytic.csv";
    CHECK(run("analytic --lambda 0 --out " + out.string()) == 0);
    const auto text = slurp(out);
    CHECK(text.find("lambda,K,u,theta,chi_analytic,status") == 0);
    CHECK(text.find("0,1,1,") != std::string::npos);  // K=1, u=1 at the free point

    CHECK(run("analytic --lambda 1 --out " + out.string()) == 0);
    CHECK(slurp(out).find("divergent") != std::string::npos);

    CHECK(run("analytic --lambda 0.5 --kprime-of 0.9 --modes 100 --out " + out.string()) == 0);
    CHECK(slurp(out).find("fidelity_finite") != std::string::npos);
}

TEST_CASE("boson-check subcommand") {
    CHECK(run("boson-check --nmax 200 --tol 1e-9") == 0);
    CHECK(run("boson-check --nmax 2 --tol 1e-9 --theta-min 1.5 --theta-max 1.5 --steps 1") == 1);
    CHECK(run("boson-check --theta-min 0 --theta-max 0 --steps 1 --tol 1e-15") == 0);
}

TEST_CASE("scaling subcommand on synthetic input") {
    TempDir tmp;
    const auto in = tmp.path / "chi.csv";
    {
        std::vector<xxz::SweepRecord> records;
        for (int L : {8, 10, 12, 14}) {
            xxz::SweepRecord r;
            r.lambda = 0.0;
            r.L = L;
            r.chi_logF = 0.1 + 0.5 / L;
            records.push_back(r);
        }
        std::ofstream os(in);
        xxz::write_csv(os, records);
    }
    const auto out = tmp.path / "fit.csv";
    CHECK(run("scaling --in " + in.string() + " --out " + out.string()) == 0);
    const auto text = slurp(out);
    CHECK(text.find("lambda,chi_inf,c1,c2,residual,L_used") == 0);
    CHECK(text.find("0.1") != std::string::npos);

    // single size: not enough for a fit
    const auto thin = tmp.path / "thin.csv";
    {
        std::vector<xxz::SweepRecord> records(1);
        records[0].L = 8;
        records[0].chi_logF = 0.1;
        std::ofstream os(thin);
        xxz::write_csv(os, records);
    }
    CHECK(run("scaling --in " + thin.string()) == 2);
}

TEST_CASE("peak subcommand") {
    TempDir tmp;
    const auto in = tmp.path / "peaky.csv";
    {
        std::vector<xxz::SweepRecord> records;
        for (int i = 0; i <= 8; ++i) {
            xxz::SweepRecord r;
            r.lambda = -0.4 + 0.1 * i;
            r.L = 12;
            r.chi_logF = 1.0 - (r.lambda - 0.1) * (r.lambda - 0.1);
            records.push_back(r);
        }
        std::ofstream os(in);
        xxz::write_csv(os, records);
    }
    CHECK(run("peak --in " + in.string()) == 0);
    CHECK(run("peak --in " + in.string() + " --L 12") == 0);
}
