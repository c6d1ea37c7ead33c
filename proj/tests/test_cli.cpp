#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <sys/wait.h>

using nlohmann::json;
using Catch::Approx;

static const double PI = std::acos(-1.0);

struct CliResult {
    int exit_code;
    std::string out;
};

static CliResult run_cli(const std::string& args) {
    const std::string cmd =
        std::string(SPECTRAL_BOUNDS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

TEST_CASE("bound json: kappa = 0 coincidence with the explicit bound") {
    auto r = run_cli("bound qk --m 2 --kappa 0 --diameter 1 --output json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["command"] == "bound");
    CHECK(j["inputs"]["class"] == "qk");
    CHECK(j["inputs"]["m"] == 2);
    CHECK(double(j["results"]["lambda"]) == Approx(PI * PI).epsilon(1e-8));
    CHECK(double(j["results"]["explicit_bound"]) ==
          Approx(PI * PI).epsilon(1e-12));
    CHECK(j["results"]["method"] == "consensus");
    CHECK(j["results"]["singular_limit"] == false);
    REQUIRE(j["checks"].size() == 1);
    CHECK(j["checks"][0]["pass"] == true);
    // round trip
    CHECK(json::parse(j.dump()) == j);
}

TEST_CASE("bound at the singular limit") {
    auto r = run_cli("bound riemannian --n 3 --kappa 1 --diameter 3.14159265 "
                     "--singular-limit --output json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(double(j["results"]["lambda"]) == Approx(3.0).epsilon(1e-6));
    CHECK(j["results"]["singular_limit"] == true);
}

TEST_CASE("dirichlet bound equals the reflected Neumann bound") {
    auto rd = run_cli("bound qk --m 2 --kappa 1 --inradius 0.4 --lambda 0 "
                      "--dirichlet --output json");
    auto rn = run_cli("bound qk --m 2 --kappa 1 --diameter 0.8 --output json");
    REQUIRE(rd.exit_code == 0);
    REQUIRE(rn.exit_code == 0);
    const double ld = json::parse(rd.out)["results"]["lambda"];
    const double ln = json::parse(rn.out)["results"]["lambda"];
    CHECK(ld == Approx(ln).epsilon(1e-6));
}

TEST_CASE("bound alternate methods agree") {
    auto rs = run_cli(
        "bound qk --m 2 --kappa 1 --diameter 1 --method shooting --output json");
    auto rf = run_cli(
        "bound qk --m 2 --kappa 1 --diameter 1 --method fd --output json");
    REQUIRE(rs.exit_code == 0);
    REQUIRE(rf.exit_code == 0);
    const json js = json::parse(rs.out), jf = json::parse(rf.out);
    CHECK(js["results"]["method"] == "shooting");
    CHECK(jf["results"]["method"] == "weighted_fd");
    CHECK(double(js["results"]["lambda"]) ==
          Approx(double(jf["results"]["lambda"])).epsilon(1e-6));
}

TEST_CASE("byte-identical output for identical configuration") {
    const std::string cmd =
        "bound kahler --m 2 --kappa1 0.5 --kappa2 0.25 --diameter 1.5 "
        "--seed 7 --output json";
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("bound qk --m 2 --kappa 0").exit_code == 2); // no extent
    CHECK(run_cli("bound qk --m 1 --kappa 0 --diameter 1").exit_code == 2);
    CHECK(run_cli("bound qk --m 2 --kappa 0 --diameter 1 --lambda 0.5")
              .exit_code == 2); // lambda without dirichlet
    CHECK(run_cli("bound qk --m 2 --kappa 1 --inradius 0.4 --dirichlet")
              .exit_code == 2); // dirichlet without lambda
    CHECK(run_cli("bound sphere --n 2 --kappa 0 --diameter 1").exit_code == 2);
    CHECK(run_cli("bound qk --m 2 --kappa 1 --diameter 4").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("numeric failures exit with code 3") {
    // horizon below 6/lambda triggers the under-resolved-transient error
    CHECK(run_cli("heat qk --m 2 --kappa 0 --diameter 1 --horizon 0.01")
              .exit_code == 3);
}

TEST_CASE("sweep over D at kappa = 0 matches pi^2/D^2 row-wise") {
    auto r = run_cli("sweep riemannian --n 3 --kappa 0 --param D --from 0.5 "
                     "--to 3 --points 6 --output json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["results"]["rows"].size() == 6);
    for (const auto& row : j["results"]["rows"]) {
        const double D = row["param"];
        CHECK(double(row["lambda"]) ==
              Approx(PI * PI / (D * D)).epsilon(1e-8));
    }
    CHECK(json::parse(j.dump()) == j);
}

TEST_CASE("sweep over kappa is nondecreasing") {
    auto r = run_cli("sweep qk --m 2 --kappa 0 --diameter 1 --param kappa "
                     "--from 0.1 --to 1 --points 5 --output json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    double prev = 0.0;
    for (const auto& row : j["results"]["rows"]) {
        CHECK(double(row["lambda"]) >= prev);
        prev = row["lambda"];
    }
}

TEST_CASE("sweep toward the singular limit flags the last row") {
    std::ostringstream cmd;
    cmd << "sweep qk --m 2 --kappa 1 --param D --from 0.8 --to "
        << std::setprecision(16) << (PI / 2.0) << " --points 4 --output csv";
    auto r = run_cli(cmd.str());
    REQUIRE(r.exit_code == 0);
    std::istringstream is(r.out);
    std::string line, last;
    std::getline(is, line);
    CHECK(line == "param,lambda,bracket,explicit_bound,singular_limit,error");
    int rows = 0;
    while (std::getline(is, line))
        if (!line.empty()) {
            last = line;
            ++rows;
        }
    CHECK(rows == 4);
    CHECK(last.find("true") != std::string::npos);
}

static std::string run_with_env(const std::string& env,
                                const std::string& args) {
    FILE* pipe = popen((env + " " + std::string(SPECTRAL_BOUNDS_CLI_PATH) +
                        " " + args + " 2>/dev/null")
                           .c_str(),
                       "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), n);
    pclose(pipe);
    return out;
}

TEST_CASE("sweep output is independent of the worker count") {
    const std::string cmd = "sweep qk --m 2 --kappa 0.5 --param D --from 0.5 "
                            "--to 2 --points 6 --output csv";
    const std::string o1 = run_with_env("SPECTRAL_BOUNDS_THREADS=1", cmd);
    const std::string o4 = run_with_env("SPECTRAL_BOUNDS_THREADS=4", cmd);
    CHECK(!o1.empty());
    CHECK(o1 == o4);
}

TEST_CASE("dirichlet sweep over the inradius") {
    auto r = run_cli("sweep riemannian --n 3 --kappa 0.5 --dirichlet "
                     "--lambda 0.2 --param D --from 0.3 --to 0.9 --points 4 "
                     "--output json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    double prev = 1e300;
    for (const auto& row : j["results"]["rows"]) {
        const double lam = row["lambda"];
        CHECK(lam < prev); // decreasing in the inradius
        prev = lam;
    }
    // dirichlet sweep without --lambda is a usage error
    CHECK(run_cli("sweep riemannian --n 3 --kappa 0.5 --dirichlet --param D "
                  "--from 0.3 --to 0.9 --points 4")
              .exit_code == 2);
}

TEST_CASE("sweep with mostly failing points exits 3 and records errors") {
    // D beyond the drift domain for kappa = 1 qk (D_max = pi/2 ~ 1.5708)
    auto r = run_cli("sweep qk --m 2 --kappa 1 --param D --from 1.4 --to 1.8 "
                     "--points 5 --output json");
    CHECK(r.exit_code == 3);
    const json j = json::parse(r.out);
    CHECK(int(j["results"]["succeeded"]) < 5);
    bool saw_error = false;
    for (const auto& row : j["results"]["rows"])
        if (!row["error"].get<std::string>().empty()) saw_error = true;
    CHECK(saw_error);
}

TEST_CASE("heat command reports the decay rate and dumps a trajectory") {
    const char* dump = "/tmp/sb_cli_traj.csv";
    std::remove(dump);
    std::ostringstream cmd;
    cmd << "heat qk --m 2 --kappa 0.5 --diameter 1 --horizon 0.6 --output "
           "json --dump "
        << dump;
    auto r = run_cli(cmd.str());
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    const double rate = j["results"]["rate"];
    const double ref = j["results"]["reference_lambda"];
    CHECK(std::abs(rate - ref) / ref <= 0.01);
    CHECK(double(j["results"]["r_squared"]) > 0.99);
    std::ifstream is(dump);
    REQUIRE(is.good());
    std::string header;
    std::getline(is, header);
    CHECK(header == "t,s,omega");
    std::remove(dump);
}

TEST_CASE("validate subset runs and the fault hook trips it") {
    auto ok = run_cli("validate --only model-spaces --output json");
    CHECK(ok.exit_code == 0);
    const json j = json::parse(ok.out);
    CHECK(int(j["results"]["failed"]) == 0);
    for (const auto& c : j["checks"]) CHECK(c["group"] == "model-spaces");

    auto bad = run_cli("validate --only model-spaces --inject-fault "
                       "weight-exponent --output json");
    CHECK(bad.exit_code == 1);
    const json jb = json::parse(bad.out);
    CHECK(int(jb["results"]["failed"]) > 0);
    bool sphere_failed = false;
    for (const auto& c : jb["checks"])
        if (c["name"] == "radial_sphere_3" && c["pass"] == false)
            sphere_failed = true;
    CHECK(sphere_failed);
}

TEST_CASE("validate table output to a file") {
    const char* path = "/tmp/sb_cli_validate.txt";
    std::remove(path);
    auto r = run_cli(std::string("validate --only anchors --out ") + path);
    CHECK(r.exit_code == 0);
    std::ifstream is(path);
    REQUIRE(is.good());
    std::stringstream ss;
    ss << is.rdbuf();
    CHECK(ss.str().find("[PASS]") != std::string::npos);
    CHECK(ss.str().find("zhong_yang") != std::string::npos);
    std::remove(path);
}
