#include <catch2/catch_amalgamated.hpp>

#include <spectral_bounds/eigensolver.hpp>

#include <cmath>

using namespace spectral_bounds;
using Catch::Approx;

static const double PI = std::acos(-1.0);

TEST_CASE("kappa = 0 anchors at pi^2/D^2") {
    for (double D : {0.5, 2.0}) {
        const double want = PI * PI / (D * D);
        auto p = neumann_problem(GeometryInput::riemannian(3, 0.0, D));
        CHECK(solve_shooting(p).lambda == Approx(want).epsilon(1e-9));
        CHECK(solve_weighted_fd(p).lambda == Approx(want).epsilon(1e-8));
        auto c = solve(p);
        CHECK(c.method == SolveMethod::consensus);
        CHECK(c.lambda == Approx(want).epsilon(1e-8));
    }
    // kahler with zero curvatures, D = 3
    auto pk = neumann_problem(GeometryInput::kahler(2, 0.0, 0.0, 3.0));
    CHECK(solve(pk).lambda == Approx(PI * PI / 9.0).epsilon(1e-8));
}

TEST_CASE("dirichlet problem with zero drift") {
    GeometryInput g = GeometryInput::riemannian(2, 0.0, 1.0);
    g.convexity = 0.0;
    auto p = dirichlet_problem(g);
    // phi = sin(pi t / 2) on [0, 1]
    CHECK(solve_shooting(p).lambda == Approx(PI * PI / 4.0).epsilon(1e-9));
    CHECK(solve_weighted_fd(p).lambda == Approx(PI * PI / 4.0).epsilon(1e-8));
}

TEST_CASE("sphere singular limit recovers n") {
    // oracle: phi = sin t solves phi'' - 2 tan t phi' = -3 phi on [0, pi/2]
    for (double t : {0.2, 0.7, 1.3}) {
        const double resid = -std::sin(t) -
                             2.0 * std::tan(t) * std::cos(t) +
                             3.0 * std::sin(t);
        REQUIRE(std::abs(resid) < 1e-12);
    }
    for (int n : {2, 3, 5}) {
        GeometryInput g = GeometryInput::riemannian(n, 1.0, PI);
        g.singular_limit = true;
        auto p = neumann_problem(g);
        auto sh = solve_shooting(p);
        auto fd = solve_weighted_fd(p);
        CHECK(sh.lambda == Approx(double(n)).epsilon(1e-6));
        CHECK(fd.lambda == Approx(double(n)).epsilon(1e-6));
        CHECK(sh.singular_limit);
        CHECK(fd.singular_limit);
    }
}

TEST_CASE("dual-solver consensus on a drifted problem") {
    auto p = neumann_problem(GeometryInput::quaternion_kahler(2, 1.0, 1.0));
    auto sh = solve_shooting(p);
    auto fd = solve_weighted_fd(p);
    CHECK(sh.lambda == Approx(fd.lambda).epsilon(1e-6));
    auto c = solve(p);
    CHECK(c.method == SolveMethod::consensus);
    CHECK(c.error_bracket <= 1e-6 * c.lambda);
}

TEST_CASE("qk singular limit stays below the model eigenvalue") {
    GeometryInput g = GeometryInput::quaternion_kahler(2, 1.0, PI / 2.0);
    g.singular_limit = true;
    auto r = solve(neumann_problem(g));
    CHECK(r.singular_limit);
    CHECK(r.lambda <= 24.0 + 1e-6);
    CHECK(r.lambda > PI * PI / ((PI / 2.0) * (PI / 2.0))); // above Zhong-Yang
}

TEST_CASE("negative curvature problems") {
    auto p = neumann_problem(GeometryInput::riemannian(3, -1.0, 2.0));
    auto c = solve(p);
    CHECK(c.lambda > 0.0);
    CHECK(c.lambda < PI * PI / 4.0); // below the kappa = 0 value
}

TEST_CASE("FD mesh convergence order >= 1.9 on smooth problems") {
    auto p = neumann_problem(GeometryInput::quaternion_kahler(2, 1.0, 1.0));
    const double l1 = fd_single_mesh_eigenvalue(p, 64);
    const double l2 = fd_single_mesh_eigenvalue(p, 128);
    const double l3 = fd_single_mesh_eigenvalue(p, 256);
    const double l4 = fd_single_mesh_eigenvalue(p, 512);
    const double p1 = std::log2(std::abs(l1 - l2) / std::abs(l2 - l3));
    const double p2 = std::log2(std::abs(l2 - l3) / std::abs(l3 - l4));
    CHECK(p1 >= 1.9);
    CHECK(p2 >= 1.9);
}

TEST_CASE("eigenfunction is one-signed and reproduces lambda") {
    auto p = neumann_problem(GeometryInput::quaternion_kahler(2, 1.0, 1.0));
    auto r = solve(p);
    for (const auto& s : r.eigenfunction)
        if (s.t > 1e-9) CHECK(s.phi > 0.0);
    const double rq = rayleigh_quotient(p, r.lambda);
    CHECK(rq == Approx(r.lambda).epsilon(1e-8));

    auto p0 = neumann_problem(GeometryInput::riemannian(3, 0.0, 2.0));
    const double l0 = solve(p0).lambda;
    CHECK(rayleigh_quotient(p0, l0) == Approx(l0).epsilon(1e-8));
}

TEST_CASE("eigenvalue curve at kappa = 0 tabulates pi^2/D^2") {
    GeometryInput g = GeometryInput::riemannian(3, 0.0, 1.0);
    auto curve = eigenvalue_curve(g, {1.0, 2.0, 4.0});
    REQUIRE(curve.size() == 3);
    const double want[] = {PI * PI, PI * PI / 4.0, PI * PI / 16.0};
    for (int i = 0; i < 3; ++i) {
        REQUIRE(curve[i].ok);
        CHECK(curve[i].result.lambda == Approx(want[i]).epsilon(1e-8));
    }
}

TEST_CASE("config singular flag does not truncate regular problems") {
    auto p = neumann_problem(GeometryInput::quaternion_kahler(2, 1.0, 1.0));
    SolverConfig cfg;
    cfg.singular_limit = true;
    auto r = solve_shooting(p, cfg); // L well inside the domain
    CHECK(!r.singular_limit);
    CHECK(r.lambda == Approx(solve_shooting(p).lambda).epsilon(1e-12));
}

TEST_CASE("eigenvalue curve: monotone in D, flags singular points") {
    GeometryInput g = GeometryInput::quaternion_kahler(2, 1.0, 1.0);
    std::vector<double> grid{0.5, 0.8, 1.1, 1.4, PI / 2.0};
    auto curve = eigenvalue_curve(g, grid);
    REQUIRE(curve.size() == grid.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        REQUIRE(curve[i].ok);
        if (i > 0)
            CHECK(curve[i].result.lambda <
                  curve[i - 1].result.lambda +
                      curve[i].result.error_bracket +
                      curve[i - 1].result.error_bracket);
    }
    CHECK(curve.back().result.singular_limit);
    CHECK(!curve.front().result.singular_limit);
}

TEST_CASE("lambda nondecreasing in kappa at fixed D") {
    auto l0 = solve(neumann_problem(
                        GeometryInput::quaternion_kahler(2, 0.0, 1.0)))
                  .lambda;
    auto l5 = solve(neumann_problem(
                        GeometryInput::quaternion_kahler(2, 0.5, 1.0)))
                  .lambda;
    CHECK(l0 == Approx(PI * PI).epsilon(1e-8));
    CHECK(l5 > l0);
}

TEST_CASE("mixed-sign Kahler curvatures") {
    auto p = neumann_problem(GeometryInput::kahler(2, -1.0, 0.5, 1.5));
    auto sh = solve_shooting(p);
    auto fd = solve_weighted_fd(p);
    CHECK(sh.lambda == Approx(fd.lambda).epsilon(1e-6));
    CHECK(sh.lambda > 0.0);
}

TEST_CASE("concave boundary lowers the Dirichlet eigenvalue") {
    auto lam_at = [](double conv) {
        GeometryInput g = GeometryInput::riemannian(3, 1.0, 0.5);
        g.convexity = conv;
        return solve(dirichlet_problem(g)).lambda;
    };
    const double l_concave = lam_at(-0.5);
    const double l_flat = lam_at(0.0);
    const double l_convex = lam_at(0.5);
    CHECK(l_concave < l_flat);
    CHECK(l_flat < l_convex);
}

TEST_CASE("dirichlet singular limit matches the reflected Neumann limit") {
    GeometryInput gd = GeometryInput::quaternion_kahler(2, 1.0, PI / 4.0);
    gd.convexity = 0.0;
    gd.singular_limit = true;
    auto rd = solve(dirichlet_problem(gd));
    CHECK(rd.singular_limit);
    GeometryInput gn = GeometryInput::quaternion_kahler(2, 1.0, PI / 2.0);
    gn.singular_limit = true;
    auto rn = solve(neumann_problem(gn));
    CHECK(rd.lambda == Approx(rn.lambda).epsilon(1e-5));
}

TEST_CASE("solver config validation and error types") {
    SolverConfig bad;
    bad.rel_tol = 1e-14;
    auto p = neumann_problem(GeometryInput::riemannian(3, 0.0, 1.0));
    CHECK_THROWS_AS(solve_shooting(p, bad), std::invalid_argument);
    bad = SolverConfig{};
    bad.refinement_levels = 1;
    CHECK_THROWS_AS(solve_weighted_fd(p, bad), std::invalid_argument);

    NoBracketError nb(0.5, 2.0e12);
    CHECK(nb.scanned_lo == 0.5);
    CHECK(nb.scanned_hi == 2.0e12);
    CHECK(std::string(nb.what()).find("0.5") != std::string::npos);

    EigenResult a, b;
    a.lambda = 1.0;
    b.lambda = 2.0;
    ConsensusError ce(a, b);
    CHECK(ce.shooting_result.lambda == 1.0);
    CHECK(ce.fd_result.lambda == 2.0);
}

TEST_CASE("deterministic results") {
    auto p = neumann_problem(GeometryInput::quaternion_kahler(2, 0.7, 1.2));
    auto r1 = solve(p);
    auto r2 = solve(p);
    CHECK(r1.lambda == r2.lambda);
    CHECK(r1.error_bracket == r2.error_bracket);
}
