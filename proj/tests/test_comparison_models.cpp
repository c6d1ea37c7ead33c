#include <catch2/catch_amalgamated.hpp>

#include <spectral_bounds/problems.hpp>

#include <cmath>

using namespace spectral_bounds;
using Catch::Approx;

static const double PI = std::acos(-1.0);

TEST_CASE("neumann problem drifts") {
    // riemannian, kappa = 0: zero drift on [-1, 1]
    auto p0 = neumann_problem(GeometryInput::riemannian(5, 0.0, 2.0));
    CHECK(p0.half_length == 1.0);
    CHECK(p0.bc == BoundaryCondition::symmetric_neumann);
    for (double t : {-0.9, 0.0, 0.7}) CHECK(p0.drift.value(t) == 0.0);

    // qk m=2, kappa=1, D=1: 4 tan t + 6 tan 2t on [-1/2, 1/2]
    auto pq = neumann_problem(GeometryInput::quaternion_kahler(2, 1.0, 1.0));
    CHECK(pq.half_length == 0.5);
    for (double t : {0.1, 0.3, 0.45})
        CHECK(pq.drift.value(t) ==
              Approx(4.0 * std::tan(t) + 6.0 * std::tan(2.0 * t))
                  .epsilon(1e-14));

    // kahler m=3, kappa1=1, kappa2=0: 2 tan 2t
    auto pk = neumann_problem(GeometryInput::kahler(3, 1.0, 0.0, 1.0));
    for (double t : {0.1, 0.3})
        CHECK(pk.drift.value(t) ==
              Approx(2.0 * std::tan(2.0 * t)).epsilon(1e-14));
}

TEST_CASE("neumann problem validation") {
    CHECK_THROWS_AS(
        neumann_problem(GeometryInput::quaternion_kahler(1, 1.0, 1.0)),
        std::invalid_argument);
    // D/2 beyond t_max = pi/4
    CHECK_THROWS_AS(
        neumann_problem(GeometryInput::quaternion_kahler(2, 1.0, 2.0)),
        std::domain_error);
    // at t_max without the flag
    CHECK_THROWS_AS(
        neumann_problem(GeometryInput::quaternion_kahler(2, 1.0, PI / 2.0)),
        std::domain_error);
    GeometryInput g = GeometryInput::quaternion_kahler(2, 1.0, PI / 2.0);
    g.singular_limit = true;
    auto p = neumann_problem(g);
    CHECK(p.singular_limit);
    CHECK(p.half_length == Approx(PI / 4.0).epsilon(1e-14));
    // truncated decimal diameter still snaps to the singular limit
    GeometryInput gt = GeometryInput::riemannian(3, 1.0, 3.14159265);
    gt.singular_limit = true;
    CHECK(neumann_problem(gt).singular_limit);
}

TEST_CASE("dirichlet problem drifts") {
    GeometryInput g0 = GeometryInput::riemannian(2, 0.0, 1.0);
    g0.convexity = 0.0;
    auto p0 = dirichlet_problem(g0);
    CHECK(p0.bc == BoundaryCondition::dirichlet_neumann);
    CHECK(p0.half_length == 1.0);
    for (double t : {0.0, 0.5, 0.99}) CHECK(p0.drift.value(t) == 0.0);

    GeometryInput gq = GeometryInput::quaternion_kahler(2, 1.0, 0.4);
    gq.convexity = 0.0;
    auto pq = dirichlet_problem(gq);
    for (double t : {0.1, 0.39})
        CHECK(pq.drift.value(t) ==
              Approx(4.0 * std::tan(t) + 6.0 * std::tan(2.0 * t))
                  .epsilon(1e-13));

    // T_{0,Lambda}(t) = Lambda / (1 - Lambda t), multiplicity n-1 = 2
    GeometryInput gr = GeometryInput::riemannian(3, 0.0, 0.5);
    gr.convexity = 1.0;
    auto pr = dirichlet_problem(gr);
    for (double t : {0.1, 0.3, 0.49})
        CHECK(pr.drift.value(t) == Approx(2.0 / (1.0 - t)).epsilon(1e-13));

    // C_{kappa,Lambda} vanishing inside (0, R) is rejected
    GeometryInput gbad = GeometryInput::riemannian(3, 0.0, 1.0);
    gbad.convexity = 2.0; // zero of 1 - 2t at 0.5 < R = 1
    CHECK_THROWS_AS(dirichlet_problem(gbad), std::domain_error);
    // Lambda mandatory
    CHECK_THROWS_AS(
        dirichlet_problem(GeometryInput::riemannian(3, 0.0, 1.0)),
        std::invalid_argument);
}

TEST_CASE("generalized family") {
    // (2,3) reproduces the quaternion-Kahler drift
    auto pg = generalized_problem(2, 3, 2, 1.0, 1.0, 1.0);
    auto pq = neumann_problem(GeometryInput::quaternion_kahler(2, 1.0, 1.0));
    for (int i = 0; i <= 20; ++i) {
        const double t = -0.5 + i * 0.05;
        CHECK(pg.drift.value(t) == Approx(pq.drift.value(t)).margin(1e-15));
    }
    // (1,1) reproduces the Kahler drift
    auto pg11 = generalized_problem(1, 1, 3, 0.3, 0.8, 1.0);
    auto pk = neumann_problem(GeometryInput::kahler(3, 0.3, 0.8, 1.0));
    for (int i = 0; i <= 20; ++i) {
        const double t = -0.5 + i * 0.05;
        CHECK(pg11.drift.value(t) == Approx(pk.drift.value(t)).margin(1e-15));
    }
    // zero curvature: zero drift
    auto pz = generalized_problem(1, 1, 2, 0.0, 0.0, 1.0);
    CHECK(pz.drift.value(0.3) == 0.0);
    // nonnegativity hypothesis
    CHECK_THROWS_AS(generalized_problem(1, 1, 2, -0.1, 0.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(generalized_problem(0, 1, 2, 1.0, 1.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("drift oddness on the Neumann family") {
    const GeometryInput geos[] = {
        GeometryInput::riemannian(4, 1.0, 1.0),
        GeometryInput::riemannian(3, -1.0, 1.0),
        GeometryInput::kahler(2, 0.5, -0.3, 1.0),
        GeometryInput::quaternion_kahler(3, 0.7, 1.0),
    };
    for (const auto& g : geos) {
        auto p = neumann_problem(g);
        CHECK(p.drift.odd());
        for (double t : {0.1, 0.25, 0.45})
            CHECK(p.drift.value(-t) ==
                  Approx(-p.drift.value(t)).margin(1e-15));
    }
    GeometryInput gd = GeometryInput::riemannian(3, 1.0, 0.5);
    gd.convexity = 0.3;
    CHECK(!dirichlet_problem(gd).drift.odd());
}

TEST_CASE("Lambda = 0 Dirichlet drift equals the Neumann drift") {
    GeometryInput gd = GeometryInput::quaternion_kahler(2, 1.0, 0.4);
    gd.convexity = 0.0;
    auto pd = dirichlet_problem(gd);
    auto pn = neumann_problem(GeometryInput::quaternion_kahler(2, 1.0, 0.8));
    for (double t : {0.05, 0.2, 0.39})
        CHECK(pd.drift.value(t) == Approx(pn.drift.value(t)).margin(1e-13));
}

TEST_CASE("kahler drift never equals riemannian drift globally (kappa != 0)") {
    // same total scale-1 multiplicity: riemannian n=4 vs kahler m=2
    auto pr = neumann_problem(GeometryInput::riemannian(4, 1.0, 1.0));
    auto pk = neumann_problem(GeometryInput::kahler(2, 1.0, 1.0, 1.0));
    CHECK(std::abs(pr.drift.value(0.3) - pk.drift.value(0.3)) > 0.1);
}

TEST_CASE("laplace comparison right-hand side") {
    GeometryInput g = GeometryInput::quaternion_kahler(2, 0.0, 1.0);
    g.convexity = 0.0;
    CHECK(laplace_comparison_rhs(g, 0.3) == 0.0);

    GeometryInput g1 = GeometryInput::quaternion_kahler(2, 1.0, 1.0);
    g1.convexity = 0.0;
    CHECK(laplace_comparison_rhs(g1, 0.3) ==
          Approx(-(4.0 * std::tan(0.3) + 6.0 * std::tan(0.6)))
              .epsilon(1e-13));

    GeometryInput g2 = GeometryInput::quaternion_kahler(2, 0.0, 1.0);
    g2.convexity = 1.0;
    CHECK(laplace_comparison_rhs(g2, 0.5) == Approx(-14.0).epsilon(1e-13));

    // past the first kernel singularity
    CHECK_THROWS_AS(laplace_comparison_rhs(g1, 1.0), std::domain_error);
    GeometryInput gbad = GeometryInput::riemannian(3, 1.0, 1.0);
    gbad.convexity = 0.0;
    CHECK_THROWS_AS(laplace_comparison_rhs(gbad, 0.1), std::invalid_argument);
}
