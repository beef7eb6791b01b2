#include "doctest.h"
#include "setreg/primal.hpp"
#include "setreg/regularity.hpp"
#include "test_util.hpp"

using namespace setreg;
using testutil::v2;

TEST_SUITE("primal") {

TEST_CASE("theta_rho on reference arrangements") {
    const Vec origin = v2(0, 0);
    const std::vector<SetDescriptor> same{SetDescriptor::halfSpace(v2(0, 1), 0.0),
                                          SetDescriptor::halfSpace(v2(0, 1), 0.0)};
    // Identical half-spaces: translations up to rho keep the intersection
    // touching the ball.
    const double rSame = theta_rho_bruteforce(same, origin, 0.1, 0.01);
    CHECK(rSame >= 0.09);
    CHECK(rSame <= 0.11);

    const std::vector<SetDescriptor> opp{SetDescriptor::halfSpace(v2(0, 1), 0.0),
                                         SetDescriptor::halfSpace(v2(0, -1), 0.0)};
    CHECK(theta_rho_bruteforce(opp, origin, 0.1, 0.01) == doctest::Approx(0.0));

    const std::vector<SetDescriptor> perp{SetDescriptor::halfSpace(v2(0, 1), 0.0),
                                          SetDescriptor::halfSpace(v2(1, 0), 0.0)};
    const double r = theta_rho_bruteforce(perp, origin, 0.1, 0.01);
    CHECK(std::abs(r / 0.1 - 1.0 / std::sqrt(2.0)) <= 0.05);
}

TEST_CASE("theta_hat estimates match the dual constant") {
    const Vec origin = v2(0, 0);
    const std::vector<SetDescriptor> perp{SetDescriptor::halfSpace(v2(0, 1), 0.0),
                                          SetDescriptor::halfSpace(v2(1, 0), 0.0)};
    CHECK(std::abs(theta_hat_estimate(perp, origin) - 1.0 / std::sqrt(2.0)) <= 0.03);

    const std::vector<SetDescriptor> same{SetDescriptor::halfSpace(v2(0, 1), 0.0),
                                          SetDescriptor::halfSpace(v2(0, 1), 0.0)};
    CHECK(theta_hat_estimate(same, origin) >= 0.97);

    const std::vector<SetDescriptor> opp{SetDescriptor::halfSpace(v2(0, 1), 0.0),
                                         SetDescriptor::halfSpace(v2(0, -1), 0.0)};
    CHECK(theta_hat_estimate(opp, origin) <= 0.03);
}

TEST_CASE("vartheta agrees with theta_hat within the report tolerance") {
    const Vec origin = v2(0, 0);
    const std::vector<SetDescriptor> perp{SetDescriptor::halfSpace(v2(0, 1), 0.0),
                                          SetDescriptor::halfSpace(v2(1, 0), 0.0)};
    const auto rep = primal_report(perp, origin);
    CHECK(std::abs(rep.theta_hat - rep.vartheta_hat) <= 3.0 * rep.grid_resolution);
    CHECK(std::abs(rep.vartheta_hat - 1.0 / std::sqrt(2.0)) <= 0.05);
}

TEST_CASE("primal estimates across varied pair geometries") {
    const Vec origin = v2(0, 0);
    for (double deg : {30.0, 60.0, 120.0}) {
        const double a = deg * M_PI / 180.0;
        const std::vector<SetDescriptor> sets{
            SetDescriptor::halfSpace(v2(0, 1), 0.0),
            SetDescriptor::halfSpace(v2(std::sin(a), std::cos(a)), 0.0)};
        const double eta = compute_regularity(sets, origin).eta_hat;
        CHECK(std::abs(theta_hat_estimate(sets, origin) - eta) <= 0.03);
    }
}

TEST_CASE("dimension and catalog guards") {
    const Vec origin4 = Vec::Zero(4);
    std::vector<SetDescriptor> sets4{
        SetDescriptor::halfSpace((Vec(4) << 0, 0, 0, 1).finished(), 0.0),
        SetDescriptor::halfSpace((Vec(4) << 0, 0, 1, 0).finished(), 0.0)};
    CHECK_THROWS_AS(theta_rho_bruteforce(sets4, origin4, 0.1, 0.01), AmbientDimensionTooLarge);

    const std::vector<SetDescriptor> withBall{SetDescriptor::halfSpace(v2(0, 1), 0.0),
                                              SetDescriptor::ball(v2(0, -1), 1.0)};
    CHECK_THROWS_AS(theta_rho_bruteforce(withBall, v2(0, 0), 0.1, 0.01), ValidationError);
}

}  // TEST_SUITE
