#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "npselect/lattice.hpp"
#include "npselect/theta.hpp"
#include "test_oracles.hpp"

using namespace npselect;

TEST_CASE("theta_h: pinned values and bounds") {
    CHECK(theta_h(0.0) == 1.0);
    // 1 + 2(0.5 + 0.5^4 + 0.5^9 + ...), summed independently to 30 digits
    CHECK(theta_h(0.5, 1e-15) == doctest::Approx(2.12893682721187716).epsilon(1e-14));
    for (double z : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        CHECK(theta_h(z) > 1.0 + 2.0 * z);  // dropped terms are positive
    }
    CHECK_THROWS_AS(theta_h(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(theta_h(1.0), std::invalid_argument);
    CHECK_THROWS_AS(theta_h(1.5), std::invalid_argument);
}

TEST_CASE("theta_h truncation error stays below 10*tol") {
    for (double z : {0.3, 0.9, 0.97}) {
        for (double tol : {1e-6, 1e-10}) {
            const double coarse = theta_h(z, tol);
            const double fine = theta_h(z, tol * 1e-6);
            CHECK(std::abs(coarse - fine) < 10.0 * tol * fine);
        }
    }
}

TEST_CASE("phi: monotone decreasing, pinned values, tail behavior") {
    CHECK(phi(0.5) == doctest::Approx(0.999999788767728083).epsilon(1e-13));
    CHECK(phi(1.0) == doctest::Approx(0.498979130832820462).epsilon(1e-13));
    CHECK(phi(2.0) == doctest::Approx(0.215012675088138486).epsilon(1e-13));
    CHECK(phi(0.5) > phi(1.0));
    CHECK(phi(1.0) > phi(2.0));
    // only k = +-1 survives for large y
    CHECK(phi(30.0) / (2.0 * std::exp(-30.0)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(phi(0.0), std::invalid_argument);
    CHECK_THROWS_AS(phi(-1.0), std::invalid_argument);
}

TEST_CASE("phi matches the independent direct summation") {
    for (double y : {0.05, 0.2, 0.7, 1.3, 3.0}) {
        CHECK(phi(y) == doctest::Approx(oracle::phi_direct(y)).epsilon(1e-13));
    }
}

TEST_CASE("phi_prime: negative, matches finite differences") {
    for (double y : {0.1, 1.0, 5.0}) {
        CHECK(phi_prime(y) < 0.0);
    }
    for (double y : {0.2, 0.8, 2.0}) {
        const double h = 1e-6 * y;
        const double fd = (oracle::phi_direct(y + h) - oracle::phi_direct(y - h)) / (2.0 * h);
        CHECK(phi_prime(y) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("solve_saddle: residuals at the defining equation") {
    for (double g : {0.25, 1.0, 4.0}) {
        const SaddlePoint sp = solve_saddle(g, 1e-12);
        CHECK(std::abs(phi(sp.y_gamma) - g) <= 1e-12);
        CHECK(sp.tol <= 1e-12);
        CHECK(sp.z_gamma > 0.0);
        CHECK(sp.z_gamma < 1.0);
        CHECK(sp.l_pp > 0.0);
        CHECK(sp.h_val >= 1.0 + 2.0 * sp.z_gamma);
    }
}

TEST_CASE("solve_saddle: gamma -> z_gamma is increasing") {
    const SaddlePoint a = solve_saddle(0.5);
    const SaddlePoint b = solve_saddle(1.0);
    const SaddlePoint c = solve_saddle(2.0);
    CHECK(a.z_gamma < b.z_gamma);
    CHECK(b.z_gamma < c.z_gamma);
}

TEST_CASE("solve_saddle matches the grid-bisection oracle and frozen values") {
    const SaddlePoint sp = solve_saddle(1.0, 1e-12);
    const double y_oracle = oracle::solve_y_grid(1.0);
    CHECK(std::abs(sp.z_gamma - std::exp(-y_oracle)) <= 1e-9);
    // values frozen from a 30-digit arbitrary-precision run
    CHECK(sp.z_gamma == doctest::Approx(0.606530723771807859).epsilon(1e-12));
    CHECK(solve_saddle(0.25).z_gamma == doctest::Approx(0.163125289221763321).epsilon(1e-12));
    CHECK(solve_saddle(4.0).z_gamma == doctest::Approx(0.882496902584595403).epsilon(1e-12));
    CHECK(sp.l_val == doctest::Approx(1.41893853855523755).epsilon(1e-12));
    CHECK(sp.l_pp == doctest::Approx(5.43658517653160957).epsilon(1e-11));
}

TEST_CASE("solve_saddle: residual and convexity over a log grid") {
    for (double g = 0.1; g <= 16.0; g *= 1.6) {
        const SaddlePoint sp = solve_saddle(g, 1e-10);
        CAPTURE(g);
        CHECK(std::abs(phi(sp.y_gamma) - g) <= 1e-10);
        CHECK(sp.l_pp > 0.0);
    }
    double prev_z = 0.0;
    for (double g = 0.1; g <= 16.0; g *= 1.6) {
        const double z = solve_saddle(g).z_gamma;
        CHECK(z > prev_z);
        prev_z = z;
    }
}

TEST_CASE("solve_saddle rejects bad arguments and impossible tolerances") {
    CHECK_THROWS_AS(solve_saddle(0.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_saddle(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_saddle(1.0, 0.0), std::invalid_argument);
    // phi ~ 1.2e5 here, so an absolute residual of 1e-14 sits far below
    // double precision and the iteration budget must give up
    CHECK_THROWS_AS(solve_saddle(123456.789, 1e-14), std::runtime_error);
}

TEST_CASE("asymptotic_counts: algebraic N1/N2 identity") {
    for (double g : {0.5, 1.0, 3.0}) {
        const AsymptoticCount ac = asymptotic_counts(17, g);
        const SaddlePoint sp = solve_saddle(g);
        CHECK(ac.log_n1_asym - ac.log_n2_asym
              == doctest::Approx(std::log(sp.h_val)).epsilon(1e-12));
    }
}

TEST_CASE("asymptotic_counts converge to the exact counts at gamma = 1") {
    const AsymptoticCount a50 = asymptotic_counts(50, 1.0);
    const AsymptoticCount a200 = asymptotic_counts(200, 1.0);
    const CountResult e50 = count_exact(50, 50);
    const CountResult e200 = count_exact(200, 200);
    const double gap50 = std::abs(e50.log_n1 - a50.log_n1_asym);
    const double gap200 = std::abs(e200.log_n1 - a200.log_n1_asym);
    CHECK(gap200 <= 0.1);
    CHECK(gap200 < gap50);
    // exact N1/N2 ratio approaches h(z_1)
    const double ratio = std::exp(e200.log_n1 - e200.log_n2);
    CHECK(ratio == doctest::Approx(solve_saddle(1.0).h_val).epsilon(0.05));
}

TEST_CASE("figure_curves: monotone z column in (0,1)") {
    const auto rows = figure_curves({0.5, 1.0, 2.0});
    REQUIRE(rows.size() == 3);
    double prev = 0.0;
    for (const auto& r : rows) {
        CHECK(r.z_gamma > prev);
        CHECK(r.z_gamma < 1.0);
        prev = r.z_gamma;
    }
    // weak form of the hypercube lower bound on the exponential rate
    const auto one = figure_curves({1.0});
    CHECK(one[0].l_value >= std::log(3.0) - 0.2);
    CHECK_THROWS_AS(figure_curves({}), std::invalid_argument);
    CHECK_THROWS_AS(figure_curves({1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(figure_curves({-1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("gamma_star: downward scan over multiples of 1/d*") {
    // z_{1.5} ~ 0.7165 makes gamma = 1.5 demand L >= 2.5467, so L = 1.9
    // falls through to gamma = 1 (which demands L >= 1.8244)
    const double g = gamma_star(1.9, 2);
    CHECK(g == doctest::Approx(1.0).epsilon(1e-15));
    const SaddlePoint sp = solve_saddle(g);
    CHECK(1.9 >= g * (1.0 + 1.0 / (2.0 * sp.z_gamma)));
    // gamma*d* is an integer
    CHECK(std::abs(g * 2.0 - std::round(g * 2.0)) < 1e-12);
    // no admissible candidate
    CHECK_THROWS_AS(gamma_star(0.4, 1), std::runtime_error);
}

TEST_CASE("log_binomial via log-gamma") {
    CHECK(log_binomial(10, 2) == doctest::Approx(std::log(45.0)).epsilon(1e-13));
    CHECK(log_binomial(5, 5) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(std::isfinite(log_binomial(1e200, 3)));
    CHECK_THROWS_AS(log_binomial(2, 3), std::invalid_argument);
}

namespace {

ModelParams base_params() {
    ModelParams p;
    p.d = 10;
    p.d_star = 2;
    p.g_min = 1.0;
    p.L = 1.0;
    p.kappa = 1.0;
    p.sigma = 1.0;
    p.L2 = 1.0;
    p.L_inf = 1.0;
    return p;
}

}  // namespace

TEST_CASE("regime_constants: c_star formulas") {
    ModelParams p = base_params();
    p.d_star = 1;
    p.L = 2.0;  // gamma* search needs an admissible candidate
    const RegimeReport r1 = regime_constants(p, 100.0, 0.3);
    CHECK(r1.c_star_upper == doctest::Approx(2.0 * std::log(3.0) / std::log(1.5)).epsilon(1e-12));

    ModelParams p2 = base_params();
    p2.L = 1.9;  // smallest budget in this family admitting a gamma*
    const RegimeReport r2 = regime_constants(p2, 100.0, 0.3);
    // second component: g_min^2 / (2^8 (1+L2)^2 d* N(d*, 2L)) with
    // N(2, 3.8) = count_exact(2, floor(3.8*2)).n_diff = 21 - 5 = 16
    CHECK(count_exact(2, 7).n_diff == 16);
    const double second = 1.0 / (256.0 * 4.0 * 2.0 * 16.0);
    CHECK(r2.c_star_lower == doctest::Approx(std::min(0.25, second)).epsilon(1e-12));
    CHECK(r2.c_star_upper == doctest::Approx(std::log(3.0) / std::log(1.5)).epsilon(1e-12));
}

TEST_CASE("regime_constants: regime and flag wiring") {
    ModelParams p = base_params();
    p.L = 1.9;
    const RegimeReport r = regime_constants(p, 1.0, 0.3);
    CHECK(r.gamma_star == doctest::Approx(1.0));
    CHECK(r.c1_upper == doctest::Approx(solve_saddle(1.0).l_val).epsilon(1e-12));
    CHECK(r.c1_lower == doctest::Approx(solve_saddle(3.8).l_val).epsilon(1e-12));
    CHECK(r.c1_lower > 0.0);
    CHECK(r.c1_upper > 0.0);
    // hyp1 left side at n=1: (N1-N2)^2 log C(10,2) / N1 = 36 log(45) / 9
    // = 4 log 45 ~ 15.2 >= 0.3/5
    CHECK(r.thm2_hyp1);
    // raising n far enough turns the flag off
    const RegimeReport r_big_n = regime_constants(p, 1e6, 0.3);
    CHECK(!r_big_n.thm2_hyp1);
}

TEST_CASE("regime_constants: prop2 flag matches the direct inequality") {
    ModelParams p = base_params();
    p.d = std::exp(10.0);
    p.d_star = 1;
    p.L = 2.0;
    const RegimeReport r5 = regime_constants(p, 5.0, 0.3);
    CHECK(!r5.prop2_impossible);  // 10/5 = 2 < 1/0.3
    const RegimeReport r2 = regime_constants(p, 2.0, 0.3);
    CHECK(r2.prop2_impossible);  // 10/2 = 5 >= 1/0.3
}

TEST_CASE("regime_constants rejects invalid parameter sets") {
    ModelParams p = base_params();
    p.g_min = 0.0;
    CHECK_THROWS_AS(regime_constants(p, 10.0, 0.3), std::invalid_argument);
    ModelParams q = base_params();
    q.d_star = 11;  // exceeds d
    CHECK_THROWS_AS(regime_constants(q, 10.0, 0.3), std::invalid_argument);
    ModelParams s = base_params();
    CHECK_THROWS_AS(regime_constants(s, 0.0, 0.3), std::invalid_argument);
    // L = 1, d* = 2 admits no gamma* (gamma = 1 demands L >= 1.82,
    // gamma = 1/2 demands L >= 1.18), so the report must signal
    CHECK_THROWS_AS(regime_constants(base_params(), 10.0, 0.3), std::runtime_error);
}
