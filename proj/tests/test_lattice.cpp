#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <set>
#include <string>

#include "npselect/lattice.hpp"
#include "test_oracles.hpp"

using namespace npselect;

TEST_CASE("representation numbers: small exact values") {
    const RepSeries s1 = representation_numbers(1, 4);
    REQUIRE(s1.coeffs.size() == 5);
    CHECK(s1.coeffs[0] == 1);
    CHECK(s1.coeffs[1] == 2);
    CHECK(s1.coeffs[2] == 0);
    CHECK(s1.coeffs[3] == 0);
    CHECK(s1.coeffs[4] == 2);

    const RepSeries s2 = representation_numbers(2, 2);
    CHECK(s2.coeffs[0] == 1);
    CHECK(s2.coeffs[1] == 4);
    CHECK(s2.coeffs[2] == 4);

    const RepSeries s3 = representation_numbers(3, 0);
    REQUIRE(s3.coeffs.size() == 1);
    CHECK(s3.coeffs[0] == 1);
}

TEST_CASE("representation numbers match brute-force enumeration") {
    for (int dim = 1; dim <= 4; ++dim) {
        const long R = 12;
        const RepSeries s = representation_numbers(dim, R);
        const auto brute = oracle::brute_rep_numbers(dim, R);
        for (long r = 0; r <= R; ++r) {
            CAPTURE(dim);
            CAPTURE(r);
            CHECK(s.coeffs[static_cast<std::size_t>(r)]
                  == mpz_class(static_cast<long>(brute[static_cast<std::size_t>(r)])));
        }
    }
}

TEST_CASE("representation numbers: a_0 = 1 and convolution consistency") {
    // h^p * h^q truncated equals h^{p+q}
    const long R = 10;
    for (int p = 1; p <= 3; ++p) {
        for (int q = 1; q <= 3; ++q) {
            const auto sp = representation_numbers(p, R).coeffs;
            const auto sq = representation_numbers(q, R).coeffs;
            const auto spq = representation_numbers(p + q, R).coeffs;
            CHECK(sp[0] == 1);
            for (long r = 0; r <= R; ++r) {
                mpz_class conv = 0;
                for (long i = 0; i <= r; ++i)
                    conv += sp[static_cast<std::size_t>(i)] * sq[static_cast<std::size_t>(r - i)];
                CHECK(conv == spq[static_cast<std::size_t>(r)]);
            }
        }
    }
}

TEST_CASE("representation numbers reject bad arguments") {
    CHECK_THROWS_AS(representation_numbers(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(representation_numbers(-2, 5), std::invalid_argument);
    CHECK_THROWS_AS(representation_numbers(2, -1), std::invalid_argument);
}

TEST_CASE("count_exact: pinned small cases") {
    const CountResult a = count_exact(1, 1);
    CHECK(a.n1 == 3);
    CHECK(a.n2 == 1);
    CHECK(a.n_diff == 2);

    const CountResult b = count_exact(2, 2);
    CHECK(b.n1 == 9);
    CHECK(b.n2 == 3);
    CHECK(b.n_diff == 6);

    const CountResult c = count_exact(5, 0);
    CHECK(c.n1 == 1);
    CHECK(c.n2 == 1);
    CHECK(c.n_diff == 0);
    CHECK(c.log_n_diff == -std::numeric_limits<double>::infinity());
}

TEST_CASE("count_exact equals nested-loop brute force (unit slice)") {
    for (int ds = 1; ds <= 4; ++ds) {
        for (long r = 0; r <= 12; ++r) {
            const CountResult c = count_exact(ds, r);
            const auto [n1, n2] = oracle::brute_count(ds, r);
            CAPTURE(ds);
            CAPTURE(r);
            CHECK(c.n1 == mpz_class(static_cast<long>(n1)));
            CHECK(c.n2 == mpz_class(static_cast<long>(n2)));
        }
    }
}

TEST_CASE("count_exact log companions are accurate") {
    // reparse the exact decimal text in long double, independent of GMP
    for (auto [ds, r] : {std::pair<int, long>{2, 5}, {6, 20}, {30, 30}, {60, 60}}) {
        const CountResult c = count_exact(ds, r);
        const long double v1 = strtold(c.n1.get_str().c_str(), nullptr);
        const long double vd = strtold(c.n_diff.get_str().c_str(), nullptr);
        CAPTURE(ds);
        CHECK(c.log_n1 == doctest::Approx(static_cast<double>(logl(v1))).epsilon(1e-12));
        CHECK(c.log_n_diff == doctest::Approx(static_cast<double>(logl(vd))).epsilon(1e-12));
    }
}

TEST_CASE("count_exact monotonicity and hypercube inclusion") {
    mpz_class prev_n1 = 0;
    for (long r = 0; r <= 20; ++r) {
        const CountResult c = count_exact(3, r);
        CHECK(c.n1 >= prev_n1);
        CHECK(c.n2 <= c.n1);
        CHECK(c.n_diff >= 0);
        prev_n1 = c.n1;
    }
    // {-1,0,1}^{d*} sits inside the ball of squared radius d*
    for (int ds = 1; ds <= 12; ++ds) {
        mpz_class cube = 1;
        for (int i = 0; i < ds; ++i) cube *= 3;
        CHECK(count_exact(ds, ds).n1 >= cube);
    }
    // nondecreasing in d* at the fixed radius ratio gamma = 1
    mpz_class prev1 = 0, prev2 = 0;
    for (int ds = 1; ds <= 10; ++ds) {
        const CountResult c = count_exact(ds, ds);
        CHECK(c.n1 >= prev1);
        CHECK(c.n2 >= prev2);
        prev1 = c.n1;
        prev2 = c.n2;
    }
}

TEST_CASE("enumerate_ball: pinned small cases") {
    // d=2, m=1, ell=2: only the two unit vectors (canonical representatives)
    const auto pts = enumerate_ball(2, 1.0, 2);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].support == std::vector<int>{1});
    CHECK(pts[0].values == std::vector<int>{1});
    CHECK(pts[1].support == std::vector<int>{2});
    CHECK(pts[1].values == std::vector<int>{1});

    // m=1.5 with ell=1 excludes the diagonal pair by support size
    const auto pts2 = enumerate_ball(2, 1.5, 1);
    REQUIRE(pts2.size() == 2);
    CHECK(pts2[0].norm0() == 1);
    CHECK(pts2[1].norm0() == 1);

    // no nonzero integer vector has norm <= 0.5
    CHECK(enumerate_ball(3, 0.5, 3).empty());
}

TEST_CASE("enumerate_ball rejects bad arguments") {
    CHECK_THROWS_AS(enumerate_ball(2, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_ball(2, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_ball(2, -1.0, 1), std::invalid_argument);
}

TEST_CASE("enumerate_ball: canonical, unique, level-ordered") {
    const auto pts = enumerate_ball(3, 2.5, 3);
    int prev_level = 1;
    std::set<std::string> seen;
    for (const auto& k : pts) {
        CHECK(k.is_canonical());
        CHECK(!k.is_zero());
        CHECK(k.norm0() >= prev_level);
        CHECK(k.norm2_sq() <= 6);  // floor(2.5^2)
        prev_level = k.norm0();
        CHECK(seen.insert(k.to_string()).second);
    }
}

TEST_CASE("enumerate_ball symmetry accounting") {
    // 2 * Card(stream) + 1 equals the full ball count (each nonzero point
    // pairs with its negation; the origin is excluded from the stream)
    for (int d = 1; d <= 3; ++d) {
        for (double m : {1.0, 1.7, 2.5}) {
            const auto pts = enumerate_ball(d, m, d);
            const long radius_sq = static_cast<long>(std::floor(m * m));
            const long long full = oracle::brute_ball_count(d, radius_sq);
            CAPTURE(d);
            CAPTURE(m);
            CHECK(2 * static_cast<long long>(pts.size()) + 1 == full);
        }
    }
}

TEST_CASE("enumerate_ball equals the brute-force canonical set") {
    // full set equality against direct enumeration of Z^d, over a grid of
    // (d, radius_sq, ell) configurations
    for (int d = 1; d <= 4; ++d) {
        for (long r : {0L, 1L, 2L, 5L, 9L}) {
            for (int ell = 1; ell <= d; ++ell) {
                std::set<std::string> expect;
                std::vector<int> point(static_cast<std::size_t>(d), 0);
                const int vmax = static_cast<int>(std::floor(std::sqrt(static_cast<double>(r))));
                std::function<void(int)> rec = [&](int coord) {
                    if (coord == d) {
                        long norm_sq = 0;
                        int norm0 = 0;
                        int first = 0;
                        for (int v : point) {
                            norm_sq += static_cast<long>(v) * v;
                            if (v != 0) {
                                ++norm0;
                                if (first == 0) first = v;
                            }
                        }
                        if (first > 0 && norm_sq <= r && norm0 <= ell) {
                            MultiIndex k;
                            k.dimension = d;
                            for (int j = 0; j < d; ++j) {
                                if (point[static_cast<std::size_t>(j)] != 0) {
                                    k.support.push_back(j + 1);
                                    k.values.push_back(point[static_cast<std::size_t>(j)]);
                                }
                            }
                            expect.insert(k.to_string());
                        }
                        return;
                    }
                    for (int v = -vmax; v <= vmax; ++v) {
                        point[static_cast<std::size_t>(coord)] = v;
                        rec(coord + 1);
                    }
                };
                rec(0);

                BallEnumerator en(d, r, ell);
                std::set<std::string> got;
                while (auto k = en.next()) CHECK(got.insert(k->to_string()).second);
                CAPTURE(d);
                CAPTURE(r);
                CAPTURE(ell);
                CHECK(got == expect);
            }
        }
    }
}

TEST_CASE("BallEnumerator streams the same sequence as the collected form") {
    BallEnumerator en(4, 2.0, 2);
    const auto all = enumerate_ball(4, 2.0, 2);
    std::size_t i = 0;
    while (auto k = en.next()) {
        REQUIRE(i < all.size());
        CHECK(*k == all[i]);
        ++i;
    }
    CHECK(i == all.size());
    CHECK(!en.next().has_value());
}

TEST_CASE("card_bound: formula and enumeration check") {
    CHECK(card_bound(1.0, 10, 2) == doctest::Approx(2.0 * std::log(60.0)).epsilon(1e-15));
    CHECK(card_bound(2.0, 5, 1) == doctest::Approx(std::log(60.0)).epsilon(1e-15));
    CHECK_THROWS_AS(card_bound(0.01, 10, 1), std::invalid_argument);

    // Card(S_{1,2}) over d=10 (doubled for +- plus the origin) <= 60^2
    const auto pts = enumerate_ball(10, 1.0, 2);
    const double card = 2.0 * static_cast<double>(pts.size()) + 1.0;
    CHECK(std::log(card) <= card_bound(1.0, 10, 2));
}

TEST_CASE("MultiIndex invariants are enforced") {
    CHECK_THROWS_AS(MultiIndex(3, {1, 1}, {1, 2}), std::invalid_argument);   // not increasing
    CHECK_THROWS_AS(MultiIndex(3, {1, 4}, {1, 2}), std::invalid_argument);   // out of range
    CHECK_THROWS_AS(MultiIndex(3, {1, 2}, {1, 0}), std::invalid_argument);   // zero value
    CHECK_THROWS_AS(MultiIndex(0, {}, {}), std::invalid_argument);           // bad dimension
    const MultiIndex k(3, {1, 3}, {-2, 5});
    CHECK(k.norm0() == 2);
    CHECK(k.norm2_sq() == 29);
    CHECK(!k.is_canonical());
    CHECK(MultiIndex::zero(3).is_canonical());
}
