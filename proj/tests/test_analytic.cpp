#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "quadfield/analytic.hpp"
#include "quadfield/arith.hpp"
#include "quadfield/errors.hpp"
#include "quadfield/forms.hpp"

using namespace quadfield;
using namespace quadfield::analytic;

TEST_CASE("l_one_chi anchors") {
    // h R = sqrt(D) L / 2 back-solves these; they are sanity anchors.
    CHECK(l_one_chi(8) == doctest::Approx(2 * std::log(1 + std::sqrt(2.0)) / std::sqrt(8.0))
                              .epsilon(1e-9));
    CHECK(l_one_chi(5) ==
          doctest::Approx(2 * std::log((1 + std::sqrt(5.0)) / 2) / std::sqrt(5.0)).epsilon(1e-9));
    CHECK(l_one_chi(8) == doctest::Approx(0.6232).epsilon(1e-3));
    CHECK_THROWS_AS(l_one_chi(45), std::invalid_argument);  // 45 = 9*5 not fundamental
    CHECK_THROWS_AS(l_one_chi(16), std::invalid_argument);
    CHECK_THROWS_AS(l_one_chi(Int("200000000")), cap_exceeded);
}

TEST_CASE("class_number_analytic pinned roundings") {
    CHECK(class_number_analytic(82).h_rounded == 4);
    CHECK(class_number_analytic(5).h_rounded == 1);
    CHECK(class_number_analytic(8745).h_rounded == 12);
    CHECK(class_number_analytic(2).h_rounded == 1);
    CHECK(class_number_analytic(729318).h_rounded == 50);  // regression pin, see forms suite
}

TEST_CASE("estimate fields are coherent") {
    auto est = class_number_analytic(82);
    CHECK(est.D == 328);
    CHECK(est.h_est > 0);
    CHECK(est.h_rounded == std::lround(est.h_est));
    CHECK(est.est_error_bound < 0.2);
    CHECK_FALSE(est.ambiguous);
}

TEST_CASE("agreement with the exact class number, 200 random squarefree m <= 3000") {
    std::mt19937 rng(20240802);
    std::uniform_int_distribution<int> pick(2, 3000);
    int done = 0;
    while (done < 200) {
        int m = pick(rng);
        if (arith::is_squarefree(m) != Trilean::yes) continue;
        ++done;
        auto est = class_number_analytic(m);
        auto exact = forms::class_number(m);
        CHECK(est.h_rounded == static_cast<long>(exact.h));
        CHECK(std::fabs(est.h_est - static_cast<double>(est.h_rounded)) < 0.3);
        CHECK(est.h_est > 0);
    }
}

TEST_CASE("doubling the precision moves the estimate by less than 1e-3") {
    for (int m : {5, 82, 321, 322, 730, 1766, 2026, 2914}) {
        double h64 = class_number_analytic(m, 64).h_est;
        double h128 = class_number_analytic(m, 128).h_est;
        double h53 = class_number_analytic(m).h_est;
        CHECK(std::fabs(h128 - h64) < 1e-3);
        CHECK(std::fabs(h128 - h53) < 1e-3);
    }
}
