#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lattice/correlations.hpp"
#include "oracles.hpp"

using namespace lattice;

TEST_CASE("equal-time limiting correlations") {
    const auto nn = preset_nn();
    const double beta = 1.3;
    CHECK(limit_correlation({1, 1, 0, 0.0}, nn, beta) ==
          doctest::Approx(1.0 / beta).epsilon(1e-12));
    for (long long j : {1LL, 2LL, 7LL})
        CHECK(std::abs(limit_correlation({1, 1, j, 0.0}, nn, beta)) <= 1e-12);
    CHECK(limit_correlation({3, 3, 0, 0.0}, nn, beta) ==
          doctest::Approx(1.0 / (beta * beta)).epsilon(1e-10));
}

TEST_CASE("cross entries with the energy are exact zeros") {
    const auto ex1 = preset_example1();
    for (int alpha : {1, 2}) {
        CHECK(limit_correlation({alpha, 3, 4, 7.5}, ex1, 1.0) == 0.0);
        CHECK(limit_correlation({3, alpha, -2, 3.0}, ex1, 1.0) == 0.0);
        CHECK(finite_correlation({alpha, 3, 4, 7.5}, ex1, 1.0, 101) == 0.0);
        CHECK(finite_correlation({3, alpha, -2, 3.0}, ex1, 1.0, 101) == 0.0);
    }
}

TEST_CASE("finite-N equal-time sum") {
    const auto nn = preset_nn();
    const int n = 101;
    const double beta = 0.7;
    CHECK(finite_correlation({1, 1, 0, 0.0}, nn, beta, n) ==
          doctest::Approx((n - 1.0) / (n * beta)).epsilon(1e-13));
    CHECK(finite_correlation({2, 2, 0, 0.0}, nn, beta, n) ==
          doctest::Approx((n - 1.0) / (n * beta)).epsilon(1e-13));
}

TEST_CASE("finite-N converges to the limit beyond any power") {
    const auto nn = preset_nn();
    const double beta = 1.0;
    const int n = 4001;
    const CorrelationIndex idx{1, 1, 5, 10.0};
    const double shifted =
        finite_correlation(idx, nn, beta, n) + 1.0 / (n * beta);
    const double limit = limit_correlation(idx, nn, beta);
    CHECK(std::abs(shifted - limit) <= 1e-8);

    // S33 carries an O(1/N) correction instead
    const double s33n = finite_correlation({3, 3, 0, 0.0}, nn, beta, n);
    CHECK(std::abs(s33n - 1.0 / (beta * beta)) <= 2.0 / n);
}

TEST_CASE("S21 reflection identity on the discrete sum") {
    const auto ex1 = preset_example1();
    const int n = 101;
    for (long long j : {0LL, 1LL, 5LL, 17LL}) {
        const double s21 = finite_correlation({2, 1, j, 3.7}, ex1, 1.0, n);
        const double s12 = finite_correlation({1, 2, -j, 3.7}, ex1, 1.0, n);
        CHECK(s21 == doctest::Approx(-s12).epsilon(1e-12));
    }
}

TEST_CASE("beta scaling") {
    const auto ex2 = preset_example2();
    const CorrelationIndex idx{1, 2, 3, 2.5};
    const double at1 = limit_correlation(idx, ex2, 1.0);
    const double at2 = limit_correlation(idx, ex2, 2.0);
    const double athalf = limit_correlation(idx, ex2, 0.5);
    CHECK(at2 == doctest::Approx(0.5 * at1).epsilon(1e-10));
    CHECK(athalf == doctest::Approx(2.0 * at1).epsilon(1e-10));
    const CorrelationIndex e33{3, 3, 2, 1.5};
    CHECK(limit_correlation(e33, ex2, 2.0) ==
          doctest::Approx(0.25 * limit_correlation(e33, ex2, 1.0)).epsilon(1e-10));
}

TEST_CASE("rapid decay outside the sound cone") {
    const auto nn = preset_nn();
    for (long long j : {70LL, 85LL, -90LL})
        CHECK(std::abs(limit_correlation({1, 1, j, 50.0}, nn, 1.0)) <= 1e-8);
}

TEST_CASE("quadrature matches the finite-N oracle") {
    const auto nn = preset_nn();
    const int n = 4001;
    const FiniteSpectrum spec = finite_spectrum(nn, n);
    for (int alpha = 1; alpha <= 2; ++alpha)
        for (int alphaprime = 1; alphaprime <= 2; ++alphaprime)
            for (long long j : {0LL, 3LL, -11LL, 25LL})
                for (double t : {1.0, 10.0, 40.0}) {
                    const CorrelationIndex idx{alpha, alphaprime, j, t};
                    const double kr = (alpha == alphaprime) ? 1.0 / (n * 1.0) : 0.0;
                    const double fin = finite_correlation(idx, spec, 1.0) + kr;
                    const double lim = limit_correlation(idx, nn, 1.0);
                    CHECK(std::abs(fin - lim) <= 1e-6);
                }
}

TEST_CASE("correlation field drivers") {
    const auto nn = preset_nn();
    SUBCASE("sound peak rides at v0 t minus the Airy crest offset") {
        const auto field = correlation_field(1, 1, 80, 120, {100.0}, nn, 1.0,
                                             CorrelationMethod::exact);
        REQUIRE(field.entries.size() == 41);
        long long argmax = 0;
        double best = -1.0;
        for (const auto& e : field.entries)
            if (std::abs(e.value) > best) {
                best = std::abs(e.value);
                argmax = e.idx.j;
            }
        // crest of Ai is at argument -1.0188: j ~ v0 t - 1.0188 lambda0 t^(1/3)
        const double crest = 100.0 - 1.0188 * 0.5 * std::cbrt(100.0);
        CHECK(std::abs(argmax - crest) <= 1.0);
        for (const auto& e : field.entries) CHECK(e.method == "exact");
    }
    SUBCASE("empty time list gives an empty dataset") {
        const auto field = correlation_field(1, 1, 0, 10, {}, nn, 1.0,
                                             CorrelationMethod::exact);
        CHECK(field.entries.empty());
    }
    SUBCASE("parallel equals serial reference bit for bit") {
        const auto par = correlation_field(2, 1, -10, 10, {4.0, 9.0}, nn, 1.0,
                                           CorrelationMethod::finiteN, 4);
        const auto ser = correlation_field_reference(2, 1, -10, 10, {4.0, 9.0}, nn,
                                                     1.0, CorrelationMethod::finiteN);
        REQUIRE(par.entries.size() == ser.entries.size());
        for (size_t i = 0; i < par.entries.size(); ++i) {
            CHECK(par.entries[i].value == ser.entries[i].value);
            CHECK(par.entries[i].idx.j == ser.entries[i].idx.j);
        }
    }
    SUBCASE("autoselect falls back to finite-N under a tiny panel cap") {
        const CorrelationIndex idx{1, 1, 0, 50.0};
        CHECK_THROWS_AS(limit_correlation(idx, nn, 1.0, 32), QuadratureNonConvergence);
    }
}

TEST_CASE("hierarchy correlation consistency at t = 0") {
    const auto nn = preset_nn();
    const double beta = 1.0;
    for (long long j : {0LL, 2LL, 6LL}) {
        const double hk =
            hierarchy_correlation(0, ChargeKind::even_type, 0,
                                  ChargeKind::even_type, j, 0.0, nn, beta);
        const double s11 = limit_correlation({1, 1, j, 0.0}, nn, beta);
        const double s12 = limit_correlation({1, 2, j, 0.0}, nn, beta);
        const double s21 = limit_correlation({2, 1, j, 0.0}, nn, beta);
        const double s33_structure = 0.5 * (2.0 * s11 * s11 + s12 * s12 + s21 * s21);
        CHECK(std::abs(hk - s33_structure) <= 1e-6);
    }
}

TEST_CASE("hierarchy correlation decays in j") {
    const auto nn = preset_nn();
    const double far = hierarchy_correlation(1, ChargeKind::even_type, 1,
                                             ChargeKind::even_type, 10000, 1.0,
                                             nn, 1.0);
    CHECK(std::abs(far) <= 1e-4);
}

TEST_CASE("even-type diagonal scales like the energy correlation") {
    const auto nn = preset_nn();
    std::vector<double> ts{200.0, 400.0, 800.0, 1600.0};
    std::vector<double> peak;
    for (double t : ts) {
        // sound peak: v0 = 1, lambda0 = 1/2, Airy crest ~1.02 widths inside
        const long long centre = std::llround(t - 1.02 * 0.5 * std::cbrt(t));
        double best = 0.0;
        for (long long j = centre - 1; j <= centre + 1; ++j)
            best = std::max(best, std::abs(hierarchy_correlation(
                                      1, ChargeKind::even_type, 1,
                                      ChargeKind::even_type, j, t, nn, 1.0)));
        peak.push_back(best);
    }
    const double slope = oracle::loglog_slope(ts, peak);
    CHECK(slope == doctest::Approx(-2.0 / 3.0).epsilon(0.15));
}

TEST_CASE("mixed and odd hierarchy kinds evaluate") {
    const auto ex1 = preset_example1();
    const double odd = hierarchy_correlation(1, ChargeKind::odd_type, 2,
                                             ChargeKind::odd_type, 3, 2.0, ex1, 1.0);
    const double mixed = hierarchy_correlation(1, ChargeKind::odd_type, 1,
                                               ChargeKind::even_type, 3, 2.0, ex1, 1.0);
    CHECK(std::isfinite(odd));
    CHECK(std::isfinite(mixed));
    CHECK_THROWS_AS(hierarchy_correlation(0, ChargeKind::odd_type, 1,
                                          ChargeKind::even_type, 0, 1.0, ex1, 1.0),
                    IndexError);
}
