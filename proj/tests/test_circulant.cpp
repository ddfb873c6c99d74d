#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lattice/circulant.hpp"
#include "oracles.hpp"

using namespace lattice;

namespace {

CouplingVector random_coupling(int m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.05, 2.0);
    CouplingVector c;
    c.m = m;
    c.kappa.resize(m);
    for (auto& k : c.kappa) k = unif(rng);
    return c;
}

}  // namespace

TEST_CASE("interaction generator values") {
    const auto nn = interaction_generator({1, {1.0}});
    REQUIRE(nn.a.size() == 2);
    CHECK(nn.a[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(nn.a[1] == doctest::Approx(-1.0).epsilon(1e-15));

    const auto two = interaction_generator({2, {1.0, 1.0}});
    CHECK(two.a[0] == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(two.a[1] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(two.a[2] == doctest::Approx(-1.0).epsilon(1e-15));

    // direct substitution of the m=3 couplings (1, 1/8, 7/72)
    const double k2 = 1.0 / 8.0, k3 = 7.0 / 72.0;
    const auto three = interaction_generator({3, {1.0, k2, k3}});
    CHECK(three.a[0] == doctest::Approx(2.0 * (1.0 + k2 + k3)).epsilon(1e-15));
    CHECK(three.a[0] == doctest::Approx(2.4444444444444446).epsilon(1e-14));
    CHECK(three.a[1] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(three.a[2] == doctest::Approx(-0.125).epsilon(1e-15));
    CHECK(three.a[3] == doctest::Approx(-7.0 / 72.0).epsilon(1e-15));
}

TEST_CASE("coupling validation") {
    CHECK_THROWS_AS(interaction_generator({1, {0.0}}), InvalidCoupling);
    CHECK_THROWS_AS(interaction_generator({2, {1.0, -0.5}}), InvalidCoupling);
    CHECK_THROWS_AS(interaction_generator({2, {1.0}}), InvalidCoupling);
    CHECK_THROWS_AS(interaction_generator({3, {1.0, -0.1, 1.0}}), InvalidCoupling);
}

TEST_CASE("localized square root closed forms") {
    const auto nn = localized_square_root({1, {1.0}});
    REQUIRE(nn.tau.size() == 2);
    CHECK(nn.tau[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(nn.tau[1] == doctest::Approx(1.0).epsilon(1e-12));

    const auto two = localized_square_root({2, {1.0, 1.0}});
    const auto ref = oracle::tau_m2_closed_form(1.0, 1.0);
    REQUIRE(two.tau.size() == 3);
    for (int i = 0; i < 3; ++i)
        CHECK(two.tau[i] == doctest::Approx(ref[i]).epsilon(1e-12));
    CHECK(two.tau[0] == doctest::Approx(-(1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));

    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> unif(0.05, 3.0);
    for (int rep = 0; rep < 25; ++rep) {
        const double k1 = unif(rng), k2 = unif(rng);
        const auto got = localized_square_root({2, {k1, k2}});
        const auto want = oracle::tau_m2_closed_form(k1, k2);
        for (int i = 0; i < 3; ++i)
            CHECK(got.tau[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
}

TEST_CASE("square root determinism") {
    const CouplingVector c{4, {1.0, 0.3, 0.0, 0.7}};
    const auto a = localized_square_root(c);
    const auto b = localized_square_root(c);
    for (size_t i = 0; i < a.tau.size(); ++i) CHECK(a.tau[i] == b.tau[i]);
}

TEST_CASE("factorization residual against the dense oracle") {
    std::mt19937_64 rng(7);
    for (int m = 1; m <= 8; ++m) {
        for (int rep = 0; rep < 4; ++rep) {
            const auto c = random_coupling(m, rng);
            const auto sq = localized_square_root(c);
            const double generator_route = factorization_residual(sq, c, 101);
            const double dense_route = oracle::dense_residual(sq, c, 101);
            CHECK(generator_route <= 1e-10);
            CHECK(std::abs(generator_route - dense_route) <= 1e-12);
        }
    }
}

TEST_CASE("residual across chain lengths and tail identities") {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 20; ++rep) {
        const int m = 1 + static_cast<int>(rng() % 8);
        const auto c = random_coupling(m, rng);
        const auto sq = localized_square_root(c);
        double sum = 0.0, weighted = 0.0, target = 0.0;
        for (int s = 0; s <= m; ++s) sum += sq.tau[s];
        for (int s = 1; s <= m; ++s) {
            weighted += s * sq.tau[s];
            target += static_cast<double>(s) * s * c.kappa[s - 1];
        }
        CHECK(std::abs(sum) <= 1e-12 * std::max(1.0, std::abs(sq.tau[0])));
        CHECK(weighted > 0.0);
        CHECK(std::abs(weighted * weighted - target) <= 1e-10);
        for (int n : {2 * m + 3, 101, 401}) {
            const int nn = (n % 2 == 0) ? n + 1 : n;
            CHECK(factorization_residual(sq, c, nn) <= 1e-10);
        }
    }
}

TEST_CASE("exact residuals and sensitivity") {
    const CouplingVector nn{1, {1.0}};
    LocalSquareRoot exact{{-1.0, 1.0}};
    CHECK(factorization_residual(exact, nn, 101) == 0.0);

    const CouplingVector two{2, {1.0, 1.0}};
    LocalSquareRoot closed{oracle::tau_m2_closed_form(1.0, 1.0)};
    CHECK(factorization_residual(closed, two, 101) <= 1e-14);

    LocalSquareRoot corrupted = closed;
    corrupted.tau[1] += 1e-3;
    CHECK(factorization_residual(corrupted, two, 101) >= 1e-4);
}

TEST_CASE("circulant application kills constants") {
    const auto model = preset_nn();
    const int n = 31;
    const std::vector<double> ones(n, 1.0);
    const auto a_gen = physical_embedding(model.gen, n);
    const auto t_gen = half_physical_embedding(model.sqroot, n);
    for (double v : apply_circulant(a_gen, ones)) CHECK(std::abs(v) <= 1e-14);
    for (double v : apply_circulant(t_gen, ones)) CHECK(std::abs(v) <= 1e-14);
    for (double v : elongation(ones, model.sqroot)) CHECK(std::abs(v) <= 1e-14);
}

TEST_CASE("banded loop agrees with DFT diagonalization") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss;
    const auto model = preset_example1();
    const int n = 11;
    std::vector<double> x(n);
    for (auto& v : x) v = gauss(rng);
    for (const auto& gen : {physical_embedding(model.gen, n),
                            half_physical_embedding(model.sqroot, n)}) {
        const auto banded = apply_circulant(gen, x);
        const auto dft = apply_circulant_dft(gen, x);
        for (int i = 0; i < n; ++i) CHECK(std::abs(banded[i] - dft[i]) <= 1e-12);
    }
}

TEST_CASE("elongation formulas") {
    const auto nn = preset_nn();
    const int n = 15;
    std::vector<double> q(n, 0.0);
    q[1] = 1.0;
    const auto r = elongation(q, nn.sqroot);
    // r_j = q_{j+1} - q_j for the nearest-neighbour chain
    CHECK(r[0] == doctest::Approx(1.0));
    CHECK(r[1] == doctest::Approx(-1.0));
    for (int j = 2; j < n; ++j) CHECK(r[j] == 0.0);

    const auto ex1 = preset_example1();
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    std::vector<double> qq(n);
    for (auto& v : qq) v = gauss(rng);
    const auto rr = elongation(qq, ex1.sqroot);
    for (int j = 0; j < n; ++j) {
        const double want = ex1.sqroot.tau[1] * (qq[(j + 1) % n] - qq[j]) +
                            ex1.sqroot.tau[2] * (qq[(j + 2) % n] - qq[j]);
        CHECK(rr[j] == doctest::Approx(want).epsilon(1e-13));
    }
    double rsum = 0.0;
    for (double v : rr) rsum += v;
    CHECK(std::abs(rsum) <= 1e-12);
}

TEST_CASE("interaction quadratic form is positive semidefinite") {
    const auto model = preset_example2();
    const int n = 31;
    std::mt19937_64 rng(123);
    std::normal_distribution<double> gauss;
    const auto a_gen = physical_embedding(model.gen, n);
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<double> x(n);
        for (auto& v : x) v = gauss(rng);
        const auto ax = apply_circulant(a_gen, x);
        double quad = 0.0, norm = 0.0;
        for (int i = 0; i < n; ++i) {
            quad += x[i] * ax[i];
            norm += x[i] * x[i];
        }
        CHECK(quad >= -1e-10 * norm * model.gen.a[0]);
        CHECK(quad > 1e-8);  // random vectors are never constant
    }
}

TEST_CASE("degenerate root sets raise classification errors") {
    using cd = std::complex<double>;
    // a conjugate pair within 1e-10 of the unit circle, away from z = 1
    const cd bad = std::polar(1.0 + 1e-10, 2.0);
    CHECK_THROWS_AS(
        detail::tau_from_symbol_roots({1.0, 1.0, bad, std::conj(bad)}, 4.0, 2),
        RootClassificationError);
    // odd multiplicity at z = 1
    CHECK_THROWS_AS(detail::tau_from_symbol_roots({1.0, 2.0, 0.5, 3.0}, 4.0, 2),
                    RootClassificationError);
    // inside/outside count mismatch
    CHECK_THROWS_AS(detail::tau_from_symbol_roots({1.0, 1.0, 2.0, 3.0}, 4.0, 2),
                    RootClassificationError);
}

TEST_CASE("dimension guards") {
    const auto model = preset_example1();
    CHECK_THROWS_AS(physical_embedding(model.gen, 4), DimensionMismatch);
    CHECK_THROWS_AS(physical_embedding(model.gen, 6), DimensionMismatch);
    CHECK_THROWS_AS(half_physical_embedding(model.sqroot, 12), DimensionMismatch);
    std::vector<double> gen(9, 0.0), x(7, 0.0);
    CHECK_THROWS_AS(apply_circulant(gen, x), DimensionMismatch);
}
