#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "satcov/fso_channel.hpp"
#include "satcov/quadrature.hpp"
#include "satcov/rng.hpp"
#include "satcov/specfun/bell.hpp"
#include "satcov/specfun/gamma.hpp"
#include "satcov/specfun/hyp2f1.hpp"
#include "satcov/specfun/meijer_fso.hpp"

#include "oracles.hpp"

using namespace satcov;

TEST_CASE("ln_gamma known values") {
    CHECK(ln_gamma(1.0) == Catch::Approx(0.0).margin(1e-15));
    CHECK(ln_gamma(0.5) == Catch::Approx(0.5723649429247001).epsilon(1e-13));
    CHECK(ln_gamma(10.0) == Catch::Approx(12.801827480081469).epsilon(1e-13));
    // factorial product oracle
    double acc = 0.0;
    for (int k = 2; k <= 9; ++k) acc += std::log(static_cast<double>(k));
    CHECK(ln_gamma(10.0) == Catch::Approx(acc).epsilon(1e-14));
    CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(-2.5), std::domain_error);
}

TEST_CASE("lower incomplete gamma") {
    SECTION("closed form at s=1") {
        for (double x : {0.0, 0.3, 1.0, 5.0, 15.0})
            CHECK(lower_incomplete_gamma(1.0, x) == Catch::Approx(-std::expm1(-x)).margin(1e-14));
    }
    SECTION("zero at x=0") {
        CHECK(lower_incomplete_gamma(2.5, 0.0) == 0.0);
    }
    SECTION("quadrature oracle at (2.5, 3.0)") {
        const double ref = oracles::lower_inc_gamma(2.5, 3.0);
        CHECK(lower_incomplete_gamma(2.5, 3.0) == Catch::Approx(ref).epsilon(1e-10));
        CHECK(lower_incomplete_gamma(2.5, 3.0) == Catch::Approx(0.922271212307834).epsilon(1e-12));
    }
    SECTION("monotone in x, limit Gamma(s)") {
        double prev = 0.0;
        for (double x = 0.5; x < 40.0; x += 0.5) {
            const double v = lower_incomplete_gamma(3.7, x);
            CHECK(v >= prev);
            prev = v;
        }
        CHECK(prev == Catch::Approx(std::exp(ln_gamma(3.7))).epsilon(1e-12));
    }
    SECTION("property: 1e4 random points vs quadrature") {
        std::mt19937_64 gen(42);
        std::uniform_real_distribution<double> us(0.1, 10.0), ux(1e-6, 20.0);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double s = us(gen), x = ux(gen);
            const double ref = oracles::lower_inc_gamma(s, x);
            worst = std::max(worst, std::fabs(lower_incomplete_gamma(s, x) - ref) / ref);
        }
        CHECK(worst < 1e-9);
    }
    CHECK_THROWS_AS(lower_incomplete_gamma(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(lower_incomplete_gamma(1.0, -1.0), std::domain_error);
}

TEST_CASE("gauss_2f1 values") {
    CHECK(gauss_2f1(1.7, 2.3, 3.1, 0.0) == 1.0);
    CHECK(gauss_2f1(1, 1, 2, -1) == Catch::Approx(std::log(2.0)).epsilon(1e-12));
    SECTION("Euler-integral oracle at the stress point") {
        const double ref = oracles::hyp2f1_euler(5.0, 5.667, 6.667, -37.2);
        CHECK(gauss_2f1(5.0, 5.667, 6.667, -37.2) == Catch::Approx(ref).epsilon(1e-8));
    }
    SECTION("series and Euler branches agree in the overlap") {
        for (double z : {-20.0, -35.0, -48.0}) {
            const double a = 5, b = 7, c = 8;
            const double series =
                std::pow(1.0 - z, -a) * detail::hyp2f1_series(a, c - b, c, z / (z - 1.0));
            CHECK(detail::hyp2f1_euler(a, b, c, z) == Catch::Approx(series).epsilon(1e-10));
        }
    }
    SECTION("very negative arguments stay finite and positive") {
        for (double z : {-1e4, -1e6, -9.4e8}) {
            const double v = gauss_2f1(5, 7, 8, z);
            CHECK(v > 0.0);
            CHECK(v < 1.0);
            // leading asymptotic order is |z|^{-a} here
            CHECK(v == Catch::Approx(oracles::hyp2f1_euler(5, 7, 8, z)).epsilon(1e-8));
        }
    }
    SECTION("contiguous relation on random triples") {
        std::mt19937_64 gen(7);
        std::uniform_real_distribution<double> ua(0.3, 8.0), ub(0.3, 8.0), uc(0.5, 3.0),
            uz(0.01, 50.0);
        for (int i = 0; i < 300; ++i) {
            const double a = ua(gen), b = ub(gen), c = b + uc(gen), z = -uz(gen);
            const double f = gauss_2f1(a, b, c, z);
            const double fam = gauss_2f1(a - 1.0, b, c, z);
            const double fcp = gauss_2f1(a, b, c + 1.0, z);
            const double resid = c * (1.0 - z) * f - c * fam + (c - b) * z * fcp;
            const double scale = std::max({std::fabs(c * (1.0 - z) * f), std::fabs(c * fam),
                                           std::fabs((c - b) * z * fcp)});
            CHECK(std::fabs(resid) <= 1e-8 * scale);
        }
    }
    CHECK_THROWS_AS(gauss_2f1(1, 2, -3, -1.0), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(1, 2, 3, 0.5), std::domain_error);
}

TEST_CASE("partial Bell polynomials") {
    const std::vector<double> x = {1.3, -0.7, 2.1, 0.4, -1.1, 0.9};
    CHECK(partial_bell(1, 1, std::span(x.data(), 1)) == Catch::Approx(1.3));
    CHECK(partial_bell(4, 4, std::span(x.data(), 1)) == Catch::Approx(std::pow(1.3, 4)));
    CHECK(partial_bell(3, 2, std::span(x.data(), 2)) == Catch::Approx(3.0 * 1.3 * -0.7));
    SECTION("brute-force set-partition oracle") {
        for (int n = 1; n <= 6; ++n)
            for (int k = 1; k <= n; ++k) {
                const double ref = oracles::bell_bruteforce(n, k, x);
                const double got = partial_bell(n, k, std::span(x.data(), static_cast<size_t>(n - k + 1)));
                CHECK(got == Catch::Approx(ref).margin(1e-12));
            }
    }
    SECTION("recurrence up to n = 10") {
        std::mt19937_64 gen(3);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        std::vector<double> y(10);
        for (auto& v : y) v = u(gen);
        BellTable t(y, 10);
        for (int n = 1; n <= 10; ++n)
            for (int k = 1; k <= n; ++k) {
                double rhs = 0.0;
                for (int j = 1; j <= n - k + 1; ++j)
                    rhs += binomial(n - 1, j - 1) * y[static_cast<size_t>(j - 1)] *
                           t.partial(n - j, k - 1);
                const double lhs = t.partial(n, k);
                CHECK(lhs == Catch::Approx(rhs).margin(1e-12 * std::max(1.0, std::fabs(lhs))));
            }
    }
    CHECK_THROWS_AS(partial_bell(3, 4, std::span(x.data(), 2)), std::domain_error);
    CHECK_THROWS_AS(partial_bell(0, 0, std::span(x.data(), 1)), std::domain_error);
}

TEST_CASE("falling product") {
    CHECK(falling_product(5, 0) == 1);
    CHECK(falling_product(5, 2) == 20);
    CHECK(falling_product(3, 4) == 0);
    CHECK(rising_product(5.0, 2) == Catch::Approx(30.0));
    CHECK(rising_product(5.0, 0) == 1.0);
}

TEST_CASE("chebyshev nodes and weights") {
    SECTION("explicit nodes") {
        const QuadratureRule r1 = cheb_gauss_nodes(1);
        REQUIRE(r1.nodes.size() == 1);
        CHECK(r1.nodes[0] == Catch::Approx(0.0).margin(1e-15));
        const QuadratureRule r2 = cheb_gauss_nodes(2);
        CHECK(r2.nodes[0] == Catch::Approx(std::sqrt(0.5)));
        CHECK(r2.nodes[1] == Catch::Approx(-std::sqrt(0.5)));
    }
    SECTION("nodes strictly decreasing, inside (-1,1)") {
        const QuadratureRule r = cheb_gauss_nodes(17);
        for (size_t i = 0; i < r.nodes.size(); ++i) {
            CHECK(std::fabs(r.nodes[i]) < 1.0);
            if (i > 0) CHECK(r.nodes[i] < r.nodes[i - 1]);
        }
    }
    SECTION("classic rule integrates sqrt(1-t^2) to pi/2") {
        const int M = 30;
        const QuadratureRule r = cheb_gauss_nodes(M);
        double sum = 0.0;
        for (double t : r.nodes) sum += kPi / M * std::sqrt(1.0 - t * t);
        CHECK(sum == Catch::Approx(kPi / 2.0).margin(1e-12));
    }
    SECTION("exact for polynomials against the Chebyshev weight") {
        // int_{-1}^{1} t^k / sqrt(1-t^2) dt: 0 for odd k, pi (k-1)!!/k!! for even.
        const int M = 8;
        const QuadratureRule r = cheb_gauss_nodes(M);
        for (int k = 0; k <= 2 * M - 1; ++k) {
            double sum = 0.0;
            for (double t : r.nodes) sum += kPi / M * std::pow(t, k);
            double exact = 0.0;
            if (k % 2 == 0) {
                exact = kPi;
                for (int j = 2; j <= k; j += 2) exact *= (j - 1.0) / j;
            }
            CHECK(sum == Catch::Approx(exact).margin(1e-12));
        }
    }
    SECTION("corrected weights: spectral accuracy for a smooth integrand") {
        auto f = [](double t) { return std::exp(t) / (1.1 + t); };
        const double ref = oracles::integrate(f, -1.0, 1.0, 1e-14);
        CHECK(integrate_chebyshev(f, -1.0, 1.0, 30) == Catch::Approx(ref).margin(1e-10));
    }
}

TEST_CASE("meijer-G channel CDF") {
    const MeijerFsoParams p = MeijerFsoParams::make(4.0, 1.9, 1.21);
    CHECK(meijer_g_fso_cdf(p, 0.0) == 0.0);
    CHECK(meijer_g_fso_cdf(p, 2e6) == Catch::Approx(1.0).margin(1e-6));

    SECTION("reference values (independent multiprecision evaluation)") {
        CHECK(meijer_g_fso_cdf(p, 1e-6) == Catch::Approx(2.08055521e-8).epsilon(1e-7));
        CHECK(meijer_g_fso_cdf(p, 0.1) == Catch::Approx(0.02128568239).epsilon(1e-8));
        CHECK(meijer_g_fso_cdf(p, 1.0) == Catch::Approx(0.2394101955).epsilon(1e-8));
        CHECK(meijer_g_fso_cdf(p, 23.6) == Catch::Approx(0.9900976826).epsilon(1e-7));
    }
    SECTION("monotone, in [0,1]") {
        double prev = 0.0;
        for (double lz = -6.0; lz <= 3.0; lz += 0.1) {
            const double v = meijer_g_fso_cdf(p, std::pow(10.0, lz));
            CHECK(v >= prev - 1e-9);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            prev = v;
        }
    }
    SECTION("series and complement branches agree in the overlap") {
        for (double z = 10.0; z <= 60.0; z += 5.0) {
            const double series = detail::meijer_fso_series(p, z);
            const double compl2 = 1.0 - detail::meijer_fso_complement(p, z);
            CHECK(series == Catch::Approx(compl2).margin(1e-7));
        }
    }
    SECTION("Monte-Carlo sampler oracle: empirical median maps to 1/2") {
        FsoLinkParams f;
        f.alpha = 4.0;
        f.beta = 1.9;
        f.omega = 1.1;
        f.A0 = 0.5;
        f.h_l = db_to_linear(-0.35);
        f.eta = 0.5;
        f.lambda_wl = 1550e-9;
        f.G_S = f.G_R = db_to_linear(107.85);
        f.P_S = dbm_to_watt(40.0);
        f.N_F = dbm_to_watt(-100.0);
        Rng rng(20240901);
        const size_t n = 1000000;
        std::vector<double> h(n);
        for (auto& v : h) v = sample_fso_gain(f, rng);
        std::nth_element(h.begin(), h.begin() + n / 2, h.end());
        const double med = h[n / 2];
        const double z = f.alpha * f.beta / (f.A0 * f.h_l) * med;
        CHECK(meijer_g_fso_cdf(p, z) == Catch::Approx(0.5).margin(2e-3));
    }
}

TEST_CASE("meijer-G asymptotic tail") {
    const MeijerFsoParams p = MeijerFsoParams::make(4.0, 1.9, 1.21);
    CHECK(meijer_g_fso_series_tail(p, 0.0) == 0.0);
    SECTION("ratio to exact tends to one") {
        const double t = meijer_g_fso_series_tail(p, 1e-6);
        const double e = meijer_g_fso_cdf(p, 1e-6);
        CHECK(t / e == Catch::Approx(1.0).margin(1e-2));
    }
    SECTION("dominant exponent is min{w2, alpha, beta}") {
        // tail(z)/z^1.21 approaches a constant as z -> 0
        const double r1 = meijer_g_fso_series_tail(p, 1e-8) / std::pow(1e-8, 1.21);
        const double r2 = meijer_g_fso_series_tail(p, 1e-10) / std::pow(1e-10, 1.21);
        CHECK(r1 == Catch::Approx(r2).epsilon(1e-3));
    }
}

TEST_CASE("pole-coincidence perturbation") {
    SECTION("direct coincidence") {
        const MeijerFsoParams p = MeijerFsoParams::make(4.0, 4.0, 1.21);
        CHECK(p.perturbed);
        CHECK(p.alpha != p.beta);
        const double v = meijer_g_fso_cdf(p, 1.0);
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
    SECTION("integer-offset coincidence") {
        const MeijerFsoParams p = MeijerFsoParams::make(4.0, 2.0, 1.21);
        CHECK(p.perturbed);
        const double v = meijer_g_fso_cdf(p, 1.0);
        CHECK(std::isfinite(v));
        // perturbation is 1e-6 in the exponent; the value moves by O(eps*log z)
        const MeijerFsoParams q = MeijerFsoParams::make(4.0, 2.0 + 5e-5, 1.21);
        CHECK(meijer_g_fso_cdf(q, 1.0) == Catch::Approx(v).margin(1e-4));
    }
    SECTION("clean parameters untouched") {
        const MeijerFsoParams p = MeijerFsoParams::make(4.0, 1.9, 1.21);
        CHECK_FALSE(p.perturbed);
        CHECK(p.alpha == 4.0);
        CHECK(p.beta == 1.9);
    }
    CHECK_THROWS_AS(MeijerFsoParams::make(-1.0, 2.0, 1.0), std::domain_error);
}
