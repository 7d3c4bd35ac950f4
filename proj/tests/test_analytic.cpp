#include "conicfib/analytic.hpp"

#include "conicfib/specialfn.hpp"

#include <doctest.h>

#include <cmath>

using namespace conicfib;

TEST_CASE("f_factor") {
    // all d_i = 2: no odd bad primes
    MeanValueSpec s1{1, 0, {Rational(1)}, {2}, {1}};
    CHECK(f_factor(s1) == Rational(1));

    // n = 1, c = 1, d = 6, h(3) = 1: factor at 3 is (1 + 1/3)^{-1} * 1 = 3/4
    MeanValueSpec s2{1, 0, {Rational(1)}, {6}, {1}};
    CHECK(f_factor(s2) == Rational(3, 4));

    // multiplicativity over the bad primes
    MeanValueSpec s15{1, 0, {Rational(2)}, {30}, {1}};
    MeanValueSpec s3{1, 0, {Rational(2)}, {6}, {1}};
    MeanValueSpec s5{1, 0, {Rational(2)}, {10}, {1}};
    CHECK(f_factor(s15) == f_factor(s3) * f_factor(s5));

    // r = 1: at p = 3 mod 4 the weight disappears entirely
    MeanValueSpec s4{1, 1, {Rational(1)}, {6}, {1}};
    CHECK(f_factor(s4) == Rational(1));  // h_1(3) = 0: both factors are empty
    MeanValueSpec s5m{1, 1, {Rational(1)}, {10}, {1}};
    CHECK(f_factor(s5m) == Rational(5, 6));  // at 5: (1+1/5)^{-1}

    CHECK_THROWS_AS(f_factor(MeanValueSpec{1, 0, {Rational(1)}, {3}, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(f_factor(MeanValueSpec{1, 1, {Rational(1)}, {2}, {3}}), std::invalid_argument);
}

TEST_CASE("brute_lhs on a hand-enumerable box") {
    // squarefree odd a <= 100, a = 1 mod 8: {1, 17, 33, 41, 57, 65, 73, 89, 97}
    MeanValueSpec spec{1, 0, {Rational(1)}, {2}, {1}};
    CHECK(brute_lhs(spec, std::vector<Int>{100}) == doctest::Approx(9.0).epsilon(1e-12));

    // with c = 2 each term weighs 2^{-omega(a)}
    MeanValueSpec half{1, 0, {Rational(2)}, {2}, {1}};
    // omega: 1->0, 17->1, 33->2, 41->1, 57->2, 65->2, 73->1, 89->1, 97->1
    double expect = 1 + 5 * 0.5 + 3 * 0.25;
    CHECK(brute_lhs(half, std::vector<Int>{100}) == doctest::Approx(expect).epsilon(1e-12));

    // r = n = 1: only p = 1 mod 4 survive; a <= 100, a = 5 mod 8,
    // squarefree with all prime factors 1 mod 4: {5, 13, 29, 37, 53, 61, 85}
    MeanValueSpec r1{1, 1, {Rational(1)}, {2}, {5}};
    CHECK(brute_lhs(r1, std::vector<Int>{100}) == doctest::Approx(7.0).epsilon(1e-12));

    CHECK_THROWS_AS(brute_lhs(spec, std::vector<Int>{2000000000}), std::invalid_argument);
}

TEST_CASE("main_term matches a direct density computation for the simplest spec") {
    // density of odd squarefree a = 1 mod 8 is 1/pi^2
    MeanValueSpec spec{1, 0, {Rational(1)}, {2}, {1}};
    auto mt = main_term(spec, std::vector<double>{1e6});
    const double pi = 3.14159265358979323846;
    CHECK(mt.main_term == doctest::Approx(1e6 / (pi * pi)).epsilon(1e-4));
}

TEST_CASE("beta constants and the product relation") {
    const Int P = 200000;
    for (auto [n, r] : {std::pair<int, int>{1, 0}, {1, 1}, {2, 1}, {3, 2}}) {
        std::vector<Rational> c;
        for (int i = 0; i < n; ++i) c.push_back(Rational(i + 1));
        MeanValueSpec spec{n, r, c, std::vector<Int>(n, 2), std::vector<int>(n, 1)};
        long double lhs = 1;
        for (int i = 1; i <= n; ++i)
            lhs *= (i <= r) ? beta_tilde_c(c[i - 1], P) : beta_c(c[i - 1], P);
        CHECK(lhs > 0);

        // 2^{-(r + 2(n-r) + gamma)} / prod Gamma(gamma_i) *
        //   prod_p prod_i (1 + h_i(p)/(c_i(p-1))) (1-1/p)^gamma
        long double gamma = rat_to_ld(spec.gamma());
        long double log_euler = 0;
        for (Int p : primes_up_to(P)) {
            if (p == 2) continue;
            for (int i = 1; i <= n; ++i) {
                long double h = (p % 4 == 1 || i > r) ? 1.0L : 0.0L;
                log_euler += std::log1p(h / (rat_to_ld(c[i - 1]) * (p - 1)));
            }
            log_euler += gamma * std::log1p(-1.0L / p);
        }
        long double gp = 1;
        for (int i = 1; i <= n; ++i) gp *= gamma_fn(rat_to_ld(spec.gamma_i(i)));
        long double rhs = std::exp2(-(r + 2.0L * (n - r) + gamma)) / gp * std::exp(log_euler);
        CHECK(std::fabs(lhs / rhs - 1.0L) < 1e-10L);
    }
}

TEST_CASE("main_term vs brute_lhs at desk scale (single spec)") {
    MeanValueSpec spec{1, 0, {Rational(2)}, {2}, {3}};
    double lhs = brute_lhs(spec, std::vector<Int>{1000000});
    auto mt = main_term(spec, std::vector<double>{1e6});
    CHECK(lhs / mt.main_term == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("two-variable mean value vs the double-sum oracle") {
    MeanValueSpec spec{2, 1, {Rational(2), Rational(1)}, {2, 6}, {5, 1}};
    double lhs = brute_lhs(spec, std::vector<Int>{1000, 1000});
    auto mt = main_term(spec, std::vector<double>{1000.0, 1000.0});
    CHECK(lhs / mt.main_term == doctest::Approx(1.0).epsilon(0.25));
}
