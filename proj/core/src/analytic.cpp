#include "conicfib/analytic.hpp"

#include "conicfib/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace conicfib {

void validate_spec(const MeanValueSpec& spec) {
    if (spec.n < 1 || spec.r < 0 || spec.r > spec.n)
        throw std::invalid_argument("mean-value spec: need 0 <= r <= n, n >= 1");
    if (static_cast<int>(spec.c.size()) != spec.n || static_cast<int>(spec.d.size()) != spec.n ||
        static_cast<int>(spec.alpha.size()) != spec.n)
        throw std::invalid_argument("mean-value spec: c, d, alpha must have length n");
    for (int i = 0; i < spec.n; ++i) {
        if (spec.c[i] < 1) throw std::invalid_argument("mean-value spec: c_i >= 1 required");
        if (spec.d[i] % 2 != 0) throw std::invalid_argument("mean-value spec: d_i must be even");
        if (spec.alpha[i] % 2 == 0)
            throw std::invalid_argument("mean-value spec: alpha_i must be odd");
        if (i < spec.r && ((spec.alpha[i] % 4) + 4) % 4 != 1)
            throw std::invalid_argument("mean-value spec: alpha_i = 1 mod 4 required for i <= r");
    }
}

namespace {

int h_value(const MeanValueSpec& spec, int i, Int p) {  // i 1-based
    if (p % 4 == 1) return 1;
    return i > spec.r ? 1 : 0;
}

}  // namespace

Rational f_factor(const MeanValueSpec& spec) {
    validate_spec(spec);
    std::vector<Int> bad;
    for (Int di : spec.d)
        for (auto [p, e] : factorize(di))
            if (p > 2) bad.push_back(p);
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());

    Rational out(1);
    for (Int p : bad) {
        Rational all(0), avoiding(0);
        for (int i = 1; i <= spec.n; ++i) {
            Rational term = Rational(h_value(spec, i, p)) / spec.c[i - 1];
            all += term;
            if (spec.d[i - 1] % p != 0) avoiding += term;
        }
        out *= (Rational(1) + avoiding / p) / (Rational(1) + all / p);
    }
    return out;
}

MeanValueResult main_term(const MeanValueSpec& spec, std::span<const double> X,
                          Int euler_bound) {
    validate_spec(spec);
    if (static_cast<int>(X.size()) != spec.n)
        throw std::invalid_argument("main_term: need one bound per variable");

    const long double gamma = rat_to_ld(spec.gamma());
    // C = 2^{-gamma-(2n-r)} / prod Gamma(gamma_i) *
    //     prod_{p>2} (1 + p^-1 sum h_i(p)/c_i) (1-1/p)^gamma
    long double log_euler = 0;
    for (Int p : primes_up_to(euler_bound)) {
        if (p == 2) continue;
        long double s = 0;
        for (int i = 1; i <= spec.n; ++i)
            s += h_value(spec, i, p) / rat_to_ld(spec.c[i - 1]);
        log_euler += std::log1p(s / p) + gamma * std::log1p(-1.0L / p);
    }
    long double gamma_prod = 1;
    for (int i = 1; i <= spec.n; ++i) gamma_prod *= gamma_fn(rat_to_ld(spec.gamma_i(i)));
    long double C = std::exp2(-gamma - (2.0L * spec.n - spec.r)) / gamma_prod *
                    std::exp(log_euler);

    MeanValueResult out;
    out.F = f_factor(spec);
    out.C = static_cast<double>(C);
    long double main = rat_to_ld(out.F) * C;
    for (int i = 1; i <= spec.n; ++i) {
        long double xi = X[i - 1];
        main *= xi / std::pow(std::log(xi), 1.0L - rat_to_ld(spec.gamma_i(i)));
    }
    out.main_term = static_cast<double>(main);
    return out;
}

double brute_lhs(const MeanValueSpec& spec, std::span<const Int> X) {
    validate_spec(spec);
    if (static_cast<int>(X.size()) != spec.n)
        throw std::invalid_argument("brute_lhs: need one bound per variable");
    long double box = 1;
    for (Int xi : X) box *= static_cast<long double>(xi);
    if (box > 1e9L) throw std::invalid_argument("brute_lhs: box larger than 1e9");

    const Int xmax = *std::max_element(X.begin(), X.end());
    SpfSieve sieve(xmax);

    // per-variable weight of a squarefree odd a (0 when a violates its
    // conditions): h_i(a)/c_i^{omega(a)}
    auto weight = [&](int i, Int a) -> long double {  // i 1-based
        if (a % 8 != ((spec.alpha[i - 1] % 8) + 8) % 8) return 0;
        if (std::gcd(a, spec.d[i - 1]) != 1) return 0;
        long double w = 1;
        Int x = a;
        while (x > 1) {
            Int p = sieve.spf(x);
            Int q = 0;
            while (x % p == 0) { x /= p; ++q; }
            if (q > 1) return 0;  // not squarefree
            if (h_value(spec, i, p) == 0) return 0;
            w /= rat_to_ld(spec.c[i - 1]);
        }
        return w;
    };

    // recursive sum with pairwise coprimality (mu^2(a_1...a_n))
    long double total = 0;
    std::vector<Int> chosen(spec.n);
    auto rec = [&](auto&& self, int i, long double acc) -> void {
        if (i == spec.n) {
            total += acc;
            return;
        }
        for (Int a = 1; a <= X[i]; a += 2) {
            long double w = weight(i + 1, a);
            if (w == 0) continue;
            bool coprime = true;
            for (int j = 0; j < i && coprime; ++j) coprime = std::gcd(chosen[j], a) == 1;
            if (!coprime) continue;
            chosen[i] = a;
            self(self, i + 1, acc * w);
        }
    };
    rec(rec, 0, 1.0L);
    return static_cast<double>(total);
}

double beta_c(const Rational& c, Int P) {
    const long double cc = rat_to_ld(c);
    long double log_euler = 0;
    for (Int p : primes_up_to(P)) {
        if (p == 2) continue;
        log_euler += std::log1p(1.0L / (cc * (p - 1))) + (1.0L / cc) * std::log1p(-1.0L / p);
    }
    return static_cast<double>(std::exp2(-2.0L - 1.0L / cc) / gamma_fn(1.0L / cc) *
                               std::exp(log_euler));
}

double beta_tilde_c(const Rational& c, Int P) {
    const long double cc = rat_to_ld(c);
    long double log_euler = 0;
    for (Int p : primes_up_to(P)) {
        if (p == 2) continue;
        long double num = (p % 4 == 1) ? 1.0L / (cc * (p - 1)) : 0.0L;
        log_euler += std::log1p(num) + (0.5L / cc) * std::log1p(-1.0L / p);
    }
    return static_cast<double>(std::exp2(-1.0L - 0.5L / cc) / gamma_fn(0.5L / cc) *
                               std::exp(log_euler));
}

}  // namespace conicfib
