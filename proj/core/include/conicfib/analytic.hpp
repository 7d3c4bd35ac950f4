#pragma once

// Mean-value toolkit, kept as an independent oracle layer: the weighted count
//   sum_{a_i <= X_i, gcd(a_i,d_i)=1, a_i = alpha_i mod 8} mu^2(a_1...a_n)
//       prod_i h_i(a_i) / c_i^{omega(a_i)}
// and its main term F * C * prod X_i / prod (log X_i)^{1-gamma_i}, where for
// i <= r only primes 1 mod 4 may divide a_i (h_i kills the rest) and
// gamma_i = 1/(2 c_i), while gamma_i = 1/c_i for i > r. Nothing here feeds
// the leading-constant assembly; the two sides validate each other.

#include "conicfib/qlocal.hpp"
#include "conicfib/rational.hpp"

#include <span>
#include <vector>

namespace conicfib {

struct MeanValueSpec {
    int n = 1;
    int r = 0;                // indices 1..r carry the "p = 1 mod 4 only" support
    std::vector<Rational> c;  // c_i >= 1
    std::vector<Int> d;       // even moduli to stay coprime to
    std::vector<int> alpha;   // odd residues mod 8, alpha_i = 1 mod 4 for i <= r

    Rational gamma_i(int i) const {  // 1-based
        return i <= r ? Rational(1) / (2 * c[i - 1]) : Rational(1) / c[i - 1];
    }
    Rational gamma() const {
        Rational g(0);
        for (int i = 1; i <= n; ++i) g += gamma_i(i);
        return g;
    }
};

void validate_spec(const MeanValueSpec& spec);

// F(d_1..d_n): local correction at the odd primes dividing some d_i; exact.
Rational f_factor(const MeanValueSpec& spec);

struct MeanValueResult {
    double main_term = 0;
    double C = 0;  // the Euler-product constant of the main term
    Rational F = Rational(1);
};

// Main term at the box X; the C product is truncated at primes <= euler_bound.
MeanValueResult main_term(const MeanValueSpec& spec, std::span<const double> X,
                          Int euler_bound = 1000000);

// Exact direct evaluation of the left side by sieving; prod X_i <= 1e9.
double brute_lhs(const MeanValueSpec& spec, std::span<const Int> X);

// The one-variable constants beta_c and beta~_c (Euler products truncated at P).
double beta_c(const Rational& c, Int P = 1000000);
double beta_tilde_c(const Rational& c, Int P = 1000000);

}  // namespace conicfib
