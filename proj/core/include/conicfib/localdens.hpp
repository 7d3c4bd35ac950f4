#pragma once

// Exact per-place density factors and the assembled leading constant.
//
// For an element g = (J, f) and odd p, with gamma = sum_i |V_{i}|^{-1}, the
// character-sum side is
//   Lambda_p(g) = (1-1/p)^gamma (1-p^-2)^-n
//       sum_{S proper, f(S) in W_S} BrM(f,J,S,p) h_S(p) / (c_S p^|S|) (1 - p^{-2(n-|S|)})
// and the Tamagawa side, defined for g in PBM, is
//   sigma_p(g) = (1-1/p)^gamma (1-p^-2)^-n
//       sum_{S proper, f(S) in W_S} h_S(p) / (c_S p^|S|) (1 - p^{-2(n-|S|)}) (-1/p)^{kappa(g,S)}.
// Both are carried exactly as (mantissa, gamma) pairs with value
// mantissa * (1 - 1/p)^gamma.

#include "conicfib/brgroup.hpp"
#include "conicfib/f2res.hpp"
#include "conicfib/family.hpp"
#include "conicfib/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace conicfib {

struct LocalFactor {
    Rational mantissa;
    Rational gamma;
    bool operator==(const LocalFactor&) const = default;
};

enum class LambdaMode { full, squarefree };

// (-1/x) for odd x: +1 iff x = 1 mod 4.
int chi4(Int128 x);

// h_S(p) = 1 for p = 1 mod 4, 1_{S not in D} for p = 3 mod 4 (mask 0 -> 1).
int h_S(const ResidueData& res, std::uint64_t mask, Int p);

// Br(f, S, a) = (-1,a)_2 ^ (<-,f(S)> + sum_{i in S} <-,f({i})> + sum_{{i,j} in S} <{j},f({i})>)
// and BrM(f, J, S, a) = Br(f, S, a) * (-1,a)_2^{|J n S|}; a odd.
int br_char(const BMSubElem& g, std::uint64_t mask, Int128 a);
int brm_char(const BMSubElem& g, std::uint64_t mask, Int128 a);

// Sigma(p) = (1 + p^-1 sum_j h_j(p)/c_j)^-1 and Sigma_m(p) = Sigma(p) (1 + p^-1 sum_{j != m} h_j(p)/c_j).
Rational sigma_shorthand(const ResidueData& res, Int p);
Rational sigma_m_shorthand(const ResidueData& res, int m_index, Int p);

// The function g(w, (b_i)) = F(d_1..d_n) mu^2(2w), d_j = w * gcd{b_i : i != j},
// where F is the bad-prime correction factor of the mean-value main term.
Rational g_weight(const ResidueData& res, Int w, std::span<const Int> b);
// Closed form: mu^2(2w) prod_{p|w} Sigma(p) prod_m prod_{p | b_i (i != m), p coprime to b_m w} Sigma_m(p).
Rational g_weight_closed_form(const ResidueData& res, Int w, std::span<const Int> b);

LocalFactor lambda_p(const ResidueData& res, const BMSubElem& g, Int p, LambdaMode mode);
LocalFactor sigma_p(const ResidueData& res, const BMSubElem& g, Int p);

struct TwoAdicClass {
    std::uint64_t lambda_mask = 0;
    std::vector<int> u;  // entries in {+1,-1,+3,-3}

    int sum_lambda() const { return std::popcount(lambda_mask); }
    std::vector<Int> lift() const;  // t_i = 2^{lambda_i} u_i
};

struct AdmissibleData {
    std::vector<std::vector<int>> signs;  // admissible sign vectors, entries +-1
    std::vector<TwoAdicClass> two_adic;   // admissible (u, lambda), lambda != all-ones
};

// Real and 2-adic admissibility by solubility of every conic. When
// redei_side_conditions is set (the redei builtin in squarefree mode), the
// census side conditions are imposed on (u, lambda) as well: some coordinate
// 1 mod 8 and some odd coordinate 1 mod 4.
AdmissibleData admissible(const MonomialConicFamily& fam, bool redei_side_conditions);

inline AdmissibleData admissible(const MonomialConicFamily& fam) {
    return admissible(fam, fam.redei_conditions && fam.mode == FamilyMode::squarefree);
}

struct SigmaTwoInf {
    Rational sigma_inf;        // (n/2) sum_s Tw(g, s)
    Rational sigma2_mantissa;  // sigma_2 = mantissa * 2^{-gamma}
    Rational gamma;
};

SigmaTwoInf sigma_2_inf(const ResidueData& res, const BMSubElem& g, const AdmissibleData& adm);

struct PerElemContribution {
    std::string label;
    double value = 0;
};

struct Prediction {
    Rational delta;         // sum_i (1 - |V_{i}|^{-1})
    Rational log_exponent;  // exponent of log B in the denominator
    int b_power = 1;        // N ~ constant * B^{b_power} / (log B)^{log_exponent}
    double constant = 0;
    std::vector<PerElemContribution> per_f;
    Int primes_bound = 0;
    double error_estimate = 0;
    std::vector<Rational> gamma_values;
    FamilyMode mode = FamilyMode::affine;
    std::vector<std::string> warnings;
};

struct ConstantOptions {
    Int primes_bound = 100000;
    // Extract one factor prod_{p>2}(1 + chi4(p)/p) = 2/pi per unit of
    // chi4-twist in the 1/p coefficient; turns the conditionally convergent
    // products that arise when D is nonempty into absolutely convergent ones.
    bool chi4_accel = false;
    SectionPolicy section = SectionPolicy::canonical;
};

Prediction leading_constant(const MonomialConicFamily& fam, FamilyMode mode,
                            const ConstantOptions& opts = {});

inline Prediction leading_constant(const MonomialConicFamily& fam,
                                   const ConstantOptions& opts = {}) {
    return leading_constant(fam, fam.mode, opts);
}

}  // namespace conicfib
