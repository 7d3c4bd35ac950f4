#pragma once

// Named self-check suites behind `verify --suite ...`: reciprocity (Hilbert
// symbol laws), lexpand (the character identity), blocking (brute-force
// blocking-set classification), lambda-sigma (character-sum vs Tamagawa local
// factors) and meanvalue (main term vs direct summation).

#include "conicfib/family.hpp"

#include <random>
#include <string>
#include <vector>

namespace conicfib {

struct SuiteResult {
    std::string name;
    bool pass = true;
    std::vector<std::string> lines;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            lines.push_back("FAIL " + what);
        }
    }
    void note(const std::string& s) { lines.push_back(s); }
};

SuiteResult verify_reciprocity();
SuiteResult verify_lexpand();
SuiteResult verify_blocking();
SuiteResult verify_lambda_sigma();
SuiteResult verify_meanvalue();
std::vector<SuiteResult> verify_all();

// A random projective family with n in [3,4], m in [1,3], degree-1 monomials
// (occasionally degree 0) and random signs; used by the lambda-sigma suite.
MonomialConicFamily random_projective_family(std::mt19937_64& rng);

// The small n = 2 family whose singleton spaces contain {-} (D nonempty):
// conics t1 x^2 + t2 y^2 + z^2 and t1 x^2 + t2 y^2 - z^2.
MonomialConicFamily d_nonempty_family();


}  // namespace conicfib
