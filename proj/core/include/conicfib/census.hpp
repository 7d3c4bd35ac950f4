#pragma once

// Brute-force enumeration of everywhere-locally-soluble fibres: the affine
// count N(T) over primitive boxes, the projective count (primitive vectors up
// to sign, anticanonical height max|t_i|^n), the squarefree count, and the
// Redei census. Work is split over contiguous blocks of the leading
// coordinate; workers share only the immutable sieve/family/prediction data
// and results merge by addition, so totals are schedule-independent.

#include "conicfib/family.hpp"
#include "conicfib/localdens.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace conicfib {

struct CensusRequest {
    MonomialConicFamily family;
    Int bound = 0;  // coordinate bound T; projective mode reports B = T^n
    FamilyMode mode = FamilyMode::affine;
    bool stratify = false;
    int threads = 0;  // 0: $CENSUS_THREADS or hardware_concurrency
    double sample_rate = 0;  // 0: exhaustive; else seeded random sampling
    std::uint64_t seed = 1;
    Int primes_bound = 10000;  // truncation for the predicted constant
};

// A stratum (s, u, lambda) packed per coordinate: bit0 = sign, bit1 = lambda,
// bits 2-3 = unit class index into {+1,-1,+3,-3}; coordinate i in nibble i.
using StratumKey = std::uint64_t;

StratumKey stratum_key(std::span<const Int> t);
std::string stratum_name(StratumKey key, int n);

struct CensusResult {
    Int bound = 0;
    FamilyMode mode = FamilyMode::affine;
    long long total = 0;
    long long skipped_degenerate = 0;
    std::map<StratumKey, long long> per_stratum;
    double predicted = 0;
    double ratio = 0;
    double wall_ms = 0;
    bool sampled = false;
    std::uint64_t seed = 0;
    long long samples = 0;
    std::string family_digest;
};

CensusResult count(const CensusRequest& req);

// |S(B)|: squarefree 1 <= |a|,|b|,|c| <= B, one of them 1 mod 8, all pairwise
// Hilbert symbols +1 at every place, coprime quadratic-field discriminants.
// Optional breakdown indexed by which coordinates are 1 mod 8.
struct RedeiResult {
    Int bound = 0;
    long long total = 0;
    std::map<std::string, long long> by_one_mod8;
    double predicted = 0;
    double ratio = 0;
    double wall_ms = 0;
};

RedeiResult redei_count(Int B, int threads = 0, Int primes_bound = 10000);

struct ReportRow {
    Int bound = 0;
    long long observed = 0;
    double predicted = 0;
    double ratio = 0;
};

std::vector<ReportRow> report(const CensusRequest& req, std::span<const Int> sweep);

int default_thread_count();

}  // namespace conicfib
