#include "conicfib/census.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

namespace conicfib {

int default_thread_count() {
    if (const char* env = std::getenv("CENSUS_THREADS")) {
        int k = std::atoi(env);
        if (k >= 1) return k;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

namespace {

constexpr int kUnitIdx[8] = {-1, 0, -1, 2, -1, 3, -1, 1};  // mod 8 -> {1,-1,3,-3} index
constexpr int kUnitVal[4] = {1, -1, 3, -3};

int unit_index_mod8(Int x) {
    int r = static_cast<int>(((x % 8) + 8) % 8);
    return kUnitIdx[r];
}

}  // namespace

StratumKey stratum_key(std::span<const Int> t) {
    StratumKey key = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        auto d = squarefree_decompose(t[i]);
        std::uint64_t nib = (d.s < 0 ? 1 : 0) | (static_cast<std::uint64_t>(d.lambda) << 1) |
                            (static_cast<std::uint64_t>(unit_index_mod8(d.s * (d.a % 8))) << 2);
        key |= nib << (4 * i);
    }
    return key;
}

std::string stratum_name(StratumKey key, int n) {
    std::string s = "s=(", u = "u=(", l = "l=(";
    for (int i = 0; i < n; ++i) {
        std::uint64_t nib = (key >> (4 * i)) & 0xf;
        if (i) { s += ","; u += ","; l += ","; }
        s += (nib & 1) ? "-1" : "1";
        l += std::to_string((nib >> 1) & 1);
        u += std::to_string(kUnitVal[(nib >> 2) & 3]);
    }
    return s + ") " + u + ") " + l + ")";
}

namespace {

// Per-coordinate-magnitude data shared by all census workers.
struct ValueTables {
    Int T;
    std::vector<Int> primes;                 // odd primes <= T
    std::vector<std::uint32_t> prime_index;  // p -> index

    // flattened factor lists: for v, entries [ofs[v], ofs[v+1])
    struct Entry {
        std::uint32_t pidx;
        std::uint8_t exp;
        std::uint32_t unit_mod_p;  // (v / p^exp) mod p
    };
    std::vector<std::uint32_t> ofs;
    std::vector<Entry> entries;

    std::vector<std::uint8_t> nu2;        // full 2-adic valuation of v
    std::vector<std::uint8_t> odd_mod8;   // odd part of v mod 8
    std::vector<std::uint8_t> sqfree;     // v squarefree?
    std::vector<std::uint8_t> unit_idx;   // unit class index of odd squarefree part of v

    // quadratic-residue bitmaps mod each odd prime (nonzero residues)
    std::vector<std::uint32_t> qr_ofs;
    std::vector<std::uint64_t> qr_bits;

    bool qr(std::uint32_t pidx, Int r) const {
        return (qr_bits[qr_ofs[pidx] + static_cast<std::uint32_t>(r) / 64] >>
                (static_cast<std::uint32_t>(r) % 64)) & 1;
    }

    explicit ValueTables(Int T_) : T(T_) {
        SpfSieve sieve(std::max<Int>(T, 3));
        for (Int p : sieve.primes())
            if (p > 2 && p <= T) primes.push_back(p);
        prime_index.assign(T + 1, 0);
        for (std::size_t i = 0; i < primes.size(); ++i) prime_index[primes[i]] = i;

        ofs.assign(T + 2, 0);
        nu2.assign(T + 1, 0);
        odd_mod8.assign(T + 1, 1);
        sqfree.assign(T + 1, 1);
        unit_idx.assign(T + 1, 0);
        for (Int v = 1; v <= T; ++v) {
            Int x = v;
            int n2 = std::countr_zero(static_cast<std::uint64_t>(x));
            x >>= n2;
            nu2[v] = static_cast<std::uint8_t>(n2);
            odd_mod8[v] = static_cast<std::uint8_t>(x % 8);
            Int sq = 1;
            Int y = x;
            bool sf = n2 <= 1;
            while (y > 1) {
                Int p = sieve.spf(y);
                int e = 0;
                while (y % p == 0) { y /= p; ++e; }
                if (e > 1) sf = false;
                if (e & 1) sq = sq * (p % 8) % 8;
                ++ofs[v + 1];
            }
            sqfree[v] = sf;
            unit_idx[v] = static_cast<std::uint8_t>(kUnitIdx[sq]);
        }
        for (Int v = 1; v <= T + 1; ++v) ofs[v] += ofs[v - 1];
        entries.resize(ofs[T + 1]);
        {
            std::vector<std::uint32_t> cur(ofs.begin(), ofs.end() - 1);
            for (Int v = 1; v <= T; ++v) {
                Int y = v >> nu2[v];
                while (y > 1) {
                    Int p = sieve.spf(y);
                    int e = 0;
                    while (y % p == 0) { y /= p; ++e; }
                    Int unit = v;
                    for (int k = 0; k < e; ++k) unit /= p;
                    entries[cur[v]++] = {prime_index[p], static_cast<std::uint8_t>(e),
                                         static_cast<std::uint32_t>(unit % p)};
                }
            }
        }

        qr_ofs.assign(primes.size() + 1, 0);
        for (std::size_t i = 0; i < primes.size(); ++i)
            qr_ofs[i + 1] = qr_ofs[i] + static_cast<std::uint32_t>((primes[i] + 63) / 64);
        qr_bits.assign(qr_ofs.back(), 0);
        for (std::size_t i = 0; i < primes.size(); ++i) {
            Int p = primes[i];
            for (Int x = 1; x < p; ++x) {
                Int r = x * x % p;
                qr_bits[qr_ofs[i] + static_cast<std::uint32_t>(r) / 64] |=
                    1ull << (static_cast<std::uint32_t>(r) % 64);
            }
        }
    }
};

// Hilbert symbol at 2 from 2-adic valuations and signed odd parts mod 8.
int hilbert2_from_parts(int nu_a, int a8, int nu_b, int b8) {
    int e = 0;
    if (a8 % 4 == 3 && b8 % 4 == 3) e ^= 1;
    if ((nu_a & 1) && (b8 == 3 || b8 == 5)) e ^= 1;
    if ((nu_b & 1) && (a8 == 3 || a8 == 5)) e ^= 1;
    return e ? -1 : 1;
}

// One worker's view of a census job.
struct CensusJob {
    const MonomialConicFamily& fam;
    const ValueTables& tab;
    Int T;
    FamilyMode mode;
    bool stratify;
    bool use_symmetry;   // count t1 > 0 only, double at the end (affine only)
    bool first_positive; // projective: canonical representative has t1 > 0
    bool redei;          // redei census side conditions

    struct Local {
        long long total = 0;
        std::map<StratumKey, long long> strata;
    };

    // Outer coordinate index domain: [0, T) when only positive t1 is scanned,
    // [0, 2T) otherwise; index -> value is idx+1 for idx < T, -(idx-T+1) after.
    Int outer_domain() const { return (use_symmetry || first_positive) ? T : 2 * T; }

    void run_block(Int lo_idx, Int hi_idx, Local& out) const {
        const int n = fam.n;
        std::vector<Int> t(n), mag(n);
        std::vector<int> sgn(n);

        // per-prime stamping for merged odd prime support
        std::vector<std::uint32_t> stamp(tab.primes.size(), 0);
        std::vector<std::uint32_t> merged;
        merged.reserve(64);
        std::uint32_t tick = 0;

        auto coord_value = [&](Int idx) -> Int {
            return idx < T ? idx + 1 : -(idx - T + 1);
        };

        auto rec = [&](auto&& self, int depth, Int g) -> void {
            const Int lo = depth == 0 ? lo_idx : 0;
            const Int hi = depth == 0 ? hi_idx : 2 * T;
            for (Int idx = lo; idx < hi; ++idx) {
                Int v = coord_value(idx);
                Int m = v < 0 ? -v : v;
                if (mode == FamilyMode::squarefree && !tab.sqfree[m]) continue;
                t[depth] = v;
                mag[depth] = m;
                sgn[depth] = v < 0 ? -1 : 1;
                Int g2 = std::gcd(g, m);
                if (depth + 1 < n) {
                    self(self, depth + 1, g2);
                    continue;
                }
                if (redei) {
                    // gcd of discriminants = 1: odd-part gcd 1 and some t = 1 mod 4
                    bool one8 = false, one4 = false;
                    Int godd = 0;
                    for (int i = 0; i < n; ++i) {
                        Int r8 = ((t[i] % 8) + 8) % 8;
                        if (r8 == 1) one8 = true;
                        if (r8 % 4 == 1 && t[i] % 2 != 0) one4 = true;
                        godd = std::gcd(godd, mag[i] >> tab.nu2[mag[i]]);
                    }
                    if (!one8 || !one4 || godd != 1) continue;
                } else if (g2 != 1) {
                    continue;
                }
                if (els(mag, sgn, stamp, merged, tick)) {
                    ++out.total;
                    if (stratify) ++out.strata[key(mag, sgn)];
                }
            }
        };
        rec(rec, 0, 0);
    }

    StratumKey key(const std::vector<Int>& mag, const std::vector<int>& sgn) const {
        StratumKey out = 0;
        for (int i = 0; i < fam.n; ++i) {
            int uix = tab.unit_idx[mag[i]];
            if (sgn[i] < 0) uix ^= 1;  // negating swaps +-1 and +-3 classes
            std::uint64_t nib = (sgn[i] < 0 ? 1 : 0) |
                                (static_cast<std::uint64_t>(tab.nu2[mag[i]] & 1) << 1) |
                                (static_cast<std::uint64_t>(uix) << 2);
            out |= nib << (4 * i);
        }
        return out;
    }

    bool els(const std::vector<Int>& mag, const std::vector<int>& sgn,
             std::vector<std::uint32_t>& stamp, std::vector<std::uint32_t>& merged,
             std::uint32_t& tick) const {
        const int n = fam.n;
        const int m = fam.m();

        // real place: the three coefficient signs must not be equal
        for (int i = 0; i < m; ++i) {
            int s0 = 0;
            bool all_same = true;
            for (int j = 0; j < 3; ++j) {
                int s = fam.conics[i][j].has_minus() ? -1 : 1;
                for (int k = 0; k < n; ++k)
                    if (fam.conics[i][j].has_var(k + 1)) s *= sgn[k];
                if (j == 0) s0 = s;
                else if (s != s0) all_same = false;
            }
            if (all_same) return false;
        }

        // 2-adic place from valuations and signed odd parts mod 8
        for (int i = 0; i < m; ++i) {
            int nu[3], u8[3];
            for (int j = 0; j < 3; ++j) {
                int nv = 0, u = fam.conics[i][j].has_minus() ? 7 : 1;
                for (int k = 0; k < n; ++k)
                    if (fam.conics[i][j].has_var(k + 1)) {
                        nv += tab.nu2[mag[k]];
                        int r8 = tab.odd_mod8[mag[k]];
                        if (sgn[k] < 0) r8 = 8 - r8;
                        u = u * r8 % 8;
                    }
                nu[j] = nv;
                u8[j] = u;
            }
            // (-AC, -BC)_2
            int na = nu[0] + nu[2], nb = nu[1] + nu[2];
            int a8 = 8 - (u8[0] * u8[2] % 8), b8 = 8 - (u8[1] * u8[2] % 8);
            if (hilbert2_from_parts(na, a8, nb, b8) != 1) return false;
        }

        // merged odd prime support of the coordinates
        ++tick;
        merged.clear();
        for (int k = 0; k < n; ++k)
            for (std::uint32_t e = tab.ofs[mag[k]]; e < tab.ofs[mag[k] + 1]; ++e) {
                std::uint32_t pi = tab.entries[e].pidx;
                if (stamp[pi] != tick) {
                    stamp[pi] = tick;
                    merged.push_back(pi);
                }
            }

        for (std::uint32_t pi : merged) {
            const Int p = tab.primes[pi];
            // per-coordinate valuation and unit residue at p
            int ek[12];
            Int rk[12];
            for (int k = 0; k < n; ++k) {
                ek[k] = 0;
                rk[k] = mag[k] % p;
                for (std::uint32_t e = tab.ofs[mag[k]]; e < tab.ofs[mag[k] + 1]; ++e)
                    if (tab.entries[e].pidx == pi) {
                        ek[k] = tab.entries[e].exp;
                        rk[k] = tab.entries[e].unit_mod_p;
                        break;
                    }
                if (sgn[k] < 0) rk[k] = (p - rk[k]) % p;
            }
            const bool p3mod4 = ((p - 1) / 2) & 1;
            for (int i = 0; i < m; ++i) {
                int al[3];
                Int ur[3];
                for (int j = 0; j < 3; ++j) {
                    int a = 0;
                    Int u = fam.conics[i][j].has_minus() ? p - 1 : 1;
                    for (int k = 0; k < n; ++k)
                        if (fam.conics[i][j].has_var(k + 1)) {
                            a += ek[k];
                            u = u * rk[k] % p;
                        }
                    al[j] = a;
                    ur[j] = u;
                }
                // (-AC, -BC)_p with unit parts -ur0*ur2, -ur1*ur2
                int aa = (al[0] + al[2]) & 1, bb = (al[1] + al[2]) & 1;
                if (!(aa | bb)) continue;
                Int ua = (p - ur[0] * ur[2] % p) % p;
                Int ub = (p - ur[1] * ur[2] % p) % p;
                int sign = 1;
                if (aa && bb && p3mod4) sign = -sign;
                if (bb && !tab.qr(pi, ua)) sign = -sign;
                if (aa && !tab.qr(pi, ub)) sign = -sign;
                if (sign != 1) return false;
            }
        }
        return true;
    }
};

}  // namespace

CensusResult count(const CensusRequest& req) {
    validate_family(req.family);
    if (req.bound < 1) throw std::invalid_argument("count: bound must be >= 1");
    const int n = req.family.n;
    const Int T = req.bound;
    long double box = 1;
    for (int i = 0; i < n; ++i) box *= 2.0L * T + 1.0L;
    const bool sampling = req.sample_rate > 0;
    if (!sampling && box > 2e10L)
        throw std::invalid_argument("count: box too large for exhaustive enumeration; use sampling");
    if (req.stratify && n > 16)
        throw std::invalid_argument("count: stratified keys support at most 16 variables");

    auto t0 = std::chrono::steady_clock::now();
    CensusResult res;
    res.bound = T;
    res.mode = req.mode;
    res.family_digest = family_digest(req.family);

    MonomialConicFamily fam = req.family;
    const bool redei_census = fam.redei_conditions && req.mode == FamilyMode::squarefree;

    ValueTables tab(T);

    if (sampling) {
        res.sampled = true;
        res.seed = req.seed;
        SpfSieve sieve(std::max<Int>(T, 3));
        std::mt19937_64 rng(req.seed);
        std::uniform_int_distribution<Int> dist(-T, T);
        long long draws = static_cast<long long>(std::min(box * req.sample_rate, 5e8L));
        res.samples = draws;
        std::vector<Int> t(n);
        long long hits = 0;
        for (long long it = 0; it < draws; ++it) {
            bool zero = false;
            for (int i = 0; i < n; ++i) {
                t[i] = dist(rng);
                if (t[i] == 0) zero = true;
            }
            if (zero) {
                ++res.skipped_degenerate;
                continue;
            }
            if (req.mode == FamilyMode::squarefree) {
                bool sf = true;
                for (Int ti : t) sf = sf && tab.sqfree[ti < 0 ? -ti : ti];
                if (!sf) continue;
            }
            Int g = 0;
            for (Int ti : t) g = std::gcd(g, ti);
            if (redei_census) {
                bool one8 = false, one4 = false;
                Int godd = 0;
                for (Int ti : t) {
                    Int r8 = ((ti % 8) + 8) % 8;
                    if (r8 == 1) one8 = true;
                    if (ti % 2 != 0 && r8 % 4 == 1) one4 = true;
                    Int mg = ti < 0 ? -ti : ti;
                    godd = std::gcd(godd, mg >> tab.nu2[mg]);
                }
                if (!one8 || !one4 || godd != 1) continue;
            } else if (g != 1) {
                continue;
            }
            if (req.mode == FamilyMode::projective && t[0] < 0) continue;
            if (everywhere_locally_soluble(fam, t, &sieve)) ++hits;
        }
        long double scale = box / static_cast<long double>(draws);
        res.total = static_cast<long long>(std::llround(hits * scale));
    } else {
        const bool symmetric = req.mode == FamilyMode::affine && !req.stratify &&
                               fam.equal_degree_parity() && !redei_census;
        CensusJob job{fam, tab, T, req.mode, req.stratify, symmetric,
                      req.mode == FamilyMode::projective, redei_census};

        int threads = req.threads > 0 ? req.threads : default_thread_count();
        const Int coords = job.outer_domain();
        threads = static_cast<int>(std::min<Int>(threads, coords));
        std::vector<CensusJob::Local> locals(threads);
        std::vector<std::thread> pool;
        Int chunk = (coords + threads - 1) / threads;
        for (int k = 0; k < threads; ++k) {
            Int lo = k * chunk, hi = std::min<Int>(coords, lo + chunk);
            if (lo >= hi) continue;
            pool.emplace_back([&, k, lo, hi] {
                CensusJob j = job;  // private function-object state per worker
                j.run_block(lo, hi, locals[k]);
            });
        }
        for (auto& th : pool) th.join();
        for (auto& loc : locals) {
            res.total += loc.total;
            for (auto& [k, v] : loc.strata) res.per_stratum[k] += v;
        }
        if (symmetric) {
            res.total *= 2;
            // strata not populated in symmetric mode
        }
    }

    // degenerate tuples of the full box (some coordinate zero)
    {
        long double full = 1, nonzero = 1;
        for (int i = 0; i < n; ++i) {
            full *= 2.0L * T + 1.0L;
            nonzero *= 2.0L * T;
        }
        if (!sampling) res.skipped_degenerate = static_cast<long long>(full - nonzero);
    }

    // prediction; a family without one (say projective mode on unequal
    // degrees) still gets its count reported
    long double predicted = 0;
    try {
        Prediction pred = leading_constant(fam, req.mode, {.primes_bound = req.primes_bound});
        long double Tld = T;
        if (T >= 2 && pred.constant != 0) {
            if (req.mode == FamilyMode::projective) {
                long double B = std::pow(Tld, n);
                predicted = pred.constant * B / std::pow(std::log(B), rat_to_ld(pred.log_exponent));
            } else {
                predicted = pred.constant * std::pow(Tld, n) /
                            std::pow(std::log(Tld), rat_to_ld(pred.log_exponent));
            }
        }
    } catch (const std::invalid_argument&) {
    }
    res.predicted = static_cast<double>(predicted);
    res.ratio = predicted > 0 ? static_cast<double>(res.total / predicted) : 0.0;

    res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    return res;
}

namespace {

// Hilbert symbol product over all places for a pair of squarefree integers.
bool pair_hilbert_ok(Int x, Int y, const std::vector<Int>& px, const std::vector<Int>& py) {
    if (x < 0 && y < 0) return false;  // real place
    if (hilbert_symbol(x, y, PlaceRef::two()) != 1) return false;
    for (Int p : px)
        if (p > 2 && hilbert_symbol(x, y, {PlaceRef::Tag::odd, p}) != 1) return false;
    for (Int p : py)
        if (p > 2 && hilbert_symbol(x, y, {PlaceRef::Tag::odd, p}) != 1) return false;
    return true;
}

}  // namespace

RedeiResult redei_count(Int B, int threads, Int primes_bound) {
    if (B < 1) throw std::invalid_argument("redei_count: bound must be >= 1");
    if (B > 500) throw std::invalid_argument("redei_count: exhaustive bound capped at 500");
    auto t0 = std::chrono::steady_clock::now();

    SpfSieve sieve(std::max<Int>(B, 3));
    std::vector<Int> vals;  // squarefree values, both signs
    for (Int v = 1; v <= B; ++v)
        if (sieve.is_squarefree(v)) {
            vals.push_back(v);
            vals.push_back(-v);
        }
    const std::size_t N = vals.size();
    std::vector<std::vector<Int>> primes(N);
    std::vector<Int> oddpart(N);
    std::vector<std::uint8_t> is1mod8(N);
    for (std::size_t i = 0; i < N; ++i) {
        Int m = vals[i] < 0 ? -vals[i] : vals[i];
        sieve.distinct_primes(m, primes[i]);
        oddpart[i] = m % 2 == 0 ? m / 2 : m;
        is1mod8[i] = ((vals[i] % 8) + 8) % 8 == 1;
    }

    const std::size_t words = (N + 63) / 64;
    std::vector<std::uint64_t> ok(N * words, 0);   // pairwise Hilbert compatibility
    std::vector<std::uint64_t> mask8(words, 0);    // values = 1 mod 8
    for (std::size_t i = 0; i < N; ++i)
        if (is1mod8[i]) mask8[i / 64] |= 1ull << (i % 64);

    int nthreads = threads > 0 ? threads : default_thread_count();
    nthreads = static_cast<int>(std::min<std::size_t>(nthreads, N));
    {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int k = 0; k < nthreads; ++k)
            pool.emplace_back([&] {
                std::size_t i;
                while ((i = next.fetch_add(1)) < N) {
                    for (std::size_t j = 0; j < N; ++j)
                        if (pair_hilbert_ok(vals[i], vals[j], primes[i], primes[j]))
                            ok[i * words + j / 64] |= 1ull << (j % 64);
                }
            });
        for (auto& th : pool) th.join();
    }

    RedeiResult res;
    res.bound = B;
    std::vector<long long> totals(nthreads, 0);
    std::vector<std::map<std::string, long long>> breakdowns(nthreads);
    {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int k = 0; k < nthreads; ++k)
            pool.emplace_back([&, k] {
                std::vector<std::uint64_t> cand(words);
                std::size_t i;
                while ((i = next.fetch_add(1)) < N) {
                    for (std::size_t j = 0; j < N; ++j) {
                        if (!((ok[i * words + j / 64] >> (j % 64)) & 1)) continue;
                        for (std::size_t w = 0; w < words; ++w)
                            cand[w] = ok[i * words + w] & ok[j * words + w];
                        // one of a, b, c must be 1 mod 8
                        bool ab8 = is1mod8[i] || is1mod8[j];
                        if (!ab8)
                            for (std::size_t w = 0; w < words; ++w) cand[w] &= mask8[w];
                        Int g_ab = std::gcd(oddpart[i], oddpart[j]);
                        auto tally = [&](std::size_t kk) {
                            // discriminant gcd: no common odd prime, some value 1 mod 4
                            if (g_ab != 1 && std::gcd(g_ab, oddpart[kk]) != 1) return;
                            Int m4i = ((vals[i] % 4) + 4) % 4, m4j = ((vals[j] % 4) + 4) % 4,
                                m4k = ((vals[kk] % 4) + 4) % 4;
                            bool odd1mod4 = (vals[i] % 2 && m4i == 1) ||
                                            (vals[j] % 2 && m4j == 1) ||
                                            (vals[kk] % 2 && m4k == 1);
                            if (!odd1mod4) return;
                            ++totals[k];
                            std::string key;
                            if (is1mod8[i]) key += 'a';
                            if (is1mod8[j]) key += 'b';
                            if (is1mod8[kk]) key += 'c';
                            ++breakdowns[k][key];
                        };
                        for (std::size_t w = 0; w < words; ++w) {
                            std::uint64_t bits = cand[w];
                            while (bits) {
                                std::size_t kk = w * 64 + std::countr_zero(bits);
                                bits &= bits - 1;
                                if (kk < N) tally(kk);
                            }
                        }
                    }
                }
            });
        for (auto& th : pool) th.join();
    }
    for (int k = 0; k < nthreads; ++k) {
        res.total += totals[k];
        for (auto& [key, v] : breakdowns[k]) res.by_one_mod8[key] += v;
    }

    Prediction pred = leading_constant(builtin_family("redei"), FamilyMode::squarefree,
                                       {.primes_bound = primes_bound});
    if (B >= 2) {
        long double predicted = pred.constant * std::pow(static_cast<long double>(B), 3) /
                                std::pow(std::log(static_cast<long double>(B)),
                                         rat_to_ld(pred.log_exponent));
        res.predicted = static_cast<double>(predicted);
        res.ratio = res.predicted > 0 ? res.total / res.predicted : 0.0;
    }
    res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    return res;
}

std::vector<ReportRow> report(const CensusRequest& req, std::span<const Int> sweep) {
    std::vector<ReportRow> rows;
    for (Int b : sweep) {
        CensusRequest r = req;
        r.bound = b;
        CensusResult c = count(r);
        rows.push_back({b, c.total, c.predicted, c.ratio});
    }
    return rows;
}

}  // namespace conicfib
