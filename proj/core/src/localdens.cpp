#include "conicfib/localdens.hpp"

#include "conicfib/specialfn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace conicfib {

int chi4(Int128 x) {
    int r = static_cast<int>(((x % 4) + 4) % 4);
    if (r == 1) return 1;
    if (r == 3) return -1;
    throw std::domain_error("chi4: even argument");
}

int h_S(const ResidueData& res, std::uint64_t mask, Int p) {
    if (p % 4 == 1 || mask == 0) return 1;
    return res.in_D(mask) ? 0 : 1;
}

int br_char(const BMSubElem& g, std::uint64_t mask, Int128 a) {
    if (a % 2 == 0) throw std::domain_error("br_char: even argument");
    int e = g.f.at(mask).has_minus() ? 1 : 0;
    for (int i = 1; i <= 62; ++i) {
        if (!(mask & (1ull << (i - 1)))) continue;
        e ^= g.f.singleton(i).has_minus() ? 1 : 0;
        for (int j = i + 1; j <= 62; ++j)
            if (mask & (1ull << (j - 1))) e ^= SubsetVec::var(j).pair(g.f.singleton(i));
    }
    return e ? chi4(a) : 1;
}

int brm_char(const BMSubElem& g, std::uint64_t mask, Int128 a) {
    int s = br_char(g, mask, a);
    if (std::popcount(g.J & mask) & 1) s *= chi4(a);
    return s;
}

Rational sigma_shorthand(const ResidueData& res, Int p) {
    Rational inner(0);
    for (int j = 1; j <= res.n(); ++j)
        inner += Rational(h_S(res, 1ull << (j - 1), p), BigInt(res.c_i(j)));
    return Rational(1) / (Rational(1) + inner / p);
}

Rational sigma_m_shorthand(const ResidueData& res, int m_index, Int p) {
    Rational inner(0);
    for (int j = 1; j <= res.n(); ++j)
        if (j != m_index) inner += Rational(h_S(res, 1ull << (j - 1), p), BigInt(res.c_i(j)));
    return sigma_shorthand(res, p) * (Rational(1) + inner / p);
}

Rational g_weight(const ResidueData& res, Int w, std::span<const Int> b) {
    if (w < 1) throw std::domain_error("g_weight: w must be positive");
    // mu^2(2w)
    if (w % 2 == 0) return Rational(0);
    auto wf = factorize(w);
    for (auto [p, e] : wf)
        if (e > 1) return Rational(0);
    // odd primes of prod_j d_j, d_j = w * gcd{b_i : i != j}
    const int n = res.n();
    std::vector<Int> d(n);
    for (int j = 0; j < n; ++j) {
        Int g = 0;
        for (int i = 0; i < n; ++i)
            if (i != j) g = std::gcd(g, b[i]);
        d[j] = w * g;
    }
    std::vector<Int> bad;
    for (Int dj : d)
        for (auto [p, e] : factorize(dj))
            if (p > 2) bad.push_back(p);
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());

    Rational out(1);
    for (Int p : bad) {
        Rational all(0), avoiding(0);
        for (int i = 1; i <= n; ++i) {
            Rational term(h_S(res, 1ull << (i - 1), p), BigInt(res.c_i(i)));
            all += term;
            if (d[i - 1] % p != 0) avoiding += term;
        }
        out *= (Rational(1) + avoiding / p) / (Rational(1) + all / p);
    }
    return out;
}

Rational g_weight_closed_form(const ResidueData& res, Int w, std::span<const Int> b) {
    if (w % 2 == 0) return Rational(0);
    auto wf = factorize(w);
    for (auto [p, e] : wf)
        if (e > 1) return Rational(0);
    Rational out(1);
    for (auto [p, e] : wf) out *= sigma_shorthand(res, p);
    const int n = res.n();
    for (int m = 1; m <= n; ++m) {
        // odd p dividing every b_i with i != m but neither b_m nor w
        Int g = 0;
        for (int i = 0; i < n; ++i)
            if (i != m - 1) g = std::gcd(g, b[i]);
        for (auto [p, e] : factorize(g))
            if (p > 2 && b[m - 1] % p != 0 && w % p != 0) out *= sigma_m_shorthand(res, m, p);
    }
    return out;
}

namespace {

// 1 - p^-e
Rational one_minus_p_pow(Int p, int e) {
    return Rational(1) - rat_pow(Rational(p), -e);
}

}  // namespace

LocalFactor lambda_p(const ResidueData& res, const BMSubElem& g, Int p, LambdaMode mode) {
    if (p == 2) throw std::domain_error("lambda_p: p must be odd");
    if (!is_prime_u64(static_cast<std::uint64_t>(p)))
        throw std::domain_error("lambda_p: p must be prime");
    const int n = res.n();
    const std::uint64_t full = (1ull << n) - 1;
    Rational mantissa(0);
    if (mode == LambdaMode::full) {
        for (std::uint64_t mask = 0; mask < full; ++mask) {
            if (mask != 0 && !res.row(mask).W.contains(g.f.at(mask))) continue;
            int h = h_S(res, mask, p);
            if (!h) continue;
            const int card = std::popcount(mask);
            Rational term(brm_char(g, mask, p), BigInt(mask ? res.row(mask).c_S() : 1));
            term /= rat_pow(Rational(p), card);
            term *= one_minus_p_pow(p, 2 * (n - card));
            mantissa += term;
        }
        mantissa /= rat_pow(one_minus_p_pow(p, 2), n);
    } else {
        mantissa = Rational(1) / sigma_shorthand(res, p);
        for (std::uint64_t mask = 0; mask < full; ++mask) {
            if (std::popcount(mask) < 2) continue;
            if (!res.row(mask).W.contains(g.f.at(mask))) continue;
            int h = h_S(res, mask, p);
            if (!h) continue;
            Rational term(brm_char(g, mask, p), BigInt(res.row(mask).c_S()));
            term /= rat_pow(Rational(p), std::popcount(mask));
            mantissa += term;
        }
    }
    return {mantissa, res.gamma()};
}

LocalFactor sigma_p(const ResidueData& res, const BMSubElem& g, Int p) {
    if (p == 2) throw std::domain_error("sigma_p: p must be odd");
    if (!is_prime_u64(static_cast<std::uint64_t>(p)))
        throw std::domain_error("sigma_p: p must be prime");
    if (!g.is_pbm) throw std::domain_error("sigma_p: element is not in PBM");
    const int n = res.n();
    const std::uint64_t full = (1ull << n) - 1;
    Rational mantissa(0);
    for (std::uint64_t mask = 0; mask < full; ++mask) {
        // f(S) in W_S is the RAlt-side form of g(S) in V_S + <{-}>
        if (mask != 0 && !res.row(mask).W.contains(g.f.at(mask))) continue;
        int h = h_S(res, mask, p);
        if (!h) continue;
        const int card = std::popcount(mask);
        int twist = (kappa(g, SubsetVec::vars(mask)) && p % 4 == 3) ? -1 : 1;
        Rational term(twist, BigInt(mask ? res.row(mask).c_S() : 1));
        term /= rat_pow(Rational(p), card);
        term *= one_minus_p_pow(p, 2 * (n - card));
        mantissa += term;
    }
    mantissa /= rat_pow(one_minus_p_pow(p, 2), n);
    return {mantissa, res.gamma()};
}

std::vector<Int> TwoAdicClass::lift() const {
    std::vector<Int> t(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        t[i] = (lambda_mask & (1ull << i)) ? 2 * u[i] : u[i];
    return t;
}

AdmissibleData admissible(const MonomialConicFamily& fam, bool redei_side_conditions) {
    const int n = fam.n;
    if (n > 12) throw std::invalid_argument("admissible: enumeration too large");
    AdmissibleData adm;

    std::vector<Int> t(n);
    for (std::uint64_t neg = 0; neg < (1ull << n); ++neg) {
        for (int i = 0; i < n; ++i) t[i] = (neg & (1ull << i)) ? -1 : 1;
        if (fibre_soluble_at(evaluate(fam, t), PlaceRef::real())) {
            std::vector<int> s(n);
            for (int i = 0; i < n; ++i) s[i] = static_cast<int>(t[i]);
            adm.signs.push_back(std::move(s));
        }
    }

    static const int kUnits[4] = {1, -1, 3, -3};
    const std::uint64_t full = (1ull << n) - 1;
    for (std::uint64_t lam = 0; lam < full; ++lam) {
        std::vector<int> digit(n, 0);
        while (true) {
            TwoAdicClass cls;
            cls.lambda_mask = lam;
            cls.u.resize(n);
            for (int i = 0; i < n; ++i) cls.u[i] = kUnits[digit[i]];
            bool ok = true;
            if (redei_side_conditions) {
                bool one_mod8 = false, one_mod4 = false;
                for (int i = 0; i < n; ++i) {
                    if (lam & (1ull << i)) continue;
                    if (cls.u[i] == 1) one_mod8 = true;
                    if (cls.u[i] == 1 || cls.u[i] == -3) one_mod4 = true;
                }
                ok = one_mod8 && one_mod4;
            }
            if (ok) {
                std::vector<Int> lift = cls.lift();
                ok = fibre_soluble_at(evaluate(fam, lift), PlaceRef::two());
            }
            if (ok) adm.two_adic.push_back(std::move(cls));
            int k = 0;
            while (k < n && digit[k] == 3) digit[k++] = 0;
            if (k == n) break;
            ++digit[k];
        }
    }
    return adm;
}

SigmaTwoInf sigma_2_inf(const ResidueData& res, const BMSubElem& g, const AdmissibleData& adm) {
    if (!g.is_pbm) throw std::domain_error("sigma_2_inf: element is not in PBM");
    const int n = res.n();
    SigmaTwoInf out;
    out.gamma = res.gamma();

    long inf_sum = 0;
    std::vector<Int> sv(n);
    for (const auto& s : adm.signs) {
        for (int i = 0; i < n; ++i) sv[i] = s[i];
        inf_sum += tw(g, sv, PlaceRef::two());
    }
    out.sigma_inf = Rational(n, 2) * inf_sum;

    Rational acc(0);
    for (const auto& cls : adm.two_adic) {
        std::vector<Int> t = cls.lift();
        int sign = tw(g, t, PlaceRef::two());
        int zeros = n - cls.sum_lambda();
        Rational w = (Rational(1) - rat_pow(Rational(1, 4), zeros)) /
                     rat_pow(Rational(2), cls.sum_lambda());
        acc += w * sign;
    }
    out.sigma2_mantissa = acc / rat_pow(Rational(3), n);
    return out;
}

namespace {

// Compensated (Kahan) sum of per-prime log factors.
struct LogAccumulator {
    long double sum = 0, comp = 0;
    void add(long double x) {
        long double y = x - comp;
        long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

Prediction leading_constant(const MonomialConicFamily& fam, FamilyMode mode,
                            const ConstantOptions& opts) {
    validate_family(fam);
    if (mode == FamilyMode::projective) {
        for (const auto& c : fam.conics)
            if (!(c[0].card_vars() == c[1].card_vars() && c[1].card_vars() == c[2].card_vars()))
                throw std::invalid_argument(
                    "leading_constant: projective mode needs equal degrees per conic");
    }
    ResidueData res = build_residue_data(fam);
    const int n = fam.n;
    const Rational gamma = res.gamma();
    const long double gamma_ld = rat_to_ld(gamma);

    Prediction pred;
    pred.mode = mode;
    pred.delta = res.delta();
    pred.log_exponent = res.delta();
    pred.b_power = (mode == FamilyMode::projective) ? 1 : n;
    pred.primes_bound = opts.primes_bound;
    for (int i = 1; i <= n; ++i) pred.gamma_values.push_back(res.gamma_i(i));

    AdmissibleData adm =
        admissible(fam, fam.redei_conditions && mode == FamilyMode::squarefree);
    if (adm.signs.empty() || adm.two_adic.empty()) {
        pred.warnings.push_back("family has no admissible strata; constant is 0");
        return pred;
    }

    std::vector<BMSubElem> elems = enumerate_bmsub(res, opts.section);
    if (mode == FamilyMode::projective)
        std::erase_if(elems, [](const BMSubElem& g) { return !g.is_pbm; });

    // structure constants shared by every element
    long double prefactor;
    long double gamma_prod = 1;
    for (int i = 1; i <= n; ++i) gamma_prod *= gamma_fn(rat_to_ld(res.gamma_i(i)));
    switch (mode) {
        case FamilyMode::projective:
            // n^{n-gamma} / (2^{1+gamma} 3^n prod Gamma(gamma_i))
            prefactor = std::pow(static_cast<long double>(n),
                                 static_cast<long double>(n) - gamma_ld) /
                        (std::pow(2.0L, 1.0L + gamma_ld) * std::pow(3.0L, n) * gamma_prod);
            break;
        case FamilyMode::affine:
            prefactor = 1.0L / (std::pow(2.0L, gamma_ld) * std::pow(3.0L, n) * gamma_prod);
            break;
        default:  // squarefree
            prefactor = 1.0L / (std::pow(2.0L, 2.0L * n + gamma_ld) * gamma_prod);
            break;
    }

    // chi4-twist of the 1/p coefficient: sum over D-singletons of gamma_i
    long double twist = 0;
    if (opts.chi4_accel) {
        for (int i = 1; i <= n; ++i)
            if (res.d_singletons() & (1ull << (i - 1))) twist += rat_to_ld(res.gamma_i(i));
    }

    std::vector<Int> primes = primes_up_to(opts.primes_bound);
    if (!primes.empty() && primes.front() == 2) primes.erase(primes.begin());

    long double total = 0, total_half = 0;
    const Int half_bound = opts.primes_bound / 2;
    std::vector<Int> sv(n);

    for (const BMSubElem& g : elems) {
        // real / sign weight
        long double w_signs = 0;
        for (const auto& s : adm.signs) {
            for (int i = 0; i < n; ++i) sv[i] = s[i];
            w_signs += tw(g, sv, PlaceRef::two());
        }
        // 2-adic weight
        Rational w_two(0);
        for (const auto& cls : adm.two_adic) {
            std::vector<Int> t = cls.lift();
            int sign = tw(g, t, PlaceRef::two());
            int zeros = n - cls.sum_lambda();
            Rational w = Rational(1) / rat_pow(Rational(2), cls.sum_lambda());
            if (mode != FamilyMode::squarefree)
                w *= Rational(1) - rat_pow(Rational(1, 4), zeros);
            w_two += w * sign;
        }

        // Factors can vanish or go negative at small primes; track sign and
        // zero separately and accumulate log|factor|.
        LogAccumulator logs, logs_half;
        bool zero = false, zero_half = false;
        int sgn = 1, sgn_half = 1;
        for (Int p : primes) {
            LocalFactor lf = (mode == FamilyMode::projective)
                                 ? sigma_p(res, g, p)
                                 : lambda_p(res, g, p,
                                            mode == FamilyMode::squarefree
                                                ? LambdaMode::squarefree
                                                : LambdaMode::full);
            long double m = rat_to_ld(lf.mantissa);
            if (m == 0) {
                zero = true;
                if (p <= half_bound) zero_half = true;
                break;
            }
            if (m < 0) {
                sgn = -sgn;
                if (p <= half_bound) sgn_half = -sgn_half;
                m = -m;
            }
            long double lg = std::log(m) + gamma_ld * std::log1p(-1.0L / p);
            if (opts.chi4_accel && twist != 0) {
                int c4 = (p % 4 == 1) ? 1 : -1;
                lg -= twist * std::log1p(static_cast<long double>(c4) / p);
            }
            logs.add(lg);
            if (p <= half_bound) logs_half.add(lg);
        }
        long double euler = zero ? 0.0L : sgn * std::exp(logs.sum);
        long double euler_half = zero_half ? 0.0L : sgn_half * std::exp(logs_half.sum);
        if (opts.chi4_accel && twist != 0) {
            const long double kTwoOverPi = 0.63661977236758134307553505349006L;
            euler *= std::pow(kTwoOverPi, twist);
            euler_half *= std::pow(kTwoOverPi, twist);
        }

        long double contrib = prefactor * w_signs * rat_to_ld(w_two) * euler;
        long double contrib_half = prefactor * w_signs * rat_to_ld(w_two) * euler_half;
        total += contrib;
        total_half += contrib_half;

        std::ostringstream label;
        label << "f=[";
        for (int i = 1; i <= n; ++i) {
            if (i > 1) label << " ";
            label << g.f.singleton(i).str();
        }
        label << "]";
        if (res.d_singletons()) label << " J=" << SubsetVec::vars(g.J).str();
        pred.per_f.push_back({label.str(), static_cast<double>(contrib)});
    }

    pred.constant = static_cast<double>(total);
    pred.error_estimate = static_cast<double>(std::fabs(total - total_half));
    if (pred.constant == 0)
        pred.warnings.push_back("assembled constant is 0");
    return pred;
}

}  // namespace conicfib
