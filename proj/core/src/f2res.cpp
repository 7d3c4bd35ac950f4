#include "conicfib/f2res.hpp"

#include <stdexcept>

namespace conicfib {

SubsetVec generator(const MonomialConicFamily& fam, int i, SubsetVec S) {
    const auto& c = fam.conics[i];
    int p1 = S.pair(c[0]), p2 = S.pair(c[1]), p3 = S.pair(c[2]);
    if (p1 == p2 && p2 == p3) return SubsetVec::empty();
    // exactly one parity differs from the other two
    if (p2 == p3) return SubsetVec::minus() + c[1] + c[2];
    if (p1 == p3) return SubsetVec::minus() + c[0] + c[2];
    return SubsetVec::minus() + c[0] + c[1];
}

ResidueData build_residue_data(const MonomialConicFamily& fam) {
    validate_family(fam);
    ResidueData res;
    res.fam = fam;
    const std::uint64_t full = (1ull << fam.n) - 1;
    res.rows.resize(full + 1);
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        SubsetVec S = SubsetVec::vars(mask);
        ResidueRow& row = res.rows[mask];
        for (int i = 0; i < fam.m(); ++i) row.V.insert(generator(fam, i, S));
        row.in_D = row.V.contains(SubsetVec::minus());
        if (row.in_D) {
            // The reduced basis of V has exactly one row holding the minus bit,
            // namely {-} itself (minus is the highest bit); the rest span W.
            for (std::uint64_t b : row.V.basis())
                if (!(b & SubsetVec::kMinus)) row.W.insert(SubsetVec(b));
        } else {
            row.W = row.V;
        }
    }
    return res;
}

std::uint64_t ResidueData::d_singletons() const {
    std::uint64_t mask = 0;
    for (int i = 1; i <= fam.n; ++i)
        if (rows[1ull << (i - 1)].in_D) mask |= 1ull << (i - 1);
    return mask;
}

Rational ResidueData::gamma() const {
    Rational g(0);
    for (int i = 1; i <= fam.n; ++i) g += gamma_i(i);
    return g;
}

std::vector<std::pair<std::uint64_t, SubsetVec>> ResidueData::index_set() const {
    std::vector<std::pair<std::uint64_t, SubsetVec>> out;
    const std::uint64_t full = (1ull << fam.n) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        auto elems = rows[mask].W.elements();
        std::sort(elems.begin(), elems.end());
        for (SubsetVec T : elems) out.emplace_back(mask, T);
    }
    return out;
}

namespace {

// Legendre symbol of prod_{j in g} t_j with t_- = -1, residues coprime to p.
int product_symbol(SubsetVec g, std::span<const Int> t, Int p) {
    Int128 prod = g.has_minus() ? -1 : 1;
    for (std::size_t k = 0; k < t.size(); ++k)
        if (g.has_var(static_cast<int>(k) + 1)) prod = prod * t[k] % p;
    return legendre_symbol(prod, p);
}

}  // namespace

std::pair<Rational, Rational> expand_indicator_sides(const ResidueData& res, SubsetVec S,
                                                     std::span<const Int> t, Int p) {
    if (p <= 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
        throw std::domain_error("expand_indicator: p must be an odd prime");
    if (static_cast<int>(t.size()) != res.n())
        throw std::invalid_argument("expand_indicator: wrong residue vector length");
    for (Int tj : t)
        if (tj % p == 0) throw std::domain_error("expand_indicator: residue divisible by p");
    const std::uint64_t mask = S.proj().bits();
    const std::uint64_t full = (1ull << res.n()) - 1;
    if (mask == 0 || mask >= full)
        throw std::invalid_argument("expand_indicator: S must be a proper nonempty subset");

    const auto& row = res.row(mask);
    Rational lhs(1);
    for (int i = 0; i < res.fam.m(); ++i) {
        int sym = product_symbol(generator(res.fam, i, S.proj()), t, p);
        lhs *= Rational(1 + sym, 2);
    }
    Rational rhs(0);
    if (!(row.in_D && p % 4 == 3)) {
        for (SubsetVec T : row.W.elements()) rhs += product_symbol(T, t, p);
        rhs /= BigInt(row.W.size());
    }
    return {lhs, rhs};
}

Rational expand_indicator(const ResidueData& res, SubsetVec S, std::span<const Int> t, Int p) {
    auto [lhs, rhs] = expand_indicator_sides(res, S, t, p);
    if (lhs != rhs) throw std::logic_error("expand_indicator: the two sides disagree");
    return lhs;
}

}  // namespace conicfib
