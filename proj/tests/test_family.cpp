#include "conicfib/family.hpp"

#include "conicfib/verify.hpp"

#include <doctest.h>

#include <random>

using namespace conicfib;

TEST_CASE("parse planar family text") {
    auto fam = parse_family("vars = 3\nconic = t1 | t2 | t3\nmode = projective\n");
    CHECK(fam == builtin_family("planar"));
}

TEST_CASE("parse redei family text") {
    auto fam = parse_family(
        "vars = 3\n"
        "conic = -1 | t1 | t2\n"
        "conic = -1 | t1 | t3\n"
        "conic = -1 | t2 | t3\n"
        "mode = squarefree\n");
    CHECK(fam == builtin_family("redei"));
}

TEST_CASE("parse errors carry positions and name the violation") {
    CHECK_THROWS_AS(parse_family("vars = 2\nconic = t1 | t1 | t2\n"), FamilyValidationError);
    try {
        parse_family("vars = 2\nconic = t1 | t1 | t2\n");
    } catch (const FamilyValidationError& e) {
        CHECK(std::string(e.what()).find("coprime") != std::string::npos);
    }
    // repeated variable inside one monomial: squarefreeness, a parse error
    try {
        parse_family("vars = 2\nconic = t1*t1 | t2 | 1\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("squarefree") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_family("vars = 2\nconic = t1 | t3 | 1\n"), ParseError);
    CHECK_THROWS_AS(parse_family("conic = t1 | t2 | t3\n"), ParseError);
    CHECK_THROWS_AS(parse_family("vars = 3\nconic = t1 | t2\n"), ParseError);
    CHECK_THROWS_AS(parse_family("mode = affine\nvars = 3\nconic = t1 | t2 | t3\n"), ParseError);
    CHECK_THROWS_AS(parse_family("vars = 3\nmode = elliptic\n"), ParseError);
    // projective mode demands equal degrees
    CHECK_THROWS_AS(parse_family("vars = 3\nconic = t1*t2 | t3 | 1\nmode = projective\n"),
                    FamilyValidationError);
    // comments and loose whitespace are fine
    auto fam = parse_family("# heading\nvars=3 # trailing\n\nconic=t1|t2|t3\n");
    CHECK(fam.n == 3);
    CHECK(fam.mode == FamilyMode::affine);
}

TEST_CASE("builtins") {
    auto planar = builtin_family("planar");
    CHECK(planar.n == 3);
    CHECK(planar.m() == 1);
    CHECK(planar.conics[0][0] == SubsetVec::var(1));
    CHECK(planar.mode == FamilyMode::projective);

    auto redei = builtin_family("redei");
    CHECK(redei.n == 3);
    CHECK(redei.m() == 3);
    CHECK(redei.conics[0][0] == SubsetVec::minus());
    CHECK(redei.redei_conditions);

    auto ex = builtin_family("example31");
    CHECK(ex.n == 6);
    CHECK(ex.m() == 3);
    CHECK(ex.equal_degree_parity());

    CHECK_THROWS_AS(builtin_family("nope"), std::invalid_argument);
}

TEST_CASE("evaluate fibres") {
    auto planar = builtin_family("planar");
    auto fib = evaluate(planar, std::vector<Int>{2, 3, 5});
    CHECK(fib.coefficients[0][0] == 2);
    CHECK(fib.coefficients[0][1] == 3);
    CHECK(fib.coefficients[0][2] == 5);

    auto redei = builtin_family("redei");
    fib = evaluate(redei, std::vector<Int>{7, -11, 13});
    CHECK(fib.coefficients[0][0] == -1);
    CHECK(fib.coefficients[0][1] == 7);
    CHECK(fib.coefficients[0][2] == -11);
    CHECK(fib.coefficients[1][2] == 13);
    CHECK(fib.coefficients[2][1] == -11);

    CHECK_THROWS_AS(evaluate(planar, std::vector<Int>{1, 0, 1}), DegenerateFibreError);
    CHECK_THROWS_AS(evaluate(planar, std::vector<Int>{1, 1}), std::invalid_argument);
}

TEST_CASE("serialize round trip for builtins and random families") {
    for (const char* name : {"planar", "redei", "example31"}) {
        auto fam = builtin_family(name);
        CHECK(parse_family(serialize_family(fam)) == fam);
    }
    CHECK(parse_family(serialize_family(d_nonempty_family())) == d_nonempty_family());
    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
        auto fam = random_projective_family(rng);
        CHECK(parse_family(serialize_family(fam)) == fam);
    }
}

TEST_CASE("digest is stable and discriminating") {
    CHECK(family_digest(builtin_family("planar")) == family_digest(builtin_family("planar")));
    CHECK(family_digest(builtin_family("planar")) != family_digest(builtin_family("redei")));
}

TEST_CASE("redei fibres are soluble iff all pairwise Hilbert symbols are trivial") {
    auto redei = builtin_family("redei");
    SpfSieve sieve(30);
    auto pair_ok = [](Int x, Int y) {
        std::vector<Int> ps = prime_support(x * y);
        if (hilbert_symbol(x, y, PlaceRef::real()) != 1) return false;
        if (hilbert_symbol(x, y, PlaceRef::two()) != 1) return false;
        for (Int p : ps)
            if (p > 2 && hilbert_symbol(x, y, {PlaceRef::Tag::odd, p}) != 1) return false;
        return true;
    };
    for (Int a = -30; a <= 30; ++a)
        for (Int b = -30; b <= 30; ++b)
            for (Int c = -30; c <= 30; ++c) {
                if (!a || !b || !c) continue;
                if (!sieve.is_squarefree(std::abs(a)) || !sieve.is_squarefree(std::abs(b)) ||
                    !sieve.is_squarefree(std::abs(c)))
                    continue;
                bool els = everywhere_locally_soluble(redei, std::vector<Int>{a, b, c}, &sieve);
                bool hs = pair_ok(a, b) && pair_ok(a, c) && pair_ok(b, c);
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(c);
                REQUIRE(els == hs);
            }
}

TEST_CASE("example31 fibres are soluble iff the three quaternion classes split") {
    auto fam = builtin_family("example31");
    SpfSieve sieve(10);
    auto splits = [](Int x, Int y) {
        if (hilbert_symbol(x, y, PlaceRef::real()) != 1) return false;
        if (hilbert_symbol(x, y, PlaceRef::two()) != 1) return false;
        for (Int p : prime_support(x * y))
            if (p > 2 && hilbert_symbol(x, y, {PlaceRef::Tag::odd, p}) != 1) return false;
        return true;
    };
    std::mt19937_64 rng(61);
    for (int it = 0; it < 3000; ++it) {
        std::vector<Int> t(6);
        for (auto& x : t) {
            x = 0;
            while (x == 0) x = static_cast<Int>(rng() % 21) - 10;
        }
        bool quats = splits(t[1] * t[2], t[0] * t[3]) && splits(t[1] * t[4], t[0] * t[5]) &&
                     splits(t[3] * t[4], t[2] * t[5]);
        CAPTURE(t[0]);
        CAPTURE(t[1]);
        REQUIRE(everywhere_locally_soluble(fam, t, &sieve) == quats);
    }
}

TEST_CASE("everywhere_locally_soluble spec values") {
    auto planar = builtin_family("planar");
    CHECK(everywhere_locally_soluble(planar, std::vector<Int>{1, 1, -2}));
    CHECK_FALSE(everywhere_locally_soluble(planar, std::vector<Int>{1, 1, 1}));
    CHECK_FALSE(everywhere_locally_soluble(planar, std::vector<Int>{1, 1, -3}));
    CHECK_THROWS_AS(everywhere_locally_soluble(planar, std::vector<Int>{1, 0, 1}),
                    DegenerateFibreError);
}
