#include <doctest.h>

#include "tubedse/cocycle.hpp"
#include "test_util.hpp"

using namespace tubedse;
using namespace tubedse::testutil;

namespace {

Poly L(int k = 1) { return Poly::symbol(scale_symbol(), k); }
Poly sym(const std::string& s) { return Poly::symbol(s); }

// pure integration: raw series identically 1 at order 0
MellinSeries unit_mellin(const std::string& label, const std::vector<std::string>& places) {
    MellinSeries m(label, places, 0, false, false);
    std::vector<int> zero(places.size(), 0);
    m.set_coeff(zero, Poly(1));
    return m;
}

struct Setup {
    std::map<std::string, PrimitiveInfo> prims;
    std::map<std::string, MellinSeries> mellin;
};

Setup one_place_setup(int order, bool unit = false) {
    Setup s;
    s.prims["p"] = simple_primitive("p", 1, "1", {"e"}, {Rational(1)});
    s.mellin.emplace("p", unit ? unit_mellin("p", {"e"}) : MellinSeries("p", {"e"}, order));
    return s;
}

}  // namespace

TEST_CASE("apply_cocycle basic rules") {
    const auto p = simple_primitive("p", 1, "1", {"e"}, {Rational(1)});
    const MellinSeries A("p", {"e"}, 3);

    // constant input integrates to a0 L
    CHECK(apply_cocycle(p, A, Poly(1)) == sym("a[p][0]") * L());

    // pure integration: L^n -> L^{n+1}/(n+1), bare L aliases the single place
    const MellinSeries unitA = unit_mellin("p", {"e"});
    for (int n = 0; n <= 5; ++n)
        CHECK(apply_cocycle(p, unitA, L(std::max(n, 0)).scaled(1)) ==
              L(n + 1).scaled(Rational(1, n + 1)));

    // foreign scale variables rejected
    CHECK_THROWS_AS(apply_cocycle(p, A, Poly::symbol("L.other")), std::invalid_argument);
}

TEST_CASE("apply_cocycle two places") {
    const auto p = simple_primitive("p", 1, "1", {"r1", "r2"}, {Rational(-1), Rational(-1)});
    // raw series b00 + b10 rho1 + b01 rho2
    MellinSeries A("p", {"r1", "r2"}, 1, false, false);
    A.set_coeff({0, 0}, sym("b00"));
    A.set_coeff({1, 0}, sym("b10"));
    A.set_coeff({0, 1}, sym("b01"));

    const Poly result = apply_cocycle(p, A, Poly::symbol("L.r1"));
    CHECK(result == sym("b00") * L(2).scaled(Rational(1, 2)) + sym("b10") * L());

    // mixed monomial L1 L2
    const Poly mixed = apply_cocycle(p, A, Poly::symbol("L.r1") * Poly::symbol("L.r2"));
    CHECK(mixed == sym("b00") * L(3).scaled(Rational(1, 3)) + (sym("b10") + sym("b01")) * L(2).scaled(Rational(1, 2)));
}

TEST_CASE("phi recursion") {
    SUBCASE("single vertex") {
        auto s = one_place_setup(0);
        PhiContext ctx(s.prims, s.mellin);
        CHECK(phi_recursive(DecoratedTree::leaf("p"), ctx) == sym("a[p][0]") * L());
    }

    SUBCASE("two-vertex chain with generic coefficients") {
        auto s = one_place_setup(1);
        PhiContext ctx(s.prims, s.mellin);
        const Poly expected = sym("a[p][0]") * sym("a[p][1]") * L() +
                              sym("a[p][0]").pow(2) * L(2).scaled(Rational(1, 2));
        CHECK(phi_recursive(ladder(2), ctx) == expected);
    }

    SUBCASE("pure integration gives e(t) L^n / n!") {
        auto s = one_place_setup(0, true);
        PhiContext ctx(s.prims, s.mellin);
        for (const auto& t :
             enumerate_trees({s.prims.at("p")}, 7)) {
            const int n = t->vertex_count();
            const Rational c = Rational(linear_extension_count_bruteforce(t)) /
                               Rational(factorial(n));
            CHECK(phi_recursive(t, ctx) == L(n).scaled(c));
        }
    }

    SUBCASE("morphism over forests") {
        auto s = one_place_setup(3);
        PhiContext ctx(s.prims, s.mellin);
        const Forest f(std::vector<TreePtr>{ladder(2), ladder(2), DecoratedTree::leaf("p")});
        const Poly prod = phi_recursive(ladder(2), ctx) * phi_recursive(ladder(2), ctx) *
                          phi_recursive(DecoratedTree::leaf("p"), ctx);
        CHECK(phi_recursive(f, ctx) == prod);
    }
}

TEST_CASE("polynomial cocycle identity") {
    const auto p1 = simple_primitive("p", 1, "1", {"e"}, {Rational(1)});
    const MellinSeries A1("p", {"e"}, 5);

    CHECK(cocycle_identity_check(p1, A1, Poly(1)));
    CHECK(cocycle_identity_check(p1, A1, Poly::symbol("L.e")));

    const auto p2 = simple_primitive("q", 1, "1", {"r1", "r2"}, {Rational(1), Rational(1)});
    const MellinSeries A2("q", {"r1", "r2"}, 5);
    CHECK(cocycle_identity_check(p2, A2, Poly::symbol("L.r1") * Poly::symbol("L.r2")));

    // every monomial of total degree <= 5, one and two places
    for (int d = 0; d <= 5; ++d)
        CHECK(cocycle_identity_check(p1, A1, Poly::symbol("L.e", std::max(d, 0))));
    for (int d1 = 0; d1 <= 3; ++d1)
        for (int d2 = 0; d1 + d2 <= 5 - 2; ++d2) {
            Monomial m;
            if (d1) m["L.r1"] = d1;
            if (d2) m["L.r2"] = d2;
            CHECK(cocycle_identity_check(p2, A2, Poly::term(Rational(1), m)));
        }

    // also with riding coefficient symbols and several terms
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        Poly f;
        f += Poly::symbol("L.r1", 2) * random_poly(rng, {"c1", "c2"}, 1);
        f += Poly::symbol("L.r2") * random_poly(rng, {"c1"}, 1);
        f += random_poly(rng, {"c2"}, 1);
        CHECK(cocycle_identity_check(p2, A2, f));
    }
}

TEST_CASE("boring cocycles factor through the scale sum") {
    const auto p = simple_primitive("p", 1, "1", {"r1", "r2"}, {Rational(1), Rational(1)});
    const MellinSeries boring("p", {"r1", "r2"}, 4, true);

    // the single-place operator built from the same total-degree data
    const auto q = simple_primitive("q", 1, "1", {"e"}, {Rational(1)});
    MellinSeries B("q", {"e"}, 4, false, false);
    for (int n = 0; n <= 4; ++n)
        B.set_coeff({n}, Poly::symbol(MellinSeries::default_symbol("p", {n, 0}, true)));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        std::uniform_int_distribution<int> deg(0, 2);
        Monomial m;
        const int d1 = deg(rng), d2 = deg(rng);
        if (d1) m["L.r1"] = d1;
        if (d2) m["L.r2"] = d2;
        const Poly f = Poly::term(Rational(1), m);
        const Poly viaBoring = apply_cocycle(p, boring, f);
        const Poly diag = f.substitute(
            {{"L.r1", Poly::symbol("L.e")}, {"L.r2", Poly::symbol("L.e")}});
        CHECK(viaBoring == apply_cocycle(q, B, diag));
    }
}

TEST_CASE("derivative law") {
    // d/dL of the image equals the raw differential operator on the diagonal
    const auto p = simple_primitive("p", 1, "1", {"r1", "r2"}, {Rational(1), Rational(1)});
    const MellinSeries A("p", {"r1", "r2"}, 4);

    auto diagonal_operator = [&](const Poly& f) {
        Poly out;
        for (const auto& [mono, coeff] : f.terms()) {
            int a1 = 0, a2 = 0;
            Monomial rest;
            for (const auto& [s, e] : mono) {
                if (s == "L.r1")
                    a1 = e;
                else if (s == "L.r2")
                    a2 = e;
                else
                    rest[s] = e;
            }
            for (int b1 = 0; b1 <= a1; ++b1)
                for (int b2 = 0; b2 <= a2; ++b2) {
                    const long long ff = falling_factorial_int(a1, b1) *
                                         falling_factorial_int(a2, b2);
                    out += Poly::term(coeff * Rational(ff), rest) * A.raw_coeff({b1, b2}) *
                           Poly::symbol(scale_symbol(), a1 - b1 + a2 - b2);
                }
        }
        return out;
    };

    for (int a1 = 0; a1 <= 2; ++a1)
        for (int a2 = 0; a2 <= 2; ++a2) {
            Monomial m;
            if (a1) m["L.r1"] = a1;
            if (a2) m["L.r2"] = a2;
            const Poly f = Poly::term(Rational(1), m);
            CHECK(apply_cocycle(p, A, f).derivative(scale_symbol()) == diagonal_operator(f));
        }
}

TEST_CASE("mellin bookkeeping") {
    MellinSeries A("p", {"e"}, 2);
    CHECK(A.coeff({1}) == Poly::symbol("a[p][1]"));
    CHECK_THROWS_AS(A.coeff({3}), std::runtime_error);
    CHECK_THROWS_AS(A.coeff({1, 1}), std::invalid_argument);

    A.set_coeff({1}, Poly(Rational(2, 3)));
    CHECK(A.coeff({1}) == Poly(Rational(2, 3)));

    // explicit series have finite support
    MellinSeries B("p", {"e"}, 0, false, false);
    B.set_coeff({0}, Poly(1));
    CHECK(B.coeff({5}) == Poly());

    // boring coefficients depend only on the total degree
    MellinSeries C("p", {"r1", "r2"}, 3, true);
    CHECK(C.coeff({2, 1}) == C.coeff({0, 3}));
    CHECK(C.coeff({2, 1}) == Poly::symbol("a[p][3]"));

    std::mt19937_64 rng(11);
    MellinSeries D("p", {"r1", "r2"}, 2);
    D.bind_random(rng);
    CHECK(D.coeff({1, 1}).is_constant());
    CHECK_FALSE(D.symbolic());

    // json round trip
    const MellinSeries back =
        MellinSeries::from_json(D.to_json(), "p", {"r1", "r2"}, 2);
    CHECK(back.coeff({1, 1}) == D.coeff({1, 1}));
    CHECK(back.coeff({2, 0}) == D.coeff({2, 0}));
}
