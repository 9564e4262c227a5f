#include <doctest.h>

#include <map>
#include <tuple>

#include "tubedse/hopf.hpp"
#include "test_util.hpp"

using namespace tubedse;
using namespace tubedse::testutil;

namespace {

PrimitiveInfo one_place_prim() { return simple_primitive("p", 1, "1", {"e"}, {Rational(1)}); }

PrimitiveInfo two_place_prim(const std::string& label = "p") {
    return simple_primitive(label, 1, "1", {label + ".a", label + ".b"},
                            {Rational(1), Rational(1)});
}

// all forests (as multisets of enumerated trees) with total vertex count <= n
std::vector<Forest> forests_up_to(const std::vector<PrimitiveInfo>& prims, int n) {
    std::map<std::string, int> w;
    for (const auto& p : prims) w[p.label] = p.weight;
    const auto trees = enumerate_trees(prims, n);
    std::vector<Forest> out{Forest::empty()};
    std::function<void(std::size_t, int, std::vector<TreePtr>&)> walk =
        [&](std::size_t idx, int budget, std::vector<TreePtr>& acc) {
            for (std::size_t j = idx; j < trees.size(); ++j) {
                const int tw = tree_weight(trees[j], w);
                if (tw > budget) continue;
                acc.push_back(trees[j]);
                out.emplace_back(acc);
                walk(j, budget - tw, acc);
                acc.pop_back();
            }
        };
    std::vector<TreePtr> acc;
    walk(0, n, acc);
    return out;
}

using Triple = std::map<std::tuple<std::string, std::string, std::string>, Poly>;

void add_triple(Triple& t, const std::string& a, const std::string& b, const std::string& c,
                const Poly& v) {
    auto key = std::make_tuple(a, b, c);
    auto it = t.find(key);
    if (it == t.end()) {
        if (!v.is_zero()) t.emplace(std::move(key), v);
    } else {
        it->second += v;
        if (it->second.is_zero()) t.erase(it);
    }
}

}  // namespace

TEST_CASE("coproduct small cases") {
    CHECK(coproduct(ForestLC::one()) == tensor_product(ForestLC::one(), ForestLC::one()));

    const Forest dot(DecoratedTree::leaf("p"));
    TensorLC expected;
    expected.add(dot, Forest::empty(), Poly(1));
    expected.add(Forest::empty(), dot, Poly(1));
    CHECK(coproduct(ForestLC(dot)) == expected);

    const Forest l2(ladder(2));
    TensorLC e2;
    e2.add(l2, Forest::empty(), Poly(1));
    e2.add(dot, dot, Poly(1));
    e2.add(Forest::empty(), l2, Poly(1));
    CHECK(coproduct(ForestLC(l2)) == e2);
}

TEST_CASE("grafting operator") {
    const auto p1 = one_place_prim();
    CHECK(b_plus(p1, {ForestLC::one()}) == ForestLC(Forest(DecoratedTree::leaf("p"))));
    CHECK(b_plus(p1, {ForestLC(Forest(DecoratedTree::leaf("p")))}) == ForestLC(Forest(ladder(2))));

    const auto p2 = two_place_prim();
    const Forest dot(DecoratedTree::leaf("p"));
    const ForestLC grafted = b_plus(p2, {ForestLC(dot), ForestLC(dot)});
    REQUIRE(grafted.terms().size() == 1);
    const TreePtr expect = DecoratedTree::make(
        "p", {{"p.a", DecoratedTree::leaf("p")}, {"p.b", DecoratedTree::leaf("p")}});
    CHECK(grafted.terms().begin()->first == Forest(expect));

    CHECK_THROWS_AS(b_plus(p2, {ForestLC::one()}), std::invalid_argument);
}

TEST_CASE("coaction small cases") {
    const Forest dot(DecoratedTree::leaf("p"));
    const ForestLC one = ForestLC::one();
    const ForestLC d(dot);

    CoactionLC trivial;
    trivial.add(Forest::empty(), {Forest::empty(), Forest::empty()}, Poly(1));
    CHECK(coaction({one, one}) == trivial);

    CoactionLC left;
    left.add(Forest::empty(), {dot, Forest::empty()}, Poly(1));
    left.add(dot, {Forest::empty(), Forest::empty()}, Poly(1));
    CHECK(coaction({d, one}) == left);

    const CoactionLC both = coaction({d, d});
    CHECK(both.terms().size() == 4);
    std::multiset<std::string> leftKeys;
    for (const auto& [k, c] : both.terms()) {
        (void)c;
        leftKeys.insert(k.first.key());
    }
    CHECK(leftKeys == std::multiset<std::string>{"", "p[]", "p[]", "p[];p[]"});
}

TEST_CASE("cocycle identity for grafting") {
    const auto p1 = one_place_prim();
    CHECK(check_cocycle(p1, {ForestLC::one()}));
    CHECK(check_cocycle(p1, {ForestLC(Forest(DecoratedTree::leaf("p")))}));

    const auto p2 = two_place_prim();
    CHECK(check_cocycle(p2, {ForestLC::one(), ForestLC::one()}));
}

TEST_CASE("cocycle identity exhaustively on small argument tuples") {
    const std::vector<PrimitiveInfo> alphabet = {two_place_prim("p"), two_place_prim("q")};
    const auto forests = forests_up_to(alphabet, 4);
    for (const auto& prim : alphabet) {
        for (const auto& f1 : forests) {
            for (const auto& f2 : forests) {
                if (f1.vertex_count() + f2.vertex_count() > 4) continue;
                CHECK(check_cocycle(prim, {ForestLC(f1), ForestLC(f2)}));
            }
        }
    }
}

TEST_CASE("coassociativity") {
    auto check_coassoc = [](const Forest& f) {
        Triple lhs, rhs;
        const TensorLC once = coproduct(ForestLC(f));
        for (const auto& [k, c] : once.terms()) {
            const TensorLC left = coproduct(ForestLC(k.first));
            for (const auto& [k2, c2] : left.terms())
                add_triple(lhs, k2.first.key(), k2.second.key(), k.second.key(), c * c2);
            const TensorLC right = coproduct(ForestLC(k.second));
            for (const auto& [k2, c2] : right.terms())
                add_triple(rhs, k.first.key(), k2.first.key(), k2.second.key(), c * c2);
        }
        return lhs == rhs;
    };

    for (const auto& f : forests_up_to({one_place_prim()}, 6)) CHECK(check_coassoc(f));
    for (const auto& f : forests_up_to({two_place_prim("p"), two_place_prim("q")}, 4))
        CHECK(check_coassoc(f));
}

TEST_CASE("counit") {
    for (const auto& f : forests_up_to({two_place_prim("p")}, 4)) {
        const ForestLC x(f);
        ForestLC recovered;
        const TensorLC delta = coproduct(x);
        for (const auto& [k, c] : delta.terms())
            if (k.first.is_empty()) recovered.add(k.second, c);
        CHECK(recovered == x);
    }
}

TEST_CASE("coproduct is multiplicative") {
    std::mt19937_64 rng(5);
    const auto forests = forests_up_to({two_place_prim("p"), two_place_prim("q")}, 3);
    std::uniform_int_distribution<std::size_t> pick(0, forests.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
        const Forest& f = forests[pick(rng)];
        const Forest& g = forests[pick(rng)];
        const ForestLC fg = ForestLC(f) * ForestLC(g);
        CHECK(coproduct(fg) == coproduct(ForestLC(f)) * coproduct(ForestLC(g)));
    }
}

TEST_CASE("tensor serialization shape") {
    const Forest dot(DecoratedTree::leaf("p"));
    const TensorLC delta = coproduct(ForestLC(dot));
    const Json j = delta.to_json();
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0].contains("left"));
    CHECK(j[0].contains("right"));
    CHECK(j[0].contains("coeff"));

    const CoactionLC ca = coaction({ForestLC(dot), ForestLC::one()});
    const Json cj = ca.to_json();
    REQUIRE(cj.is_array());
    CHECK(cj[0].at("right").is_array());
    CHECK(cj[0].at("right").size() == 2);
}

TEST_CASE("forest linear combinations") {
    const Forest dot(DecoratedTree::leaf("p"));
    ForestLC a(dot, Poly::symbol("c"));
    a.add(Forest::empty(), Poly(2));
    const ForestLC b = a.scaled(Rational(1, 2));
    CHECK(b.counit() == Poly(1));
    CHECK(a.eval_trees_to_one() == Poly::symbol("c") + Poly(2));
    CHECK((a + a.scaled(Rational(-1))).is_zero());
}
