// Acceptance suite: one PASS/FAIL line per criterion, all exact arithmetic.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <vector>

#include "tubedse/cocycle.hpp"
#include "tubedse/dse.hpp"
#include "tubedse/tubings.hpp"

using namespace tubedse;

namespace {

int failures = 0;
std::vector<std::string> notes;

void note(const std::string& s) { notes.push_back(s); }

void criterion(int id, const std::string& name, const std::function<bool()>& body,
               long long budgetMs = 0) {
    notes.clear();
    bool ok = false;
    std::string error;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    if (ok && budgetMs > 0 && ms > budgetMs) {
        ok = false;
        error = "exceeded the runtime budget of " + std::to_string(budgetMs) + " ms";
    }
    std::printf("[%s] criterion %2d: %s (%lld ms)\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                static_cast<long long>(ms));
    for (const auto& n : notes) std::printf("       NOTE: %s\n", n.c_str());
    if (!error.empty()) std::printf("       ERROR: %s\n", error.c_str());
    if (!ok) ++failures;
}

Poly L(int k = 1) { return Poly::symbol(scale_symbol(), k); }
Poly ap(int n) { return Poly::symbol("a[p][" + std::to_string(n) + "]"); }
Poly a(int n) { return Poly::symbol("a[" + std::to_string(n) + "]"); }
Poly b(int i, int j) {
    return Poly::symbol("b[" + std::to_string(i) + "," + std::to_string(j) + "]");
}

long long catalan(int n) {
    long long c = 1;
    for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
    return c;
}

PrimitiveInfo make_primitive(const std::string& label, int weight, const std::string& eq,
                             const std::vector<std::string>& places,
                             const std::vector<std::map<std::string, Rational>>& mu) {
    PrimitiveInfo p;
    p.label = label;
    p.weight = weight;
    p.equation = eq;
    p.places = places;
    for (std::size_t i = 0; i < places.size(); ++i) p.mu[places[i]] = mu[i];
    return p;
}

DSESpec spec_single_single(int order) {
    DSESpec s;
    s.equations = {"G"};
    s.order = order;
    s.primitives = {make_primitive("p", 1, "G", {"e"}, {{{"G", Rational(-2)}}}),
                    make_primitive("q", 2, "G", {"f"}, {{{"G", Rational(3)}}})};
    s.mellin.emplace("p", MellinSeries("p", {"e"}, order - 1));
    s.mellin.emplace("q", MellinSeries("q", {"f"}, order - 1));
    return s;
}

DSESpec spec_single_two_places(int order) {
    DSESpec s;
    s.equations = {"G"};
    s.order = order;
    s.primitives = {make_primitive(
        "p", 1, "G", {"r1", "r2"}, {{{"G", Rational(1, 2)}}, {{"G", Rational(-2)}}})};
    s.mellin.emplace("p", MellinSeries("p", {"r1", "r2"}, order - 1));
    return s;
}

DSESpec spec_system(int order) {
    DSESpec s;
    s.equations = {"1", "2"};
    s.order = order;
    s.primitives = {
        make_primitive("p1", 1, "1", {"e1"}, {{{"1", Rational(2)}, {"2", Rational(-1)}}}),
        make_primitive("p2", 1, "2", {"e2"}, {{{"1", Rational(1)}}})};
    s.mellin.emplace("p1", MellinSeries("p1", {"e1"}, order - 1));
    s.mellin.emplace("p2", MellinSeries("p2", {"e2"}, order - 1));
    s.charge.present = true;
    s.charge.s = {{"1", Rational(1)}, {"2", Rational(-1)}};
    s.charge.split = {{"e1", {Rational(1), 1}}, {"e2", {Rational(1), 1}}};
    return s;
}

DSESpec spec_system_multi_place(int order) {
    DSESpec s;
    s.equations = {"1", "2"};
    s.order = order;
    s.primitives = {
        make_primitive("p1", 1, "1", {"a", "b"},
                       {{{"1", Rational(1)}, {"2", Rational(1)}}, {{"1", Rational(-1)}}}),
        make_primitive("p2", 1, "2", {"c"}, {{{"2", Rational(-2)}}})};
    s.mellin.emplace("p1", MellinSeries("p1", {"a", "b"}, order - 1));
    s.mellin.emplace("p2", MellinSeries("p2", {"c"}, order - 1));
    return s;
}

DSESpec spec_charged_single(const Rational& sVal, int order) {
    DSESpec s;
    s.equations = {"G"};
    s.order = order;
    s.primitives = {
        make_primitive("p", 1, "G", {"e"}, {{{"G", Rational(1) + sVal}}})};
    s.mellin.emplace("p", MellinSeries("p", {"e"}, order - 1));
    s.charge.present = true;
    s.charge.s = {{"G", sVal}};
    s.charge.split = {{"e", {Rational(1), 1}}};
    return s;
}

TreePtr ladder_4() {
    TreePtr t = DecoratedTree::leaf("p");
    for (int i = 1; i < 4; ++i) t = DecoratedTree::make("p", {{"e", t}});
    return t;
}

// ---- criterion bodies -----------------------------------------------------

bool oracle_equivalence() {
    const std::vector<DSESpec> specs = {spec_single_single(5), spec_single_two_places(5),
                                        spec_system(5), spec_system_multi_place(5)};
    for (const auto& s : specs) {
        const auto tub = solve_analytic_tubing(s);
        const auto oracle = solve_analytic_oracle(s);
        if (tub.size() != oracle.size()) return false;
        for (std::size_t i = 0; i < tub.size(); ++i)
            if (!(tub[i] == oracle[i])) return false;
    }
    note("4 spec families, fully symbolic Mellin coefficients, exact to x^5");
    return true;
}

bool worked_example() {
    std::map<std::string, PrimitiveInfo> prims{
        {"p", make_primitive("p", 1, "1", {"e"}, {{{"1", Rational(1)}}})}};
    std::map<std::string, MellinSeries> mellin;
    mellin.emplace("p", MellinSeries("p", {"e"}, 3));
    TubingPhiContext ctx(prims, mellin);

    const Poly X4 = ap(3) * L(1) + ap(2) * L(2).scaled(Rational(1, 2)) +
                    ap(1) * L(3).scaled(Rational(1, 6)) + ap(0) * L(4).scaled(Rational(1, 24));
    const Poly X3 = ap(2) * L(1) + ap(1) * L(2).scaled(Rational(1, 2)) +
                    ap(0) * L(3).scaled(Rational(1, 6));
    const Poly quoted = ap(0).pow(3) * X4 + (ap(0).pow(2) * ap(1)).scaled(2) * X3 +
                        ap(0).pow(3).scaled(2) * X3;
    const Poly corrected = ap(0).pow(3) * X4 + (ap(0).pow(2) * ap(1)).scaled(2) * X3 +
                           ap(0).pow(3).scaled(2) * X4;

    // the literally quoted sum (third factor duplicating the second) is not
    // the image of any 4-vertex tree; in it the third group would need a
    // tubing with rank sum 2 on a 4-vertex tree, against rank sum = |t|-1
    const auto prim = prims.at("p");
    std::vector<TreePtr> fourVertexTrees = enumerate_trees({prim}, 4);
    bool quotedMatchesSomething = false;
    std::string quotedTree;
    for (const auto& t : fourVertexTrees) {
        if (t->vertex_count() != 4) continue;
        if (phi_tubing(t, ctx) == quoted) {
            quotedMatchesSomething = true;
            quotedTree = tree_text(t);
        }
    }
    if (quotedMatchesSomething) {
        note("the literally quoted polynomial IS the image of " + quotedTree);
        return false;  // would contradict the rank-sum analysis
    }
    note("ladder inference refuted: the quoted polynomial (third factor a copy of the");
    note("second) is not the tubing image of any 4-vertex tree; its third group would");
    note("need root rank 2 with all other ranks 0, against the rank sum |t|-1 = 3");

    // the worked tree: root with a leaf child and a 2-chain child; five
    // tubings pairing as 1 + 2 + 2 with the displayed Mellin monomials
    const TreePtr worked = parse_tree("p(e: p, e: p(e: p))");
    if (enumerate_tubings(worked).size() != 5) return false;
    if (!(phi_tubing(worked, ctx) == corrected)) return false;
    note("worked tree identified as p(e: p, e: p(e: p)); displayed polynomial matches");
    note("term-for-term with the garbled third factor restored to the b=4 series");

    // the 4-chain is pinned against the independent recursion
    PhiContext rctx(prims, mellin);
    if (!(phi_tubing(ladder_4(), ctx) == phi_recursive(ladder_4(), rctx))) return false;
    return true;
}

bool integral_cocycle() {
    std::map<std::string, PrimitiveInfo> prims{
        {"p", make_primitive("p", 1, "1", {"e"}, {{{"1", Rational(1)}}})}};
    std::map<std::string, MellinSeries> mellin;
    MellinSeries unit("p", {"e"}, 0, false, false);
    unit.set_coeff({0}, Poly(1));
    mellin.emplace("p", unit);
    TubingPhiContext ctx(prims, mellin);

    int checked = 0;
    for (const auto& t : enumerate_trees({prims.at("p")}, 7)) {
        const int n = t->vertex_count();
        const Rational c =
            Rational(linear_extension_count_bruteforce(t)) / Rational(factorial(n));
        if (!(phi_tubing(t, ctx) == L(n).scaled(c))) return false;
        ++checked;
    }
    note("all " + std::to_string(checked) + " trees with <= 7 vertices");
    return true;
}

bool counterexample_reproduction() {
    const CounterexampleReport r = counterexample_report(4);
    if (!r.substitutions_match_low_orders || !r.residual_matches_reference) return false;

    const Poly ghat3 = L(3).scaled(Rational(5, 3)) * b(0, 0).pow(3) +
                       L(2).scaled(Rational(7, 2)) * b(0, 0).pow(2) * (b(0, 1) + b(1, 0)) +
                       L() * b(0, 0) *
                           (b(0, 1).pow(2) + (b(0, 0) * b(0, 2)).scaled(4) +
                            (b(0, 1) * b(1, 0)).scaled(2) + b(1, 0).pow(2) + b(0, 0) * b(1, 1) +
                            (b(0, 0) * b(2, 0)).scaled(4));
    const Poly ghat4 = -(L(4).scaled(Rational(10, 3)) * b(0, 0).pow(4) +
                         L(3).scaled(11) * b(0, 0).pow(3) * (b(0, 1) + b(1, 0)) +
                         L(2) * b(0, 0).pow(2) *
                             (b(0, 1).pow(2).scaled(Rational(15, 2)) +
                              (b(0, 0) * b(0, 2)).scaled(20) + (b(0, 1) * b(1, 0)).scaled(15) +
                              b(1, 0).pow(2).scaled(Rational(15, 2)) +
                              (b(0, 0) * b(1, 1)).scaled(5) + (b(0, 0) * b(2, 0)).scaled(20)) +
                         L() * b(0, 0) *
                             (b(0, 1).pow(3) + (b(0, 0) * b(0, 1) * b(0, 2)).scaled(15) +
                              (b(0, 0).pow(2) * b(0, 3)).scaled(28) +
                              (b(0, 1).pow(2) * b(1, 0)).scaled(3) +
                              (b(0, 0) * b(0, 2) * b(1, 0)).scaled(15) +
                              (b(0, 1) * b(1, 0).pow(2)).scaled(3) + b(1, 0).pow(3) +
                              (b(0, 0) * b(0, 1) * b(1, 1)).scaled(3) +
                              (b(0, 0) * b(1, 0) * b(1, 1)).scaled(3) +
                              (b(0, 0).pow(2) * b(1, 2)).scaled(4) +
                              (b(0, 0) * b(0, 1) * b(2, 0)).scaled(15) +
                              (b(0, 0) * b(1, 0) * b(2, 0)).scaled(15) +
                              (b(0, 0).pow(2) * b(2, 1)).scaled(4) +
                              (b(0, 0).pow(2) * b(3, 0)).scaled(28)));
    const Poly g3 = L(3).scaled(Rational(5, 3)) * a(0).pow(3) +
                    L(2).scaled(7) * a(0).pow(2) * a(1) +
                    L() * a(0) * (a(1).pow(2).scaled(4) + (a(0) * a(2)).scaled(10));
    const Poly g4 =
        -(L(4).scaled(Rational(10, 3)) * a(0).pow(4) + L(3).scaled(22) * a(0).pow(3) * a(1) +
          L(2) * a(0).pow(2) * (a(1).pow(2).scaled(30) + (a(0) * a(2)).scaled(50)) +
          L() * a(0) *
              (a(1).pow(3).scaled(8) + (a(0) * a(1) * a(2)).scaled(72) +
               (a(0).pow(2) * a(3)).scaled(80)));

    if (!(r.two_place.at(1) == b(0, 0) * L())) return false;
    if (!(r.two_place.at(2) == -(b(0, 0).pow(2) * L(2)) - b(0, 0) * (b(0, 1) + b(1, 0)) * L()))
        return false;
    if (!(r.two_place.at(3) == ghat3)) return false;
    if (!(r.two_place.at(4) == ghat4)) return false;
    if (!(r.single_place.at(1) == a(0) * L())) return false;
    if (!(r.single_place.at(2) == -(a(0).pow(2) * L(2)) - (a(0) * a(1)).scaled(2) * L()))
        return false;
    if (!(r.single_place.at(3) == g3)) return false;
    if (!(r.single_place.at(4) == g4)) return false;

    if (!(r.substitutions.at("a[0]") == b(0, 0))) return false;
    if (!(r.substitutions.at("a[1]") == (b(1, 0) + b(0, 1)).scaled(Rational(1, 2)))) return false;
    if (!(r.substitutions.at("a[2]") ==
          (b(0, 2).scaled(4) + b(1, 1) + b(2, 0).scaled(4)).scaled(Rational(1, 10))))
        return false;
    note("all displayed coefficients 5/3, 10/3, 7/2, 15/2, 11, 20, 28 reproduced");
    note("x^4 residual ends in -400 b[0,0] a[3] times L b[0,0]^2 / 5, matching the reference polynomial");
    return true;
}

DSESpec spec_multi_place_charged(int order) {
    // two distinguished insertion places, both exponents -1: the overall
    // exponent -2 splits as s = -3 with u = (2, -1), w = (1, 0)
    DSESpec s;
    s.equations = {"G"};
    s.order = order;
    s.primitives = {make_primitive("m", 1, "G", {"d", "g"},
                                   {{{"G", Rational(-1)}}, {{"G", Rational(-1)}}})};
    s.mellin.emplace("m", MellinSeries("m", {"d", "g"}, order - 1));
    s.charge.present = true;
    s.charge.s = {{"G", Rational(-3)}};
    s.charge.split = {{"d", {Rational(2), 1}}, {"g", {Rational(-1), 0}}};
    return s;
}

bool rge_criterion() {
    for (const DSESpec& s : {spec_charged_single(Rational(-2), 5), spec_system(5),
                             spec_multi_place_charged(5)}) {
        const auto G = solve_analytic_oracle(s);
        for (const auto& r : check_rge(G, extract_gamma_beta(G, s), s))
            if (!r.is_zero()) return false;
    }
    note("single equation, coupled system, and two distinguished insertion places;");
    note("residuals identically zero through x^4, symbolic Mellin coefficients");
    return true;
}

bool rio_criterion() {
    for (const DSESpec& s : {spec_charged_single(Rational(-2), 4), spec_system(4),
                             spec_multi_place_charged(4)}) {
        for (int n = 0; n <= 4; ++n)
            if (!rio_coproduct_check(s, n)) return false;
    }
    return true;
}

bool quasilinear_criterion() {
    DSESpec s;
    s.equations = {"G"};
    s.order = 6;
    s.primitives = {make_primitive("p", 1, "G", {"r1", "r2"},
                                   {{{"G", Rational(2)}}, {{"G", Rational(-1)}}})};
    s.mellin.emplace("p", MellinSeries("p", {"r1", "r2"}, 5));
    const DSESpec reduced = quasilinear_reduce(s);
    const auto original = solve_analytic_oracle(s);
    const auto linear = solve_analytic_oracle(reduced);
    if (!(original == linear)) return false;
    note("mu = (2, -1), solutions exactly equal to x^6");
    return true;
}

bool tubing_counts() {
    for (int n = 1; n <= 8; ++n) {
        TreePtr t = DecoratedTree::leaf("p");
        for (int i = 1; i < n; ++i) t = DecoratedTree::make("p", {{"e", t}});
        if (enumerate_tubings(t).size() != static_cast<std::size_t>(catalan(n - 1))) return false;
    }
    if (enumerate_tubings(parse_tree("p(e: p, e: p(e: p))")).size() != 5) return false;
    if (enumerate_tubings(ladder_4()).size() != 5) return false;
    note("chains match Catalan numbers up to n = 8; the worked tree has 5 tubings");
    return true;
}

bool combinatorial_sanity() {
    auto spec_with_mu = [](const Rational& mu, int order) {
        DSESpec s;
        s.equations = {"G"};
        s.order = order;
        s.primitives = {make_primitive("p", 1, "G", {"e"}, {{{"G", mu}}})};
        s.mellin.emplace("p", MellinSeries("p", {"e"}, order - 1));
        return s;
    };

    // mu = 1: exactly the chains with coefficient 1
    {
        const auto T = solve_combinatorial_fixpoint(spec_with_mu(Rational(1), 5));
        TreePtr chain = DecoratedTree::leaf("p");
        for (int n = 1; n <= 5; ++n) {
            if (T[0].at(n).terms().size() != 1) return false;
            const auto& [forest, coeff] = *T[0].at(n).terms().begin();
            if (!(forest == Forest(chain)) || !(coeff == Poly(1))) return false;
            chain = DecoratedTree::make("p", {{"e", chain}});
        }
    }
    // mu = 2 with every tree evaluated to 1: binary tree counts
    {
        const auto T = solve_combinatorial_fixpoint(spec_with_mu(Rational(2), 4));
        const std::vector<long long> expect{1, 1, 2, 5, 14};
        for (int n = 0; n <= 4; ++n)
            if (!(T[0].at(n).eval_trees_to_one() == Poly(expect[n]))) return false;
    }
    // mu = -1: per-tree signed plane-tree weights
    {
        const DSESpec s = spec_with_mu(Rational(-1), 5);
        const auto T = solve_combinatorial_fixpoint(s);
        std::map<std::string, int> w{{"p", 1}};
        for (const auto& t : enumerate_trees(s.primitives, 5)) {
            long long planeEmbeddings = 1;
            std::function<void(const TreePtr&)> walk = [&](const TreePtr& node) {
                planeEmbeddings *= factorial(static_cast<int>(node->children().size()));
                for (const auto& ce : node->children()) walk(ce.child);
            };
            walk(t);
            const int n = t->vertex_count();
            const Rational expect = Rational(n % 2 == 1 ? 1 : -1) *
                                    Rational(planeEmbeddings) / Rational(aut_order(t));
            auto it = T[0].at(n).terms().find(Forest(t));
            const Poly coeff = it == T[0].at(n).terms().end() ? Poly() : it->second;
            if (!(coeff == Poly(expect))) return false;
        }
        for (int n = 1; n <= 5; ++n) {
            const long long total = (n % 2 == 1 ? 1 : -1) * catalan(n - 1);
            if (!(T[0].at(n).eval_trees_to_one() == Poly(total))) return false;
        }
    }
    return true;
}

bool hopf_identities() {
    const std::vector<PrimitiveInfo> alphabet = {
        make_primitive("p", 1, "1", {"p.a", "p.b"}, {{{"1", Rational(1)}}, {{"1", Rational(1)}}}),
        make_primitive("q", 1, "1", {"q.a", "q.b"}, {{{"1", Rational(1)}}, {{"1", Rational(1)}}})};

    std::map<std::string, int> w{{"p", 1}, {"q", 1}};
    const auto trees = enumerate_trees(alphabet, 5);
    std::vector<Forest> forests{Forest::empty()};
    {
        std::vector<TreePtr> acc;
        std::function<void(std::size_t, int)> walk = [&](std::size_t idx, int budget) {
            for (std::size_t j = idx; j < trees.size(); ++j) {
                const int tw = tree_weight(trees[j], w);
                if (tw > budget) continue;
                acc.push_back(trees[j]);
                forests.emplace_back(acc);
                walk(j, budget - tw);
                acc.pop_back();
            }
        };
        walk(0, 5);
    }

    // coassociativity and counit on every forest with <= 5 vertices
    using Key3 = std::tuple<std::string, std::string, std::string>;
    for (const auto& f : forests) {
        std::map<Key3, Poly> lhs, rhs;
        auto add = [](std::map<Key3, Poly>& m, Key3 k, const Poly& v) {
            auto it = m.find(k);
            if (it == m.end()) {
                if (!v.is_zero()) m.emplace(std::move(k), v);
            } else {
                it->second += v;
                if (it->second.is_zero()) m.erase(it);
            }
        };
        const TensorLC once = coproduct(ForestLC(f));
        ForestLC counitRecovered;
        for (const auto& [k, c] : once.terms()) {
            if (k.first.is_empty()) counitRecovered.add(k.second, c);
            const TensorLC left = coproduct(ForestLC(k.first));
            for (const auto& [k2, c2] : left.terms())
                add(lhs, {k2.first.key(), k2.second.key(), k.second.key()}, c * c2);
            const TensorLC right = coproduct(ForestLC(k.second));
            for (const auto& [k2, c2] : right.terms())
                add(rhs, {k.first.key(), k2.first.key(), k2.second.key()}, c * c2);
        }
        if (!(lhs == rhs)) return false;
        if (!(counitRecovered == ForestLC(f))) return false;
    }

    // grafting cocycle identity on every argument tuple with <= 5 vertices
    long long tuples = 0;
    for (const auto& prim : alphabet)
        for (const auto& f1 : forests)
            for (const auto& f2 : forests) {
                if (f1.vertex_count() + f2.vertex_count() > 5) continue;
                if (!check_cocycle(prim, {ForestLC(f1), ForestLC(f2)})) return false;
                ++tuples;
            }
    note(std::to_string(forests.size()) + " forests; " + std::to_string(tuples) +
         " grafting tuples checked");
    return true;
}

}  // namespace

int main() {
    std::printf("acceptance suite: exact identities, no tolerances\n");
    criterion(1, "tubing expansion equals the oracle on 4 spec families to x^5",
              oracle_equivalence, 120000);
    criterion(2, "worked 4-vertex tubing example reproduced", worked_example);
    criterion(3, "unit kernel counts linear extensions on all trees to 7 vertices",
              integral_cocycle);
    criterion(4, "two-place matching obstruction reproduced through x^4",
              counterexample_reproduction, 30000);
    criterion(5, "renormalization group equation residuals vanish", rge_criterion);
    criterion(6, "coefficient coproducts match charge powers for n <= 4", rio_criterion);
    criterion(7, "quasi-linear reduction preserves the solution to x^6", quasilinear_criterion);
    criterion(8, "tubing counts: Catalan chains and the worked tree", tubing_counts);
    criterion(9, "combinatorial solutions: chains, binary trees, signed plane trees",
              combinatorial_sanity);
    criterion(10, "coassociativity, counit and grafting cocycle, exhaustive to 5 vertices",
              hopf_identities);

    if (failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", failures);
    return 1;
}
