#include "tubedse/dse.hpp"

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "tubedse/cocycle.hpp"
#include "tubedse/tubings.hpp"

namespace tubedse {

std::size_t DSESpec::equation_index(const std::string& id) const {
    for (std::size_t i = 0; i < equations.size(); ++i)
        if (equations[i] == id) return i;
    throw std::invalid_argument("spec: unknown equation '" + id + "'");
}

std::map<std::string, PrimitiveInfo> DSESpec::primitive_table() const {
    std::map<std::string, PrimitiveInfo> t;
    for (const auto& p : primitives) t[p.label] = p;
    return t;
}

void DSESpec::validate() const {
    if (order < 0) throw std::invalid_argument("spec: negative order");
    if (equations.empty()) throw std::invalid_argument("spec: no equations");
    std::set<std::string> eqs(equations.begin(), equations.end());
    if (eqs.size() != equations.size())
        throw std::invalid_argument("spec: duplicate equation ids");

    std::set<std::string> labels, allPlaces;
    for (const auto& p : primitives) {
        if (!labels.insert(p.label).second)
            throw std::invalid_argument("spec: duplicate primitive label '" + p.label + "'");
        if (p.weight < 1)
            throw std::invalid_argument("spec: primitive '" + p.label + "' has weight < 1");
        if (p.places.empty())
            throw std::invalid_argument("spec: primitive '" + p.label + "' has no places");
        if (!eqs.count(p.equation))
            throw std::invalid_argument("spec: primitive '" + p.label +
                                        "' feeds unknown equation '" + p.equation + "'");
        for (const auto& place : p.places) {
            if (!allPlaces.insert(place).second)
                throw std::invalid_argument("spec: place name '" + place +
                                            "' reused; place names must be globally unique");
            if (!p.mu.count(place))
                throw std::invalid_argument("spec: place '" + place + "' of '" + p.label +
                                            "' has no exponent vector");
        }
        for (const auto& [place, vec] : p.mu) {
            bool known = false;
            for (const auto& pl : p.places) known = known || pl == place;
            if (!known)
                throw std::invalid_argument("spec: exponent given for unknown place '" + place +
                                            "' of '" + p.label + "'");
            for (const auto& [eq, v] : vec) {
                (void)v;
                if (!eqs.count(eq))
                    throw std::invalid_argument("spec: exponent of place '" + place +
                                                "' names unknown equation '" + eq + "'");
            }
        }
        auto mit = mellin.find(p.label);
        if (mit == mellin.end())
            throw std::invalid_argument("spec: no mellin data for primitive '" + p.label + "'");
        if (mit->second.places() != p.places)
            throw std::invalid_argument("spec: mellin places of '" + p.label +
                                        "' do not match the primitive");
    }

    if (!charge.present) return;
    for (const auto& [eq, v] : charge.s) {
        (void)v;
        if (!eqs.count(eq))
            throw std::invalid_argument("spec: charge s names unknown equation '" + eq + "'");
    }
    for (const auto& p : primitives) {
        Rational uSum = 0;
        int wSum = 0;
        for (const auto& place : p.places) {
            auto it = charge.split.find(place);
            if (it == charge.split.end())
                throw std::invalid_argument("spec: charge split missing for place '" + place +
                                            "'");
            const auto& [u, w] = it->second;
            if (w < 0) throw std::invalid_argument("spec: charge split w must be >= 0");
            uSum += u;
            wSum += w;
            // mu_e = u_e 1_{i(p)} + w_e s, componentwise
            for (const auto& eq : equations) {
                Rational expected = (eq == p.equation) ? u : Rational(0);
                auto sit = charge.s.find(eq);
                if (sit != charge.s.end()) expected += Rational(w) * sit->second;
                const auto& vec = p.mu_of(place);
                auto vit = vec.find(eq);
                Rational actual = (vit == vec.end()) ? Rational(0) : vit->second;
                if (actual != expected)
                    throw std::invalid_argument("spec: exponent of place '" + place +
                                                "' does not match the charge split");
            }
        }
        if (uSum != Rational(1))
            throw std::invalid_argument("spec: charge split u of '" + p.label +
                                        "' does not sum to 1");
        if (wSum != p.weight)
            throw std::invalid_argument("spec: charge split w of '" + p.label +
                                        "' does not sum to the weight");
    }
}

void DSESpec::require_mellin_order() {
    for (auto& [label, m] : mellin) {
        (void)label;
        if (m.symbolic() && order >= 1) m.require_order(order - 1);
    }
}

void DSESpec::bind_random_mellin(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (const auto& p : primitives) mellin.at(p.label).bind_random(rng);
}

namespace {

Rational mu_component(const PrimitiveInfo& p, const std::string& place, const std::string& eq) {
    const auto& vec = p.mu_of(place);
    auto it = vec.find(eq);
    return it == vec.end() ? Rational(0) : it->second;
}

// [x^m] of the grafting operator applied to one series per place.
ForestLC btilde_series_coeff(const PrimitiveInfo& p, const std::vector<ForestSeries>& factors,
                             int m) {
    ForestLC out;
    std::vector<ForestLC> tuple(factors.size());
    std::function<void(std::size_t, int)> walk = [&](std::size_t i, int remaining) {
        if (i == factors.size()) {
            if (remaining == 0) out += b_plus(p, tuple);
            return;
        }
        for (int me = 0; me <= remaining; ++me) {
            tuple[i] = factors[i].at(me);
            if (tuple[i].is_zero()) continue;
            walk(i + 1, remaining - me);
        }
    };
    walk(0, m);
    return out;
}

}  // namespace

std::vector<ForestSeries> solve_combinatorial_fixpoint(const DSESpec& spec) {
    spec.validate();
    const int N = spec.order;
    std::vector<ForestSeries> T(spec.equations.size(), ForestSeries::one(N));

    for (int n = 1; n <= N; ++n) {
        std::vector<ForestLC> next(spec.equations.size());
        for (const auto& p : spec.primitives) {
            if (p.weight > n) continue;
            const int m = n - p.weight;
            std::vector<ForestSeries> factors;
            factors.reserve(p.places.size());
            for (const auto& place : p.places) {
                ForestSeries f = ForestSeries::one(m);
                for (std::size_t j = 0; j < spec.equations.size(); ++j) {
                    const Rational mu = mu_component(p, place, spec.equations[j]);
                    if (mu.is_zero()) continue;
                    f = f * T[j].truncated(m).pow_rational(mu);
                }
                factors.push_back(std::move(f));
            }
            next[spec.equation_index(p.equation)] += btilde_series_coeff(p, factors, m);
        }
        for (std::size_t i = 0; i < T.size(); ++i) T[i].at(n) = std::move(next[i]);
    }
    return T;
}

Rational tree_solution_weight(const TreePtr& t, const DSESpec& spec) {
    const auto table = spec.primitive_table();
    std::map<std::string, std::string> equation_of;
    for (const auto& p : spec.primitives) equation_of[p.label] = p.equation;

    std::function<Rational(const TreePtr&)> walk = [&](const TreePtr& node) -> Rational {
        const PrimitiveInfo& p = table.at(node->decoration());
        Rational w = 1;
        for (const auto& place : p.places) {
            std::vector<Rational> mu;
            std::vector<int> od;
            mu.reserve(spec.equations.size());
            od.reserve(spec.equations.size());
            for (const auto& eq : spec.equations) {
                mu.push_back(mu_component(p, place, eq));
                int count = 0;
                for (const auto& ce : node->children())
                    if (ce.place == place && equation_of.at(ce.child->decoration()) == eq)
                        ++count;
                od.push_back(count);
            }
            w *= falling_factorial(mu, od);
        }
        for (const auto& ce : node->children()) w *= walk(ce.child);
        return w;
    };
    return walk(t);
}

std::vector<ForestSeries> solve_combinatorial_closed(const DSESpec& spec) {
    spec.validate();
    const int N = spec.order;
    std::vector<ForestSeries> T(spec.equations.size(), ForestSeries::one(N));
    if (N == 0) return T;

    std::map<std::string, int> weight_of;
    std::map<std::string, std::string> equation_of;
    for (const auto& p : spec.primitives) {
        weight_of[p.label] = p.weight;
        equation_of[p.label] = p.equation;
    }

    for (const auto& t : enumerate_trees(spec.primitives, N)) {
        const Rational coeff = tree_solution_weight(t, spec) / Rational(aut_order(t));
        if (coeff.is_zero()) continue;
        const int w = tree_weight(t, weight_of);
        T[spec.equation_index(equation_of.at(t->decoration()))].at(w).add(Forest(t), Poly(coeff));
    }
    return T;
}

namespace {

XSeries rename_scale(const XSeries& f, const std::string& place) {
    XSeries out(f.truncation());
    const std::map<std::string, Poly> sub{{scale_symbol(), Poly::symbol(scale_symbol(place))}};
    for (int n = 0; n <= f.truncation(); ++n) out.at(n) = f.at(n).substitute(sub);
    return out;
}

void run_indexed(int count, const std::function<void(int)>& fn) {
    const int workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex errMutex;
    std::exception_ptr firstError;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(errMutex);
                    if (!firstError) firstError = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (firstError) std::rethrow_exception(firstError);
}

}  // namespace

int worker_count() {
    const char* env = std::getenv("TUBEDSE_THREADS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n < 1 ? 1 : n;
}

std::vector<XSeries> solve_analytic_oracle(const DSESpec& spec) {
    spec.validate();
    DSESpec s = spec;
    s.require_mellin_order();
    const int N = s.order;
    std::vector<XSeries> G(s.equations.size(), XSeries::one(N));

    for (int n = 1; n <= N; ++n) {
        std::vector<Poly> next(s.equations.size());
        for (const auto& p : s.primitives) {
            if (p.weight > n) continue;
            const int m = n - p.weight;
            XSeries arg = XSeries::one(m);
            for (const auto& place : p.places) {
                for (std::size_t j = 0; j < s.equations.size(); ++j) {
                    const Rational mu = mu_component(p, place, s.equations[j]);
                    if (mu.is_zero()) continue;
                    arg = arg * rename_scale(G[j].truncated(m), place).pow_rational(mu);
                }
            }
            next[s.equation_index(p.equation)] +=
                apply_cocycle(p, s.mellin.at(p.label), arg.at(m));
        }
        for (std::size_t i = 0; i < G.size(); ++i) G[i].at(n) = std::move(next[i]);
    }
    return G;
}

std::vector<XSeries> solve_analytic_tubing(const DSESpec& spec) {
    spec.validate();
    DSESpec s = spec;
    s.require_mellin_order();
    const int N = s.order;

    std::map<std::string, int> weight_of;
    std::map<std::string, std::string> equation_of;
    for (const auto& p : s.primitives) {
        weight_of[p.label] = p.weight;
        equation_of[p.label] = p.equation;
    }
    const auto table = s.primitive_table();
    const auto trees = N >= 1 ? enumerate_trees(s.primitives, N) : std::vector<TreePtr>{};

    struct Contribution {
        std::size_t equation;
        int weight;
        Poly value;
    };
    std::vector<Contribution> byTree(trees.size());

    const int workers = std::min(worker_count(), static_cast<int>(trees.size()));
    if (workers <= 1) {
        TubingPhiContext ctx(table, s.mellin);
        for (std::size_t i = 0; i < trees.size(); ++i) {
            const auto& t = trees[i];
            const Rational coeff = tree_solution_weight(t, s) / Rational(aut_order(t));
            byTree[i] = {s.equation_index(equation_of.at(t->decoration())),
                         tree_weight(t, weight_of),
                         coeff.is_zero() ? Poly() : phi_tubing(t, ctx).scaled(coeff)};
        }
    } else {
        // one phi cache per worker; merged deterministically below
        run_indexed(static_cast<int>(trees.size()), [&](int i) {
            thread_local std::unique_ptr<TubingPhiContext> ctx;
            if (!ctx) ctx = std::make_unique<TubingPhiContext>(table, s.mellin);
            const auto& t = trees[static_cast<std::size_t>(i)];
            const Rational coeff = tree_solution_weight(t, s) / Rational(aut_order(t));
            byTree[static_cast<std::size_t>(i)] = {
                s.equation_index(equation_of.at(t->decoration())), tree_weight(t, weight_of),
                coeff.is_zero() ? Poly() : phi_tubing(t, *ctx).scaled(coeff)};
        });
    }

    std::vector<XSeries> G(s.equations.size(), XSeries::one(N));
    for (const auto& c : byTree)
        if (!c.value.is_zero()) G[c.equation].at(c.weight) += c.value;
    return G;
}

std::vector<XSeries> green_from_combinatorial(const DSESpec& spec,
                                              const std::vector<ForestSeries>& T) {
    DSESpec s = spec;
    s.require_mellin_order();
    const auto table = s.primitive_table();
    PhiContext ctx(table, s.mellin);
    std::vector<XSeries> G;
    G.reserve(T.size());
    for (const auto& series : T) {
        XSeries g(series.truncation());
        for (int n = 0; n <= series.truncation(); ++n)
            for (const auto& [forest, coeff] : series.at(n).terms())
                g.at(n) += coeff * phi_recursive(forest, ctx);
        G.push_back(std::move(g));
    }
    return G;
}

ForestSeries invariant_charge(const DSESpec& spec, const std::vector<ForestSeries>& T) {
    if (!spec.charge.present)
        throw std::invalid_argument("invariant charge: spec has no charge structure");
    const int N = spec.order;
    ForestSeries prod = ForestSeries::one(N);
    for (std::size_t i = 0; i < spec.equations.size(); ++i) {
        auto it = spec.charge.s.find(spec.equations[i]);
        if (it == spec.charge.s.end() || it->second.is_zero()) continue;
        prod = prod * T[i].pow_rational(it->second);
    }
    return prod.shifted_up(1);
}

GammaBeta extract_gamma_beta(const std::vector<XSeries>& G, const DSESpec& spec) {
    GammaBeta gb{{}, XSeries(G.empty() ? 0 : G.front().truncation())};
    gb.gamma.reserve(G.size());
    for (const auto& g : G) {
        XSeries gamma(g.truncation());
        for (int n = 0; n <= g.truncation(); ++n)
            gamma.at(n) = g.at(n).coefficient_of(scale_symbol(), 1);
        gb.gamma.push_back(std::move(gamma));
    }
    if (spec.charge.present) {
        for (std::size_t i = 0; i < spec.equations.size(); ++i) {
            auto it = spec.charge.s.find(spec.equations[i]);
            if (it == spec.charge.s.end() || it->second.is_zero()) continue;
            gb.beta += gb.gamma[i].scaled(it->second).shifted_up(1);
        }
    }
    return gb;
}

std::vector<XSeries> check_rge(const std::vector<XSeries>& G, const GammaBeta& gb,
                               const DSESpec& spec) {
    if (!spec.charge.present)
        throw std::invalid_argument("rge check: spec has no charge structure");
    std::vector<XSeries> residuals;
    residuals.reserve(G.size());
    for (std::size_t i = 0; i < G.size(); ++i) {
        const int N = G[i].truncation();
        if (N == 0) {
            residuals.emplace_back(0);
            continue;
        }
        const int M = N - 1;
        XSeries dL(M);
        for (int n = 0; n <= M; ++n) dL.at(n) = G[i].at(n).derivative(scale_symbol());
        const XSeries term2 = gb.beta.truncated(M) * G[i].derivative_x();
        const XSeries term3 = gb.gamma[i].truncated(M) * G[i].truncated(M);
        residuals.push_back(dL - term2 - term3);
    }
    return residuals;
}

namespace {

// weight -> summed raw single-place coefficients per equation
std::map<int, std::vector<const MellinSeries*>> grouped_single_place(const DSESpec& spec,
                                                                     const std::string& eq) {
    std::map<int, std::vector<const MellinSeries*>> groups;
    for (const auto& p : spec.primitives) {
        if (p.equation != eq) continue;
        if (p.places.size() != 1)
            throw std::invalid_argument(
                "gamma equation: primitive '" + p.label +
                "' has several insertion places; reduce the spec first");
        groups[p.weight].push_back(&spec.mellin.at(p.label));
    }
    return groups;
}

Poly grouped_raw(const std::vector<const MellinSeries*>& group, int n) {
    Poly total;
    for (const auto* m : group) total += m->raw_coeff({n});
    return total;
}

}  // namespace

std::vector<XSeries> check_gamma_equation(const DSESpec& spec, const std::vector<XSeries>& G) {
    if (!spec.charge.present)
        throw std::invalid_argument("gamma equation: spec has no charge structure");
    DSESpec s = spec;
    if (!G.empty()) s.order = std::max(s.order, G.front().truncation());
    s.require_mellin_order();
    const GammaBeta gb = extract_gamma_beta(G, s);

    std::vector<XSeries> residuals;
    residuals.reserve(s.equations.size());
    for (std::size_t i = 0; i < s.equations.size(); ++i) {
        const int N = G[i].truncation();
        const auto groups = grouped_single_place(s, s.equations[i]);
        XSeries rhs(N);
        for (const auto& [k, group] : groups) {
            // operator powers applied right to left, starting from x^k
            XSeries h(N);
            if (k <= N) h.at(k) = Poly(1);
            for (int n = 0; k + n <= N; ++n) {
                if (n > 0) h = gb.beta * h.derivative_x_padded() + gb.gamma[i] * h;
                rhs += h.scaled_by(grouped_raw(group, n));
            }
        }
        residuals.push_back(gb.gamma[i] - rhs);
    }
    return residuals;
}

std::vector<XSeries> check_gamma_functional(const DSESpec& spec, const std::vector<XSeries>& G) {
    if (!spec.charge.present)
        throw std::invalid_argument("gamma functional: spec has no charge structure");
    for (const auto& [eq, v] : spec.charge.s)
        if (!v.is_zero())
            throw std::invalid_argument("gamma functional: requires a vanishing beta (all s = 0)");
    DSESpec s = spec;
    if (!G.empty()) s.order = std::max(s.order, G.front().truncation());
    s.require_mellin_order();
    const GammaBeta gb = extract_gamma_beta(G, s);

    std::vector<XSeries> residuals;
    residuals.reserve(s.equations.size());
    for (std::size_t i = 0; i < s.equations.size(); ++i) {
        const int N = G[i].truncation();
        const auto groups = grouped_single_place(s, s.equations[i]);
        XSeries rhs(N);
        for (const auto& [k, group] : groups) {
            XSeries sub(N);
            XSeries pw = XSeries::one(N);
            for (int n = 0; k + n <= N; ++n) {
                if (n > 0) pw = pw * gb.gamma[i];
                sub += pw.scaled_by(grouped_raw(group, n));
            }
            rhs += sub.shifted_up(k);
        }
        residuals.push_back(gb.gamma[i] - rhs);
    }
    return residuals;
}

DSESpec quasilinear_reduce(const DSESpec& spec) {
    spec.validate();
    if (spec.equations.size() != 1)
        throw std::invalid_argument("quasilinear: only single-equation specs are reducible");
    const std::string& eq = spec.equations.front();

    DSESpec out;
    out.equations = spec.equations;
    out.order = spec.order;

    for (const auto& p : spec.primitives) {
        Rational muSum = 0;
        for (const auto& place : p.places) muSum += mu_component(p, place, eq);
        if (muSum != Rational(1))
            throw std::invalid_argument("quasilinear: exponents of '" + p.label +
                                        "' do not sum to 1");

        const MellinSeries& A = spec.mellin.at(p.label);
        const std::string place = p.places.front();

        PrimitiveInfo q;
        q.label = p.label;
        q.weight = p.weight;
        q.equation = p.equation;
        q.places = {place};
        q.mu[place] = {{eq, Rational(1)}};
        out.primitives.push_back(q);

        const int maxOrder = std::max(A.max_order(), spec.order > 0 ? spec.order - 1 : 0);
        MellinSeries reduced(p.label, {place}, maxOrder, false, true);
        for (int n = 0; n <= maxOrder; ++n) {
            Poly value;
            for (const auto& alpha :
                 exponent_vectors_up_to(static_cast<int>(p.places.size()), n)) {
                int total = 0;
                for (int a : alpha) total += a;
                if (total != n) continue;
                Rational muPow = 1;
                for (std::size_t i = 0; i < alpha.size(); ++i) {
                    const Rational mu_e = mu_component(p, p.places[i], eq);
                    for (int rep = 0; rep < alpha[i]; ++rep) muPow *= mu_e;
                }
                if (muPow.is_zero()) continue;
                value += A.coeff(alpha).scaled(multinomial(alpha) * muPow);
            }
            reduced.set_coeff({n}, std::move(value));
        }
        out.mellin.emplace(p.label, std::move(reduced));

        out.charge.split[place] = {Rational(1), p.weight};
    }

    out.charge.present = true;
    out.charge.s[eq] = Rational(0);
    out.validate();
    return out;
}

bool rio_coproduct_check(const DSESpec& spec, int n) {
    spec.validate();
    if (!spec.charge.present)
        throw std::invalid_argument("rio check: spec has no charge structure");
    if (n > spec.order) throw std::invalid_argument("rio check: order beyond truncation");
    const auto T = solve_combinatorial_fixpoint(spec);
    const auto Q = invariant_charge(spec, T);
    for (std::size_t i = 0; i < spec.equations.size(); ++i)
        if (!rio_coproduct_holds(T, Q, i, n)) return false;
    return true;
}

namespace {

std::string bsym(int i, int j) {
    return "b[" + std::to_string(i) + "," + std::to_string(j) + "]";
}
std::string asym(int n) { return "a[" + std::to_string(n) + "]"; }

DSESpec counterexample_two_place_spec(int order) {
    DSESpec spec;
    spec.equations = {"G"};
    spec.order = order;
    PrimitiveInfo p;
    p.label = "Fhat";
    p.weight = 1;
    p.equation = "G";
    p.places = {"r1", "r2"};
    p.mu["r1"] = {{"G", Rational(-1)}};
    p.mu["r2"] = {{"G", Rational(-1)}};
    spec.primitives.push_back(p);

    // raw coefficient of rho1^i rho2^j must be b[i,j]
    MellinSeries A("Fhat", {"r1", "r2"}, order - 1, false, true);
    for (int i = 0; i + 0 <= order - 1; ++i)
        for (int j = 0; i + j <= order - 1; ++j)
            A.set_coeff({i, j},
                        Poly::symbol(bsym(i, j)).scaled(Rational(1) / multinomial({i, j})));
    spec.mellin.emplace("Fhat", std::move(A));
    return spec;
}

DSESpec counterexample_single_place_spec(int order) {
    DSESpec spec;
    spec.equations = {"G"};
    spec.order = order;
    PrimitiveInfo p;
    p.label = "F";
    p.weight = 1;
    p.equation = "G";
    p.places = {"r"};
    p.mu["r"] = {{"G", Rational(-2)}};
    spec.primitives.push_back(p);

    MellinSeries A("F", {"r"}, order - 1, false, true);
    for (int n = 0; n <= order - 1; ++n) A.set_coeff({n}, Poly::symbol(asym(n)));
    spec.mellin.emplace("F", std::move(A));
    return spec;
}

Poly counterexample_expected_residual() {
    const Poly L = Poly::symbol(scale_symbol());
    auto b = [](int i, int j) { return Poly::symbol(bsym(i, j)); };
    Poly inner = b(0, 1) * b(0, 2).scaled(3) + b(0, 0) * b(0, 3).scaled(140) +
                 b(0, 2) * b(1, 0).scaled(3) + b(0, 1) * b(1, 1).scaled(-3) +
                 b(1, 0) * b(1, 1).scaled(-3) + b(0, 0) * b(1, 2).scaled(20) +
                 b(0, 1) * b(2, 0).scaled(3) + b(1, 0) * b(2, 0).scaled(3) +
                 b(0, 0) * b(2, 1).scaled(20) + b(0, 0) * b(3, 0).scaled(140) +
                 b(0, 0) * Poly::symbol("a[3]").scaled(-400);
    return inner.scaled(Rational(1, 5)) * L * b(0, 0).pow(2);
}

}  // namespace

Json CounterexampleReport::to_json() const {
    auto seriesJson = [](const XSeries& s) {
        Json arr = Json::array();
        for (int n = 0; n <= s.truncation(); ++n)
            arr.push_back(Json{{"order", n}, {"poly", s.at(n).str()}});
        return arr;
    };
    Json subs = Json::object();
    for (const auto& [sym, value] : substitutions) subs[sym] = value.str();
    return Json{{"order", order},
                {"twoPlace", seriesJson(two_place)},
                {"singlePlace", seriesJson(single_place)},
                {"substitutions", std::move(subs)},
                {"substitutionsMatchLowOrders", substitutions_match_low_orders},
                {"x4Residual", x4_residual.str()},
                {"expectedResidual", expected_residual.str()},
                {"residualMatchesReference", residual_matches_reference}};
}

CounterexampleReport counterexample_report(int order) {
    if (order < 4) throw std::invalid_argument("counterexample: order must be >= 4");
    CounterexampleReport report;
    report.order = order;
    report.two_place = solve_analytic_oracle(counterexample_two_place_spec(order)).front();
    report.single_place = solve_analytic_oracle(counterexample_single_place_spec(order)).front();

    auto b = [](int i, int j) { return Poly::symbol(bsym(i, j)); };
    report.substitutions = {
        {asym(0), b(0, 0)},
        {asym(1), (b(1, 0) + b(0, 1)).scaled(Rational(1, 2))},
        {asym(2),
         (b(0, 2).scaled(4) + b(1, 1) + b(2, 0).scaled(4)).scaled(Rational(1, 10))}};

    report.substitutions_match_low_orders = true;
    for (int n = 1; n <= 3; ++n) {
        const Poly matched = report.single_place.at(n).substitute(report.substitutions);
        if (matched != report.two_place.at(n)) report.substitutions_match_low_orders = false;
    }

    report.x4_residual =
        report.single_place.at(4).substitute(report.substitutions) - report.two_place.at(4);
    report.expected_residual = counterexample_expected_residual();
    report.residual_matches_reference = report.x4_residual == report.expected_residual;
    return report;
}

Json DSESpec::to_json() const {
    Json prims = Json::array();
    for (const auto& p : primitives) {
        Json places = Json::array();
        for (const auto& place : p.places) {
            Json mu = Json::object();
            for (const auto& [eq, v] : p.mu_of(place)) mu[eq] = v.str();
            places.push_back(Json{{"name", place}, {"mu", std::move(mu)}});
        }
        prims.push_back(Json{{"label", p.label},
                             {"weight", p.weight},
                             {"equation", p.equation},
                             {"places", std::move(places)},
                             {"mellin", mellin.at(p.label).to_json()}});
    }
    Json j = Json{{"equations", equations}, {"primitives", std::move(prims)}};
    if (charge.present) {
        Json s = Json::object();
        for (const auto& [eq, v] : charge.s) s[eq] = v.str();
        Json split = Json::array();
        for (const auto& [place, uw] : charge.split)
            split.push_back(
                Json{{"place", place}, {"u", uw.first.str()}, {"w", uw.second}});
        j["charge"] = Json{{"s", std::move(s)}, {"split", std::move(split)}};
    }
    j["order"] = order;
    return j;
}

DSESpec DSESpec::from_json(const Json& j) {
    DSESpec spec;
    try {
        spec.order = j.at("order").get<int>();
        for (const auto& eq : j.at("equations")) spec.equations.push_back(eq.get<std::string>());
        for (const auto& pj : j.at("primitives")) {
            PrimitiveInfo p;
            p.label = pj.at("label").get<std::string>();
            p.weight = pj.at("weight").get<int>();
            p.equation = pj.at("equation").get<std::string>();
            for (const auto& plj : pj.at("places")) {
                const std::string name = plj.at("name").get<std::string>();
                p.places.push_back(name);
                std::map<std::string, Rational> mu;
                if (plj.contains("mu"))
                    for (const auto& [eq, v] : plj.at("mu").items())
                        mu[eq] = Rational::parse(v.get<std::string>());
                p.mu[name] = std::move(mu);
            }
            const int defaultOrder = spec.order > 0 ? spec.order - 1 : 0;
            MellinSeries m =
                pj.contains("mellin")
                    ? MellinSeries::from_json(pj.at("mellin"), p.label, p.places, defaultOrder)
                    : MellinSeries(p.label, p.places, defaultOrder);
            spec.mellin.emplace(p.label, std::move(m));
            spec.primitives.push_back(std::move(p));
        }
        if (j.contains("charge")) {
            spec.charge.present = true;
            const auto& cj = j.at("charge");
            if (cj.contains("s"))
                for (const auto& [eq, v] : cj.at("s").items())
                    spec.charge.s[eq] = Rational::parse(v.get<std::string>());
            if (cj.contains("split"))
                for (const auto& e : cj.at("split"))
                    spec.charge.split[e.at("place").get<std::string>()] = {
                        Rational::parse(e.at("u").get<std::string>()), e.at("w").get<int>()};
        }
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("spec: malformed JSON: ") + e.what());
    }
    spec.validate();
    return spec;
}

}  // namespace tubedse
