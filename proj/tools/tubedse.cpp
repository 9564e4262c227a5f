// Command-line front end: spec ingestion, solver and identity-check
// dispatch, deterministic text/JSON emission.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "tubedse/cocycle.hpp"
#include "tubedse/dse.hpp"
#include "tubedse/tubings.hpp"

using namespace tubedse;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCheckFailed = 3;

struct CommonOpts {
    std::string specPath;
    std::string format = "text";
    int orderOverride = -1;
    bool bindRandom = false;
    bool symbolic = false;
    std::uint64_t seed = 0;
};

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw std::invalid_argument("JSON parse error in '" + path + "': " + e.what());
    }
    return j;
}

DSESpec load_spec(const CommonOpts& opts) {
    if (opts.bindRandom && opts.symbolic)
        throw std::invalid_argument("--symbolic and --bind-random are mutually exclusive");
    DSESpec spec = DSESpec::from_json(read_json_file(opts.specPath));
    if (opts.orderOverride >= 0) {
        spec.order = opts.orderOverride;
        spec.validate();
    }
    if (opts.bindRandom) spec.bind_random_mellin(opts.seed);
    return spec;
}

void emit(const std::string& format, const Json& j, const std::string& text) {
    if (format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

Json green_json(const DSESpec& spec, const std::vector<XSeries>& G) {
    Json eqs = Json::object();
    for (std::size_t i = 0; i < spec.equations.size(); ++i) {
        Json arr = Json::array();
        for (int n = 0; n <= G[i].truncation(); ++n) arr.push_back(G[i].at(n).str());
        eqs[spec.equations[i]] = std::move(arr);
    }
    return Json{{"order", spec.order}, {"equations", std::move(eqs)}};
}

std::string green_text(const DSESpec& spec, const std::vector<XSeries>& G) {
    std::ostringstream out;
    for (std::size_t i = 0; i < spec.equations.size(); ++i) {
        out << "equation " << spec.equations[i] << "\n";
        for (int n = 0; n <= G[i].truncation(); ++n)
            out << "  [x^" << n << "] " << G[i].at(n).str() << "\n";
    }
    return out.str();
}

Json forest_series_json(const DSESpec& spec, const std::vector<ForestSeries>& T) {
    Json eqs = Json::object();
    for (std::size_t i = 0; i < spec.equations.size(); ++i) {
        Json arr = Json::array();
        for (int n = 0; n <= T[i].truncation(); ++n) {
            Json terms = Json::array();
            for (const auto& [forest, coeff] : T[i].at(n).terms())
                terms.push_back(Json{{"forest", forest.str()}, {"coeff", coeff.str()}});
            arr.push_back(std::move(terms));
        }
        eqs[spec.equations[i]] = std::move(arr);
    }
    return Json{{"order", spec.order}, {"equations", std::move(eqs)}};
}

std::string forest_series_text(const DSESpec& spec, const std::vector<ForestSeries>& T) {
    std::ostringstream out;
    for (std::size_t i = 0; i < spec.equations.size(); ++i) {
        out << "equation " << spec.equations[i] << "\n";
        for (int n = 0; n <= T[i].truncation(); ++n)
            out << "  [x^" << n << "] " << T[i].at(n).str() << "\n";
    }
    return out.str();
}

std::map<std::string, MellinSeries> mellin_for_tree(
    const TreePtr& tree, const std::string& mellinPath,
    const std::map<std::string, PrimitiveInfo>& prims) {
    std::map<std::string, MellinSeries> mellin;
    const int defaultOrder = std::max(tree->vertex_count() - 1, 0);
    if (mellinPath.empty()) {
        for (const auto& [label, p] : prims)
            mellin.emplace(label, MellinSeries(label, p.places, defaultOrder));
        return mellin;
    }
    const Json j = read_json_file(mellinPath);
    for (const auto& [label, p] : prims) {
        if (j.contains(label))
            mellin.emplace(label,
                           MellinSeries::from_json(j.at(label), label, p.places, defaultOrder));
        else
            mellin.emplace(label, MellinSeries(label, p.places, defaultOrder));
    }
    return mellin;
}

int run_trees(const CommonOpts& opts, const std::string& rootEquation) {
    const DSESpec spec = load_spec(opts);
    std::optional<std::string> root;
    if (!rootEquation.empty()) root = rootEquation;
    const auto trees = enumerate_trees(spec.primitives, std::max(spec.order, 1), root);

    std::map<std::string, int> weights;
    for (const auto& p : spec.primitives) weights[p.label] = p.weight;

    Json list = Json::array();
    std::map<int, int> counts;
    std::ostringstream text;
    for (const auto& t : trees) {
        const int w = tree_weight(t, weights);
        counts[w] += 1;
        list.push_back(Json{{"weight", w},
                            {"tree", tree_text(t)},
                            {"code", t->code()},
                            {"aut", aut_order(t)}});
        text << "w=" << w << " aut=" << aut_order(t) << "  " << tree_text(t) << "\n";
    }
    Json countsJson = Json::object();
    for (const auto& [w, c] : counts) countsJson[std::to_string(w)] = c;
    std::ostringstream summary;
    summary << "trees up to weight " << std::max(spec.order, 1) << ": " << trees.size() << "\n";
    emit(opts.format, Json{{"counts", std::move(countsJson)}, {"trees", std::move(list)}},
         summary.str() + text.str());
    return 0;
}

int run_tubings(const std::string& treeText, const std::string& mellinPath, bool emitTubes,
                bool stats, const std::string& format) {
    const TreePtr tree = parse_tree(treeText);
    const auto prims = infer_primitives(tree);
    const auto mellin = mellin_for_tree(tree, mellinPath, prims);
    const IndexedTree it(tree);
    const auto tubings = enumerate_tubings(tree, emitTubes);

    Json list = Json::array();
    for (const auto& tau : tubings) {
        Json entry = Json::object();
        Json seq = Json::array();
        for (const auto& e : tau.root_types) seq.push_back(e);
        entry["rootTypeSeq"] = std::move(seq);
        Json ranks = Json::array();
        for (int v = 0; v < it.size(); ++v) {
            Json r = Json::object();
            for (const auto& [place, c] : tau.rank[static_cast<std::size_t>(v)]) r[place] = c;
            ranks.push_back(Json{{"vertex", v},
                                 {"decoration", it.decoration[static_cast<std::size_t>(v)]},
                                 {"ranks", std::move(r)}});
        }
        entry["rankVec"] = std::move(ranks);
        entry["b"] = tau.b();
        entry["mel"] = mel(tau, it, prims, mellin).str();
        if (emitTubes) {
            Json tubes = Json::array();
            for (const auto& tube : tau.tubes) tubes.push_back(tube);
            entry["tubes"] = std::move(tubes);
        }
        list.push_back(std::move(entry));
    }
    Json out{{"tree", tree_text(tree)},
             {"count", tubings.size()},
             {"tubings", std::move(list)}};
    if (!stats && !emitTubes) out.erase("tubings");

    std::ostringstream text;
    text << "tree: " << tree_text(tree) << "\n"
         << "tubings: " << tubings.size() << "\n";
    if (stats || emitTubes)
        for (const auto& tau : tubings)
            text << "  b=" << tau.b() << " mel=" << mel(tau, it, prims, mellin).str() << "\n";
    emit(format, out, text.str());
    return 0;
}

int run_phi(const std::string& treeText, const std::string& mellinPath, const std::string& method,
            const std::string& format) {
    const TreePtr tree = parse_tree(treeText);
    const auto prims = infer_primitives(tree);
    const auto mellin = mellin_for_tree(tree, mellinPath, prims);

    Poly result;
    if (method == "tubing") {
        TubingPhiContext ctx(prims, mellin);
        result = phi_tubing(tree, ctx);
    } else {
        PhiContext ctx(prims, mellin);
        result = phi_recursive(tree, ctx);
    }
    emit(format,
         Json{{"tree", tree_text(tree)},
              {"method", method},
              {"poly", result.str()},
              {"terms", result.to_json()}},
         result.str() + "\n");
    return 0;
}

int run_solve(const CommonOpts& opts, const std::string& method) {
    const DSESpec spec = load_spec(opts);
    if (method == "oracle" || method == "tubing") {
        const auto G =
            method == "oracle" ? solve_analytic_oracle(spec) : solve_analytic_tubing(spec);
        emit(opts.format, green_json(spec, G), green_text(spec, G));
        return 0;
    }
    const auto T = method == "fixpoint" ? solve_combinatorial_fixpoint(spec)
                                        : solve_combinatorial_closed(spec);
    emit(opts.format, forest_series_json(spec, T), forest_series_text(spec, T));
    return 0;
}

int run_check(const CommonOpts& opts, const std::string& which, int rioOrder) {
    const DSESpec spec = load_spec(opts);
    Json report = Json::object();
    bool pass = true;
    std::ostringstream text;

    auto residual_report = [&](const std::vector<XSeries>& residuals) {
        Json res = Json::object();
        for (std::size_t i = 0; i < residuals.size(); ++i) {
            pass = pass && residuals[i].is_zero();
            Json arr = Json::array();
            for (int n = 0; n <= residuals[i].truncation(); ++n)
                arr.push_back(residuals[i].at(n).str());
            res[spec.equations[i]] = std::move(arr);
            text << "equation " << spec.equations[i]
                 << (residuals[i].is_zero() ? ": residual 0\n" : ": NONZERO residual\n");
        }
        report["residuals"] = std::move(res);
    };

    if (which == "rge") {
        const auto G = solve_analytic_oracle(spec);
        residual_report(check_rge(G, extract_gamma_beta(G, spec), spec));
    } else if (which == "gamma") {
        const auto G = solve_analytic_oracle(spec);
        residual_report(check_gamma_equation(spec, G));
    } else if (which == "gamma-functional") {
        const auto G = solve_analytic_oracle(spec);
        residual_report(check_gamma_functional(spec, G));
    } else if (which == "rio") {
        const int nMax = rioOrder >= 0 ? rioOrder : std::min(spec.order, 4);
        Json arr = Json::array();
        for (int n = 0; n <= nMax; ++n) {
            const bool ok = rio_coproduct_check(spec, n);
            pass = pass && ok;
            arr.push_back(Json{{"n", n}, {"holds", ok}});
            text << "n=" << n << (ok ? ": holds\n" : ": FAILS\n");
        }
        report["orders"] = std::move(arr);
    } else {  // cocycle
        const auto trees = enumerate_trees(spec.primitives, 2);
        std::vector<Forest> forests{Forest::empty()};
        for (const auto& t : trees) forests.emplace_back(t);
        Json arr = Json::array();
        for (const auto& p : spec.primitives) {
            bool ok = true;
            std::vector<ForestLC> args(p.places.size(), ForestLC::one());
            std::function<void(std::size_t)> walk = [&](std::size_t i) {
                if (i == args.size()) {
                    ok = ok && check_cocycle(p, args);
                    return;
                }
                for (const auto& f : forests) {
                    args[i] = ForestLC(f);
                    walk(i + 1);
                }
            };
            walk(0);
            for (const auto& alpha :
                 exponent_vectors_up_to(static_cast<int>(p.places.size()), 3)) {
                Monomial m;
                for (std::size_t k = 0; k < alpha.size(); ++k)
                    if (alpha[k] > 0) m[scale_symbol(p.places[k])] = alpha[k];
                ok = ok && cocycle_identity_check(p, spec.mellin.at(p.label),
                                                  Poly::term(Rational(1), m));
            }
            pass = pass && ok;
            arr.push_back(Json{{"primitive", p.label}, {"holds", ok}});
            text << "primitive " << p.label << (ok ? ": holds\n" : ": FAILS\n");
        }
        report["primitives"] = std::move(arr);
    }

    report["check"] = which;
    report["pass"] = pass;
    text << (pass ? "PASS\n" : "FAIL\n");
    emit(opts.format, report, text.str());
    return pass ? 0 : kExitCheckFailed;
}

int run_quasilinear(const CommonOpts& opts) {
    const DSESpec spec = load_spec(opts);
    const DSESpec reduced = quasilinear_reduce(spec);
    const auto original = solve_analytic_oracle(spec);
    const auto linear = solve_analytic_oracle(reduced);
    const bool equal = original == linear;

    Json out{{"reducedSpec", reduced.to_json()},
             {"solutionsAgree", equal},
             {"solution", green_json(reduced, linear)}};
    std::ostringstream text;
    text << "reduced spec:\n"
         << reduced.to_json().dump(2) << "\n"
         << "solutions agree to order " << spec.order << ": " << (equal ? "yes" : "NO") << "\n";
    emit(opts.format, out, text.str());
    return equal ? 0 : kExitCheckFailed;
}

int run_counterexample(int order, const std::string& format) {
    const CounterexampleReport report = counterexample_report(order);
    std::ostringstream text;
    text << "two-place series:\n";
    for (int n = 0; n <= report.two_place.truncation(); ++n)
        text << "  [x^" << n << "] " << report.two_place.at(n).str() << "\n";
    text << "single-place series:\n";
    for (int n = 0; n <= report.single_place.truncation(); ++n)
        text << "  [x^" << n << "] " << report.single_place.at(n).str() << "\n";
    text << "substitutions:\n";
    for (const auto& [sym, value] : report.substitutions)
        text << "  " << sym << " = " << value.str() << "\n";
    text << "orders 1..3 match after substitution: "
         << (report.substitutions_match_low_orders ? "yes" : "NO") << "\n";
    text << "x^4 residual: " << report.x4_residual.str() << "\n";
    text << "matches the reference obstruction: "
         << (report.residual_matches_reference ? "yes" : "NO") << "\n";
    emit(format, report.to_json(), text.str());
    return report.substitutions_match_low_orders && report.residual_matches_reference
               ? 0
               : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solver and identity checker for single-scale Dyson-Schwinger systems"};
    app.require_subcommand(1);

    CommonOpts common;

    auto addCommon = [&](CLI::App* cmd) {
        cmd->add_option("--spec", common.specPath, "spec JSON file")->required();
        cmd->add_option("--format", common.format, "output format: text|json")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--order", common.orderOverride, "override the truncation order");
        cmd->add_flag("--bind-random", common.bindRandom,
                      "bind all Mellin coefficients to seeded random rationals");
        cmd->add_flag("--symbolic", common.symbolic,
                      "keep Mellin coefficients symbolic (the default)");
        cmd->add_option("--seed", common.seed, "seed for --bind-random");
    };

    std::string rootEquation, treeText, mellinPath;
    std::string phiMethod = "tubing", solveMethod = "oracle", checkWhich;
    bool emitTubes = false, showStats = false;
    int rioOrder = -1, ceOrder = 4;
    std::string bareFormat;

    CLI::App* trees = app.add_subcommand("trees", "enumerate the contributing trees");
    addCommon(trees);
    trees->add_option("--root", rootEquation, "restrict to roots feeding this equation");

    CLI::App* tubings = app.add_subcommand("tubings", "enumerate binary tubings of a tree");
    tubings->add_option("--tree", treeText, "tree in nested text form")->required();
    tubings->add_option("--mellin", mellinPath, "JSON file mapping decorations to Mellin data");
    tubings->add_flag("--emit-tubes", emitTubes, "include explicit tube vertex lists");
    tubings->add_flag("--stats", showStats, "include per-tubing statistics");
    tubings->add_option("--format", bareFormat, "output format: text|json (default json)")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* phi = app.add_subcommand("phi", "evaluate the universal map on one tree");
    phi->add_option("--tree", treeText, "tree in nested text form")->required();
    phi->add_option("--mellin", mellinPath, "JSON file mapping decorations to Mellin data");
    phi->add_option("--method", phiMethod, "tubing|recursive")
        ->check(CLI::IsMember({"tubing", "recursive"}));
    phi->add_option("--format", bareFormat, "output format: text|json (default text)")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* solve = app.add_subcommand("solve", "solve the system");
    addCommon(solve);
    solve->add_option("--method", solveMethod, "oracle|tubing|fixpoint|closed")
        ->check(CLI::IsMember({"oracle", "tubing", "fixpoint", "closed"}));

    CLI::App* check = app.add_subcommand("check", "run an identity check");
    addCommon(check);
    check->add_option("--which", checkWhich, "rge|gamma|gamma-functional|rio|cocycle")
        ->required()
        ->check(CLI::IsMember({"rge", "gamma", "gamma-functional", "rio", "cocycle"}));
    check->add_option("--rio-n", rioOrder, "highest coefficient order for the rio check");

    CLI::App* quasi = app.add_subcommand("quasilinear", "reduce a quasi-linear spec and verify");
    addCommon(quasi);

    CLI::App* cex =
        app.add_subcommand("counterexample", "reproduce the two-place matching obstruction");
    cex->add_option("--order", ceOrder, "truncation order (>= 4)");
    cex->add_option("--format", bareFormat, "output format: text|json (default text)")
        ->check(CLI::IsMember({"text", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (trees->parsed()) return run_trees(common, rootEquation);
        if (tubings->parsed())
            return run_tubings(treeText, mellinPath, emitTubes, showStats,
                               bareFormat.empty() ? "json" : bareFormat);
        if (phi->parsed())
            return run_phi(treeText, mellinPath, phiMethod,
                           bareFormat.empty() ? "text" : bareFormat);
        if (solve->parsed()) return run_solve(common, solveMethod);
        if (check->parsed()) return run_check(common, checkWhich, rioOrder);
        if (quasi->parsed()) return run_quasilinear(common);
        if (cex->parsed())
            return run_counterexample(ceOrder, bareFormat.empty() ? "text" : bareFormat);
    } catch (const std::invalid_argument& e) {
        std::cerr << Json{{"error", e.what()}}.dump() << "\n";
        const std::string what = e.what();
        return what.find("parse") != std::string::npos ? kExitParse : kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", e.what()}}.dump() << "\n";
        return kExitConfig;
    }
    return 0;
}
