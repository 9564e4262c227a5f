#include "tubedse/tubings.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace tubedse {

IndexedTree::IndexedTree(const TreePtr& t) {
    std::function<void(const TreePtr&, int, const std::string&)> walk =
        [&](const TreePtr& node, int par, const std::string& via) {
            int id = static_cast<int>(decoration.size());
            decoration.push_back(node->decoration());
            parent.push_back(par);
            edge_place.push_back(via);
            children.emplace_back();
            if (par >= 0) children[par].push_back(id);
            for (const auto& ce : node->children()) walk(ce.child, id, ce.place);
        };
    walk(t, -1, "");
}

std::vector<int> Tubing::beta(int k, const std::vector<std::string>& places) const {
    if (k < 1 || k > b()) throw std::invalid_argument("tubing: beta level out of range");
    std::vector<int> counts(places.size(), 0);
    for (std::size_t i = static_cast<std::size_t>(k - 1); i < root_types.size(); ++i) {
        auto it = std::find(places.begin(), places.end(), root_types[i]);
        if (it == places.end())
            throw std::invalid_argument("tubing: root tube type '" + root_types[i] +
                                        "' not among the root's places");
        counts[static_cast<std::size_t>(it - places.begin())] += 1;
    }
    return counts;
}

std::vector<int> Tubing::rank_vector(int vertex, const std::vector<std::string>& places) const {
    std::vector<int> counts(places.size(), 0);
    for (const auto& [place, c] : rank.at(static_cast<std::size_t>(vertex))) {
        auto it = std::find(places.begin(), places.end(), place);
        if (it == places.end())
            throw std::invalid_argument("tubing: rank type '" + place +
                                        "' not among the vertex's places");
        counts[static_cast<std::size_t>(it - places.begin())] += c;
    }
    return counts;
}

namespace {

using Mask = std::uint32_t;

struct TubingEnumerator {
    const IndexedTree& it;
    bool collect_tubes;

    std::vector<Tubing> run(Mask mask, int root) {
        if (__builtin_popcount(mask) == 1) {
            Tubing base;
            base.rank.resize(static_cast<std::size_t>(it.size()));
            if (collect_tubes) base.tubes.push_back({root});
            return {base};
        }

        std::vector<Tubing> out;
        for (int v = 0; v < it.size(); ++v) {
            if (v == root || !(mask & (Mask(1) << v))) continue;
            const Mask sub = descendants_within(v, mask);
            const Mask rest = mask & ~sub;
            const std::string& e0 = it.edge_place[static_cast<std::size_t>(top_child(v, root))];

            const auto lower = run(sub, v);
            const auto upper = run(rest, root);
            for (const auto& tl : lower) {
                for (const auto& tu : upper) {
                    Tubing tau;
                    tau.rank.resize(static_cast<std::size_t>(it.size()));
                    for (int w = 0; w < it.size(); ++w) {
                        for (const auto& [pl, c] : tl.rank[static_cast<std::size_t>(w)])
                            tau.rank[static_cast<std::size_t>(w)][pl] += c;
                        for (const auto& [pl, c] : tu.rank[static_cast<std::size_t>(w)])
                            tau.rank[static_cast<std::size_t>(w)][pl] += c;
                    }
                    tau.rank[static_cast<std::size_t>(root)][e0] += 1;
                    tau.root_types.reserve(tu.root_types.size() + 1);
                    tau.root_types.push_back(e0);
                    tau.root_types.insert(tau.root_types.end(), tu.root_types.begin(),
                                          tu.root_types.end());
                    if (collect_tubes) {
                        tau.tubes.push_back(mask_to_list(mask));
                        tau.tubes.insert(tau.tubes.end(), tl.tubes.begin(), tl.tubes.end());
                        tau.tubes.insert(tau.tubes.end(), tu.tubes.begin(), tu.tubes.end());
                    }
                    out.push_back(std::move(tau));
                }
            }
        }
        return out;
    }

    Mask descendants_within(int v, Mask mask) const {
        Mask sub = 0;
        std::vector<int> stack{v};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            sub |= Mask(1) << u;
            for (int c : it.children[static_cast<std::size_t>(u)])
                if (mask & (Mask(1) << c)) stack.push_back(c);
        }
        return sub;
    }

    // child of `root` on the path down to v
    int top_child(int v, int root) const {
        int u = v;
        while (it.parent[static_cast<std::size_t>(u)] != root)
            u = it.parent[static_cast<std::size_t>(u)];
        return u;
    }

    static std::vector<int> mask_to_list(Mask m) {
        std::vector<int> out;
        for (int v = 0; m; ++v, m >>= 1)
            if (m & 1) out.push_back(v);
        return out;
    }
};

}  // namespace

std::vector<Tubing> enumerate_tubings(const TreePtr& t, bool collect_tubes) {
    IndexedTree it(t);
    if (it.size() > 31) throw std::invalid_argument("enumerate_tubings: tree too large");
    TubingEnumerator e{it, collect_tubes};
    Mask full = (it.size() == 31) ? ~Mask(0) >> 1 : (Mask(1) << it.size()) - 1;
    auto out = e.run(full, 0);
    if (collect_tubes)
        for (auto& tau : out)
            std::sort(tau.tubes.begin(), tau.tubes.end(),
                      [](const std::vector<int>& a, const std::vector<int>& b) {
                          if (a.size() != b.size()) return a.size() < b.size();
                          return a < b;
                      });
    return out;
}

Poly mel(const Tubing& tau, const IndexedTree& it,
         const std::map<std::string, PrimitiveInfo>& primitives,
         const std::map<std::string, MellinSeries>& mellin) {
    Poly out = Poly::one();
    for (int v = 1; v < it.size(); ++v) {
        const auto& label = it.decoration[static_cast<std::size_t>(v)];
        const auto& prim = primitives.at(label);
        out *= mellin.at(label).coeff(tau.rank_vector(v, prim.places));
    }
    return out;
}

const PrimitiveInfo& TubingPhiContext::primitive(const std::string& label) const {
    auto it = primitives_->find(label);
    if (it == primitives_->end())
        throw std::invalid_argument("phi_tubing: unknown primitive '" + label + "'");
    return it->second;
}

const MellinSeries& TubingPhiContext::mellin(const std::string& label) const {
    auto it = mellin_->find(label);
    if (it == mellin_->end())
        throw std::invalid_argument("phi_tubing: no mellin data for '" + label + "'");
    return it->second;
}

namespace {

std::vector<int> type_counts(const std::vector<std::string>& seq, std::size_t from,
                             const std::vector<std::string>& places) {
    std::vector<int> counts(places.size(), 0);
    for (std::size_t i = from; i < seq.size(); ++i) {
        auto it = std::find(places.begin(), places.end(), seq[i]);
        if (it == places.end())
            throw std::invalid_argument("phi_tubing: tube type '" + seq[i] + "' has no place");
        counts[static_cast<std::size_t>(it - places.begin())] += 1;
    }
    return counts;
}

// root-type-sequence -> sum of Mellin monomials over tubings with that
// sequence; the tubing statistics compose over principal subtree splits
const TubingPhiContext::SeqAggregate& aggregate(const TreePtr& t, TubingPhiContext& ctx) {
    auto hit = ctx.memo().find(t->code());
    if (hit != ctx.memo().end()) return hit->second;

    TubingPhiContext::SeqAggregate agg;
    if (t->vertex_count() == 1) {
        agg[{}] = Poly::one();
    } else {
        for (const auto& split : principal_subtree_splits(t)) {
            // the lower subtree contributes its whole tubing sum times the
            // Mellin coefficient of its own root
            const auto& subAgg = aggregate(split.subtree, ctx);
            const auto& subPrim = ctx.primitive(split.subtree->decoration());
            const auto& subMellin = ctx.mellin(split.subtree->decoration());
            Poly lowerSum;
            for (const auto& [seq, poly] : subAgg)
                lowerSum += poly * subMellin.coeff(type_counts(seq, 0, subPrim.places));

            if (lowerSum.is_zero()) continue;
            for (const auto& [seq, poly] : aggregate(split.complement, ctx)) {
                std::vector<std::string> newSeq;
                newSeq.reserve(seq.size() + 1);
                newSeq.push_back(split.place);
                newSeq.insert(newSeq.end(), seq.begin(), seq.end());
                auto& slot = agg[std::move(newSeq)];
                slot += lowerSum * poly;
            }
        }
    }
    return ctx.memo().emplace(t->code(), std::move(agg)).first->second;
}

}  // namespace

Poly phi_tubing(const TreePtr& t, TubingPhiContext& ctx) {
    const auto& prim = ctx.primitive(t->decoration());
    const auto& A = ctx.mellin(t->decoration());
    const auto& agg = aggregate(t, ctx);

    Poly out;
    for (const auto& [seq, melSum] : agg) {
        const int b = static_cast<int>(seq.size()) + 1;
        Poly inner;
        for (int k = 1; k <= b; ++k) {
            const Poly root = A.coeff(type_counts(seq, static_cast<std::size_t>(k - 1),
                                                  prim.places));
            inner += root * Poly::symbol(scale_symbol(), k)
                                .scaled(Rational(1) / Rational(factorial(k)));
        }
        out += melSum * inner;
    }
    return out;
}

Poly phi_tubing_direct(const TreePtr& t, const std::map<std::string, PrimitiveInfo>& primitives,
                       const std::map<std::string, MellinSeries>& mellin) {
    IndexedTree it(t);
    const auto& rootPrim = primitives.at(t->decoration());
    const auto& rootMellin = mellin.at(t->decoration());
    Poly out;
    for (const auto& tau : enumerate_tubings(t)) {
        const Poly m = mel(tau, it, primitives, mellin);
        Poly inner;
        for (int k = 1; k <= tau.b(); ++k)
            inner += rootMellin.coeff(tau.beta(k, rootPrim.places)) *
                     Poly::symbol(scale_symbol(), k).scaled(Rational(1) / Rational(factorial(k)));
        out += m * inner;
    }
    return out;
}

Poly sigma_convolution_power(const TreePtr& t, int k,
                             const std::map<std::string, PrimitiveInfo>& primitives,
                             const std::map<std::string, MellinSeries>& mellin) {
    if (k < 0) throw std::invalid_argument("sigma power: negative exponent");

    // sigma: the linear-in-L coefficient functional; an infinitesimal
    // character, zero on the empty forest and on products
    std::function<Poly(const Forest&)> sigma = [&](const Forest& f) -> Poly {
        if (f.trees().size() != 1) return Poly();
        const TreePtr& tree = f.trees().front();
        IndexedTree it(tree);
        const auto& prim = primitives.at(tree->decoration());
        const auto& A = mellin.at(tree->decoration());
        Poly out;
        for (const auto& tau : enumerate_tubings(tree))
            out += A.coeff(tau.beta(1, prim.places)) * mel(tau, it, primitives, mellin);
        return out;
    };

    std::function<Poly(const Forest&, int)> power = [&](const Forest& f, int m) -> Poly {
        if (m == 0) return f.is_empty() ? Poly::one() : Poly();
        if (m == 1) return sigma(f);
        Poly total;
        for (const auto& [down, up] : downset_splits(f)) {
            const Poly left = sigma(down);
            if (left.is_zero()) continue;
            total += left * power(up, m - 1);
        }
        return total;
    };
    return power(Forest(t), k);
}

std::map<std::string, PrimitiveInfo> infer_primitives(const TreePtr& t) {
    std::map<std::string, std::set<std::string>> placesOf;
    std::function<void(const TreePtr&)> walk = [&](const TreePtr& node) {
        placesOf[node->decoration()];
        for (const auto& ce : node->children()) {
            placesOf[node->decoration()].insert(ce.place);
            walk(ce.child);
        }
    };
    walk(t);
    std::map<std::string, PrimitiveInfo> out;
    for (const auto& [label, places] : placesOf) {
        PrimitiveInfo p;
        p.label = label;
        p.weight = 1;
        p.equation = "1";
        if (places.empty())
            p.places = {"e"};
        else
            p.places.assign(places.begin(), places.end());
        for (const auto& pl : p.places) p.mu[pl] = {};
        out[label] = p;
    }
    return out;
}

}  // namespace tubedse
