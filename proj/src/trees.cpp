#include "tubedse/trees.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>

namespace tubedse {

const std::map<std::string, Rational>& PrimitiveInfo::mu_of(const std::string& place) const {
    auto it = mu.find(place);
    if (it == mu.end())
        throw std::invalid_argument("primitive '" + label + "': unknown place '" + place + "'");
    return it->second;
}

Rational PrimitiveInfo::mu_scalar(const std::string& place) const {
    const auto& m = mu_of(place);
    if (m.size() > 1)
        throw std::invalid_argument("primitive '" + label + "': exponent is not a scalar");
    return m.empty() ? Rational(0) : m.begin()->second;
}

std::map<std::string, Rational> PrimitiveInfo::overall_mu() const {
    std::map<std::string, Rational> total;
    for (const auto& [place, vec] : mu) {
        (void)place;
        for (const auto& [eq, v] : vec) {
            total[eq] += v;
            if (total[eq].is_zero()) total.erase(eq);
        }
    }
    return total;
}

TreePtr DecoratedTree::make(std::string decoration, std::vector<ChildEdge> children) {
    auto node = std::shared_ptr<DecoratedTree>(new DecoratedTree());
    node->decoration_ = std::move(decoration);
    std::sort(children.begin(), children.end(), [](const ChildEdge& a, const ChildEdge& b) {
        if (a.place != b.place) return a.place < b.place;
        return a.child->code() < b.child->code();
    });
    node->children_ = std::move(children);
    std::string code = node->decoration_ + "[";
    int size = 1;
    bool first = true;
    for (const auto& ce : node->children_) {
        if (!first) code += ",";
        first = false;
        code += ce.place + ":" + ce.child->code();
        size += ce.child->vertex_count();
    }
    code += "]";
    node->code_ = std::move(code);
    node->size_ = size;
    return node;
}

long long aut_order(const TreePtr& t) {
    long long total = 1;
    const auto& kids = t->children();
    std::size_t i = 0;
    while (i < kids.size()) {
        std::size_t j = i;
        while (j < kids.size() && kids[j].place == kids[i].place &&
               kids[j].child->code() == kids[i].child->code())
            ++j;
        total *= factorial(static_cast<int>(j - i));
        i = j;
    }
    for (const auto& ce : kids) total *= aut_order(ce.child);
    return total;
}

int tree_weight(const TreePtr& t, const std::map<std::string, int>& weight_of_label) {
    auto it = weight_of_label.find(t->decoration());
    if (it == weight_of_label.end())
        throw std::invalid_argument("tree weight: unknown decoration '" + t->decoration() + "'");
    int w = it->second;
    for (const auto& ce : t->children()) w += tree_weight(ce.child, weight_of_label);
    return w;
}

std::string tree_text(const TreePtr& t) {
    if (t->children().empty()) return t->decoration();
    std::string out = t->decoration() + "(";
    bool first = true;
    for (const auto& ce : t->children()) {
        if (!first) out += ", ";
        first = false;
        out += ce.place + ": " + tree_text(ce.child);
    }
    return out + ")";
}

namespace {

struct TreeParser {
    const std::string& s;
    std::size_t pos = 0;

    explicit TreeParser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("tree parse error at position " + std::to_string(pos) + ": " +
                                    what);
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size()) {
            char c = s[pos];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' ||
                c == '[' || c == ']')
                ++pos;
            else
                break;
        }
        if (pos == start) fail("expected a name");
        return s.substr(start, pos - start);
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    TreePtr tree() {
        std::string dec = ident();
        std::vector<ChildEdge> kids;
        if (eat('(')) {
            if (!eat(')')) {
                do {
                    std::string place = ident();
                    if (!eat(':')) fail("expected ':' after place name");
                    kids.push_back({std::move(place), tree()});
                } while (eat(','));
                if (!eat(')')) fail("expected ')'");
            }
        }
        return DecoratedTree::make(std::move(dec), std::move(kids));
    }
};

}  // namespace

TreePtr parse_tree(const std::string& text) {
    TreeParser p(text);
    TreePtr t = p.tree();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return t;
}

Json tree_to_json(const TreePtr& t) {
    Json kids = Json::array();
    for (const auto& ce : t->children())
        kids.push_back(Json{{"place", ce.place}, {"tree", tree_to_json(ce.child)}});
    return Json{{"decoration", t->decoration()}, {"children", std::move(kids)}};
}

TreePtr tree_from_json(const Json& j) {
    std::vector<ChildEdge> kids;
    for (const auto& c : j.at("children"))
        kids.push_back({c.at("place").get<std::string>(), tree_from_json(c.at("tree"))});
    return DecoratedTree::make(j.at("decoration").get<std::string>(), std::move(kids));
}

Forest::Forest(TreePtr t) : trees_{std::move(t)} { rebuild_key(); }

Forest::Forest(std::vector<TreePtr> trees) : trees_(std::move(trees)) {
    std::sort(trees_.begin(), trees_.end(),
              [](const TreePtr& a, const TreePtr& b) { return a->code() < b->code(); });
    rebuild_key();
}

const Forest& Forest::empty() {
    static const Forest f;
    return f;
}

int Forest::vertex_count() const {
    int n = 0;
    for (const auto& t : trees_) n += t->vertex_count();
    return n;
}

Forest Forest::disjoint_union(const Forest& o) const {
    std::vector<TreePtr> all = trees_;
    all.insert(all.end(), o.trees_.begin(), o.trees_.end());
    return Forest(std::move(all));
}

void Forest::rebuild_key() {
    key_.clear();
    for (const auto& t : trees_) {
        if (!key_.empty()) key_ += ";";
        key_ += t->code();
    }
}

std::string Forest::str() const {
    if (trees_.empty()) return "1";
    std::string out;
    for (const auto& t : trees_) {
        if (!out.empty()) out += " ";
        out += tree_text(t);
    }
    return out;
}

std::vector<TreePtr> enumerate_trees(const std::vector<PrimitiveInfo>& primitives, int maxWeight,
                                     const std::optional<std::string>& rootEquation) {
    if (maxWeight < 1) throw std::invalid_argument("enumerate_trees: maxWeight must be >= 1");
    for (const auto& p : primitives) {
        if (p.weight < 1) throw std::invalid_argument("enumerate_trees: weights must be >= 1");
        if (p.places.empty())
            throw std::invalid_argument("enumerate_trees: primitive '" + p.label +
                                        "' has no places");
    }

    struct Item {
        std::string place;
        TreePtr tree;
        int weight;
    };

    // trees grouped by exact weight, globally sorted by code within a weight
    std::vector<std::vector<TreePtr>> byWeight(static_cast<std::size_t>(maxWeight) + 1);

    for (int w = 1; w <= maxWeight; ++w) {
        std::vector<TreePtr> level;
        for (const auto& p : primitives) {
            if (p.weight > w) continue;
            const int budget = w - p.weight;

            std::vector<Item> items;
            for (const auto& place : p.places)
                for (int cw = 1; cw <= budget; ++cw)
                    for (const auto& t : byWeight[cw]) items.push_back({place, t, cw});

            std::vector<ChildEdge> chosen;
            std::function<void(std::size_t, int)> choose = [&](std::size_t idx, int remaining) {
                if (remaining == 0) {
                    std::vector<ChildEdge> kids = chosen;
                    level.push_back(DecoratedTree::make(p.label, std::move(kids)));
                    return;
                }
                for (std::size_t j = idx; j < items.size(); ++j) {
                    if (items[j].weight > remaining) continue;
                    chosen.push_back({items[j].place, items[j].tree});
                    choose(j, remaining - items[j].weight);
                    chosen.pop_back();
                }
            };
            choose(0, budget);
        }
        std::sort(level.begin(), level.end(),
                  [](const TreePtr& a, const TreePtr& b) { return a->code() < b->code(); });
        byWeight[w] = std::move(level);
    }

    std::map<std::string, std::string> equation_of;
    for (const auto& p : primitives) equation_of[p.label] = p.equation;

    std::vector<TreePtr> out;
    for (int w = 1; w <= maxWeight; ++w)
        for (const auto& t : byWeight[w]) {
            if (rootEquation && equation_of.at(t->decoration()) != *rootEquation) continue;
            out.push_back(t);
        }
    return out;
}

namespace {

// Downsets of a tree as (cut-off forest, remaining tree or null when the
// whole tree is the downset).
std::vector<std::pair<Forest, TreePtr>> tree_downsets(const TreePtr& t) {
    std::vector<std::pair<Forest, TreePtr>> out;
    out.emplace_back(Forest(t), nullptr);

    std::vector<std::vector<std::pair<Forest, TreePtr>>> per_child;
    per_child.reserve(t->children().size());
    for (const auto& ce : t->children()) per_child.push_back(tree_downsets(ce.child));

    Forest acc;
    std::vector<ChildEdge> kept;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == per_child.size()) {
            std::vector<ChildEdge> kids = kept;
            out.emplace_back(acc, DecoratedTree::make(t->decoration(), std::move(kids)));
            return;
        }
        for (const auto& [down, rest] : per_child[i]) {
            Forest prev = acc;
            acc = acc.disjoint_union(down);
            bool pushed = false;
            if (rest) {
                kept.push_back({t->children()[i].place, rest});
                pushed = true;
            }
            walk(i + 1);
            if (pushed) kept.pop_back();
            acc = std::move(prev);
        }
    };
    walk(0);
    return out;
}

}  // namespace

std::vector<std::pair<Forest, Forest>> downset_splits(const Forest& f) {
    std::vector<std::pair<Forest, Forest>> out{{Forest::empty(), Forest::empty()}};
    // cartesian product of the per-tree downset choices
    for (const auto& t : f.trees()) {
        auto choices = tree_downsets(t);
        std::vector<std::pair<Forest, Forest>> next;
        next.reserve(out.size() * choices.size());
        for (const auto& [d0, u0] : out)
            for (const auto& [down, rest] : choices) {
                Forest up = rest ? u0.disjoint_union(Forest(rest)) : u0;
                next.emplace_back(d0.disjoint_union(down), std::move(up));
            }
        out = std::move(next);
    }
    return out;
}

std::vector<PrincipalSplit> principal_subtree_splits(const TreePtr& t) {
    std::vector<PrincipalSplit> out;
    const auto& kids = t->children();
    for (std::size_t i = 0; i < kids.size(); ++i) {
        auto without_ith = [&](TreePtr replacement) {
            std::vector<ChildEdge> rest;
            for (std::size_t j = 0; j < kids.size(); ++j) {
                if (j == i) {
                    if (replacement) rest.push_back({kids[i].place, replacement});
                } else {
                    rest.push_back(kids[j]);
                }
            }
            return DecoratedTree::make(t->decoration(), std::move(rest));
        };
        out.push_back({kids[i].child, without_ith(nullptr), kids[i].place});
        for (const auto& inner : principal_subtree_splits(kids[i].child))
            out.push_back({inner.subtree, without_ith(inner.complement), kids[i].place});
    }
    return out;
}

namespace {

struct FlatTree {
    std::vector<int> parent;
    std::vector<std::vector<int>> children;
};

FlatTree flatten(const TreePtr& t) {
    FlatTree ft;
    std::function<int(const TreePtr&, int)> walk = [&](const TreePtr& node, int par) {
        int id = static_cast<int>(ft.parent.size());
        ft.parent.push_back(par);
        ft.children.emplace_back();
        if (par >= 0) ft.children[par].push_back(id);
        for (const auto& ce : node->children()) walk(ce.child, id);
        return id;
    };
    walk(t, -1);
    return ft;
}

// Counts sequences that place every vertex after all of its children.
long long count_orders(const FlatTree& ft, unsigned placed, int n) {
    if (placed == (1u << n) - 1) return 1;
    long long total = 0;
    for (int v = 0; v < n; ++v) {
        if (placed & (1u << v)) continue;
        bool ready = true;
        for (int c : ft.children[v])
            if (!(placed & (1u << c))) {
                ready = false;
                break;
            }
        if (ready) total += count_orders(ft, placed | (1u << v), n);
    }
    return total;
}

}  // namespace

long long linear_extension_count_bruteforce(const TreePtr& t) {
    const int n = t->vertex_count();
    if (n > 9) throw std::invalid_argument("linear_extension_count_bruteforce: tree too large");
    FlatTree ft = flatten(t);
    return count_orders(ft, 0, n);
}

long long tree_factorial(const TreePtr& t) {
    long long r = t->vertex_count();
    for (const auto& ce : t->children()) r *= tree_factorial(ce.child);
    return r;
}

long long linear_extension_count(const TreePtr& t) {
    const int n = t->vertex_count();
    if (n <= 9) return linear_extension_count_bruteforce(t);
    return factorial(n) / tree_factorial(t);
}

}  // namespace tubedse
