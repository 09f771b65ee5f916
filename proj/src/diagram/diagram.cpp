#include "bratteli/diagram.hpp"

#include "bratteli/error.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace bratteli {

const char* diagram_kind_name(DiagramKind kind) {
    switch (kind) {
        case DiagramKind::Trivial: return "trivial";
        case DiagramKind::Internal: return "internal";
        case DiagramKind::Transient: return "transient";
        case DiagramKind::Nontrivial: return "nontrivial";
        case DiagramKind::NontrivialOpposite: return "nontrivial-op";
    }
    return "?";
}

namespace {

unsigned long long key(int h_top, int e_left, int e_right) {
    return (static_cast<unsigned long long>(h_top) << 42) | (static_cast<unsigned long long>(e_left) << 21) |
           static_cast<unsigned long long>(e_right);
}

const std::vector<int> kNone;

}  // namespace

std::optional<VertexId> BratteliDiagram::find_vertex(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<VertexId>(i);
    return std::nullopt;
}

int BratteliDiagram::vertical_at(VertexId range, int position) const {
    const auto& ids = into(range);
    if (position < 0 || position >= static_cast<int>(ids.size()))
        throw Error(ErrorKind::BadPath, "vertex " + names[static_cast<std::size_t>(range)] + " has no position " +
                                            std::to_string(position));
    return ids[static_cast<std::size_t>(position)];
}

std::vector<int> BratteliDiagram::horizontals_between(VertexId source, VertexId range) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < horizontals.size(); ++i)
        if (horizontals[i].source == source && horizontals[i].range == range) out.push_back(static_cast<int>(i));
    return out;
}

bool BratteliDiagram::is_diagram(int h_top, int e_left, int e_right, int h_bot) const {
    const auto& b = bottoms(h_top, e_left, e_right);
    return std::find(b.begin(), b.end(), h_bot) != b.end();
}

const std::vector<int>& BratteliDiagram::bottoms(int h_top, int e_left, int e_right) const {
    auto it = bottoms_.find(key(h_top, e_left, e_right));
    return it == bottoms_.end() ? kNone : it->second;
}

void BratteliDiagram::index() {
    into_.assign(names.size(), {});
    for (std::size_t i = 0; i < verticals.size(); ++i) into_[static_cast<std::size_t>(verticals[i].range)].push_back(static_cast<int>(i));
    for (auto& ids : into_)
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            return verticals[static_cast<std::size_t>(a)].position < verticals[static_cast<std::size_t>(b)].position;
        });
    trivial_.assign(names.size(), -1);
    for (std::size_t i = 0; i < horizontals.size(); ++i)
        if (horizontals[i].trivial) trivial_[static_cast<std::size_t>(horizontals[i].source)] = static_cast<int>(i);
    bottoms_.clear();
    for (const auto& dt : diagrams) bottoms_[key(dt.h_top, dt.e_left, dt.e_right)].push_back(dt.h_bot);
}

std::vector<VerticalTemplate> build_vertical(const CollaredSubstitution& cs) {
    const FieldPtr& field = cs.field();
    const AlgebraicNumber lambda = AlgebraicNumber::lambda_pow(field, 1);
    std::vector<VerticalTemplate> out;
    for (int r = 0; r < cs.size(); ++r) {
        // Base-scale layout of the supertile: its subtiles keep their
        // generation-1 lengths, so the supertile has length L * len(r).
        const AlgebraicNumber super_center = (lambda * cs.lengths[static_cast<std::size_t>(r)]).scale(Rational(1, 2));
        AlgebraicNumber left = AlgebraicNumber::zero(field);
        const Word& rule = cs.rules[static_cast<std::size_t>(r)];
        for (std::size_t p = 0; p < rule.size(); ++p) {
            const AlgebraicNumber& len = cs.lengths[static_cast<std::size_t>(rule[p])];
            const AlgebraicNumber center = left + len.scale(Rational(1, 2));
            out.push_back({rule[p], r, static_cast<int>(p), super_center - center});
            left += len;
        }
    }
    return out;
}

std::vector<HorizontalTemplate> build_horizontal(const CollaredSubstitution& cs) {
    const FieldPtr& field = cs.field();
    std::vector<HorizontalTemplate> out;
    for (int v = 0; v < cs.size(); ++v)
        out.push_back({v, v, AlgebraicNumber::zero(field), true, v});
    const std::set<Word> words4 = legal_words(cs.base, 4);
    for (int t = 0; t < cs.size(); ++t)
        for (int u = 0; u < cs.size(); ++u) {
            const auto& l = cs.letters[static_cast<std::size_t>(t)];
            const auto& r = cs.letters[static_cast<std::size_t>(u)];
            if (l.right != r.core || r.left != l.core) continue;
            if (!words4.count(Word{l.left, l.core, r.core, r.right})) continue;
            const AlgebraicNumber c =
                (cs.lengths[static_cast<std::size_t>(t)] + cs.lengths[static_cast<std::size_t>(u)]).scale(Rational(1, 2));
            const int id = static_cast<int>(out.size());
            out.push_back({t, u, c, false, id + 1});
            out.push_back({u, t, -c, false, id});
        }
    return out;
}

AlgebraicNumber diagram_residual(const BratteliDiagram& d, int h_top, int e_left, int e_right, int h_bot) {
    const AlgebraicNumber lambda = AlgebraicNumber::lambda_pow(d.field, 1);
    return d.verticals[static_cast<std::size_t>(e_left)].coeff + lambda * d.horizontals[static_cast<std::size_t>(h_bot)].coeff -
           d.horizontals[static_cast<std::size_t>(h_top)].coeff - d.verticals[static_cast<std::size_t>(e_right)].coeff;
}

std::vector<DiagramTemplate> enumerate_commutative_diagrams(const BratteliDiagram& d) {
    std::vector<DiagramTemplate> found;
    const int nv = static_cast<int>(d.verticals.size());
    for (int el = 0; el < nv; ++el)
        for (int er = 0; er < nv; ++er) {
            const auto& l = d.verticals[static_cast<std::size_t>(el)];
            const auto& r = d.verticals[static_cast<std::size_t>(er)];
            for (int ht : d.horizontals_between(l.source, r.source))
                for (int hb : d.horizontals_between(l.range, r.range))
                    if (diagram_residual(d, ht, el, er, hb).is_zero()) found.push_back({ht, el, er, hb, DiagramKind::Trivial});
        }

    // Crossing diagrams (nontrivial bottom edge); recurrent ones lie on a
    // cycle of the composition graph.
    const auto trivial = [&](int h) { return d.horizontals[static_cast<std::size_t>(h)].trivial; };
    std::vector<int> crossing;
    for (std::size_t i = 0; i < found.size(); ++i)
        if (!trivial(found[i].h_bot)) crossing.push_back(static_cast<int>(i));
    std::vector<std::vector<int>> next(found.size());
    for (int a : crossing)
        for (int b : crossing)
            if (found[static_cast<std::size_t>(a)].h_bot == found[static_cast<std::size_t>(b)].h_top)
                next[static_cast<std::size_t>(a)].push_back(b);
    const auto on_cycle = [&](int start) {
        std::vector<char> seen(found.size(), 0);
        std::vector<int> stack(next[static_cast<std::size_t>(start)]);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            if (v == start) return true;
            if (seen[static_cast<std::size_t>(v)]) continue;
            seen[static_cast<std::size_t>(v)] = 1;
            for (int w : next[static_cast<std::size_t>(v)]) stack.push_back(w);
        }
        return false;
    };

    for (std::size_t i = 0; i < found.size(); ++i) {
        auto& dt = found[i];
        if (trivial(dt.h_top) && trivial(dt.h_bot))
            dt.kind = DiagramKind::Trivial;
        else if (trivial(dt.h_bot))
            dt.kind = DiagramKind::Internal;
        else if (!on_cycle(static_cast<int>(i)))
            dt.kind = DiagramKind::Transient;
        else
            dt.kind = d.horizontals[static_cast<std::size_t>(dt.h_top)].coeff.sign() < 0 ? DiagramKind::Nontrivial
                                                                                        : DiagramKind::NontrivialOpposite;
    }
    return found;
}

BratteliDiagram build_diagram(const CollaredSubstitution& cs) {
    BratteliDiagram d;
    d.field = cs.field();
    for (int t = 0; t < cs.size(); ++t) {
        d.names.push_back(cs.name(t));
        d.collars.push_back(cs.collar_text(t));
    }
    d.lengths = cs.lengths;
    d.rules = cs.rules;
    d.verticals = build_vertical(cs);
    d.horizontals = build_horizontal(cs);
    d.index();
    d.diagrams = enumerate_commutative_diagrams(d);
    d.index();
    d.csub = std::make_shared<const CollaredSubstitution>(cs);
    return d;
}

BratteliDiagram build_diagram(const Substitution& sub) { return build_diagram(collared_substitution(sub)); }

DiagramChains diagram_chains(const BratteliDiagram& d, DiagramKind kind) {
    DiagramChains out;
    for (std::size_t i = 0; i < d.diagrams.size(); ++i)
        if (d.diagrams[i].kind == kind) out.nodes.push_back(static_cast<int>(i));
    for (int a : out.nodes)
        for (int b : out.nodes)
            if (d.diagrams[static_cast<std::size_t>(a)].h_bot == d.diagrams[static_cast<std::size_t>(b)].h_top)
                out.arrows.emplace_back(a, b);
    // Simple cycles through their smallest node.
    std::vector<int> path;
    std::function<void(int, int)> extend = [&](int start, int v) {
        for (const auto& [a, b] : out.arrows) {
            if (a != v || b < start) continue;
            if (b == start) {
                out.cycles.push_back(path);
                continue;
            }
            if (std::find(path.begin(), path.end(), b) != path.end()) continue;
            path.push_back(b);
            extend(start, b);
            path.pop_back();
        }
    };
    for (int s : out.nodes) {
        path = {s};
        extend(s, s);
    }
    return out;
}

bool is_regular(const BratteliDiagram& d) {
    for (int v = 0; v < d.vertex_count(); ++v) {
        const bool incoming = !d.into(v).empty();
        const bool outgoing = std::any_of(d.verticals.begin(), d.verticals.end(),
                                          [&](const VerticalTemplate& e) { return e.source == v; });
        if (!incoming || !outgoing) return false;
    }
    return true;
}

HypothesisResult hypothesis_check(const BratteliDiagram& d) {
    // Every vertex is reached by its root edge; it then suffices that each
    // vertex leads forward to a vertex with at least two outgoing edges.
    const int n = d.vertex_count();
    std::vector<int> out_degree(static_cast<std::size_t>(n), 0);
    for (const auto& e : d.verticals) ++out_degree[static_cast<std::size_t>(e.source)];
    for (int v = 0; v < n; ++v) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<int> stack{v};
        bool ok = false;
        while (!stack.empty() && !ok) {
            const int w = stack.back();
            stack.pop_back();
            if (seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = 1;
            if (out_degree[static_cast<std::size_t>(w)] >= 2) ok = true;
            for (const auto& e : d.verticals)
                if (e.source == w) stack.push_back(e.range);
        }
        if (!ok) return {false, v};
    }
    return {};
}

}  // namespace bratteli
