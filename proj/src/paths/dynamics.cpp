#include "bratteli/error.hpp"
#include "bratteli/paths.hpp"

#include <algorithm>
#include <numeric>

namespace bratteli {

bool af_equiv(const EventuallyPeriodicPath& x, const EventuallyPeriodicPath& y) {
    // Both sequences are periodic with period lcm from max(preamble) on, so
    // eventual agreement is decided on one common period.
    const std::size_t start = std::max(x.preamble.size(), y.preamble.size());
    const std::size_t period = std::lcm(x.cycle.size(), y.cycle.size());
    for (std::size_t k = start; k < start + period; ++k)
        if (x.edge(k) != y.edge(k)) return false;
    return true;
}

namespace {

// Extremal paths for the edge chosen by `pick(v)` (the vertical id into v).
template <class Pick>
std::vector<EventuallyPeriodicPath> extremes(const BratteliDiagram& d, Pick pick) {
    const int n = d.vertex_count();
    const auto below = [&](VertexId v) { return d.verticals[static_cast<std::size_t>(pick(v))].source; };
    std::vector<EventuallyPeriodicPath> out;
    for (VertexId v = 0; v < n; ++v) {
        // v is on a cycle of `below` iff it returns to itself within n steps.
        std::vector<VertexId> orbit{v};
        VertexId w = below(v);
        while (w != v && static_cast<int>(orbit.size()) <= n) {
            orbit.push_back(w);
            w = below(w);
        }
        if (w != v) continue;
        // Going up, the path visits the orbit backwards: v, f^{L-1}(v), ..., v.
        EventuallyPeriodicPath x{v, {}, {}};
        for (std::size_t k = orbit.size(); k-- > 0;) x.cycle.push_back(pick(orbit[k]));
        out.push_back(x);
    }
    return out;
}

}  // namespace

ExtremalPaths extremal_paths(const BratteliDiagram& d) {
    ExtremalPaths out;
    out.min_paths = extremes(d, [&](VertexId v) { return d.vertical_at(v, 0); });
    out.max_paths = extremes(d, [&](VertexId v) { return d.vertical_at(v, d.rule_length(v) - 1); });
    for (auto* list : {&out.min_paths, &out.max_paths})
        for (const auto& x : *list) validate(d, x);
    return out;
}

namespace {

template <class Test>
bool all_edges(const EventuallyPeriodicPath& x, Test test) {
    return std::all_of(x.preamble.begin(), x.preamble.end(), test) && std::all_of(x.cycle.begin(), x.cycle.end(), test);
}

}  // namespace

bool is_max_path(const BratteliDiagram& d, const EventuallyPeriodicPath& x) {
    return all_edges(x, [&](int e) {
        const auto& v = d.verticals[static_cast<std::size_t>(e)];
        return v.position == d.rule_length(v.range) - 1;
    });
}

bool is_min_path(const BratteliDiagram& d, const EventuallyPeriodicPath& x) {
    return all_edges(x, [&](int e) { return d.verticals[static_cast<std::size_t>(e)].position == 0; });
}

const EventuallyPeriodicPath* ExtremePairing::psi(const EventuallyPeriodicPath& max_path) const {
    const auto n = max_path.normalized();
    for (const auto& [mx, mn] : pairs)
        if (mx == n) return &mn;
    return nullptr;
}

ExtremePairing pair_extremes(const BratteliDiagram& d) {
    const ExtremalPaths ext = extremal_paths(d);
    const DiagramChains chains = diagram_chains(d, DiagramKind::Nontrivial);
    ExtremePairing out;
    for (const auto& cyc : chains.cycles) {
        for (std::size_t r = 0; r < cyc.size(); ++r) {
            EventuallyPeriodicPath left, right;
            for (std::size_t k = 0; k < cyc.size(); ++k) {
                const auto& dt = d.diagrams[static_cast<std::size_t>(cyc[(r + k) % cyc.size()])];
                left.cycle.push_back(dt.e_left);
                right.cycle.push_back(dt.e_right);
            }
            left.root = d.verticals[static_cast<std::size_t>(left.cycle.front())].source;
            right.root = d.verticals[static_cast<std::size_t>(right.cycle.front())].source;
            left = left.normalized();
            right = right.normalized();
            // Leftward orientation puts the minimal path in the left column;
            // fall back to the other assignment if the data says otherwise.
            if (is_max_path(d, left) && is_min_path(d, right)) std::swap(left, right);
            if (!is_max_path(d, right) || !is_min_path(d, left))
                throw Error(ErrorKind::UnpairedExtreme, "diagram chain columns " + format_path(d, left) + " and " +
                                                            format_path(d, right) + " are not a min/max pair");
            if (std::none_of(out.pairs.begin(), out.pairs.end(), [&](const auto& p) { return p.first == right; }))
                out.pairs.emplace_back(right, left);
        }
    }
    // Bijection check against the extremal path lists.
    const auto count_in = [](const std::vector<EventuallyPeriodicPath>& list, const EventuallyPeriodicPath& x) {
        return std::count(list.begin(), list.end(), x.normalized());
    };
    if (out.pairs.size() != ext.max_paths.size() || ext.max_paths.size() != ext.min_paths.size())
        throw Error(ErrorKind::UnpairedExtreme, std::to_string(out.pairs.size()) + " pairs for " +
                                                    std::to_string(ext.max_paths.size()) + " maximal and " +
                                                    std::to_string(ext.min_paths.size()) + " minimal paths");
    for (const auto& m : ext.max_paths)
        if (std::count_if(out.pairs.begin(), out.pairs.end(), [&](const auto& p) { return p.first == m.normalized(); }) != 1)
            throw Error(ErrorKind::UnpairedExtreme, "maximal path " + format_path(d, m) + " is not paired exactly once");
    for (const auto& m : ext.min_paths)
        if (std::count_if(out.pairs.begin(), out.pairs.end(), [&](const auto& p) { return p.second == m.normalized(); }) != 1)
            throw Error(ErrorKind::UnpairedExtreme, "minimal path " + format_path(d, m) + " is not paired exactly once");
    for (const auto& [mx, mn] : out.pairs)
        if (count_in(ext.max_paths, mx) != 1 || count_in(ext.min_paths, mn) != 1)
            throw Error(ErrorKind::UnpairedExtreme, "pairing contains a non-extremal path");
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

EventuallyPeriodicPath vershik_successor(const BratteliDiagram& d, const ExtremePairing& psi,
                                         const EventuallyPeriodicPath& x) {
    const std::size_t horizon = x.preamble.size() + x.cycle.size();
    std::size_t k = 0;
    while (k < horizon) {
        const auto& e = d.verticals[static_cast<std::size_t>(x.edge(k))];
        if (e.position < d.rule_length(e.range) - 1) break;
        ++k;
    }
    if (k == horizon) {
        const EventuallyPeriodicPath* m = psi.psi(x);
        if (!m) throw Error(ErrorKind::UnpairedExtreme, "maximal path " + format_path(d, x) + " has no partner");
        return *m;
    }
    // Materialize edges 0..k, keep the tail from k + 1 on.
    const std::size_t keep = std::max(x.preamble.size(), k + 1);
    std::vector<int> edges;
    for (std::size_t i = 0; i < keep; ++i) edges.push_back(x.edge(i));
    const auto& bumped = d.verticals[static_cast<std::size_t>(edges[k])];
    edges[k] = d.vertical_at(bumped.range, bumped.position + 1);
    for (std::size_t i = k; i-- > 0;) {
        const VertexId above = d.verticals[static_cast<std::size_t>(edges[i + 1])].source;
        edges[i] = d.vertical_at(above, 0);
    }
    EventuallyPeriodicPath out;
    out.root = d.verticals[static_cast<std::size_t>(edges.front())].source;
    out.preamble = edges;
    for (std::size_t i = 0; i < x.cycle.size(); ++i) out.cycle.push_back(x.edge(keep + i));
    return out.normalized();
}

}  // namespace bratteli

namespace bratteli {

std::vector<EventuallyPeriodicPath> enumerate_periodic_paths(const BratteliDiagram& d, int max_preamble, int max_cycle) {
    std::vector<std::vector<int>> up(static_cast<std::size_t>(d.vertex_count()));
    for (int e = 0; e < static_cast<int>(d.verticals.size()); ++e)
        up[static_cast<std::size_t>(d.verticals[static_cast<std::size_t>(e)].source)].push_back(e);
    const auto range = [&](int e) { return d.verticals[static_cast<std::size_t>(e)].range; };

    // Closed walks of length <= max_cycle starting at each vertex.
    std::vector<std::vector<std::vector<int>>> cycles_at(static_cast<std::size_t>(d.vertex_count()));
    for (VertexId v = 0; v < d.vertex_count(); ++v) {
        std::vector<int> walk;
        const auto grow = [&](auto&& self, VertexId at) -> void {
            if (!walk.empty() && at == v) cycles_at[static_cast<std::size_t>(v)].push_back(walk);
            if (static_cast<int>(walk.size()) == max_cycle) return;
            for (int e : up[static_cast<std::size_t>(at)]) {
                walk.push_back(e);
                self(self, range(e));
                walk.pop_back();
            }
        };
        grow(grow, v);
    }

    std::vector<EventuallyPeriodicPath> out;
    for (VertexId root = 0; root < d.vertex_count(); ++root) {
        std::vector<int> pre;
        const auto grow = [&](auto&& self, VertexId at) -> void {
            for (const auto& c : cycles_at[static_cast<std::size_t>(at)]) out.push_back(EventuallyPeriodicPath{root, pre, c}.normalized());
            if (static_cast<int>(pre.size()) == max_preamble) return;
            for (int e : up[static_cast<std::size_t>(at)]) {
                pre.push_back(e);
                self(self, range(e));
                pre.pop_back();
            }
        };
        grow(grow, root);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace bratteli
