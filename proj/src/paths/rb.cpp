#include "bratteli/error.hpp"
#include "bratteli/paths.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace bratteli {

int RbWitness::horizontal_at(int generation) const {
    const int k = generation - n0;
    if (k < 0) throw Error(ErrorKind::BadPath, "generation below n0");
    if (static_cast<std::size_t>(k) < chain_preamble.size()) return chain_preamble[static_cast<std::size_t>(k)];
    return chain_cycle[(static_cast<std::size_t>(k) - chain_preamble.size()) % chain_cycle.size()];
}

namespace {

AlgebraicNumber translation_at(const BratteliDiagram& d, const EventuallyPeriodicPath& x, const EventuallyPeriodicPath& y,
                               int h, int generation) {
    const AlgebraicNumber a_n = u_of_prefix(d, x.prefix(generation - 1)) - u_of_prefix(d, y.prefix(generation - 1)) +
                                horizontal_label(d, h, generation);
    return -a_n;
}

}  // namespace

std::optional<RbWitness> rb_equiv(const BratteliDiagram& d, const EventuallyPeriodicPath& x,
                                  const EventuallyPeriodicPath& y) {
    const int nh = static_cast<int>(d.horizontals.size());
    // From generation g0 on, the edge pair is periodic with period `period`.
    const int g0 = 2 + static_cast<int>(std::max(x.preamble.size(), y.preamble.size()));
    const int period = static_cast<int>(std::lcm(x.cycle.size(), y.cycle.size()));
    const auto ex = [&](int g) { return x.edge(static_cast<std::size_t>(g - 2)); };
    const auto ey = [&](int g) { return y.edge(static_cast<std::size_t>(g - 2)); };
    const auto links = [&](int h, int g) {
        const auto& t = d.horizontals[static_cast<std::size_t>(h)];
        return t.source == vertex_at(d, x, g) && t.range == vertex_at(d, y, g);
    };

    // Product automaton over (phase, h): prune states with no successor until
    // the remaining ones each start an infinite run.
    std::vector<std::vector<char>> alive(static_cast<std::size_t>(period), std::vector<char>(static_cast<std::size_t>(nh), 0));
    for (int ph = 0; ph < period; ++ph)
        for (int h = 0; h < nh; ++h) alive[static_cast<std::size_t>(ph)][static_cast<std::size_t>(h)] = links(h, g0 + ph);
    const auto successors = [&](int h, int g, const std::vector<char>& allowed) {
        std::vector<int> out;
        for (int hb : d.bottoms(h, ex(g + 1), ey(g + 1)))
            if (allowed[static_cast<std::size_t>(hb)]) out.push_back(hb);
        std::sort(out.begin(), out.end());
        return out;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (int ph = 0; ph < period; ++ph)
            for (int h = 0; h < nh; ++h) {
                auto& cell = alive[static_cast<std::size_t>(ph)][static_cast<std::size_t>(h)];
                if (!cell) continue;
                if (successors(h, g0 + ph, alive[static_cast<std::size_t>((ph + 1) % period)]).empty()) {
                    cell = 0;
                    changed = true;
                }
            }
    }

    // Backward sets S_n for n < g0: horizontals at generation n with an
    // infinite run from there.
    std::map<int, std::vector<char>> viable;
    const auto viable_at = [&](int g) -> const std::vector<char>& {
        if (g >= g0) return alive[static_cast<std::size_t>((g - g0) % period)];
        return viable.at(g);
    };
    for (int g = g0 - 1; g >= 1; --g) {
        std::vector<char> s(static_cast<std::size_t>(nh), 0);
        for (int h = 0; h < nh; ++h)
            s[static_cast<std::size_t>(h)] = links(h, g) && !successors(h, g, viable_at(g + 1)).empty();
        viable[g] = std::move(s);
    }
    const auto any = [](const std::vector<char>& v) { return std::find(v.begin(), v.end(), 1) != v.end(); };
    int n0 = 1;
    while (n0 < g0 && !any(viable_at(n0))) ++n0;
    if (!any(viable_at(n0))) return std::nullopt;

    // Deterministic witness chain: smallest viable start, smallest viable
    // successor; it becomes periodic once a (phase, h) state repeats.
    const auto& start = viable_at(n0);
    int h = static_cast<int>(std::find(start.begin(), start.end(), 1) - start.begin());
    std::vector<int> chain{h};
    std::map<std::pair<int, int>, std::size_t> seen;
    int g = n0;
    std::size_t cycle_start = 0;
    for (;;) {
        if (g >= g0) {
            const auto state = std::make_pair((g - g0) % period, h);
            if (auto it = seen.find(state); it != seen.end()) {
                cycle_start = it->second;
                chain.pop_back();
                break;
            }
            seen[state] = chain.size() - 1;
        }
        h = successors(h, g, viable_at(g + 1)).front();
        chain.push_back(h);
        ++g;
    }
    std::vector<int> pre(chain.begin(), chain.begin() + static_cast<long>(cycle_start));
    std::vector<int> cyc(chain.begin() + static_cast<long>(cycle_start), chain.end());
    RbWitness w{n0, std::move(pre), std::move(cyc), translation_at(d, x, y, chain.front(), n0)};

    // The translation must not depend on the generation.
    const int last = n0 + static_cast<int>(chain.size()) + period + 1;
    for (int n = n0 + 1; n <= last; ++n)
        if (translation_at(d, x, y, w.horizontal_at(n), n) != w.translation)
            throw Error(ErrorKind::IncompatibleHorizontal, "translation changes between generations " +
                                                               std::to_string(n0) + " and " + std::to_string(n));
    return w;
}

bool rb_via_generators(const ExtremePairing& psi, const EventuallyPeriodicPath& x, const EventuallyPeriodicPath& y) {
    if (af_equiv(x, y)) return true;
    for (const auto& [mx, mn] : psi.pairs) {
        if (af_equiv(x, mx) && af_equiv(y, mn)) return true;
        if (af_equiv(y, mx) && af_equiv(x, mn)) return true;
    }
    return false;
}

AlgebraicNumber rb_base_translation(const BratteliDiagram& d, const PathPrefix& gamma, const PathPrefix& gamma2, int h) {
    validate(d, gamma);
    validate(d, gamma2);
    if (gamma.edges.size() != gamma2.edges.size())
        throw Error(ErrorKind::IncompatibleHorizontal, "prefixes have different lengths");
    if (h < 0 || static_cast<std::size_t>(h) >= d.horizontals.size())
        throw Error(ErrorKind::IncompatibleHorizontal, "unknown horizontal edge");
    const auto& t = d.horizontals[static_cast<std::size_t>(h)];
    if (t.source != top_vertex(d, gamma) || t.range != top_vertex(d, gamma2))
        throw Error(ErrorKind::IncompatibleHorizontal, "horizontal edge does not join " +
                                                           d.names[static_cast<std::size_t>(top_vertex(d, gamma))] + " to " +
                                                           d.names[static_cast<std::size_t>(top_vertex(d, gamma2))]);
    return u_of_prefix(d, gamma) - u_of_prefix(d, gamma2) + horizontal_label(d, h, gamma.generations());
}

bool in_base_set(const BratteliDiagram& d, const PathPrefix& gamma, const PathPrefix& gamma2, int h,
                 const EventuallyPeriodicPath& x, const EventuallyPeriodicPath& y) {
    const AlgebraicNumber a = rb_base_translation(d, gamma, gamma2, h);
    const int len = static_cast<int>(gamma.edges.size());
    if (!(x.prefix(len) == gamma) || !(y.prefix(len) == gamma2)) return false;
    const auto w = rb_equiv(d, x, y);
    return w && w->translation == -a;
}

}  // namespace bratteli
