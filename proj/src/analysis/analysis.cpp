#include "bratteli/analysis.hpp"

#include "bratteli/error.hpp"

#include <algorithm>

namespace bratteli {

AlgebraicNumber GapProfile::distance(int generation) const {
    const auto i = static_cast<std::size_t>(generation - 1);
    return compare(left.at(i), right.at(i)) <= 0 ? left[i] : right[i];
}

namespace {

// Base-scale length of the tiles left (or right) of `position` in v's rule.
AlgebraicNumber side_offset(const BratteliDiagram& d, VertexId v, int position, Side side) {
    const Word& rule = d.rules[static_cast<std::size_t>(v)];
    AlgebraicNumber sum = AlgebraicNumber::zero(d.field);
    for (int i = 0; i < static_cast<int>(rule.size()); ++i)
        if (side == Side::Left ? i < position : i > position) sum += d.lengths[static_cast<std::size_t>(rule[i])];
    return sum;
}

}  // namespace

GapProfile gap_profile(const BratteliDiagram& d, const PathPrefix& p) {
    validate(d, p);
    GapProfile g;
    g.left.push_back(AlgebraicNumber::zero(d.field));
    g.right.push_back(AlgebraicNumber::zero(d.field));
    // Going from generation n to n + 1 adds the subtiles beside the chosen
    // position, each inflated n - 1 times.
    for (std::size_t k = 0; k < p.edges.size(); ++k) {
        const auto& e = d.verticals[static_cast<std::size_t>(p.edges[k])];
        const auto scale = AlgebraicNumber::lambda_pow(d.field, static_cast<int>(k));
        g.left.push_back(g.left.back() + scale * side_offset(d, e.range, e.position, Side::Left));
        g.right.push_back(g.right.back() + scale * side_offset(d, e.range, e.position, Side::Right));
    }
    return g;
}

GfVerdict classify_gf(const BratteliDiagram& d, const EventuallyPeriodicPath& x) {
    validate(d, x);
    GfVerdict v;
    for (int i = 0; i < static_cast<int>(x.cycle.size()); ++i) {
        const auto& e = d.verticals[static_cast<std::size_t>(x.cycle[static_cast<std::size_t>(i)])];
        if (e.position != 0 && v.not_leftmost < 0) v.not_leftmost = i;
        if (e.position != d.rule_length(e.range) - 1 && v.not_rightmost < 0) v.not_rightmost = i;
    }
    if (v.not_leftmost < 0 || v.not_rightmost < 0) {
        v.kind = GfClass::F;
        v.side = v.not_leftmost < 0 ? Side::Left : Side::Right;
    }
    return v;
}

EscapeHorizon escape_horizon(const BratteliDiagram& d, const EventuallyPeriodicPath& x, const Rational& bound) {
    if (classify_gf(d, x).kind != GfClass::G) throw Error(ErrorKind::BadPath, "path stays near a boundary");
    // Every cycle period adds at least the shortest tile length to each side.
    AlgebraicNumber shortest = d.lengths.front();
    for (const auto& l : d.lengths)
        if (compare(l, shortest) < 0) shortest = l;
    Integer periods = 1;
    while (compare(shortest.scale(Rational(periods)), AlgebraicNumber(d.field, bound)) <= 0) ++periods;
    EscapeHorizon h;
    h.a_priori = 1 + static_cast<int>(x.preamble.size()) + static_cast<int>(x.cycle.size()) * static_cast<int>(periods.get_si());

    const AlgebraicNumber target(d.field, bound);
    AlgebraicNumber left = AlgebraicNumber::zero(d.field), right = AlgebraicNumber::zero(d.field);
    AlgebraicNumber scale = AlgebraicNumber::one(d.field);
    for (int generation = 1;; ++generation) {
        if (compare(left, target) > 0 && compare(right, target) > 0) {
            h.generation = generation;
            return h;
        }
        const auto& e = d.verticals[static_cast<std::size_t>(x.edge(static_cast<std::size_t>(generation - 1)))];
        left += scale * side_offset(d, e.range, e.position, Side::Left);
        right += scale * side_offset(d, e.range, e.position, Side::Right);
        scale = scale * AlgebraicNumber::lambda_pow(d.field, 1);
    }
}

std::vector<AlgebraicNumber> af_region(const BratteliDiagram& d, const EventuallyPeriodicPath& x, int depth) {
    if (depth < 1) throw Error(ErrorKind::BadPath, "depth must be at least 1");
    const DecodedPatch patch = decode(d, x.prefix(depth - 1));
    std::vector<AlgebraicNumber> out;
    for (const auto& iv : patch.positions) out.push_back((iv.lo + iv.hi).scale(Rational(1, 2)));
    return out;
}

int minimality_horizon(const BratteliDiagram& d) { return primitivity_index(abelianization(d.vertex_count(), d.rules)); }

}  // namespace bratteli
