#pragma once

#include "bratteli/paths.hpp"

#include <optional>
#include <vector>

namespace bratteli {

// Distances from the puncture tile's endpoints to the endpoints of the
// generation-n supertile, n = 1 .. |gamma| + 1 (index n - 1).
struct GapProfile {
    std::vector<AlgebraicNumber> left;
    std::vector<AlgebraicNumber> right;

    int generations() const { return static_cast<int>(left.size()); }
    AlgebraicNumber distance(int generation) const;  // min of both sides
};
GapProfile gap_profile(const BratteliDiagram& d, const PathPrefix& p);

enum class GfClass { G, F };
enum class Side { Left, Right };

struct GfVerdict {
    GfClass kind = GfClass::G;
    std::optional<Side> side;  // F: the boundary the puncture stays near
    // G: cycle indices of an edge that is not leftmost and one that is not
    // rightmost.
    int not_leftmost = -1;
    int not_rightmost = -1;
};
GfVerdict classify_gf(const BratteliDiagram& d, const EventuallyPeriodicPath& x);

// For a G path: the first generation where dist(t_1, boundary of t_n) > bound,
// together with an a priori upper bound for it computed from the cycle alone.
struct EscapeHorizon {
    int generation = 0;
    int a_priori = 0;
};
EscapeHorizon escape_horizon(const BratteliDiagram& d, const EventuallyPeriodicPath& x, const Rational& bound);

// Punctures of all tiles of decode(x|n) at depth n.
std::vector<AlgebraicNumber> af_region(const BratteliDiagram& d, const EventuallyPeriodicPath& x, int depth);

// Any vertex at generation n reaches every vertex at generation n + k.
int minimality_horizon(const BratteliDiagram& d);

}  // namespace bratteli
