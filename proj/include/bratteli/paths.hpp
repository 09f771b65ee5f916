#pragma once

#include "bratteli/diagram.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bratteli {

// Finite path: the root edge into `root` followed by vertical template ids;
// edges[k] sits at generation k + 2.
struct PathPrefix {
    VertexId root = 0;
    std::vector<int> edges;

    int generations() const { return static_cast<int>(edges.size()) + 1; }
    friend bool operator==(const PathPrefix&, const PathPrefix&) = default;
};

// Infinite path given by a finite preamble and a repeating cycle of vertical
// template ids. Always compare normalized values.
struct EventuallyPeriodicPath {
    VertexId root = 0;
    std::vector<int> preamble;
    std::vector<int> cycle;

    // Vertical id at generation k + 2.
    int edge(std::size_t k) const;
    PathPrefix prefix(int edge_count) const;
    // Shortest preamble and primitive cycle.
    EventuallyPeriodicPath normalized() const;
    friend bool operator==(const EventuallyPeriodicPath&, const EventuallyPeriodicPath&) = default;
    friend auto operator<=>(const EventuallyPeriodicPath&, const EventuallyPeriodicPath&) = default;
};

VertexId top_vertex(const BratteliDiagram& d, const PathPrefix& p);
// Vertex at generation `generation` (1 = root).
VertexId vertex_at(const BratteliDiagram& d, const EventuallyPeriodicPath& x, int generation);
void validate(const BratteliDiagram& d, const PathPrefix& p);
void validate(const BratteliDiagram& d, const EventuallyPeriodicPath& x);

// Path literals: "root=a; ac ca ab" (finite) and "root=a; ac | (ca ac)" or
// "root=a;(ac ca)" (eventually periodic). An edge is named by its source and
// range vertex ("ac", or "a>c" for longer names) with "#k" giving the
// position inside the range's rule when the pair is ambiguous.
struct PathLiteral {
    VertexId root = 0;
    std::vector<int> preamble;
    std::optional<std::vector<int>> cycle;
};
PathLiteral parse_path_literal(const BratteliDiagram& d, std::string_view text);
PathPrefix parse_prefix(const BratteliDiagram& d, std::string_view text);
EventuallyPeriodicPath parse_periodic(const BratteliDiagram& d, std::string_view text);
std::string edge_name(const BratteliDiagram& d, int vertical);
std::string format_path(const BratteliDiagram& d, const PathPrefix& p);
std::string format_path(const BratteliDiagram& d, const EventuallyPeriodicPath& x);

// Sum of the vertical labels along the prefix (root edge contributes 0).
AlgebraicNumber u_of_prefix(const BratteliDiagram& d, const PathPrefix& p);
// Label of horizontal template `h` realized at `generation`.
AlgebraicNumber horizontal_label(const BratteliDiagram& d, int h, int generation);

struct Interval {
    AlgebraicNumber lo;
    AlgebraicNumber hi;
};

struct DecodedPatch {
    Word word;  // generation-1 tiles (collared vertex ids)
    int puncture_index = 0;
    std::vector<Interval> positions;  // puncture tile centered at 0
    AlgebraicNumber offset;           // u(gamma)
    VertexId top_vertex = 0;
    // Center of the top supertile in the same coordinates; equals offset.
    AlgebraicNumber supertile_center;
};
DecodedPatch decode(const BratteliDiagram& d, const PathPrefix& p);

// The collar of the top tile expanded down to generation 1: the two context
// tiles through the plain substitution, the core through the collared one.
struct CollaredPatch {
    Word left;   // base letters
    DecodedPatch core;
    Word right;  // base letters
    Word base_word;  // left + projected core + right
    int puncture_index = 0;  // in base_word
    std::vector<Interval> positions;  // of base_word, puncture tile centered at 0
};
CollaredPatch decode_collared(const BratteliDiagram& d, const PathPrefix& p);

bool af_equiv(const EventuallyPeriodicPath& x, const EventuallyPeriodicPath& y);

// Every valid eventually periodic path with preamble length <= max_preamble
// and primitive cycle length <= max_cycle, normalized, sorted, no duplicates.
std::vector<EventuallyPeriodicPath> enumerate_periodic_paths(const BratteliDiagram& d, int max_preamble, int max_cycle);

struct ExtremalPaths {
    std::vector<EventuallyPeriodicPath> min_paths;
    std::vector<EventuallyPeriodicPath> max_paths;
};
ExtremalPaths extremal_paths(const BratteliDiagram& d);
bool is_max_path(const BratteliDiagram& d, const EventuallyPeriodicPath& x);
bool is_min_path(const BratteliDiagram& d, const EventuallyPeriodicPath& x);

// psi: each maximal path paired with the minimal path across a recurrent
// chain of commutative diagrams. Throws UnpairedExtreme if not a bijection.
struct ExtremePairing {
    std::vector<std::pair<EventuallyPeriodicPath, EventuallyPeriodicPath>> pairs;  // (max, min)
    const EventuallyPeriodicPath* psi(const EventuallyPeriodicPath& max_path) const;
};
ExtremePairing pair_extremes(const BratteliDiagram& d);

// Next path in the left-to-right order of sibling edges; maximal paths are
// sent to their psi partner.
EventuallyPeriodicPath vershik_successor(const BratteliDiagram& d, const ExtremePairing& psi,
                                         const EventuallyPeriodicPath& x);

struct RbWitness {
    int n0 = 1;
    // Horizontal ids h_n for n = n0, n0 + 1, ...: `chain_preamble` then
    // `chain_cycle` repeated.
    std::vector<int> chain_preamble;
    std::vector<int> chain_cycle;
    AlgebraicNumber translation;  // a(x, y)

    int horizontal_at(int generation) const;
};
std::optional<RbWitness> rb_equiv(const BratteliDiagram& d, const EventuallyPeriodicPath& x,
                                  const EventuallyPeriodicPath& y);
bool rb_via_generators(const ExtremePairing& psi, const EventuallyPeriodicPath& x, const EventuallyPeriodicPath& y);

// u(gamma) - u(gamma') + u(h) for prefixes of equal length joined by h at the
// top generation. Throws IncompatibleHorizontal.
AlgebraicNumber rb_base_translation(const BratteliDiagram& d, const PathPrefix& gamma, const PathPrefix& gamma2, int h);
// (x, y) lies in the base set of (gamma, gamma', h): both prefixes match and
// a(x, y) is the negated base translation.
bool in_base_set(const BratteliDiagram& d, const PathPrefix& gamma, const PathPrefix& gamma2, int h,
                 const EventuallyPeriodicPath& x, const EventuallyPeriodicPath& y);

}  // namespace bratteli
