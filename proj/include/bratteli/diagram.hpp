#pragma once

#include "bratteli/substitution.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace bratteli {

using VertexId = int;

// An edge e^n from a generation n-1 tile into the generation n supertile of
// type `range`, at `position` within the collared rule of `range`. The label
// is u(e^n) = coeff * L^(n-2) for n >= 2; root edges carry 0.
struct VerticalTemplate {
    VertexId source = 0;
    VertexId range = 0;
    int position = 0;
    AlgebraicNumber coeff;
};

// Same-generation edge from the tile `source` to an adjacent tile `range`;
// u(h^n) = coeff * L^(n-1). Nontrivial templates come in opposite pairs.
struct HorizontalTemplate {
    VertexId source = 0;
    VertexId range = 0;
    AlgebraicNumber coeff;
    bool trivial = false;
    int opposite = -1;  // index of the opposite template (itself when trivial)
};

enum class DiagramKind {
    Trivial,             // both horizontals trivial
    Internal,            // two siblings inside one supertile
    Transient,           // crosses a supertile boundary but never recurs
    Nontrivial,          // recurrent crossing, top edge pointing left
    NontrivialOpposite,  // the mirrored copy of a Nontrivial diagram
};

const char* diagram_kind_name(DiagramKind kind);

// Indices into the vertical and horizontal template lists.
struct DiagramTemplate {
    int h_top = 0;
    int e_left = 0;
    int e_right = 0;
    int h_bot = 0;
    DiagramKind kind = DiagramKind::Trivial;
};

class BratteliDiagram {
public:
    FieldPtr field;
    std::vector<std::string> names;
    std::vector<std::string> collars;
    std::vector<AlgebraicNumber> lengths;
    std::vector<Word> rules;
    std::vector<VerticalTemplate> verticals;
    std::vector<HorizontalTemplate> horizontals;
    std::vector<DiagramTemplate> diagrams;
    // Present when built from a substitution (absent after JSON import).
    std::shared_ptr<const CollaredSubstitution> csub;

    int vertex_count() const { return static_cast<int>(names.size()); }
    std::optional<VertexId> find_vertex(std::string_view name) const;
    // Vertical template id of (range, position).
    int vertical_at(VertexId range, int position) const;
    // Vertical ids whose range is `range`, in position order.
    const std::vector<int>& into(VertexId range) const { return into_[static_cast<std::size_t>(range)]; }
    int rule_length(VertexId v) const { return static_cast<int>(rules[static_cast<std::size_t>(v)].size()); }
    int trivial_horizontal(VertexId v) const { return trivial_[static_cast<std::size_t>(v)]; }
    // Horizontal template ids with the given endpoints.
    std::vector<int> horizontals_between(VertexId source, VertexId range) const;

    bool is_diagram(int h_top, int e_left, int e_right, int h_bot) const;
    // All h_bot completing (h_top, e_left, e_right) to a diagram.
    const std::vector<int>& bottoms(int h_top, int e_left, int e_right) const;

    // Recomputes lookup tables after the public fields change.
    void index();

private:
    std::vector<std::vector<int>> into_;
    std::vector<int> trivial_;
    std::unordered_map<unsigned long long, std::vector<int>> bottoms_;
};

std::vector<VerticalTemplate> build_vertical(const CollaredSubstitution& cs);
std::vector<HorizontalTemplate> build_horizontal(const CollaredSubstitution& cs);
// Exhaustive scan of incident quadruples with zero residual, classified.
std::vector<DiagramTemplate> enumerate_commutative_diagrams(const BratteliDiagram& d);
BratteliDiagram build_diagram(const CollaredSubstitution& cs);
BratteliDiagram build_diagram(const Substitution& sub);

// c_{e_left} + L * c_{h_bot} - c_{h_top} - c_{e_right}.
AlgebraicNumber diagram_residual(const BratteliDiagram& d, int h_top, int e_left, int e_right, int h_bot);

struct DiagramChains {
    std::vector<int> nodes;                    // diagram ids
    std::vector<std::pair<int, int>> arrows;   // diagram ids, D -> D' iff h_bot(D) = h_top(D')
    std::vector<std::vector<int>> cycles;      // simple cycles, each starting at its smallest id
};
DiagramChains diagram_chains(const BratteliDiagram& d, DiagramKind kind = DiagramKind::Nontrivial);

struct HypothesisResult {
    bool ok = true;
    VertexId violation = -1;
};
HypothesisResult hypothesis_check(const BratteliDiagram& d);
bool is_regular(const BratteliDiagram& d);

std::string export_dot(const BratteliDiagram& d, int depth);
std::string export_json(const BratteliDiagram& d);
BratteliDiagram import_json(const std::string& text);

}  // namespace bratteli
