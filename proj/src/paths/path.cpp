#include "bratteli/error.hpp"
#include "bratteli/paths.hpp"

#include <algorithm>
#include <cctype>

namespace bratteli {

int EventuallyPeriodicPath::edge(std::size_t k) const {
    if (k < preamble.size()) return preamble[k];
    return cycle[(k - preamble.size()) % cycle.size()];
}

PathPrefix EventuallyPeriodicPath::prefix(int edge_count) const {
    PathPrefix p{root, {}};
    for (int k = 0; k < edge_count; ++k) p.edges.push_back(edge(static_cast<std::size_t>(k)));
    return p;
}

EventuallyPeriodicPath EventuallyPeriodicPath::normalized() const {
    EventuallyPeriodicPath out = *this;
    const std::size_t c = out.cycle.size();
    for (std::size_t period = 1; period < c; ++period) {
        if (c % period != 0) continue;
        bool ok = true;
        for (std::size_t i = period; i < c && ok; ++i) ok = out.cycle[i] == out.cycle[i - period];
        if (ok) {
            out.cycle.resize(period);
            break;
        }
    }
    while (!out.preamble.empty() && out.preamble.back() == out.cycle.back()) {
        out.preamble.pop_back();
        std::rotate(out.cycle.rbegin(), out.cycle.rbegin() + 1, out.cycle.rend());
    }
    return out;
}

VertexId top_vertex(const BratteliDiagram& d, const PathPrefix& p) {
    return p.edges.empty() ? p.root : d.verticals[static_cast<std::size_t>(p.edges.back())].range;
}

VertexId vertex_at(const BratteliDiagram& d, const EventuallyPeriodicPath& x, int generation) {
    if (generation <= 1) return x.root;
    return d.verticals[static_cast<std::size_t>(x.edge(static_cast<std::size_t>(generation - 2)))].range;
}

namespace {

void check_chain(const BratteliDiagram& d, VertexId root, const std::vector<int>& edges, const std::string& what) {
    VertexId at = root;
    for (int e : edges) {
        if (e < 0 || static_cast<std::size_t>(e) >= d.verticals.size()) throw Error(ErrorKind::BadPath, "unknown edge id");
        const auto& v = d.verticals[static_cast<std::size_t>(e)];
        if (v.source != at)
            throw Error(ErrorKind::BadPath, what + ": edge " + edge_name(d, e) + " does not start at " +
                                                d.names[static_cast<std::size_t>(at)]);
        at = v.range;
    }
}

}  // namespace

void validate(const BratteliDiagram& d, const PathPrefix& p) {
    if (p.root < 0 || p.root >= d.vertex_count()) throw Error(ErrorKind::BadPath, "unknown root vertex");
    check_chain(d, p.root, p.edges, "path");
}

void validate(const BratteliDiagram& d, const EventuallyPeriodicPath& x) {
    if (x.root < 0 || x.root >= d.vertex_count()) throw Error(ErrorKind::BadPath, "unknown root vertex");
    if (x.cycle.empty()) throw Error(ErrorKind::BadPath, "eventually periodic path needs a nonempty cycle");
    std::vector<int> edges = x.preamble;
    edges.insert(edges.end(), x.cycle.begin(), x.cycle.end());
    edges.push_back(x.cycle.front());
    check_chain(d, x.root, edges, "path");
}

std::string edge_name(const BratteliDiagram& d, int vertical) {
    const auto& e = d.verticals[static_cast<std::size_t>(vertical)];
    const std::string& s = d.names[static_cast<std::size_t>(e.source)];
    const std::string& r = d.names[static_cast<std::size_t>(e.range)];
    std::string out = (s.size() == 1 && r.size() == 1) ? s + r : s + ">" + r;
    int same = 0;
    for (const auto& o : d.verticals) same += o.source == e.source && o.range == e.range;
    if (same > 1) out += "#" + std::to_string(e.position);
    return out;
}

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

[[noreturn]] void bad(std::string_view text, const std::string& what) {
    throw Error(ErrorKind::BadPath, "in '" + std::string(text) + "': " + what);
}

int parse_edge(const BratteliDiagram& d, std::string_view literal, std::string token) {
    std::optional<int> position;
    if (auto hash = token.find('#'); hash != std::string::npos) {
        const std::string digits = token.substr(hash + 1);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            bad(literal, "bad position in edge '" + token + "'");
        position = std::stoi(digits);
        token = token.substr(0, hash);
    }
    std::vector<std::pair<VertexId, VertexId>> splits;
    if (auto gt = token.find('>'); gt != std::string::npos) {
        auto s = d.find_vertex(token.substr(0, gt));
        auto r = d.find_vertex(token.substr(gt + 1));
        if (s && r) splits.emplace_back(*s, *r);
    } else {
        for (std::size_t cut = 1; cut < token.size(); ++cut) {
            auto s = d.find_vertex(token.substr(0, cut));
            auto r = d.find_vertex(token.substr(cut));
            if (s && r) splits.emplace_back(*s, *r);
        }
    }
    if (splits.empty()) bad(literal, "'" + token + "' does not name two vertices");
    if (splits.size() > 1) bad(literal, "'" + token + "' is ambiguous; use 'source>range'");
    std::vector<int> matches;
    for (std::size_t i = 0; i < d.verticals.size(); ++i) {
        const auto& e = d.verticals[i];
        if (e.source == splits[0].first && e.range == splits[0].second && (!position || e.position == *position))
            matches.push_back(static_cast<int>(i));
    }
    if (matches.empty()) bad(literal, "no edge '" + token + (position ? "#" + std::to_string(*position) : "") + "'");
    if (matches.size() > 1) bad(literal, "edge '" + token + "' occurs at several positions; add '#k'");
    return matches.front();
}

std::vector<int> parse_edges(const BratteliDiagram& d, std::string_view literal, const std::string& part) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i < part.size()) {
        while (i < part.size() && std::isspace(static_cast<unsigned char>(part[i]))) ++i;
        const std::size_t start = i;
        while (i < part.size() && !std::isspace(static_cast<unsigned char>(part[i]))) ++i;
        if (i > start) out.push_back(parse_edge(d, literal, part.substr(start, i - start)));
    }
    return out;
}

}  // namespace

PathLiteral parse_path_literal(const BratteliDiagram& d, std::string_view text) {
    const std::string s = trim(text);
    if (s.rfind("root", 0) != 0) bad(text, "expected 'root=<vertex>;'");
    std::size_t i = 4;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size() || s[i] != '=') bad(text, "expected '=' after 'root'");
    const std::size_t semi = s.find(';', i);
    if (semi == std::string::npos) bad(text, "expected ';' after the root vertex");
    const std::string root_name = trim(std::string_view(s).substr(i + 1, semi - i - 1));
    const auto root = d.find_vertex(root_name);
    if (!root) bad(text, "unknown root vertex '" + root_name + "'");

    PathLiteral lit;
    lit.root = *root;
    std::string rest = s.substr(semi + 1);
    const std::size_t open = rest.find('(');
    std::string head = rest;
    if (open != std::string::npos) {
        const std::size_t close = rest.find(')', open);
        if (close == std::string::npos) bad(text, "unclosed '('");
        if (!trim(std::string_view(rest).substr(close + 1)).empty()) bad(text, "unexpected text after ')'");
        lit.cycle = parse_edges(d, text, rest.substr(open + 1, close - open - 1));
        if (lit.cycle->empty()) bad(text, "empty cycle");
        head = rest.substr(0, open);
        const std::size_t bar = head.find('|');
        if (bar != std::string::npos) {
            if (!trim(std::string_view(head).substr(bar + 1)).empty()) bad(text, "unexpected text between '|' and '('");
            head = head.substr(0, bar);
        }
    } else if (rest.find_first_of("|)") != std::string::npos) {
        bad(text, "expected '(cycle)'");
    }
    lit.preamble = parse_edges(d, text, head);
    return lit;
}

PathPrefix parse_prefix(const BratteliDiagram& d, std::string_view text) {
    const PathLiteral lit = parse_path_literal(d, text);
    if (lit.cycle) bad(text, "expected a finite path");
    PathPrefix p{lit.root, lit.preamble};
    validate(d, p);
    return p;
}

EventuallyPeriodicPath parse_periodic(const BratteliDiagram& d, std::string_view text) {
    const PathLiteral lit = parse_path_literal(d, text);
    if (!lit.cycle) bad(text, "expected an eventually periodic path '... (cycle)'");
    EventuallyPeriodicPath x{lit.root, lit.preamble, *lit.cycle};
    validate(d, x);
    return x;
}

std::string format_path(const BratteliDiagram& d, const PathPrefix& p) {
    std::string out = "root=" + d.names[static_cast<std::size_t>(p.root)] + ";";
    for (int e : p.edges) out += " " + edge_name(d, e);
    return out;
}

std::string format_path(const BratteliDiagram& d, const EventuallyPeriodicPath& x) {
    std::string out = "root=" + d.names[static_cast<std::size_t>(x.root)] + ";";
    for (int e : x.preamble) out += " " + edge_name(d, e);
    if (!x.preamble.empty()) out += " |";
    out += " (";
    for (std::size_t i = 0; i < x.cycle.size(); ++i) out += (i ? " " : "") + edge_name(d, x.cycle[i]);
    return out + ")";
}

AlgebraicNumber u_of_prefix(const BratteliDiagram& d, const PathPrefix& p) {
    const AlgebraicNumber lambda = AlgebraicNumber::lambda_pow(d.field, 1);
    AlgebraicNumber sum = AlgebraicNumber::zero(d.field);
    AlgebraicNumber scale = AlgebraicNumber::one(d.field);
    for (int e : p.edges) {
        sum += d.verticals[static_cast<std::size_t>(e)].coeff * scale;
        scale *= lambda;
    }
    return sum;
}

AlgebraicNumber horizontal_label(const BratteliDiagram& d, int h, int generation) {
    return d.horizontals[static_cast<std::size_t>(h)].coeff * AlgebraicNumber::lambda_pow(d.field, generation - 1);
}

namespace {

std::vector<Interval> layout(const std::vector<AlgebraicNumber>& lengths, const FieldPtr& field, int puncture) {
    // Puncture tile centered at 0.
    AlgebraicNumber left = AlgebraicNumber::zero(field);
    for (int i = 0; i < puncture; ++i) left -= lengths[static_cast<std::size_t>(i)];
    left -= lengths[static_cast<std::size_t>(puncture)].scale(Rational(1, 2));
    std::vector<Interval> out;
    for (const auto& len : lengths) {
        AlgebraicNumber right = left + len;
        out.push_back({left, right});
        left = std::move(right);
    }
    return out;
}

}  // namespace

DecodedPatch decode(const BratteliDiagram& d, const PathPrefix& p) {
    validate(d, p);
    Word word{top_vertex(d, p)};
    std::size_t index = 0;
    for (auto it = p.edges.rbegin(); it != p.edges.rend(); ++it) {
        const auto& e = d.verticals[static_cast<std::size_t>(*it)];
        Word next;
        std::size_t new_index = 0;
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (i == index) new_index = next.size() + static_cast<std::size_t>(e.position);
            const Word& r = d.rules[static_cast<std::size_t>(word[i])];
            next.insert(next.end(), r.begin(), r.end());
        }
        word = std::move(next);
        index = new_index;
    }
    std::vector<AlgebraicNumber> lengths;
    for (int t : word) lengths.push_back(d.lengths[static_cast<std::size_t>(t)]);
    auto positions = layout(lengths, d.field, static_cast<int>(index));
    AlgebraicNumber center = (positions.front().lo + positions.back().hi).scale(Rational(1, 2));
    return DecodedPatch{std::move(word), static_cast<int>(index), std::move(positions), u_of_prefix(d, p), top_vertex(d, p),
                        std::move(center)};
}

CollaredPatch decode_collared(const BratteliDiagram& d, const PathPrefix& p) {
    if (!d.csub) throw Error(ErrorKind::BadFormat, "collared decoding needs the substitution behind the diagram");
    const Substitution& base = d.csub->base;
    DecodedPatch core = decode(d, p);
    const CollaredLetter& top = d.csub->letters[static_cast<std::size_t>(core.top_vertex)];
    Word left{top.left}, right{top.right};
    for (std::size_t k = 0; k < p.edges.size(); ++k) {
        left = base.apply(left);
        right = base.apply(right);
    }
    Word word = left;
    for (int t : core.word) word.push_back(d.csub->letters[static_cast<std::size_t>(t)].core);
    word.insert(word.end(), right.begin(), right.end());
    const int puncture = static_cast<int>(left.size()) + core.puncture_index;
    std::vector<AlgebraicNumber> lengths;
    for (int t : word) lengths.push_back(base.lengths[static_cast<std::size_t>(t)]);
    auto positions = layout(lengths, d.field, puncture);
    return CollaredPatch{std::move(left), std::move(core), std::move(right), std::move(word), puncture, std::move(positions)};
}

}  // namespace bratteli
