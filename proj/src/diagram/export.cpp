#include "bratteli/diagram.hpp"
#include "bratteli/error.hpp"

#include "json.hpp"

#include <sstream>

namespace bratteli {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string node(int generation, const std::string& name) { return quoted(std::to_string(generation) + ":" + name); }

std::string scaled_label(const AlgebraicNumber& c, int exponent) {
    return "(" + c.to_string() + ")*L^" + std::to_string(exponent);
}

}  // namespace

std::string export_dot(const BratteliDiagram& d, int depth) {
    if (depth < 1) throw Error(ErrorKind::BadFormat, "depth must be at least 1");
    std::ostringstream out;
    out << "digraph bratteli {\n";
    out << "  rankdir=TB;\n";
    out << "  root [shape=point];\n";
    for (int n = 1; n <= depth; ++n) {
        out << "  subgraph gen" << n << " {\n    rank=same;\n";
        for (const auto& name : d.names) out << "    " << node(n, name) << " [label=" << quoted(name) << "];\n";
        out << "  }\n";
    }
    for (const auto& name : d.names) out << "  root -> " << node(1, name) << " [label=\"0\"];\n";
    for (int n = 2; n <= depth; ++n)
        for (const auto& e : d.verticals)
            out << "  " << node(n - 1, d.names[static_cast<std::size_t>(e.source)]) << " -> "
                << node(n, d.names[static_cast<std::size_t>(e.range)]) << " [label=" << quoted(scaled_label(e.coeff, n - 2))
                << "];\n";
    for (int n = 1; n <= depth; ++n)
        for (const auto& h : d.horizontals) {
            if (h.trivial) continue;
            out << "  " << node(n, d.names[static_cast<std::size_t>(h.source)]) << " -> "
                << node(n, d.names[static_cast<std::size_t>(h.range)]) << " [style=dashed, constraint=false, label="
                << quoted(scaled_label(h.coeff, n - 1)) << "];\n";
        }
    out << "}\n";
    return out.str();
}

std::string export_json(const BratteliDiagram& d) {
    using json = nlohmann::ordered_json;
    json field;
    json modulus = json::array();
    for (const auto& c : d.field->modulus().coeffs()) modulus.push_back(rational_to_string(c));
    field["modulus"] = modulus;
    field["interval"] = {rational_to_string(d.field->perron_interval().lo),
                         rational_to_string(d.field->perron_interval().hi)};

    json vertices = json::array();
    for (std::size_t i = 0; i < d.names.size(); ++i)
        vertices.push_back({{"name", d.names[i]}, {"collar", d.collars[i]}, {"length", d.lengths[i].to_string()}});
    json verticals = json::array();
    for (const auto& e : d.verticals)
        verticals.push_back({{"src", d.names[static_cast<std::size_t>(e.source)]},
                             {"rng", d.names[static_cast<std::size_t>(e.range)]},
                             {"pos", e.position},
                             {"coeff", e.coeff.to_string()}});
    json horizontals = json::array();
    for (const auto& h : d.horizontals)
        horizontals.push_back({{"src", d.names[static_cast<std::size_t>(h.source)]},
                               {"rng", d.names[static_cast<std::size_t>(h.range)]},
                               {"coeff", h.coeff.to_string()},
                               {"trivial", h.trivial}});
    json diagrams = json::array();
    for (const auto& dt : d.diagrams)
        diagrams.push_back({{"h_top", dt.h_top},
                            {"e_left", dt.e_left},
                            {"e_right", dt.e_right},
                            {"h_bot", dt.h_bot},
                            {"kind", diagram_kind_name(dt.kind)}});
    json doc;
    doc["field"] = field;
    doc["vertices"] = vertices;
    doc["verticals"] = verticals;
    doc["horizontals"] = horizontals;
    doc["diagrams"] = diagrams;
    return doc.dump(2) + "\n";
}

namespace {

Rational parse_rational(const std::string& s) {
    try {
        Rational q(s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw Error(ErrorKind::BadFormat, "not a rational number: '" + s + "'");
    }
}

DiagramKind parse_kind(const std::string& s) {
    for (DiagramKind k : {DiagramKind::Trivial, DiagramKind::Internal, DiagramKind::Transient, DiagramKind::Nontrivial,
                          DiagramKind::NontrivialOpposite})
        if (s == diagram_kind_name(k)) return k;
    throw Error(ErrorKind::BadFormat, "unknown diagram kind '" + s + "'");
}

}  // namespace

BratteliDiagram import_json(const std::string& text) {
    using json = nlohmann::json;
    BratteliDiagram d;
    try {
        const json doc = json::parse(text);
        std::vector<Rational> modulus;
        for (const auto& c : doc.at("field").at("modulus")) modulus.push_back(parse_rational(c.get<std::string>()));
        const auto& interval = doc.at("field").at("interval");
        d.field = ModulusField::from_modulus(QPoly(modulus), parse_rational(interval.at(0).get<std::string>()),
                                             parse_rational(interval.at(1).get<std::string>()));
        for (const auto& v : doc.at("vertices")) {
            d.names.push_back(v.at("name").get<std::string>());
            d.collars.push_back(v.at("collar").get<std::string>());
            d.lengths.push_back(AlgebraicNumber::parse(d.field, v.at("length").get<std::string>()));
        }
        const auto vertex = [&](const json& j) {
            const auto id = d.find_vertex(j.get<std::string>());
            if (!id) throw Error(ErrorKind::BadFormat, "unknown vertex '" + j.get<std::string>() + "'");
            return *id;
        };
        d.rules.assign(d.names.size(), {});
        for (const auto& e : doc.at("verticals")) {
            VerticalTemplate t{vertex(e.at("src")), vertex(e.at("rng")), e.at("pos").get<int>(),
                               AlgebraicNumber::parse(d.field, e.at("coeff").get<std::string>())};
            auto& rule = d.rules[static_cast<std::size_t>(t.range)];
            if (t.position < 0) throw Error(ErrorKind::BadFormat, "negative position");
            if (rule.size() <= static_cast<std::size_t>(t.position)) rule.resize(static_cast<std::size_t>(t.position) + 1, -1);
            rule[static_cast<std::size_t>(t.position)] = t.source;
            d.verticals.push_back(std::move(t));
        }
        for (const auto& rule : d.rules)
            if (rule.empty() || std::find(rule.begin(), rule.end(), -1) != rule.end())
                throw Error(ErrorKind::BadFormat, "vertical positions do not form complete rules");
        for (const auto& h : doc.at("horizontals"))
            d.horizontals.push_back({vertex(h.at("src")), vertex(h.at("rng")),
                                     AlgebraicNumber::parse(d.field, h.at("coeff").get<std::string>()),
                                     h.at("trivial").get<bool>(), -1});
        for (std::size_t i = 0; i < d.horizontals.size(); ++i) {
            auto& h = d.horizontals[i];
            if (h.trivial) {
                h.opposite = static_cast<int>(i);
                continue;
            }
            for (std::size_t j = 0; j < d.horizontals.size(); ++j) {
                const auto& o = d.horizontals[j];
                if (!o.trivial && o.source == h.range && o.range == h.source && (o.coeff + h.coeff).is_zero())
                    h.opposite = static_cast<int>(j);
            }
            if (h.opposite < 0) throw Error(ErrorKind::BadFormat, "horizontal edge without an opposite");
        }
        const auto index_in = [](const json& j, std::size_t size) {
            const int v = j.get<int>();
            if (v < 0 || static_cast<std::size_t>(v) >= size) throw Error(ErrorKind::BadFormat, "template index out of range");
            return v;
        };
        for (const auto& dt : doc.at("diagrams")) {
            DiagramTemplate t{index_in(dt.at("h_top"), d.horizontals.size()), index_in(dt.at("e_left"), d.verticals.size()),
                              index_in(dt.at("e_right"), d.verticals.size()), index_in(dt.at("h_bot"), d.horizontals.size()),
                              dt.contains("kind") ? parse_kind(dt.at("kind").get<std::string>()) : DiagramKind::Trivial};
            if (!diagram_residual(d, t.h_top, t.e_left, t.e_right, t.h_bot).is_zero())
                throw Error(ErrorKind::BadFormat, "diagram with nonzero residual");
            d.diagrams.push_back(t);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::BadFormat, std::string("malformed diagram JSON: ") + e.what());
    }
    d.index();
    return d;
}

}  // namespace bratteli
