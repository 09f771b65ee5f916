#include "bratteli/cli.hpp"

#include "bratteli/error.hpp"
#include "bratteli/verify.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace bratteli {

namespace {

constexpr const char* kDotAbove = "\xCC\x87";  // U+0307

struct RunConfig {
    std::string fixture;
    std::string spec_path;
    int depth = 0;
    std::string format = "text";
    std::string x;
    std::string y;
    int steps = 1;
    bool collared = false;
    std::string out_path;
    std::string verify_fixture;
};

std::string exact(const AlgebraicNumber& a) { return a.to_string() + " (" + a.to_decimal(6) + ")"; }

Substitution load_system(const RunConfig& c) {
    if (!c.spec_path.empty()) {
        std::ifstream in(c.spec_path);
        if (!in) throw Error(ErrorKind::Io, "cannot read '" + c.spec_path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_spec(buf.str());
    }
    if (c.fixture.empty()) throw Error(ErrorKind::SyntaxError, "one of --fixture or --spec is required");
    return load_fixture(c.fixture);
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
    if (c.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(c.out_path);
    if (!file) throw Error(ErrorKind::Io, "cannot write '" + c.out_path + "'");
    file << text;
    if (!file) throw Error(ErrorKind::Io, "write to '" + c.out_path + "' failed");
}

// Letters joined by `sep`, with a dot above the letter at `puncture`.
std::string marked(const std::vector<std::string>& letters, int puncture, const std::string& sep = "") {
    std::string s;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) s += sep;
        s += letters[i];
        if (static_cast<int>(i) == puncture) s += kDotAbove;
    }
    return s;
}

std::vector<std::string> names_of(const BratteliDiagram& d, const Word& w) {
    std::vector<std::string> out;
    for (int v : w) out.push_back(d.names[static_cast<std::size_t>(v)]);
    return out;
}

std::string gap_table(const GapProfile& g) {
    std::ostringstream out;
    out << "generation  g_L  g_R\n";
    for (int n = 1; n <= g.generations(); ++n)
        out << n << "  " << exact(g.left[static_cast<std::size_t>(n - 1)]) << "  " << exact(g.right[static_cast<std::size_t>(n - 1)])
            << "\n";
    return out.str();
}

std::string cmd_collar(const RunConfig& c) {
    const CollaredSubstitution cs = collared_substitution(load_system(c));
    std::ostringstream out;
    out << "collared alphabet (" << cs.size() << " letters)\n";
    for (int i = 0; i < cs.size(); ++i) out << "  " << cs.name(i) << " = " << cs.collar_text(i) << "\n";
    out << "collared substitution\n";
    for (int i = 0; i < cs.size(); ++i)
        out << "  " << cs.name(i) << " -> " << cs.spell(cs.rules[static_cast<std::size_t>(i)]) << "\n";
    return out.str();
}

std::string diagram_text(const BratteliDiagram& d) {
    std::ostringstream out;
    out << "vertices\n";
    for (int v = 0; v < d.vertex_count(); ++v)
        out << "  " << d.names[static_cast<std::size_t>(v)] << " = " << d.collars[static_cast<std::size_t>(v)]
            << "  length " << exact(d.lengths[static_cast<std::size_t>(v)]) << "\n";
    out << "vertical edges, u(e^n) = c L^(n-2)\n";
    for (int e = 0; e < static_cast<int>(d.verticals.size()); ++e)
        out << "  " << edge_name(d, e) << "  c = " << exact(d.verticals[static_cast<std::size_t>(e)].coeff) << "\n";
    out << "horizontal edges, u(h^n) = c L^(n-1)\n";
    for (const auto& h : d.horizontals) {
        if (h.trivial) continue;
        out << "  " << d.names[static_cast<std::size_t>(h.source)] << "-" << d.names[static_cast<std::size_t>(h.range)]
            << "  c = " << exact(h.coeff) << "\n";
    }
    out << "commutative diagrams\n";
    for (const auto& dt : d.diagrams) {
        if (dt.kind != DiagramKind::Nontrivial && dt.kind != DiagramKind::NontrivialOpposite) continue;
        const auto& top = d.horizontals[static_cast<std::size_t>(dt.h_top)];
        const auto& bot = d.horizontals[static_cast<std::size_t>(dt.h_bot)];
        out << "  " << diagram_kind_name(dt.kind) << ": top " << d.names[static_cast<std::size_t>(top.source)] << "-"
            << d.names[static_cast<std::size_t>(top.range)] << ", left " << edge_name(d, dt.e_left) << ", right "
            << edge_name(d, dt.e_right) << ", bottom " << d.names[static_cast<std::size_t>(bot.source)] << "-"
            << d.names[static_cast<std::size_t>(bot.range)] << "\n";
    }
    return out.str();
}

std::string cmd_diagram(const RunConfig& c) {
    const BratteliDiagram d = build_diagram(load_system(c));
    if (c.format == "dot") return export_dot(d, c.depth > 0 ? c.depth : 3);
    if (c.format == "json") return export_json(d);
    return diagram_text(d);
}

PathPrefix literal_prefix(const BratteliDiagram& d, const std::string& text, int depth) {
    const PathLiteral lit = parse_path_literal(d, text);
    if (!lit.cycle) return parse_prefix(d, text);
    return parse_periodic(d, text).prefix(depth - 1);
}

std::string cmd_decode(const RunConfig& c) {
    if (c.x.empty()) throw Error(ErrorKind::BadPath, "--x is required");
    const BratteliDiagram d = build_diagram(load_system(c));
    const PathPrefix p = literal_prefix(d, c.x, c.depth > 0 ? c.depth : 5);
    std::ostringstream out;
    out << "path " << format_path(d, p) << "\n";
    if (c.collared) {
        const CollaredPatch cp = decode_collared(d, p);
        std::vector<std::string> letters;
        for (int t : cp.base_word) letters.push_back(d.csub->base.name(t));
        out << "word " << marked(letters, cp.puncture_index, " ") << "\n";
        out << "puncture index " << cp.puncture_index << "\n";
        out << "tiles\n";
        for (std::size_t i = 0; i < cp.base_word.size(); ++i)
            out << "  " << letters[i] << "  [" << exact(cp.positions[i].lo) << ", " << exact(cp.positions[i].hi) << "]\n";
        return out.str();
    }
    const DecodedPatch dp = decode(d, p);
    out << "word " << marked(names_of(d, dp.word), dp.puncture_index) << "\n";
    out << "puncture index " << dp.puncture_index << "\n";
    out << "offset u = " << exact(dp.offset) << "\n";
    out << "tiles\n";
    for (std::size_t i = 0; i < dp.word.size(); ++i)
        out << "  " << d.names[static_cast<std::size_t>(dp.word[i])] << "  [" << exact(dp.positions[i].lo) << ", "
            << exact(dp.positions[i].hi) << "]\n";
    out << gap_table(gap_profile(d, p));
    return out.str();
}

std::string cmd_extremes(const RunConfig& c) {
    const BratteliDiagram d = build_diagram(load_system(c));
    const ExtremalPaths ext = extremal_paths(d);
    const ExtremePairing psi = pair_extremes(d);
    std::ostringstream out;
    out << "minimal paths (" << ext.min_paths.size() << ")\n";
    for (const auto& x : ext.min_paths) out << "  " << format_path(d, x) << "\n";
    out << "maximal paths (" << ext.max_paths.size() << ")\n";
    for (const auto& x : ext.max_paths) out << "  " << format_path(d, x) << "\n";
    out << "psi\n";
    for (const auto& [mx, mn] : psi.pairs) out << "  " << format_path(d, mx) << "  ->  " << format_path(d, mn) << "\n";
    return out.str();
}

std::string cmd_vershik(const RunConfig& c) {
    if (c.x.empty()) throw Error(ErrorKind::BadPath, "--x is required");
    if (c.steps < 0) throw Error(ErrorKind::SyntaxError, "--steps must be non-negative");
    const BratteliDiagram d = build_diagram(load_system(c));
    const ExtremePairing psi = pair_extremes(d);
    EventuallyPeriodicPath x = parse_periodic(d, c.x).normalized();
    validate(d, x);
    AlgebraicNumber puncture = AlgebraicNumber::zero(d.field);
    std::ostringstream out;
    out << "0  " << format_path(d, x) << "  tile " << d.names[static_cast<std::size_t>(x.root)] << "  puncture " << exact(puncture)
        << "\n";
    for (int step = 1; step <= c.steps; ++step) {
        const bool jump = is_max_path(d, x);
        const EventuallyPeriodicPath next = vershik_successor(d, psi, x);
        puncture += (d.lengths[static_cast<std::size_t>(x.root)] + d.lengths[static_cast<std::size_t>(next.root)]).scale(Rational(1, 2));
        out << step << "  " << format_path(d, next) << "  tile " << d.names[static_cast<std::size_t>(next.root)] << "  puncture "
            << exact(puncture) << (jump ? "  (psi)" : "") << "\n";
        x = next;
    }
    return out.str();
}

std::string cmd_rb(const RunConfig& c) {
    if (c.x.empty() || c.y.empty()) throw Error(ErrorKind::BadPath, "--x and --y are required");
    const BratteliDiagram d = build_diagram(load_system(c));
    const auto x = parse_periodic(d, c.x).normalized();
    const auto y = parse_periodic(d, c.y).normalized();
    validate(d, x);
    validate(d, y);
    const auto w = rb_equiv(d, x, y);
    std::ostringstream out;
    out << "x = " << format_path(d, x) << "\ny = " << format_path(d, y) << "\n";
    if (!w) {
        out << "None\n";
        return out.str();
    }
    const auto h_name = [&](int h) {
        const auto& t = d.horizontals[static_cast<std::size_t>(h)];
        return d.names[static_cast<std::size_t>(t.source)] + "-" + d.names[static_cast<std::size_t>(t.range)];
    };
    out << "n0 = " << w->n0 << "\nhorizontal chain";
    for (int h : w->chain_preamble) out << " " << h_name(h);
    out << " |";
    for (int h : w->chain_cycle) out << " " << h_name(h);
    out << " ...\n";
    out << "a(x,y) = " << exact(w->translation) << "\n";
    out << "AF-equivalent: " << (af_equiv(x, y) ? "yes" : "no") << "\n";
    return out.str();
}

std::string cmd_analyze(const RunConfig& c) {
    if (c.x.empty()) throw Error(ErrorKind::BadPath, "--x is required");
    const BratteliDiagram d = build_diagram(load_system(c));
    const PathLiteral lit = parse_path_literal(d, c.x);
    std::ostringstream out;
    if (!lit.cycle) {
        const PathPrefix p = parse_prefix(d, c.x);
        out << "path " << format_path(d, p) << "\n" << gap_table(gap_profile(d, p));
        out << "verdict: none (finite prefix)\n";
        return out.str();
    }
    const auto x = parse_periodic(d, c.x).normalized();
    const int depth = c.depth > 0 ? c.depth : 10;
    out << "path " << format_path(d, x) << "\n" << gap_table(gap_profile(d, x.prefix(depth - 1)));
    const GfVerdict v = classify_gf(d, x);
    if (v.kind == GfClass::F) {
        out << "verdict: F (" << (*v.side == Side::Left ? "left" : "right") << " boundary stays at bounded distance)\n";
    } else {
        out << "verdict: G (cycle edges " << edge_name(d, x.cycle[static_cast<std::size_t>(v.not_leftmost)]) << " and "
            << edge_name(d, x.cycle[static_cast<std::size_t>(v.not_rightmost)]) << " are not leftmost / not rightmost)\n";
        for (int bound : {1, 10, 100}) {
            const EscapeHorizon h = escape_horizon(d, x, Rational(bound));
            out << "  distance > " << bound << " from generation " << h.generation << " (bound " << h.a_priori << ")\n";
        }
    }
    out << "minimality horizon k = " << minimality_horizon(d) << "\n";
    return out.str();
}

int cmd_verify_paper(const RunConfig& c, std::ostream& out) {
    BatteryOptions options;
    if (c.verify_fixture == "fibonacci") {
        options.thue_morse = false;
    } else if (c.verify_fixture == "thue-morse") {
        options.fibonacci = false;
    } else {
        throw Error(ErrorKind::SyntaxError, "unknown fixture '" + c.verify_fixture + "' (fibonacci or thue-morse)");
    }
    int failed = 0;
    for (const auto& r : run_battery(options)) {
        out << format_check(r) << "\n";
        if (r.applicable && !r.pass) ++failed;
    }
    out << (failed == 0 ? "all checks passed" : std::to_string(failed) + " checks failed") << "\n";
    return failed == 0 ? 0 : 1;
}

int exit_status(ErrorKind kind) { return kind == ErrorKind::Io ? 3 : 2; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Collared Bratteli diagrams of 1-dimensional substitution tilings", "bratteli"};
    app.require_subcommand(1);

    const auto source = [&](CLI::App* sub) {
        auto* fixture = sub->add_option("--fixture", c.fixture, "built-in system: fibonacci, thue-morse or doubling");
        auto* spec = sub->add_option("--spec", c.spec_path, "substitution spec file");
        fixture->excludes(spec);
        sub->add_option("--out", c.out_path, "write the report to this file");
    };
    auto* collar = app.add_subcommand("collar", "collared alphabet and substitution");
    source(collar);
    auto* diagram = app.add_subcommand("diagram", "Bratteli diagram export");
    source(diagram);
    diagram->add_option("--depth", c.depth, "generations drawn in DOT output")->check(CLI::PositiveNumber);
    diagram->add_option("--format", c.format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
    auto* decode_cmd = app.add_subcommand("decode", "decode a path into a patch");
    source(decode_cmd);
    decode_cmd->add_option("--x", c.x, "path literal")->required();
    decode_cmd->add_option("--depth", c.depth, "generations taken from a periodic path")->check(CLI::PositiveNumber);
    decode_cmd->add_flag("--collared", c.collared, "expand the collar down to base tiles");
    auto* extremes = app.add_subcommand("extremes", "minimal and maximal paths and their pairing");
    source(extremes);
    auto* vershik = app.add_subcommand("vershik", "Vershik orbit of an eventually periodic path");
    source(vershik);
    vershik->add_option("--x", c.x, "eventually periodic path literal")->required();
    vershik->add_option("--steps", c.steps, "number of successor steps")->check(CLI::NonNegativeNumber);
    auto* rb = app.add_subcommand("rb", "decide R_B for two eventually periodic paths");
    source(rb);
    rb->add_option("--x", c.x, "first path literal")->required();
    rb->add_option("--y", c.y, "second path literal")->required();
    auto* analyze = app.add_subcommand("analyze", "boundary gaps and G/F verdict");
    source(analyze);
    analyze->add_option("--x", c.x, "path literal")->required();
    analyze->add_option("--depth", c.depth, "generations in the gap table")->check(CLI::PositiveNumber);
    auto* verify = app.add_subcommand("verify-paper", "run the verification battery on a fixture");
    verify->add_option("fixture", c.verify_fixture, "fibonacci or thue-morse")->required();
    verify->add_option("--out", c.out_path, "write the report to this file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (verify->parsed()) {
            std::ostringstream report;
            const int status = cmd_verify_paper(c, report);
            emit(c, report.str(), out);
            return status;
        }
        std::string text;
        if (collar->parsed()) text = cmd_collar(c);
        else if (diagram->parsed()) text = cmd_diagram(c);
        else if (decode_cmd->parsed()) text = cmd_decode(c);
        else if (extremes->parsed()) text = cmd_extremes(c);
        else if (vershik->parsed()) text = cmd_vershik(c);
        else if (rb->parsed()) text = cmd_rb(c);
        else if (analyze->parsed()) text = cmd_analyze(c);
        emit(c, text, out);
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_status(e.kind());
    }
}

}  // namespace bratteli
