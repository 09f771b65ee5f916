#include "bratteli/diagram.hpp"
#include "bratteli/error.hpp"

#include "doctest.h"

#include <cmath>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <tuple>

using namespace bratteli;

namespace {

std::string vname(const BratteliDiagram& d, const VerticalTemplate& e) {
    return d.names[e.source] + d.names[e.range];
}

std::map<std::string, std::string> vertical_table(const BratteliDiagram& d) {
    std::map<std::string, std::string> out;
    for (const auto& e : d.verticals) out[vname(d, e)] = e.coeff.to_string();
    return out;
}

int count_kind(const BratteliDiagram& d, DiagramKind k) {
    int n = 0;
    for (const auto& dt : d.diagrams) n += dt.kind == k;
    return n;
}

// Floating-point evaluation of a stored coefficient, for an independent scan.
double approx(const AlgebraicNumber& a) { return std::stod(a.to_decimal(15)); }

int count_matches(const std::string& text, const std::string& pattern) {
    std::regex re(pattern);
    return static_cast<int>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

}  // namespace

TEST_CASE("Fibonacci vertical labels") {
    auto d = build_diagram(load_fixture("fibonacci"));
    auto t = vertical_table(d);
    REQUIRE(t.size() == 7);
    auto inv2phi = AlgebraicNumber::parse(d.field, "L").inverse().scale(Rational(1, 2));
    for (const char* e : {"ab", "ac", "ca"}) CHECK(AlgebraicNumber::parse(d.field, t[e]) == inv2phi);
    CHECK(t["bd"] == "0");
    for (const char* e : {"da", "db", "dc"}) CHECK(t[e] == "-1/2");
}

TEST_CASE("Fibonacci horizontal labels") {
    auto d = build_diagram(load_fixture("fibonacci"));
    std::set<std::string> unordered;
    int nontrivial = 0;
    auto half_phi = AlgebraicNumber::parse(d.field, "1/2*L");
    for (const auto& h : d.horizontals) {
        if (h.trivial) {
            CHECK(h.source == h.range);
            CHECK(h.coeff.is_zero());
            continue;
        }
        ++nontrivial;
        std::string a = d.names[h.source], b = d.names[h.range];
        if (h.coeff.sign() > 0) unordered.insert(a + b);  // left-to-right adjacency
        auto mag = h.coeff.sign() < 0 ? -h.coeff : h.coeff;
        const bool ab = (a == "a" && b == "b") || (a == "b" && b == "a");
        CHECK(mag == (ab ? AlgebraicNumber::one(d.field) : half_phi));
        CHECK((h.coeff + d.horizontals[h.opposite].coeff).is_zero());
    }
    CHECK(nontrivial == 10);
    CHECK(unordered == std::set<std::string>{"ba", "ad", "db", "cd", "dc"});
}

TEST_CASE("Thue-Morse labels") {
    auto d = build_diagram(load_fixture("thue-morse"));
    auto t = vertical_table(d);
    for (const char* e : {"ba", "be", "dc", "df", "eb", "fd"}) CHECK(t[e] == "1/2");
    for (const char* e : {"ad", "af", "cb", "ce", "ec", "fa"}) CHECK(t[e] == "-1/2");
    for (const auto& h : d.horizontals)
        if (!h.trivial) CHECK((h.coeff.sign() < 0 ? -h.coeff : h.coeff).to_string() == "1");
}

TEST_CASE("doubling system") {
    auto d = build_diagram(load_fixture("doubling"));
    REQUIRE(d.verticals.size() == 2);
    CHECK(d.verticals[0].coeff.to_string() == "1/2");
    CHECK(d.verticals[1].coeff.to_string() == "-1/2");
    CHECK(count_kind(d, DiagramKind::Nontrivial) == 1);
    CHECK(hypothesis_check(d).ok);
}

TEST_CASE("commutative diagram counts") {
    auto fib = build_diagram(load_fixture("fibonacci"));
    CHECK(count_kind(fib, DiagramKind::Nontrivial) == 2);
    CHECK(count_kind(fib, DiagramKind::NontrivialOpposite) == 2);
    auto tm = build_diagram(load_fixture("thue-morse"));
    CHECK(count_kind(tm, DiagramKind::Nontrivial) == 4);
    CHECK(count_kind(tm, DiagramKind::NontrivialOpposite) == 4);

    // D1: top edge between b and a, bottom edge between c and d, sum -1.
    bool found = false;
    for (const auto& dt : fib.diagrams) {
        if (dt.kind != DiagramKind::Nontrivial) continue;
        const auto& ht = fib.horizontals[dt.h_top];
        const auto& hb = fib.horizontals[dt.h_bot];
        std::set<std::string> top{fib.names[ht.source], fib.names[ht.range]};
        std::set<std::string> bot{fib.names[hb.source], fib.names[hb.range]};
        if (top == std::set<std::string>{"a", "b"} && bot == std::set<std::string>{"c", "d"}) {
            found = true;
            auto sum = fib.verticals[dt.e_left].coeff + AlgebraicNumber::lambda_pow(fib.field, 1) * hb.coeff;
            CHECK(sum.to_string() == "-1");
        }
    }
    CHECK(found);
    for (const auto& dt : tm.diagrams)
        if (dt.kind == DiagramKind::Nontrivial)
            CHECK((tm.verticals[dt.e_left].coeff + AlgebraicNumber::lambda_pow(tm.field, 1) * tm.horizontals[dt.h_bot].coeff)
                      .to_string() == "-3/2");
}

TEST_CASE("brute-force scan agrees with the enumeration") {
    for (const char* name : {"fibonacci", "thue-morse"}) {
        auto d = build_diagram(load_fixture(name));
        const double lambda = approx(AlgebraicNumber::lambda_pow(d.field, 1));
        std::set<std::tuple<int, int, int, int>> scan, enumerated;
        const int nh = static_cast<int>(d.horizontals.size()), nv = static_cast<int>(d.verticals.size());
        for (int ht = 0; ht < nh; ++ht)
            for (int el = 0; el < nv; ++el)
                for (int er = 0; er < nv; ++er)
                    for (int hb = 0; hb < nh; ++hb) {
                        const auto &t = d.horizontals[ht], &b = d.horizontals[hb];
                        const auto &l = d.verticals[el], &r = d.verticals[er];
                        if (t.source != l.source || t.range != r.source || l.range != b.source || r.range != b.range) continue;
                        const double res = approx(l.coeff) + lambda * approx(b.coeff) - approx(t.coeff) - approx(r.coeff);
                        if (std::abs(res) < 1e-9) scan.emplace(ht, el, er, hb);
                    }
        for (const auto& dt : d.diagrams) {
            enumerated.emplace(dt.h_top, dt.e_left, dt.e_right, dt.h_bot);
            CHECK(diagram_residual(d, dt.h_top, dt.e_left, dt.e_right, dt.h_bot).is_zero());
        }
        CHECK(scan == enumerated);
    }
}

TEST_CASE("diagram chains") {
    auto fib = build_diagram(load_fixture("fibonacci"));
    auto c = diagram_chains(fib);
    REQUIRE(c.cycles.size() == 1);
    CHECK(c.cycles[0].size() == 2);
    auto tm = build_diagram(load_fixture("thue-morse"));
    auto ct = diagram_chains(tm);
    REQUIRE(ct.cycles.size() == 2);
    CHECK(ct.cycles[0].size() == 2);
    CHECK(ct.cycles[1].size() == 2);
    // A kind with no composable pair yields no cycles.
    CHECK(diagram_chains(fib, DiagramKind::Internal).cycles.empty());
}

TEST_CASE("structural invariants") {
    for (const char* name : {"fibonacci", "thue-morse", "doubling"}) {
        auto d = build_diagram(load_fixture(name));
        CHECK(is_regular(d));
        CHECK(hypothesis_check(d).ok);
        // Layout consistency: subtile lengths add up to L times the supertile.
        const auto lambda = AlgebraicNumber::lambda_pow(d.field, 1);
        for (int v = 0; v < d.vertex_count(); ++v) {
            auto sum = AlgebraicNumber::zero(d.field);
            for (int s : d.rules[v]) sum += d.lengths[s];
            CHECK(sum == lambda * d.lengths[v]);
        }
        // Path-counting oracle: from any vertex at generation 1 there are at
        // least two distinct paths to depth 8.
        for (int v = 0; v < d.vertex_count(); ++v) {
            std::vector<long long> count(d.vertex_count(), 0);
            count[v] = 1;
            for (int g = 1; g < 8; ++g) {
                std::vector<long long> next(d.vertex_count(), 0);
                for (const auto& e : d.verticals) next[e.range] += count[e.source];
                count = next;
            }
            long long total = 0;
            for (auto x : count) total += x;
            CHECK(total >= 2);
        }
    }
}

TEST_CASE("DOT export counts") {
    auto d = build_diagram(load_fixture("fibonacci"));
    auto dot = export_dot(d, 2);
    CHECK(count_matches(dot, "root -> ") == 4);
    CHECK(count_matches(dot, "style=dashed") == 20);
    CHECK(count_matches(dot, "\"1:[a-d]\" -> \"2:[a-d]\" \\[label") == 7);
    CHECK(count_matches(dot, "\\[label=\"[a-d]\"\\]") == 8);
    auto dot1 = export_dot(d, 1);
    CHECK(count_matches(dot1, "style=dashed") == 10);
    CHECK(count_matches(dot1, "rank=same") == 1);
    CHECK_THROWS_AS(export_dot(d, 0), Error);
}

TEST_CASE("JSON round trip") {
    for (const char* name : {"fibonacci", "thue-morse", "doubling"}) {
        auto d = build_diagram(load_fixture(name));
        auto text = export_json(d);
        auto back = import_json(text);
        CHECK(export_json(back) == text);
        REQUIRE(back.verticals.size() == d.verticals.size());
        for (std::size_t i = 0; i < d.verticals.size(); ++i)
            CHECK(back.verticals[i].coeff.same_representation(d.verticals[i].coeff));
        CHECK(back.rules == d.rules);
    }
    CHECK_THROWS_AS(import_json("{"), Error);
    CHECK_THROWS_AS(import_json("{}"), Error);
}
