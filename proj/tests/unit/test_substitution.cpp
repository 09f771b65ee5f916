#include "bratteli/error.hpp"
#include "bratteli/substitution.hpp"

#include "doctest.h"

#include <string>

using namespace bratteli;

namespace {

// Brute-force factor oracle: length-n factors of sigma^k(0).
std::set<Word> factors_of_iterate(const Substitution& sub, int k, int n) {
    Word w{0};
    for (int i = 0; i < k; ++i) w = sub.apply(w);
    std::set<Word> out;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= w.size(); ++i)
        out.emplace(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + n);
    return out;
}

std::string rules_text(const CollaredSubstitution& cs) {
    std::string out;
    for (int t = 0; t < cs.size(); ++t) out += cs.name(t) + "->" + cs.spell(cs.rules[static_cast<std::size_t>(t)]) + " ";
    return out;
}

ErrorKind kind_of(const std::string& text) {
    try {
        parse_spec(text);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Io;
}

}  // namespace

TEST_CASE("parse Fibonacci and Thue-Morse") {
    auto fib = load_fixture("fibonacci");
    CHECK(fib.size() == 2);
    CHECK(fib.field->modulus().to_string() == "x^2 - x - 1");
    CHECK(fib.lengths[0].to_string() == "1");
    CHECK(fib.lengths[1].to_string() == "-1 + L");

    auto tm = load_fixture("thue-morse");
    CHECK(tm.lengths[0].to_string() == "1");
    CHECK(tm.lengths[1].to_string() == "1");
    CHECK(AlgebraicNumber::lambda_pow(tm.field, 1).to_string() == "2");

    auto dbl = load_fixture("doubling");
    CHECK(dbl.lengths[0].to_string() == "1");
    CHECK(AlgebraicNumber::lambda_pow(dbl.field, 1).to_string() == "2");
}

TEST_CASE("parse errors") {
    CHECK(kind_of("letters: 0 1\nrule 0: 0 1\nrule 1: 0 1\n") == ErrorKind::PeriodicDetected);
    CHECK(kind_of("letters: 0 1\nrule 0: 0 2\nrule 1: 0\n") == ErrorKind::UnknownLetter);
    CHECK(kind_of("letters: 0 1\nrule 0: 0 1\nrule 1:\n") == ErrorKind::EmptyRule);
    CHECK(kind_of("letters: 0 1\nrule 0: 0 1\n") == ErrorKind::EmptyRule);
    CHECK(kind_of("letters: 0 1\nrule 0: 0\nrule 1: 1\n") == ErrorKind::NotPrimitive);
    CHECK(kind_of("letters: 0 1\nrules 0: 0\n") == ErrorKind::SyntaxError);
    CHECK(kind_of("letters 0 1\n") == ErrorKind::SyntaxError);
    CHECK(kind_of("letters: 0\nrule 0: 0 0\n") == ErrorKind::PeriodicDetected);
    try {
        parse_spec("letters: 0 1\nrule 0: 0 1\n  bogus: 3\n");
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 3, column 3") != std::string::npos);
    }
    // Compact rule bodies are accepted.
    CHECK(parse_spec("letters: 0 1\nrule 0: 01 # comment\nrule 1: 0\n").rules[0] == Word{0, 1});
}

TEST_CASE("primitivity index against a matrix-power oracle") {
    CHECK(primitivity_index({{1, 1}, {1, 0}}) == 2);
    CHECK_THROWS_AS(primitivity_index({{1, 0}, {0, 1}}), Error);
    CHECK(primitivity_index({{1, 1}, {1, 1}}) == 1);
    auto cs = collared_substitution(load_fixture("fibonacci"));
    // Oracle: integer matrix powers.
    IntMatrix p = cs.matrix;
    int k = 1;
    auto positive = [](const IntMatrix& m) {
        for (const auto& r : m)
            for (auto v : r)
                if (v <= 0) return false;
        return true;
    };
    while (!positive(p)) {
        IntMatrix q(p.size(), std::vector<long long>(p.size(), 0));
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t l = 0; l < p.size(); ++l)
                for (std::size_t j = 0; j < p.size(); ++j) q[i][j] += p[i][l] * cs.matrix[l][j];
        p = q;
        ++k;
    }
    CHECK(primitivity_index(cs.matrix) == k);
    CHECK(k == 5);
}

TEST_CASE("characteristic polynomials") {
    CHECK(characteristic_polynomial({{1, 1}, {1, 0}}) == std::vector<Integer>{-1, -1, 1});
    auto tm = collared_substitution(load_fixture("thue-morse"));
    auto f = ModulusField::from_charpoly(characteristic_polynomial(tm.matrix));
    CHECK(f->fine_enclosure().exact);
    CHECK(f->fine_enclosure().lo == 2);
}

TEST_CASE("legal words match brute-force factors") {
    auto fib = load_fixture("fibonacci");
    CHECK(legal_words(fib, 2) == std::set<Word>{{0, 0}, {0, 1}, {1, 0}});
    CHECK(legal_words(fib, 1).size() == 2);
    for (int n = 1; n <= 8; ++n) CHECK(legal_words(fib, n) == factors_of_iterate(fib, 14, n));
    auto tm = load_fixture("thue-morse");
    CHECK(legal_words(tm, 3).size() == 6);
    CHECK(legal_words(tm, 3) == factors_of_iterate(tm, 6, 3));
    for (int n = 1; n <= 8; ++n) {
        // Truncation of (n+1)-words gives exactly the n-words.
        std::set<Word> cut;
        for (const Word& w : legal_words(tm, n + 1)) cut.emplace(w.begin(), w.end() - 1);
        CHECK(cut == legal_words(tm, n));
    }
}

TEST_CASE("aperiodicity screen") {
    auto fib = load_fixture("fibonacci");
    auto r = aperiodicity_screen(fib, 12);
    CHECK_FALSE(r.periodic);
    for (int n = 1; n <= 12; ++n) CHECK(r.complexity[static_cast<std::size_t>(n - 1)] == n + 1);
    CHECK_FALSE(aperiodicity_screen(load_fixture("thue-morse")).periodic);
    ParseOptions skip;
    skip.screen_aperiodicity = false;
    auto periodic = parse_spec("letters: 0 1\nrule 0: 0 1\nrule 1: 0 1\n", skip);
    auto s = aperiodicity_screen(periodic);
    CHECK(s.periodic);
    CHECK(s.witness_n == 2);
}

TEST_CASE("collared Fibonacci") {
    auto cs = collared_substitution(load_fixture("fibonacci"));
    REQUIRE(cs.size() == 4);
    const int expect[4][3] = {{0, 0, 1}, {1, 0, 0}, {1, 0, 1}, {0, 1, 0}};
    for (int i = 0; i < 4; ++i) {
        CHECK(cs.letters[i].left == expect[i][0]);
        CHECK(cs.letters[i].core == expect[i][1]);
        CHECK(cs.letters[i].right == expect[i][2]);
    }
    CHECK(rules_text(cs) == "a->cd b->ad c->ad d->b ");
    CHECK(cs.collar_text(0) == "0 0̇ 1");
}

TEST_CASE("collared Thue-Morse and doubling") {
    auto cs = collared_substitution(load_fixture("thue-morse"));
    CHECK(cs.size() == 6);
    auto a = *cs.find("a");
    CHECK(cs.letters[a].left == 1);
    CHECK(cs.letters[a].core == 0);
    CHECK(cs.letters[a].right == 0);
    std::string sorted;
    for (const char* n : {"a", "b", "c", "d", "e", "f"}) {
        int t = *cs.find(n);
        sorted += std::string(n) + "->" + cs.spell(cs.rules[t]) + " ";
    }
    CHECK(sorted == "a->bf b->ec c->de d->fa e->bc f->da ");

    auto d = collared_substitution(load_fixture("doubling"));
    CHECK(d.size() == 1);
    CHECK(d.rules[0] == Word{0, 0});
}

TEST_CASE("collared invariants") {
    for (const char* name : {"fibonacci", "thue-morse", "doubling"}) {
        auto cs = collared_substitution(load_fixture(name));
        const auto& base = cs.base;
        const auto lambda = AlgebraicNumber::lambda_pow(base.field, 1);
        for (int t = 0; t < cs.size(); ++t) {
            const Word& img = cs.rules[t];
            // Projection onto the base rule.
            Word proj;
            for (int s : img) proj.push_back(cs.letters[s].core);
            CHECK(proj == base.rules[cs.letters[t].core]);
            // Eigen-equation on collared lengths.
            auto sum = AlgebraicNumber::zero(base.field);
            for (int s : img) sum += cs.lengths[s];
            CHECK((sum - lambda * cs.lengths[t]).is_zero());
            // Adjacent collared letters project to legal 4-words.
            for (std::size_t i = 0; i + 1 < img.size(); ++i) {
                const auto& l = cs.letters[img[i]];
                const auto& r = cs.letters[img[i + 1]];
                CHECK(l.right == r.core);
                CHECK(r.left == l.core);
                CHECK(legal_words(base, 4).count(Word{l.left, l.core, r.core, r.right}) == 1);
            }
        }
        CHECK(primitivity_index(cs.matrix) >= 1);
    }
}
