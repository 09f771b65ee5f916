#include "bratteli/verify.hpp"

#include "doctest.h"

using namespace bratteli;

TEST_CASE("gluing oracle rejects wrong translations") {
    const auto d = build_diagram(load_fixture("fibonacci"));
    const auto x = parse_periodic(d, "root=a;(ac ca)");
    const auto y = parse_periodic(d, "root=b;(bd db)");
    const auto w = rb_equiv(d, x, y);
    REQUIRE(w);
    for (int n = 5; n <= 8; ++n) {
        CHECK(glued_translation(d, x, y, w->horizontal_at(n), n) == w->translation);
        CHECK(patch_overlap(d, x, y, w->translation, n) > 3);
        CHECK(patch_overlap(d, x, y, w->translation + AlgebraicNumber(d.field, Rational(1, 2)), n) == -1);
        // A whole-tile shift aligns endpoints but not letters.
        CHECK(patch_overlap(d, x, y, w->translation + AlgebraicNumber::one(d.field), n) == -1);
    }
}

TEST_CASE("gluing oracle on Thue-Morse psi pairs") {
    const auto d = build_diagram(load_fixture("thue-morse"));
    const auto psi = pair_extremes(d);
    for (const auto& [mx, mn] : psi.pairs) {
        const auto w = rb_equiv(d, mx, mn);
        REQUIRE(w);
        CHECK(-w->translation == (d.lengths[mx.root] + d.lengths[mn.root]).scale(Rational(1, 2)));
        CHECK(glued_translation(d, mx, mn, w->horizontal_at(6), 6) == w->translation);
        CHECK(patch_overlap(d, mx, mn, w->translation, 6) > 0);
        CHECK(patch_overlap(d, mx, mn, -w->translation, 6) == -1);
    }
}

TEST_CASE("random primitive substitutions are reproducible") {
    std::mt19937 a(7), b(7);
    const auto s = random_primitive_substitution(a, 3);
    const auto t = random_primitive_substitution(b, 3);
    CHECK(s.rules == t.rules);
    CHECK(primitivity_index(s.matrix) >= 1);
    CHECK_FALSE(aperiodicity_screen(s).periodic);
}
