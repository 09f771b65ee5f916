#include "bratteli/verify.hpp"

#include "bratteli/error.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

namespace bratteli {

namespace {

AlgebraicNumber glued(const BratteliDiagram& d, const DecodedPatch& px, const DecodedPatch& py, int h) {
    const auto& t = d.horizontals[static_cast<std::size_t>(h)];
    const AlgebraicNumber& x_lo = px.positions.front().lo;
    const AlgebraicNumber& x_hi = px.positions.back().hi;
    const AlgebraicNumber& y_lo = py.positions.front().lo;
    const AlgebraicNumber& y_hi = py.positions.back().hi;
    // Where y's puncture lands in x's frame.
    AlgebraicNumber shift = x_lo - y_lo;
    if (!t.trivial) shift = t.coeff.sign() > 0 ? x_hi - y_lo : x_lo - y_hi;
    return -shift;
}

// Tiles are contiguous and a tile's length depends only on its letter, so
// one aligned tile plus letter-by-letter agreement fixes the whole overlap.
int overlap(const CollaredPatch& px, const CollaredPatch& py, const AlgebraicNumber& a) {
    const AlgebraicNumber shift = -a;
    const AlgebraicNumber& lo = px.positions.front().lo;
    const auto j0 = static_cast<std::size_t>(
        std::partition_point(py.positions.begin(), py.positions.end(),
                             [&](const Interval& iv) { return compare(iv.lo + shift, lo) < 0; }) -
        py.positions.begin());
    if (j0 == py.positions.size()) return 0;
    const AlgebraicNumber start = py.positions[j0].lo + shift;
    const auto i0 = static_cast<std::size_t>(
        std::partition_point(px.positions.begin(), px.positions.end(),
                             [&](const Interval& iv) { return compare(iv.lo, start) < 0; }) -
        px.positions.begin());
    if (i0 == px.positions.size()) return 0;
    if (px.positions[i0].lo != start) return -1;
    int count = 0;
    for (std::size_t i = i0, j = j0; i < px.positions.size() && j < py.positions.size(); ++i, ++j) {
        if (px.base_word[i] != py.base_word[j]) return -1;
        ++count;
    }
    return count;
}

}  // namespace

AlgebraicNumber glued_translation(const BratteliDiagram& d, const EventuallyPeriodicPath& x,
                                  const EventuallyPeriodicPath& y, int h, int generation) {
    return glued(d, decode(d, x.prefix(generation - 1)), decode(d, y.prefix(generation - 1)), h);
}

int patch_overlap(const BratteliDiagram& d, const EventuallyPeriodicPath& x, const EventuallyPeriodicPath& y,
                  const AlgebraicNumber& a, int generation) {
    return overlap(decode_collared(d, x.prefix(generation - 1)), decode_collared(d, y.prefix(generation - 1)), a);
}

Substitution random_primitive_substitution(std::mt19937& rng, int letters) {
    std::uniform_int_distribution<int> length(1, 3), letter(0, letters - 1);
    std::vector<std::string> names;
    for (int i = 0; i < letters; ++i) names.push_back(std::to_string(i));
    for (;;) {
        std::vector<Word> rules(static_cast<std::size_t>(letters));
        for (auto& r : rules) {
            const int n = length(rng);
            for (int k = 0; k < n; ++k) r.push_back(letter(rng));
        }
        try {
            return make_substitution(names, rules);
        } catch (const Error&) {
            // Not primitive, periodic or otherwise unusable; draw again.
        }
    }
}

namespace {

// Collects the first few failure messages of a check.
class Tally {
public:
    void expect(bool ok, const std::string& what) {
        ++checked_;
        if (ok) return;
        ++failed_;
        if (failed_ <= 3) notes_.push_back(what);
    }
    void note(const std::string& s) { info_.push_back(s); }
    CheckResult result(int id, std::string title) const {
        CheckResult r{id, std::move(title), true, failed_ == 0, {}};
        std::ostringstream out;
        if (failed_ == 0) {
            out << checked_ << " checks";
            for (const auto& s : info_) out << "; " << s;
        } else {
            out << failed_ << "/" << checked_ << " failed";
            for (const auto& s : notes_) out << "; " << s;
        }
        r.detail = out.str();
        return r;
    }

private:
    long checked_ = 0;
    long failed_ = 0;
    std::vector<std::string> notes_;
    std::vector<std::string> info_;
};

CheckResult not_applicable(int id, std::string title, std::string why) {
    return CheckResult{id, std::move(title), false, true, std::move(why)};
}

template <class F>
CheckResult guarded(int id, const std::string& title, F body) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r = CheckResult{id, title, true, false, std::string("exception: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

struct Fixture {
    std::string name;
    BratteliDiagram d;
    std::vector<EventuallyPeriodicPath> sample;
};

int vertical_named(const BratteliDiagram& d, const std::string& from, const std::string& to) {
    const auto s = d.find_vertex(from), r = d.find_vertex(to);
    if (!s || !r) throw Error(ErrorKind::BadPath, "no vertex " + from + " or " + to);
    for (int e = 0; e < static_cast<int>(d.verticals.size()); ++e)
        if (d.verticals[static_cast<std::size_t>(e)].source == *s && d.verticals[static_cast<std::size_t>(e)].range == *r)
            return e;
    throw Error(ErrorKind::BadPath, "no edge " + from + to);
}

AlgebraicNumber lambda(const BratteliDiagram& d) { return AlgebraicNumber::lambda_pow(d.field, 1); }

AlgebraicNumber abs_value(const AlgebraicNumber& a) { return a.sign() < 0 ? -a : a; }

std::string pair_name(const BratteliDiagram& d, VertexId s, VertexId r) {
    return d.names[static_cast<std::size_t>(s)] + d.names[static_cast<std::size_t>(r)];
}

// ---------------------------------------------------------------------------

CheckResult check_fibonacci_collaring() {
    Tally t;
    const Substitution sub = load_fixture("fibonacci");
    const auto letters = collar_alphabet(sub);
    t.expect(letters.size() == 4, "expected 4 collared letters, got " + std::to_string(letters.size()));
    const std::vector<std::pair<std::string, std::string>> contexts{{"a", "001"}, {"b", "100"}, {"c", "101"}, {"d", "010"}};
    const CollaredSubstitution cs = collared_substitution(sub);
    for (const auto& [name, ctx] : contexts) {
        const auto id = cs.find(name);
        t.expect(id.has_value(), "no collared letter " + name);
        if (!id) continue;
        const auto& l = cs.letters[static_cast<std::size_t>(*id)];
        t.expect(sub.name(l.left) + sub.name(l.core) + sub.name(l.right) == ctx, name + " has the wrong context");
    }
    const std::vector<std::pair<std::string, std::string>> rules{{"a", "cd"}, {"b", "ad"}, {"c", "ad"}, {"d", "b"}};
    for (const auto& [name, body] : rules) {
        const auto id = cs.find(name);
        if (!id) continue;
        const std::string got = cs.spell(cs.rules[static_cast<std::size_t>(*id)]);
        std::string compact;
        for (char c : got)
            if (c != ' ') compact += c;
        t.expect(compact == body, "sigma(" + name + ") = " + got);
    }
    return t.result(1, "Fibonacci collaring");
}

CheckResult check_fibonacci_verticals(const Fixture& f) {
    Tally t;
    const auto& d = f.d;
    const AlgebraicNumber inv = lambda(d).inverse().scale(Rational(1, 2));
    const AlgebraicNumber zero = AlgebraicNumber::zero(d.field);
    const AlgebraicNumber minus_half(d.field, Rational(-1, 2));
    const std::vector<std::pair<std::string, AlgebraicNumber>> expected{
        {"ab", inv}, {"ac", inv}, {"ca", inv}, {"bd", zero}, {"da", minus_half}, {"db", minus_half}, {"dc", minus_half}};
    t.expect(d.verticals.size() == expected.size(), "vertical count " + std::to_string(d.verticals.size()));
    for (const auto& [edge, c] : expected) {
        const auto& e = d.verticals[static_cast<std::size_t>(vertical_named(d, edge.substr(0, 1), edge.substr(1, 1)))];
        t.expect(e.coeff == c, edge + ": " + e.coeff.to_string() + " != " + c.to_string());
    }
    return t.result(2, "Fibonacci vertical labels");
}

CheckResult check_fibonacci_horizontals(const Fixture& f) {
    Tally t;
    const auto& d = f.d;
    std::set<std::string> adjacency;
    const AlgebraicNumber one = AlgebraicNumber::one(d.field);
    const AlgebraicNumber half_phi = lambda(d).scale(Rational(1, 2));
    for (const auto& h : d.horizontals) {
        if (h.trivial) {
            t.expect(h.coeff.is_zero(), "trivial horizontal with nonzero label");
            continue;
        }
        // Orient as the left tile followed by the right one.
        const std::string word = h.coeff.sign() > 0 ? pair_name(d, h.source, h.range) : pair_name(d, h.range, h.source);
        adjacency.insert(word);
        const bool ab = std::set<std::string>{d.names[static_cast<std::size_t>(h.source)], d.names[static_cast<std::size_t>(h.range)]} ==
                        std::set<std::string>{"a", "b"};
        t.expect(abs_value(h.coeff) == (ab ? one : half_phi), word + ": |c| = " + abs_value(h.coeff).to_string());
    }
    t.expect(adjacency == std::set<std::string>{"ba", "ad", "db", "cd", "dc"}, "adjacency set differs");
    const int a = *d.find_vertex("a"), b = *d.find_vertex("b");
    for (int h : d.horizontals_between(a, b)) {
        // u(h_ab) = -phi^(n-1)
        for (int n = 1; n <= 5; ++n)
            t.expect(horizontal_label(d, h, n) == -AlgebraicNumber::lambda_pow(d.field, n - 1), "u(h_ab) at generation " + std::to_string(n));
    }
    return t.result(3, "Fibonacci horizontal labels");
}

CheckResult check_diagrams(const std::vector<const Fixture*>& fixtures) {
    Tally t;
    for (const Fixture* f : fixtures) {
        const auto& d = f->d;
        const bool fib = f->name == "fibonacci";
        int count = 0;
        for (const auto& dt : d.diagrams) {
            if (dt.kind != DiagramKind::Nontrivial) continue;
            ++count;
            t.expect(diagram_residual(d, dt.h_top, dt.e_left, dt.e_right, dt.h_bot).is_zero(), f->name + ": nonzero residual");
            const auto& top = d.horizontals[static_cast<std::size_t>(dt.h_top)];
            const auto& bot = d.horizontals[static_cast<std::size_t>(dt.h_bot)];
            // For Fibonacci only D1 (top a-b, bottom c-d) has a stated sum.
            const std::set<std::string> top_ends{d.names[static_cast<std::size_t>(top.source)], d.names[static_cast<std::size_t>(top.range)]};
            const std::set<std::string> bot_ends{d.names[static_cast<std::size_t>(bot.source)], d.names[static_cast<std::size_t>(bot.range)]};
            const bool stated = !fib || (top_ends == std::set<std::string>{"a", "b"} && bot_ends == std::set<std::string>{"c", "d"});
            if (!stated) continue;
            for (int n = 2; n <= 6; ++n) {
                const AlgebraicNumber scale = AlgebraicNumber::lambda_pow(d.field, n - 2);
                const AlgebraicNumber left = d.verticals[static_cast<std::size_t>(dt.e_left)].coeff * scale + horizontal_label(d, dt.h_bot, n);
                const AlgebraicNumber right = horizontal_label(d, dt.h_top, n - 1) + d.verticals[static_cast<std::size_t>(dt.e_right)].coeff * scale;
                t.expect(left == right, f->name + ": diagram does not commute at n = " + std::to_string(n));
                const AlgebraicNumber expected = fib ? -scale : -scale.scale(Rational(3, 2));
                t.expect(left == expected, f->name + ": u-sum " + left.to_string() + " at n = " + std::to_string(n));
            }
        }
        t.expect(count == (fib ? 2 : 4), f->name + ": " + std::to_string(count) + " nontrivial diagrams");
    }
    return t.result(4, "Commutative diagrams");
}

CheckResult check_decoding(const Fixture* fib, const Fixture* tm) {
    Tally t;
    const auto run = [&](const Fixture& f, const std::string& literal, const std::string& word, int puncture) {
        const auto p = decode(f.d, parse_prefix(f.d, literal));
        std::string got;
        for (int v : p.word) got += f.d.names[static_cast<std::size_t>(v)];
        t.expect(got == word, f.name + ": " + literal + " decodes to " + got);
        t.expect(p.puncture_index == puncture, f.name + ": puncture index " + std::to_string(p.puncture_index));
    };
    if (fib) run(*fib, "root=a; ac ca ab", "adbad", 0);
    if (tm) run(*tm, "root=a; ad dc cb", "ecdefabc", 5);
    return t.result(5, "Decoding");
}

CheckResult check_tm_labels(const Fixture& f) {
    Tally t;
    const auto& d = f.d;
    const AlgebraicNumber half(d.field, Rational(1, 2));
    for (const char* e : {"ba", "be", "dc", "df", "eb", "fd"}) {
        const auto& v = d.verticals[static_cast<std::size_t>(vertical_named(d, std::string(1, e[0]), std::string(1, e[1])))];
        t.expect(v.coeff == half, std::string(e) + ": " + v.coeff.to_string());
    }
    for (const char* e : {"ad", "af", "cb", "ce", "ec", "fa"}) {
        const auto& v = d.verticals[static_cast<std::size_t>(vertical_named(d, std::string(1, e[0]), std::string(1, e[1])))];
        t.expect(v.coeff == -half, std::string(e) + ": " + v.coeff.to_string());
    }
    t.expect(d.verticals.size() == 12, "vertical count " + std::to_string(d.verticals.size()));
    for (const auto& h : d.horizontals)
        if (!h.trivial) t.expect(abs_value(h.coeff) == AlgebraicNumber::one(d.field), "|c_h| = " + abs_value(h.coeff).to_string());
    return t.result(6, "Thue-Morse vertical labels");
}

std::vector<std::string> vertex_cycle(const BratteliDiagram& d, const EventuallyPeriodicPath& x) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < x.cycle.size(); ++k)
        out.push_back(d.names[static_cast<std::size_t>(vertex_at(d, x, static_cast<int>(x.preamble.size() + k) + 1))]);
    return out;
}

CheckResult check_extremes(const std::vector<const Fixture*>& fixtures) {
    Tally t;
    for (const Fixture* f : fixtures) {
        const auto& d = f->d;
        const auto ext = extremal_paths(d);
        const auto psi = pair_extremes(d);
        // Expected (max, min) pairs, paths written as in the worked examples.
        std::vector<std::pair<std::string, std::string>> expected;
        if (f->name == "fibonacci")
            expected = {{"root=b;(bd db)", "root=a;(ac ca)"}, {"root=d;(db bd)", "root=c;(ca ac)"}};
        else
            expected = {{"root=a;(af fa)", "root=b;(be eb)"},
                        {"root=f;(fa af)", "root=e;(eb be)"},
                        {"root=c;(ce ec)", "root=d;(df fd)"},
                        {"root=e;(ec ce)", "root=f;(fd df)"}};
        t.expect(ext.min_paths.size() == expected.size(), f->name + ": " + std::to_string(ext.min_paths.size()) + " minimal paths");
        t.expect(ext.max_paths.size() == expected.size(), f->name + ": " + std::to_string(ext.max_paths.size()) + " maximal paths");
        std::set<EventuallyPeriodicPath> mins(ext.min_paths.begin(), ext.min_paths.end());
        std::set<EventuallyPeriodicPath> maxs(ext.max_paths.begin(), ext.max_paths.end());
        std::set<EventuallyPeriodicPath> images;
        for (const auto& [mx, mn] : expected) {
            const auto xmax = parse_periodic(d, mx).normalized();
            const auto xmin = parse_periodic(d, mn).normalized();
            t.expect(maxs.count(xmax) == 1, f->name + ": " + mx + " is not a maximal path");
            t.expect(mins.count(xmin) == 1, f->name + ": " + mn + " is not a minimal path");
            const auto* image = psi.psi(xmax);
            t.expect(image && *image == xmin, f->name + ": psi(" + mx + ") is not " + mn);
            t.expect(vershik_successor(d, psi, xmax) == xmin, f->name + ": V(" + mx + ") is not " + mn);
        }
        for (const auto& m : ext.max_paths) {
            const auto* image = psi.psi(m);
            t.expect(image != nullptr, f->name + ": unpaired maximal path");
            if (image) images.insert(*image);
            t.expect(image && vershik_successor(d, psi, m) == *image, f->name + ": V(x_max) != psi(x_max)");
        }
        t.expect(images == mins, f->name + ": psi is not onto the minimal paths");
        if (f->name == "fibonacci") {
            std::set<std::vector<std::string>> cycles;
            for (const auto& m : ext.min_paths) {
                auto c = vertex_cycle(d, m);
                std::sort(c.begin(), c.end());
                cycles.insert(c);
            }
            t.expect(cycles == std::set<std::vector<std::string>>{{"a", "c"}}, "minimal vertex cycles");
            cycles.clear();
            for (const auto& m : ext.max_paths) {
                auto c = vertex_cycle(d, m);
                std::sort(c.begin(), c.end());
                cycles.insert(c);
            }
            t.expect(cycles == std::set<std::vector<std::string>>{{"b", "d"}}, "maximal vertex cycles");
        }
    }
    return t.result(7, "Extremal paths and pairing");
}

// All rb_equiv witnesses over a fixture's sample, shared by criteria 8, 9 and 11.
struct RbTable {
    std::map<std::pair<std::size_t, std::size_t>, RbWitness> witnesses;
};

CheckResult check_generators(const std::vector<const Fixture*>& fixtures, std::map<std::string, RbTable>& tables) {
    Tally t;
    for (const Fixture* f : fixtures) {
        const auto& d = f->d;
        const auto psi = pair_extremes(d);
        RbTable& table = tables[f->name];
        long related = 0;
        for (std::size_t i = 0; i < f->sample.size(); ++i)
            for (std::size_t j = 0; j < f->sample.size(); ++j) {
                const auto& x = f->sample[i];
                const auto& y = f->sample[j];
                std::optional<RbWitness> w;
                try {
                    w = rb_equiv(d, x, y);
                } catch (const Error& e) {
                    t.expect(false, f->name + ": " + e.what());
                    continue;
                }
                const bool gen = rb_via_generators(psi, x, y);
                t.expect(w.has_value() == gen, f->name + ": deciders disagree on " + format_path(d, x) + " / " + format_path(d, y));
                if (w) {
                    ++related;
                    table.witnesses.emplace(std::make_pair(i, j), *w);
                }
            }
        t.note(f->name + " " + std::to_string(f->sample.size()) + " paths, " + std::to_string(related) + " related pairs");
    }
    return t.result(8, "R_B generated by AF and psi");
}

CheckResult check_cocycle(const std::vector<const Fixture*>& fixtures, const std::map<std::string, RbTable>& tables,
                          unsigned seed) {
    Tally t;
    for (const Fixture* f : fixtures) {
        const auto& d = f->d;
        const RbTable& table = tables.at(f->name);
        for (const auto& [ij, w] : table.witnesses) {
            const auto& x = f->sample[ij.first];
            const auto& y = f->sample[ij.second];
            // Generation independence, straight from the labels.
            for (int n = w.n0; n <= w.n0 + 8; ++n) {
                const AlgebraicNumber a = -(u_of_prefix(d, x.prefix(n - 1)) - u_of_prefix(d, y.prefix(n - 1)) +
                                            horizontal_label(d, w.horizontal_at(n), n));
                t.expect(a == w.translation, f->name + ": " + format_path(d, x) + " / " + format_path(d, y) +
                                                 ": translation changes at generation " + std::to_string(n));
            }
        }
        // Oracle depths max(5, n0) .. max(5, n0) + 3, one depth at a time so
        // each path is decoded once per depth.
        int deepest = 0;
        for (const auto& [ij, w] : table.witnesses) deepest = std::max(deepest, std::max(5, w.n0) + 3);
        for (int n = 5; n <= deepest; ++n) {
            std::map<std::size_t, DecodedPatch> plain;
            std::map<std::size_t, CollaredPatch> collared;
            const auto patch = [&](std::size_t i) -> const DecodedPatch& {
                auto it = plain.find(i);
                if (it == plain.end()) it = plain.emplace(i, decode(d, f->sample[i].prefix(n - 1))).first;
                return it->second;
            };
            const auto cpatch = [&](std::size_t i) -> const CollaredPatch& {
                auto it = collared.find(i);
                if (it == collared.end()) it = collared.emplace(i, decode_collared(d, f->sample[i].prefix(n - 1))).first;
                return it->second;
            };
            for (const auto& [ij, w] : table.witnesses) {
                const int first = std::max(5, w.n0);
                if (n < first || n > first + 3) continue;
                const auto tag = [&] {
                    return f->name + ": " + format_path(d, f->sample[ij.first]) + " / " + format_path(d, f->sample[ij.second]);
                };
                const bool same = glued(d, patch(ij.first), patch(ij.second), w.horizontal_at(n)) == w.translation;
                t.expect(same, same ? std::string() : tag() + ": glued translation differs at depth " + std::to_string(n));
                const bool agree = overlap(cpatch(ij.first), cpatch(ij.second), w.translation) > 0;
                t.expect(agree, agree ? std::string() : tag() + ": patches disagree at depth " + std::to_string(n));
            }
        }
        // Composable triples: a deterministic sample from each class.
        std::map<std::size_t, std::vector<std::size_t>> partners;
        for (const auto& [ij, w] : table.witnesses) partners[ij.first].push_back(ij.second);
        std::mt19937 rng(seed);
        long triples = 0;
        for (const auto& [i, js] : partners) {
            for (int s = 0; s < 12; ++s) {
                const std::size_t j = js[std::uniform_int_distribution<std::size_t>(0, js.size() - 1)(rng)];
                const auto& ks = partners.at(j);
                const std::size_t k = ks[std::uniform_int_distribution<std::size_t>(0, ks.size() - 1)(rng)];
                const auto xz = table.witnesses.find({i, k});
                t.expect(xz != table.witnesses.end(), f->name + ": R_B is not transitive");
                if (xz == table.witnesses.end()) continue;
                ++triples;
                t.expect(table.witnesses.at({i, j}).translation + table.witnesses.at({j, k}).translation == xz->second.translation,
                         f->name + ": a(x,y) + a(y,z) != a(x,z)");
            }
        }
        t.note(f->name + " " + std::to_string(table.witnesses.size()) + " witnesses, " + std::to_string(triples) + " triples");
    }
    return t.result(9, "Cocycle checks");
}

CheckResult check_vershik(const std::vector<const Fixture*>& fixtures, unsigned seed) {
    Tally t;
    for (const Fixture* f : fixtures) {
        const auto& d = f->d;
        const auto psi = pair_extremes(d);
        std::mt19937 rng(seed);
        long crossings = 0;
        for (int s = 0; s < 5; ++s) {
            auto cur = f->sample[std::uniform_int_distribution<std::size_t>(0, f->sample.size() - 1)(rng)];
            for (int step = 0; step < 1000; ++step) {
                const auto next = vershik_successor(d, psi, cur);
                const AlgebraicNumber traversed =
                    (d.lengths[static_cast<std::size_t>(cur.root)] + d.lengths[static_cast<std::size_t>(next.root)]).scale(Rational(1, 2));
                const std::string tag = f->name + ": V(" + format_path(d, cur) + ")";
                if (is_max_path(d, cur)) {
                    ++crossings;
                    const auto* image = psi.psi(cur);
                    t.expect(image && *image == next, tag + " does not route through psi");
                    const auto w = rb_equiv(d, cur, next);
                    t.expect(w.has_value(), tag + ": no R_B witness");
                    if (w) {
                        const int n = std::max(5, w->n0);
                        const AlgebraicNumber moved = -glued_translation(d, cur, next, w->horizontal_at(n), n);
                        t.expect(moved == traversed, tag + ": moved " + moved.to_string());
                    }
                } else {
                    // Below the first non-maximal edge both paths share a supertile.
                    std::size_t k = 0;
                    for (;; ++k) {
                        const auto& e = d.verticals[static_cast<std::size_t>(cur.edge(k))];
                        if (e.position < d.rule_length(e.range) - 1) break;
                    }
                    const auto pc = decode(d, cur.prefix(static_cast<int>(k) + 1));
                    const auto pn = decode(d, next.prefix(static_cast<int>(k) + 1));
                    t.expect(pc.word == pn.word, tag + ": different supertiles");
                    t.expect(pn.puncture_index == pc.puncture_index + 1, tag + ": puncture did not move one tile");
                    const AlgebraicNumber moved = pc.positions.front().lo - pn.positions.front().lo;
                    t.expect(moved.sign() > 0 && moved == traversed, tag + ": moved " + moved.to_string());
                }
                cur = next;
            }
        }
        t.note(f->name + " " + std::to_string(crossings) + " psi crossings");
    }
    return t.result(10, "Vershik = first return");
}

CheckResult check_gf(const std::vector<const Fixture*>& fixtures) {
    Tally t;
    for (const Fixture* f : fixtures) {
        const auto& d = f->d;
        const auto ext = extremal_paths(d);
        long g_count = 0;
        for (const auto& x : f->sample) {
            bool tail = false;
            for (const auto* list : {&ext.min_paths, &ext.max_paths})
                for (const auto& m : *list) tail = tail || af_equiv(x, m);
            const auto v = classify_gf(d, x);
            t.expect((v.kind == GfClass::F) == tail, f->name + ": " + format_path(d, x) + " misclassified");
            if (v.kind != GfClass::G) continue;
            ++g_count;
            for (int bound : {1, 10, 100}) {
                const AlgebraicNumber b(d.field, Rational(bound));
                const auto h = escape_horizon(d, x, Rational(bound));
                t.expect(h.generation <= h.a_priori, f->name + ": horizon beyond its a priori bound");
                const auto g = gap_profile(d, x.prefix(h.generation - 1));
                t.expect(compare(g.distance(h.generation), b) > 0, f->name + ": distance not above " + std::to_string(bound));
            }
        }
        t.note(f->name + " " + std::to_string(g_count) + " G paths");
    }
    return t.result(11, "G/F dichotomy");
}

CheckResult check_invariants(const std::vector<std::pair<std::string, const BratteliDiagram*>>& systems) {
    Tally t;
    for (const auto& [name, dp] : systems) {
        const auto& d = *dp;
        for (std::size_t i = 0; i < d.horizontals.size(); ++i) {
            const auto& h = d.horizontals[i];
            const auto& o = d.horizontals[static_cast<std::size_t>(h.opposite)];
            t.expect((h.coeff + o.coeff).is_zero() && o.source == h.range && o.range == h.source &&
                         o.opposite == static_cast<int>(i),
                     name + ": opposite edges do not cancel");
        }
        t.expect(is_regular(d), name + ": not regular");
        t.expect(hypothesis_check(d).ok, name + ": two-path hypothesis fails");
        for (VertexId v = 0; v < d.vertex_count(); ++v) {
            AlgebraicNumber sum = AlgebraicNumber::zero(d.field);
            for (int s : d.rules[static_cast<std::size_t>(v)]) sum += d.lengths[static_cast<std::size_t>(s)];
            t.expect(sum == lambda(d) * d.lengths[static_cast<std::size_t>(v)], name + ": eigen-equation residual");
        }
        for (const auto& dt : d.diagrams)
            t.expect(diagram_residual(d, dt.h_top, dt.e_left, dt.e_right, dt.h_bot).is_zero(), name + ": diagram residual");
        for (const auto& x : enumerate_periodic_paths(d, 2, 2)) {
            for (int n = 0; n < 5; ++n) {
                const auto small = decode(d, x.prefix(n));
                const auto big = decode(d, x.prefix(n + 1));
                const int shift = big.puncture_index - small.puncture_index;
                bool nested = shift >= 0 && static_cast<std::size_t>(shift) + small.word.size() <= big.word.size();
                for (std::size_t i = 0; nested && i < small.word.size(); ++i)
                    nested = big.word[static_cast<std::size_t>(shift) + i] == small.word[i] &&
                             big.positions[static_cast<std::size_t>(shift) + i].lo == small.positions[i].lo;
                t.expect(nested, name + ": decode nesting fails for " + format_path(d, x));
            }
        }
        const std::string json = export_json(d);
        t.expect(export_json(import_json(json)) == json, name + ": JSON round trip is not a fixed point");
    }
    return t.result(12, "Structural invariants");
}

}  // namespace

std::vector<CheckResult> run_battery(const BatteryOptions& options) {
    std::vector<Fixture> store;
    if (options.fibonacci) store.push_back({"fibonacci", build_diagram(load_fixture("fibonacci")), {}});
    if (options.thue_morse) store.push_back({"thue-morse", build_diagram(load_fixture("thue-morse")), {}});
    std::vector<const Fixture*> all;
    const Fixture* fib = nullptr;
    const Fixture* tm = nullptr;
    for (auto& f : store) {
        f.sample = enumerate_periodic_paths(f.d, 4, 3);
        all.push_back(&f);
        (f.name == "fibonacci" ? fib : tm) = &f;
    }

    std::vector<CheckResult> out;
    out.push_back(fib ? guarded(1, "Fibonacci collaring", [&] { return check_fibonacci_collaring(); })
                      : not_applicable(1, "Fibonacci collaring", "Fibonacci fixture not selected"));
    out.push_back(fib ? guarded(2, "Fibonacci vertical labels", [&] { return check_fibonacci_verticals(*fib); })
                      : not_applicable(2, "Fibonacci vertical labels", "Fibonacci fixture not selected"));
    out.push_back(fib ? guarded(3, "Fibonacci horizontal labels", [&] { return check_fibonacci_horizontals(*fib); })
                      : not_applicable(3, "Fibonacci horizontal labels", "Fibonacci fixture not selected"));
    out.push_back(guarded(4, "Commutative diagrams", [&] { return check_diagrams(all); }));
    out.push_back(guarded(5, "Decoding", [&] { return check_decoding(fib, tm); }));
    out.push_back(tm ? guarded(6, "Thue-Morse vertical labels", [&] { return check_tm_labels(*tm); })
                     : not_applicable(6, "Thue-Morse vertical labels", "Thue-Morse fixture not selected"));
    out.push_back(guarded(7, "Extremal paths and pairing", [&] { return check_extremes(all); }));
    std::map<std::string, RbTable> tables;
    out.push_back(guarded(8, "R_B generated by AF and psi", [&] { return check_generators(all, tables); }));
    out.push_back(guarded(9, "Cocycle checks", [&] { return check_cocycle(all, tables, options.seed); }));
    out.push_back(guarded(10, "Vershik = first return", [&] { return check_vershik(all, options.seed); }));
    out.push_back(guarded(11, "G/F dichotomy", [&] { return check_gf(all); }));
    out.push_back(guarded(12, "Structural invariants", [&] {
        std::vector<std::pair<std::string, const BratteliDiagram*>> systems;
        for (const auto* f : all) systems.emplace_back(f->name, &f->d);
        const BratteliDiagram doubling = build_diagram(load_fixture("doubling"));
        systems.emplace_back("doubling", &doubling);
        std::mt19937 rng(options.seed);
        const Substitution random = random_primitive_substitution(rng, 3);
        const BratteliDiagram random_d = build_diagram(random);
        std::string rules;
        for (int i = 0; i < random.size(); ++i) rules += (i ? ", " : "") + random.name(i) + "->" + random.spell(random.rules[static_cast<std::size_t>(i)]);
        systems.emplace_back("random(" + rules + ")", &random_d);
        auto r = check_invariants(systems);
        r.detail += "; random system " + rules;
        return r;
    }));
    return out;
}

std::string format_check(const CheckResult& r) {
    std::ostringstream out;
    out << (r.applicable ? (r.pass ? "PASS" : "FAIL") : "N/A ") << "  [" << r.id << "] " << r.title << ": " << r.detail;
    return out.str();
}

}  // namespace bratteli
