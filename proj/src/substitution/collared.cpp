#include "bratteli/error.hpp"
#include "bratteli/substitution.hpp"

#include <algorithm>
#include <array>
#include <tuple>

namespace bratteli {

std::optional<int> CollaredSubstitution::find(std::string_view n) const {
    for (std::size_t i = 0; i < letters.size(); ++i)
        if (letters[i].name == n) return static_cast<int>(i);
    return std::nullopt;
}

std::optional<int> CollaredSubstitution::find(int left, int core, int right) const {
    for (std::size_t i = 0; i < letters.size(); ++i) {
        const auto& l = letters[i];
        if (l.left == left && l.core == core && l.right == right) return static_cast<int>(i);
    }
    return std::nullopt;
}

std::string CollaredSubstitution::collar_text(int id) const {
    const auto& l = letters[static_cast<std::size_t>(id)];
    // U+0307 COMBINING DOT ABOVE marks the punctured core.
    return base.name(l.left) + " " + base.name(l.core) + "̇ " + base.name(l.right);
}

std::string CollaredSubstitution::spell(const Word& w) const {
    std::string out;
    const bool single = std::all_of(letters.begin(), letters.end(), [](const CollaredLetter& l) { return l.name.size() == 1; });
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!single && i > 0) out += ' ';
        out += name(w[i]);
    }
    return out;
}

namespace {

std::string default_name(std::size_t i) {
    if (i < 26) return std::string(1, static_cast<char>('a' + i));
    return "t" + std::to_string(i);
}

}  // namespace

std::vector<CollaredLetter> collar_alphabet(const Substitution& sub) {
    std::vector<std::array<int, 3>> triples;
    for (const Word& w : legal_words(sub, 3)) triples.push_back({w[0], w[1], w[2]});
    std::sort(triples.begin(), triples.end(), [](const auto& a, const auto& b) {
        return std::tie(a[1], a[0], a[2]) < std::tie(b[1], b[0], b[2]);
    });
    std::vector<CollaredLetter> out;
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const std::string n = sub.collar_names.empty() ? default_name(i) : sub.collar_names[i];
        out.push_back({triples[i][0], triples[i][1], triples[i][2], n});
    }
    return out;
}

CollaredSubstitution collared_substitution(const Substitution& sub) {
    CollaredSubstitution cs;
    cs.base = sub;
    cs.letters = collar_alphabet(sub);
    for (const CollaredLetter& t : cs.letters) {
        const Word& left = sub.rules[static_cast<std::size_t>(t.left)];
        const Word& core = sub.rules[static_cast<std::size_t>(t.core)];
        const Word& right = sub.rules[static_cast<std::size_t>(t.right)];
        Word w = left;
        w.insert(w.end(), core.begin(), core.end());
        w.insert(w.end(), right.begin(), right.end());
        Word image;
        for (std::size_t i = 0; i < core.size(); ++i) {
            const std::size_t at = left.size() + i;
            const auto id = cs.find(w[at - 1], w[at], w[at + 1]);
            if (!id)
                throw Error(ErrorKind::IllegalCollarProduced,
                            "expanding " + t.name + " produces the illegal collar " + sub.name(w[at - 1]) +
                                sub.name(w[at]) + sub.name(w[at + 1]));
            image.push_back(*id);
        }
        cs.rules.push_back(std::move(image));
    }
    cs.matrix = abelianization(cs.size(), cs.rules);
    for (const CollaredLetter& t : cs.letters) cs.lengths.push_back(sub.lengths[static_cast<std::size_t>(t.core)]);
    return cs;
}

std::optional<std::string> fixture_text(std::string_view name) {
    if (name == "fibonacci")
        return "# Fibonacci substitution\n"
               "letters: 0 1\n"
               "rule 0: 0 1\n"
               "rule 1: 0\n"
               "collar-names: a b c d\n";
    if (name == "thue-morse")
        return "# Thue-Morse substitution; collared names follow the classic tables\n"
               "letters: 0 1\n"
               "rule 0: 0 1\n"
               "rule 1: 1 0\n"
               "collar-names: b a e f c d\n";
    if (name == "doubling")
        return "# 0 -> 00, the dyadic odometer (periodic, test use only)\n"
               "letters: 0\n"
               "rule 0: 0 0\n";
    return std::nullopt;
}

Substitution load_fixture(std::string_view name) {
    const auto text = fixture_text(name);
    if (!text) throw Error(ErrorKind::BadFormat, "unknown fixture '" + std::string(name) + "'");
    ParseOptions options;
    options.screen_aperiodicity = name != "doubling";
    return parse_spec(*text, options);
}

}  // namespace bratteli
