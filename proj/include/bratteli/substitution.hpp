#pragma once

#include "bratteli/exactnum.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace bratteli {

using Word = std::vector<int>;
using IntMatrix = std::vector<std::vector<long long>>;

struct Letter {
    int id = 0;
    std::string name;
};

// A primitive substitution on a finite alphabet with its Perron data.
class Substitution {
public:
    std::vector<Letter> alphabet;
    std::vector<Word> rules;
    IntMatrix matrix;  // matrix[x][y] = occurrences of y in rules[x]
    FieldPtr field;
    std::vector<AlgebraicNumber> lengths;
    // Optional renaming of the collared letters, in collar order.
    std::vector<std::string> collar_names;

    int size() const { return static_cast<int>(alphabet.size()); }
    const std::string& name(int id) const { return alphabet[static_cast<std::size_t>(id)].name; }
    std::optional<int> find(std::string_view name) const;
    Word apply(const Word& w) const;
    std::string spell(const Word& w) const;
};

struct ParseOptions {
    // The Morse-Hedlund screen rejects periodic systems such as 0 -> 00, which
    // are still useful as small test cases.
    bool screen_aperiodicity = true;
    int screen_depth = 12;
};

// Parses the line-oriented spec format:
//   letters: 0 1
//   rule 0: 0 1
//   rule 1: 0
//   collar-names: a b c d
// with `#` comments. Rule bodies may also be written without spaces when every
// letter name is a single character.
Substitution parse_spec(std::string_view text, const ParseOptions& options = {});

// Validates and completes a substitution given by names and rules.
Substitution make_substitution(std::vector<std::string> names, std::vector<Word> rules,
                               std::vector<std::string> collar_names = {}, const ParseOptions& options = {});

IntMatrix abelianization(int size, const std::vector<Word>& rules);
// Smallest k with matrix^k strictly positive; NotPrimitive beyond the
// Wielandt bound (n-1)^2 + 1.
int primitivity_index(const IntMatrix& matrix);
// Characteristic polynomial det(xI - M), lowest degree first.
std::vector<Integer> characteristic_polynomial(const IntMatrix& matrix);
// Right Perron eigenvector normalized by lengths[0] = 1.
std::vector<AlgebraicNumber> perron_lengths(const IntMatrix& matrix, const FieldPtr& field);

std::set<Word> legal_words(const Substitution& sub, int n);

struct ScreenResult {
    bool periodic = false;
    int witness_n = 0;  // first n with p(n) <= n
    std::vector<int> complexity;
};
ScreenResult aperiodicity_screen(const Substitution& sub, int max_n = 12);

struct CollaredLetter {
    int left = 0;
    int core = 0;
    int right = 0;
    std::string name;
};

class CollaredSubstitution {
public:
    Substitution base;
    std::vector<CollaredLetter> letters;
    std::vector<Word> rules;
    IntMatrix matrix;
    std::vector<AlgebraicNumber> lengths;

    int size() const { return static_cast<int>(letters.size()); }
    const std::string& name(int id) const { return letters[static_cast<std::size_t>(id)].name; }
    std::optional<int> find(std::string_view name) const;
    std::optional<int> find(int left, int core, int right) const;
    const FieldPtr& field() const { return base.field; }
    // "0 0̇ 1" style rendering of the contexts.
    std::string collar_text(int id) const;
    std::string spell(const Word& w) const;
};

// One collared letter per legal 3-word, ordered by (core, left, right).
std::vector<CollaredLetter> collar_alphabet(const Substitution& sub);
CollaredSubstitution collared_substitution(const Substitution& sub);

// Built-in fixtures: "fibonacci", "thue-morse" and "doubling" (0 -> 00).
std::optional<std::string> fixture_text(std::string_view name);
Substitution load_fixture(std::string_view name);

}  // namespace bratteli
