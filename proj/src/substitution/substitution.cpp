#include "bratteli/substitution.hpp"

#include "bratteli/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace bratteli {

std::optional<int> Substitution::find(std::string_view n) const {
    for (const auto& l : alphabet)
        if (l.name == n) return l.id;
    return std::nullopt;
}

Word Substitution::apply(const Word& w) const {
    Word out;
    for (int x : w) {
        const Word& r = rules[static_cast<std::size_t>(x)];
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

std::string Substitution::spell(const Word& w) const {
    std::string out;
    const bool single = std::all_of(alphabet.begin(), alphabet.end(), [](const Letter& l) { return l.name.size() == 1; });
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!single && i > 0) out += ' ';
        out += name(w[i]);
    }
    return out;
}

IntMatrix abelianization(int size, const std::vector<Word>& rules) {
    IntMatrix m(static_cast<std::size_t>(size), std::vector<long long>(static_cast<std::size_t>(size), 0));
    for (int x = 0; x < size; ++x)
        for (int y : rules[static_cast<std::size_t>(x)]) ++m[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    return m;
}

int primitivity_index(const IntMatrix& matrix) {
    const std::size_t n = matrix.size();
    if (n == 0) throw Error(ErrorKind::NotPrimitive, "empty matrix");
    using Bool = std::vector<std::vector<char>>;
    Bool base(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (matrix[i][j] < 0) throw Error(ErrorKind::NotPrimitive, "matrix has a negative entry");
            base[i][j] = matrix[i][j] > 0;
        }
    const std::size_t bound = (n - 1) * (n - 1) + 1;
    Bool power = base;
    for (std::size_t k = 1; k <= bound; ++k) {
        bool positive = true;
        for (const auto& row : power)
            for (char c : row) positive = positive && c;
        if (positive) return static_cast<int>(k);
        Bool next(n, std::vector<char>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                if (power[i][l])
                    for (std::size_t j = 0; j < n; ++j) next[i][j] = next[i][j] || base[l][j];
        power = std::move(next);
    }
    throw Error(ErrorKind::NotPrimitive, "no power up to " + std::to_string(bound) + " is strictly positive");
}

std::vector<Integer> characteristic_polynomial(const IntMatrix& matrix) {
    // Faddeev-LeVerrier over Q.
    const std::size_t n = matrix.size();
    using QMat = std::vector<std::vector<Rational>>;
    QMat a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(static_cast<long>(matrix[i][j]));
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    QMat m(n, std::vector<Rational>(n));
    for (std::size_t k = 1; k <= n; ++k) {
        QMat next(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational s = 0;
                for (std::size_t l = 0; l < n; ++l) s += a[i][l] * m[l][j];
                next[i][j] = s;
            }
        for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
        m = std::move(next);
        Rational trace = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) trace += a[i][l] * m[l][i];
        c[n - k] = -trace / static_cast<long>(k);
    }
    std::vector<Integer> out;
    for (auto& q : c) {
        q.canonicalize();
        out.push_back(q.get_num());
    }
    return out;
}

std::vector<AlgebraicNumber> perron_lengths(const IntMatrix& matrix, const FieldPtr& field) {
    const std::size_t n = matrix.size();
    const AlgebraicNumber lambda = AlgebraicNumber::lambda_pow(field, 1);
    // Rows: sum_y (M[x][y] - lambda delta_xy) l_y = 0, with l_0 = 1 moved to
    // the right-hand side; unknowns l_1 .. l_{n-1}.
    std::vector<std::vector<AlgebraicNumber>> rows;
    for (std::size_t x = 0; x < n; ++x) {
        std::vector<AlgebraicNumber> row;
        for (std::size_t y = 1; y < n; ++y) {
            AlgebraicNumber v(field, Rational(static_cast<long>(matrix[x][y])));
            if (x == y) v -= lambda;
            row.push_back(v);
        }
        AlgebraicNumber rhs(field, Rational(-static_cast<long>(matrix[x][0])));
        if (x == 0) rhs += lambda;
        row.push_back(rhs);
        rows.push_back(std::move(row));
    }
    const std::size_t unknowns = n - 1;
    std::size_t r = 0;
    for (std::size_t col = 0; col < unknowns; ++col) {
        std::size_t pivot = r;
        while (pivot < n && rows[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw Error(ErrorKind::SingularSystem, "Perron eigenspace is not one-dimensional");
        std::swap(rows[r], rows[pivot]);
        const AlgebraicNumber inv = rows[r][col].inverse();
        for (auto& v : rows[r]) v *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || rows[i][col].is_zero()) continue;
            const AlgebraicNumber f = rows[i][col];
            for (std::size_t j = col; j <= unknowns; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    for (std::size_t i = r; i < n; ++i)
        if (!rows[i][unknowns].is_zero())
            throw Error(ErrorKind::SingularSystem, "eigen-equation is inconsistent: lambda is not an eigenvalue");
    std::vector<AlgebraicNumber> lengths{AlgebraicNumber::one(field)};
    for (std::size_t i = 0; i < unknowns; ++i) lengths.push_back(rows[i][unknowns]);
    for (std::size_t i = 0; i < n; ++i)
        if (lengths[i].sign() <= 0)
            throw Error(ErrorKind::SingularSystem, "length of letter " + std::to_string(i) + " is not positive");
    return lengths;
}

namespace {

void add_factors(const Word& w, int n, std::set<Word>& out) {
    if (static_cast<int>(w.size()) < n) return;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= w.size(); ++i)
        out.emplace(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + n);
}

}  // namespace

std::set<Word> legal_words(const Substitution& sub, int n) {
    if (n < 1) return {};
    std::set<Word> words;
    for (int x = 0; x < sub.size(); ++x) {
        Word w{x};
        // Every letter grows under a primitive substitution with lambda > 1.
        while (static_cast<int>(w.size()) < n) w = sub.apply(w);
        add_factors(w, n, words);
    }
    int stable_rounds = 0;
    while (stable_rounds < 2) {
        std::set<Word> next = words;
        for (const Word& w : words) add_factors(sub.apply(w), n, next);
        stable_rounds = next == words ? stable_rounds + 1 : 0;
        words = std::move(next);
    }
    return words;
}

ScreenResult aperiodicity_screen(const Substitution& sub, int max_n) {
    ScreenResult result;
    for (int n = 1; n <= max_n; ++n) {
        const int p = static_cast<int>(legal_words(sub, n).size());
        result.complexity.push_back(p);
        if (p <= n && !result.periodic) {
            result.periodic = true;
            result.witness_n = n;
            break;
        }
    }
    return result;
}

Substitution make_substitution(std::vector<std::string> names, std::vector<Word> rules,
                               std::vector<std::string> collar_names, const ParseOptions& options) {
    Substitution sub;
    for (std::size_t i = 0; i < names.size(); ++i) sub.alphabet.push_back({static_cast<int>(i), names[i]});
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (rules[i].empty()) throw Error(ErrorKind::EmptyRule, "letter " + names[i] + " has an empty rule");
    sub.rules = std::move(rules);
    sub.collar_names = std::move(collar_names);
    sub.matrix = abelianization(sub.size(), sub.rules);
    primitivity_index(sub.matrix);
    sub.field = ModulusField::from_charpoly(characteristic_polynomial(sub.matrix));
    sub.lengths = perron_lengths(sub.matrix, sub.field);
    if (options.screen_aperiodicity) {
        const ScreenResult screen = aperiodicity_screen(sub, options.screen_depth);
        if (screen.periodic)
            throw Error(ErrorKind::PeriodicDetected,
                        "factor complexity p(" + std::to_string(screen.witness_n) + ") = " +
                            std::to_string(screen.complexity.back()) + " forces a periodic subshift");
    }
    if (!sub.collar_names.empty()) {
        const std::size_t expected = legal_words(sub, 3).size();
        if (sub.collar_names.size() != expected)
            throw Error(ErrorKind::SyntaxError, "collar-names lists " + std::to_string(sub.collar_names.size()) +
                                                    " names but there are " + std::to_string(expected) +
                                                    " collared letters");
    }
    return sub;
}

namespace {

struct Token {
    std::string text;
    int column;
};

std::vector<Token> split(const std::string& line, std::size_t from) {
    std::vector<Token> out;
    std::size_t i = from;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

[[noreturn]] void syntax(int line, int col, const std::string& what) {
    throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
}

}  // namespace

Substitution parse_spec(std::string_view text, const ParseOptions& options) {
    std::vector<std::string> names;
    std::map<std::string, int> index;
    std::vector<std::optional<Word>> rules;
    std::vector<std::string> collar_names;
    bool have_letters = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw.substr(0, raw.find('#'));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos) syntax(line_no, static_cast<int>(first) + 1, "expected 'key: value'");
        const std::vector<Token> head = split(line.substr(0, colon), 0);
        const std::vector<Token> body = split(line, colon + 1);
        const std::string key = head.empty() ? "" : head[0].text;

        if (key == "letters" && head.size() == 1) {
            if (have_letters) syntax(line_no, head[0].column, "duplicate 'letters' line");
            if (body.empty()) syntax(line_no, static_cast<int>(colon) + 2, "empty alphabet");
            for (const Token& t : body) {
                if (index.count(t.text)) syntax(line_no, t.column, "duplicate letter '" + t.text + "'");
                index[t.text] = static_cast<int>(names.size());
                names.push_back(t.text);
            }
            rules.assign(names.size(), std::nullopt);
            have_letters = true;
        } else if (key == "rule" && head.size() == 2) {
            if (!have_letters) syntax(line_no, head[0].column, "'rule' before 'letters'");
            auto it = index.find(head[1].text);
            if (it == index.end())
                throw Error(ErrorKind::UnknownLetter, "line " + std::to_string(line_no) + ", column " +
                                                          std::to_string(head[1].column) + ": unknown letter '" +
                                                          head[1].text + "'");
            auto& slot = rules[static_cast<std::size_t>(it->second)];
            if (slot) syntax(line_no, head[0].column, "duplicate rule for '" + head[1].text + "'");
            const bool single = std::all_of(names.begin(), names.end(), [](const std::string& s) { return s.size() == 1; });
            Word w;
            for (const Token& t : body) {
                auto found = index.find(t.text);
                if (found != index.end()) {
                    w.push_back(found->second);
                    continue;
                }
                if (!single) throw Error(ErrorKind::UnknownLetter, "line " + std::to_string(line_no) + ", column " +
                                                                       std::to_string(t.column) + ": unknown letter '" +
                                                                       t.text + "'");
                for (std::size_t k = 0; k < t.text.size(); ++k) {
                    auto ch = index.find(std::string(1, t.text[k]));
                    if (ch == index.end())
                        throw Error(ErrorKind::UnknownLetter, "line " + std::to_string(line_no) + ", column " +
                                                                  std::to_string(t.column + static_cast<int>(k)) +
                                                                  ": unknown letter '" + t.text.substr(k, 1) + "'");
                    w.push_back(ch->second);
                }
            }
            if (w.empty()) throw Error(ErrorKind::EmptyRule, "line " + std::to_string(line_no) + ": rule for '" +
                                                                 head[1].text + "' is empty");
            slot = std::move(w);
        } else if (key == "collar-names" && head.size() == 1) {
            if (!collar_names.empty()) syntax(line_no, head[0].column, "duplicate 'collar-names' line");
            for (const Token& t : body) {
                if (std::find(collar_names.begin(), collar_names.end(), t.text) != collar_names.end())
                    syntax(line_no, t.column, "duplicate collar name '" + t.text + "'");
                collar_names.push_back(t.text);
            }
        } else {
            syntax(line_no, head.empty() ? static_cast<int>(first) + 1 : head[0].column,
                   "unknown directive '" + line.substr(first, colon - first) + "'");
        }
    }
    if (!have_letters) syntax(line_no + 1, 1, "missing 'letters' line");
    std::vector<Word> complete;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!rules[i]) throw Error(ErrorKind::EmptyRule, "no rule for letter '" + names[i] + "'");
        complete.push_back(*rules[i]);
    }
    return make_substitution(std::move(names), std::move(complete), std::move(collar_names), options);
}

}  // namespace bratteli
