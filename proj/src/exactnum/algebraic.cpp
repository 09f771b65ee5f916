#include "bratteli/error.hpp"
#include "bratteli/exactnum.hpp"

#include <cctype>
#include <sstream>

namespace bratteli {

namespace {

std::vector<Rational> reduce(const FieldPtr& field, std::vector<Rational> coeffs) {
    QPoly p(std::move(coeffs));
    if (p.degree() >= field->reducer().degree()) p = p % field->reducer();
    return p.coeffs();
}

}  // namespace

AlgebraicNumber::AlgebraicNumber(FieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(reduce(field_, std::move(coeffs))) {}

AlgebraicNumber::AlgebraicNumber(FieldPtr field, const Rational& value)
    : AlgebraicNumber(std::move(field), std::vector<Rational>{value}) {}

AlgebraicNumber AlgebraicNumber::lambda_pow(const FieldPtr& field, int k) {
    if (k < 0) throw Error(ErrorKind::DivisionByZero, "negative power; use inverse()");
    AlgebraicNumber result = one(field);
    const AlgebraicNumber lambda(field, std::vector<Rational>{Rational(0), Rational(1)});
    AlgebraicNumber base = lambda;
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1) result = result * base;
        if (e > 1) base = base * base;
    }
    return result;
}

void require_same_field(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (!a.field()->same_as(*b.field()))
        throw Error(ErrorKind::FieldMismatch, "operands live in different fields (" + a.field()->modulus().to_string() +
                                                  " vs " + b.field()->modulus().to_string() + ")");
}

AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    require_same_field(a, b);
    return AlgebraicNumber(a.field_, (a.poly() + b.poly()).coeffs());
}

AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    require_same_field(a, b);
    return AlgebraicNumber(a.field_, (a.poly() - b.poly()).coeffs());
}

AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    require_same_field(a, b);
    return AlgebraicNumber(a.field_, (a.poly() * b.poly()).coeffs());
}

AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b) { return a * b.inverse(); }

AlgebraicNumber operator-(const AlgebraicNumber& a) {
    std::vector<Rational> n(a.coeffs_);
    for (auto& c : n) c = -c;
    return AlgebraicNumber(a.field_, std::move(n));
}

AlgebraicNumber AlgebraicNumber::scale(const Rational& q) const {
    std::vector<Rational> n(coeffs_);
    for (auto& c : n) c *= q;
    return AlgebraicNumber(field_, std::move(n));
}

AlgebraicNumber AlgebraicNumber::inverse() const {
    if (sign() == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    // The reducer may be reducible; drop the factors shared with this element
    // (none of them vanishes at lambda) and invert modulo the cofactor.
    const QPoly& r = field_->reducer();
    const QPoly g = gcd(poly(), r);
    const QPoly cofactor = divmod(r, g).first;
    return AlgebraicNumber(field_, inverse_mod(poly() % cofactor, cofactor).coeffs());
}

RationalInterval AlgebraicNumber::eval(const ModulusField::Enclosure& enc) const {
    const QPoly p = poly();
    if (enc.exact) {
        const Rational v = p.eval(enc.lo);
        return {v, v};
    }
    return p.eval(RationalInterval{enc.lo, enc.hi});
}

int AlgebraicNumber::sign() const {
    if (coeffs_.empty()) return 0;
    ModulusField::Enclosure enc = field_->fine_enclosure();
    RationalInterval v = eval(enc);
    if (!v.contains_zero() || enc.exact) return sgn(v.lo) != 0 ? sgn(v.lo) : sgn(v.hi);

    // Exact zero test: the value vanishes iff gcd(coeffs, modulus) has a root
    // in the isolating interval.
    const QPoly g = gcd(poly(), field_->modulus());
    if (g.degree() >= 1 && field_->roots_in_interval(g) >= 1) return 0;

    // Nonzero: refinement terminates.
    while (v.contains_zero()) {
        field_->bisect(enc);
        v = eval(enc);
        if (enc.exact) break;
    }
    return sgn(v.lo) != 0 ? sgn(v.lo) : sgn(v.hi);
}

RationalInterval AlgebraicNumber::enclose(const Rational& width) const {
    ModulusField::Enclosure enc = field_->fine_enclosure();
    RationalInterval v = eval(enc);
    while (!enc.exact && v.width() >= width) {
        field_->bisect(enc);
        v = eval(enc);
    }
    return v;
}

int compare(const AlgebraicNumber& a, const AlgebraicNumber& b) { return (a - b).sign(); }

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) == 0; }

bool operator<(const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) < 0; }

bool AlgebraicNumber::same_representation(const AlgebraicNumber& other) const {
    return field_->same_as(*other.field_) && coeffs_ == other.coeffs_;
}

std::string AlgebraicNumber::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const Rational& c = coeffs_[k];
        if (sgn(c) == 0) continue;
        const Rational mag = abs(c);
        if (first)
            out << (sgn(c) < 0 ? "-" : "");
        else
            out << (sgn(c) < 0 ? " - " : " + ");
        first = false;
        if (k == 0) {
            out << rational_to_string(mag);
            continue;
        }
        if (mag != 1) out << rational_to_string(mag) << "*";
        out << "L";
        if (k > 1) out << "^" << k;
    }
    return out.str();
}

std::string AlgebraicNumber::to_decimal(int digits) const {
    const int s = sign();
    mpz_class scale_factor;
    mpz_ui_pow_ui(scale_factor.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class k = 0;
    if (s != 0) {
        const AlgebraicNumber scaled = scale(Rational(scale_factor) * s);
        const RationalInterval v = scaled.enclose(Rational(1, 2));
        // floor(hi) is the only integer candidate that could lie inside v.
        mpz_class g;
        mpz_fdiv_q(g.get_mpz_t(), v.hi.get_num_mpz_t(), v.hi.get_den_mpz_t());
        if (Rational(g) < v.lo) {
            k = g;
        } else {
            const int d = (scaled - AlgebraicNumber(field_, Rational(g))).sign();
            k = d >= 0 ? g : mpz_class(g - 1);
        }
    }
    std::string int_part = mpz_class(k / scale_factor).get_str();
    std::string frac = mpz_class(k % scale_factor).get_str();
    if (static_cast<int>(frac.size()) < digits) frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    std::string out = (s < 0 ? "-" : "") + int_part;
    if (digits > 0) out += "." + frac;
    return out;
}

namespace {

class TermParser {
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    std::vector<Rational> parse() {
        std::vector<Rational> coeffs;
        skip_ws();
        bool first = true;
        while (pos_ < text_.size()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            auto [c, degree] = term();
            if (coeffs.size() <= static_cast<std::size_t>(degree)) coeffs.resize(static_cast<std::size_t>(degree) + 1);
            coeffs[static_cast<std::size_t>(degree)] += c * sign;
            skip_ws();
        }
        if (first) fail("empty value");
        return coeffs;
    }

private:
    std::pair<Rational, int> term() {
        Rational c = 1;
        bool has_number = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            c = number();
            has_number = true;
            skip_ws();
            if (peek() != '*') return {c, 0};
            ++pos_;
            skip_ws();
        }
        if (peek() != 'L') fail(has_number ? "expected 'L' after '*'" : "expected a number or 'L'");
        ++pos_;
        int degree = 1;
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            degree = static_cast<int>(integer().get_si());
        }
        return {c, degree};
    }

    Rational number() {
        mpz_class num = integer();
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            mpz_class den = integer();
            if (den == 0) fail("zero denominator");
            Rational q(num, den);
            q.canonicalize();
            return q;
        }
        return Rational(num);
    }

    mpz_class integer() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::BadFormat,
                    "cannot parse '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

AlgebraicNumber AlgebraicNumber::parse(const FieldPtr& field, std::string_view text) {
    return AlgebraicNumber(field, TermParser(text).parse());
}

}  // namespace bratteli
