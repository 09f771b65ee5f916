#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace bratteli {

using Rational = mpq_class;
using Integer = mpz_class;

// Closed rational interval [lo, hi].
struct RationalInterval {
    Rational lo;
    Rational hi;

    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    Rational width() const { return hi - lo; }
};

// Dense univariate polynomial over Q, coefficients stored lowest degree
// first. The zero polynomial has an empty coefficient vector; otherwise the
// leading coefficient is nonzero.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs);
    static QPoly from_integers(const std::vector<Integer>& coeffs);
    static QPoly monomial(const Rational& c, int degree);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(int k) const;
    const Rational& leading() const { return coeffs_.back(); }

    Rational eval(const Rational& x) const;
    RationalInterval eval(const RationalInterval& x) const;
    QPoly derivative() const;
    QPoly monic() const;

    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }

    // Human-readable form in the indeterminate `var`, e.g. "x^2 - x - 1".
    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

// Euclidean division: returns (quotient, remainder). Throws on b == 0.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly operator%(const QPoly& a, const QPoly& b);

// Monic gcd (zero only if both inputs are zero).
QPoly gcd(const QPoly& a, const QPoly& b);

// s with s*a = 1 modulo m; requires gcd(a, m) = 1.
QPoly inverse_mod(const QPoly& a, const QPoly& m);

// p / gcd(p, p'), monic.
QPoly square_free_part(const QPoly& p);

// Sturm chain of a square-free polynomial and root counting with it.
class SturmChain {
public:
    explicit SturmChain(const QPoly& p);

    int sign_variations(const Rational& x) const;
    // Number of distinct real roots in the half-open interval (lo, hi].
    int count_roots(const Rational& lo, const Rational& hi) const;

private:
    std::vector<QPoly> chain_;
};

// Integer roots of a monic integer polynomial (rational root theorem).
std::vector<Integer> integer_roots(const QPoly& monic_integer_poly);

std::string rational_to_string(const Rational& q);

}  // namespace bratteli
