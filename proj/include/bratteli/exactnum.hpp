#pragma once

#include "bratteli/poly.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace bratteli {

class ModulusField;
using FieldPtr = std::shared_ptr<const ModulusField>;

// Q[x]/(modulus) evaluated at the Perron root lambda of the modulus.
//
// The modulus is the square-free part of a characteristic polynomial; it need
// not be irreducible, so equality of values is decided at lambda (gcd with the
// modulus plus a Sturm count on the isolating interval), never by comparing
// coefficient vectors. Values are stored reduced modulo `reducer()`, the
// modulus with its integer roots other than lambda divided out; this keeps the
// printed form of rational values (e.g. every Thue-Morse label) rational.
class ModulusField {
public:
    // Field for the largest real root of `charpoly` (integer coefficients,
    // lowest degree first). Throws NoRootAboveOne if there is no root > 1.
    static FieldPtr from_charpoly(const std::vector<Integer>& charpoly);
    // Rebuild a field from a previously exported modulus and isolating
    // interval; validates that (lo, hi) isolates a single root > 1.
    static FieldPtr from_modulus(const QPoly& modulus, const Rational& lo, const Rational& hi);

    const QPoly& modulus() const { return modulus_; }
    const QPoly& reducer() const { return reducer_; }
    const RationalInterval& perron_interval() const { return isolating_; }
    int degree() const { return modulus_.degree(); }

    // Number of roots of `p` inside the open isolating interval.
    int roots_in_interval(const QPoly& p) const;

    // A nested enclosure of lambda used for interval evaluation. `exact` means
    // lo == hi == lambda (lambda is rational).
    struct Enclosure {
        Rational lo;
        Rational hi;
        bool exact = false;
    };
    const Enclosure& fine_enclosure() const { return fine_; }
    // Halves the enclosure (keeps lambda inside). No-op once exact.
    void bisect(Enclosure& enc) const;

    bool same_as(const ModulusField& other) const;

private:
    ModulusField(QPoly modulus, RationalInterval isolating);

    QPoly modulus_;
    QPoly reducer_;
    RationalInterval isolating_;
    Enclosure fine_;
};

class AlgebraicNumber {
public:
    AlgebraicNumber(FieldPtr field, std::vector<Rational> coeffs);
    AlgebraicNumber(FieldPtr field, const Rational& value);

    static AlgebraicNumber zero(const FieldPtr& field) { return AlgebraicNumber(field, Rational(0)); }
    static AlgebraicNumber one(const FieldPtr& field) { return AlgebraicNumber(field, Rational(1)); }
    static AlgebraicNumber lambda_pow(const FieldPtr& field, int k);
    // Inverse of to_string(). Throws BadFormat.
    static AlgebraicNumber parse(const FieldPtr& field, std::string_view text);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    int sign() const;
    bool is_zero() const { return sign() == 0; }
    AlgebraicNumber inverse() const;
    AlgebraicNumber scale(const Rational& q) const;
    // Enclosure of the value with width below `width`.
    RationalInterval enclose(const Rational& width) const;

    // L-polynomial text, lowest degree first, e.g. "1/2 + 1/2*L".
    std::string to_string() const;
    // Truncation toward zero to `digits` places, certified by refinement.
    std::string to_decimal(int digits) const;

    friend AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator-(const AlgebraicNumber& a);
    AlgebraicNumber& operator+=(const AlgebraicNumber& b) { return *this = *this + b; }
    AlgebraicNumber& operator-=(const AlgebraicNumber& b) { return *this = *this - b; }
    AlgebraicNumber& operator*=(const AlgebraicNumber& b) { return *this = *this * b; }

    // Value comparisons at lambda.
    friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend bool operator<(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend bool operator>(const AlgebraicNumber& a, const AlgebraicNumber& b) { return b < a; }
    friend bool operator<=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return !(b < a); }
    friend bool operator>=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return !(a < b); }

    // True when both numbers carry the same stored representation (not just
    // the same value); used by serialization round-trip checks.
    bool same_representation(const AlgebraicNumber& other) const;

private:
    QPoly poly() const { return QPoly(coeffs_); }
    RationalInterval eval(const ModulusField::Enclosure& enc) const;

    FieldPtr field_;
    std::vector<Rational> coeffs_;
};

// -1, 0 or +1 according to a - b.
int compare(const AlgebraicNumber& a, const AlgebraicNumber& b);

// Throws FieldMismatch unless a and b live in the same field.
void require_same_field(const AlgebraicNumber& a, const AlgebraicNumber& b);

}  // namespace bratteli
