#include "bratteli/error.hpp"
#include "bratteli/exactnum.hpp"

namespace bratteli {

namespace {

const Rational& fine_width() {
    static const Rational w(mpz_class(1), mpz_class(1) << 64);
    return w;
}

// A point of (lo, hi) that is not a root of `p`. Roots are finite, so one of
// the dyadic probes succeeds.
Rational non_root_midpoint(const QPoly& p, const Rational& lo, const Rational& hi) {
    Rational num = 1, den = 2;
    for (;;) {
        Rational mid = lo + (hi - lo) * num / den;
        if (sgn(p.eval(mid)) != 0) return mid;
        num = num * 2 + 1;
        den *= 4;
    }
}

// Every root of the monic polynomial p is strictly below this bound.
Rational cauchy_bound(const QPoly& p) {
    Rational bound = 0;
    for (int k = 0; k < p.degree(); ++k) bound = std::max(bound, Rational(abs(p.coeff(k))));
    return bound + 1;
}

}  // namespace

ModulusField::ModulusField(QPoly modulus, RationalInterval isolating)
    : modulus_(std::move(modulus)), isolating_(std::move(isolating)) {
    // Integer roots other than lambda are divided out of the reducer; an
    // integer root inside the isolating interval is lambda itself.
    reducer_ = modulus_;
    for (const Integer& r : integer_roots(modulus_)) {
        const Rational root(r);
        if (root > isolating_.lo && root < isolating_.hi) {
            reducer_ = QPoly({-root, Rational(1)});
            fine_ = {root, root, true};
            return;
        }
        reducer_ = divmod(reducer_, QPoly({-root, Rational(1)})).first;
    }

    const SturmChain sturm(modulus_);
    Enclosure enc{isolating_.lo, isolating_.hi, false};
    while (!enc.exact && (enc.hi - enc.lo >= fine_width() || sgn(modulus_.eval(enc.lo)) == 0)) {
        Rational mid = (enc.lo + enc.hi) / 2;
        if (sgn(modulus_.eval(mid)) == 0) {
            enc = {mid, mid, true};
            break;
        }
        if (sturm.count_roots(mid, enc.hi) >= 1)
            enc.lo = mid;
        else
            enc.hi = mid;
    }
    fine_ = enc;
}

FieldPtr ModulusField::from_charpoly(const std::vector<Integer>& charpoly) {
    QPoly p = QPoly::from_integers(charpoly);
    if (p.degree() < 1) throw Error(ErrorKind::NoRootAboveOne, "constant characteristic polynomial");
    p = square_free_part(p);

    const SturmChain sturm(p);
    Rational lo = 1, hi = cauchy_bound(p);
    int count = sturm.count_roots(lo, hi);
    if (count == 0) throw Error(ErrorKind::NoRootAboveOne, "no real root of " + p.to_string() + " exceeds 1");
    while (count > 1) {
        const Rational mid = non_root_midpoint(p, lo, hi);
        const int upper = sturm.count_roots(mid, hi);
        if (upper >= 1) {
            lo = mid;
            count = upper;
        } else {
            hi = mid;
            count = sturm.count_roots(lo, hi);
        }
    }
    return FieldPtr(new ModulusField(std::move(p), RationalInterval{lo, hi}));
}

FieldPtr ModulusField::from_modulus(const QPoly& modulus, const Rational& lo, const Rational& hi) {
    if (modulus.degree() < 1 || modulus.leading() != 1)
        throw Error(ErrorKind::BadFormat, "modulus must be monic of positive degree");
    if (square_free_part(modulus).degree() != modulus.degree())
        throw Error(ErrorKind::BadFormat, "modulus is not square-free");
    if (!(lo >= 1 && lo < hi)) throw Error(ErrorKind::BadFormat, "interval must satisfy 1 <= lo < hi");
    if (sgn(modulus.eval(hi)) == 0) throw Error(ErrorKind::BadFormat, "interval endpoint is a root");
    const SturmChain sturm(modulus);
    if (sturm.count_roots(lo, hi) != 1) throw Error(ErrorKind::BadFormat, "interval does not isolate one root");
    if (sturm.count_roots(hi, std::max(hi, cauchy_bound(modulus))) != 0)
        throw Error(ErrorKind::BadFormat, "isolated root is not the largest real root");
    return FieldPtr(new ModulusField(modulus, RationalInterval{lo, hi}));
}

int ModulusField::roots_in_interval(const QPoly& p) const {
    if (p.degree() < 1) return 0;
    return SturmChain(p).count_roots(isolating_.lo, isolating_.hi);
}

void ModulusField::bisect(Enclosure& enc) const {
    if (enc.exact) return;
    const Rational mid = (enc.lo + enc.hi) / 2;
    const int s = sgn(modulus_.eval(mid));
    if (s == 0) {
        enc = {mid, mid, true};
        return;
    }
    if (s == sgn(modulus_.eval(enc.lo)))
        enc.lo = mid;
    else
        enc.hi = mid;
}

bool ModulusField::same_as(const ModulusField& other) const {
    return this == &other || (modulus_ == other.modulus_ && isolating_.lo == other.isolating_.lo &&
                              isolating_.hi == other.isolating_.hi);
}

}  // namespace bratteli
