#include "bratteli/poly.hpp"

#include "bratteli/error.hpp"

#include <algorithm>
#include <sstream>

namespace bratteli {

QPoly::QPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c.canonicalize();
    trim();
}

QPoly QPoly::from_integers(const std::vector<Integer>& coeffs) {
    std::vector<Rational> q;
    q.reserve(coeffs.size());
    for (const auto& c : coeffs) q.emplace_back(c);
    return QPoly(std::move(q));
}

QPoly QPoly::monomial(const Rational& c, int degree) {
    std::vector<Rational> q(static_cast<std::size_t>(degree) + 1);
    q.back() = c;
    return QPoly(std::move(q));
}

void QPoly::trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational QPoly::coeff(int k) const {
    if (k < 0 || k > degree()) return Rational(0);
    return coeffs_[static_cast<std::size_t>(k)];
}

Rational QPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

namespace {

RationalInterval interval_mul(const RationalInterval& a, const RationalInterval& b) {
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

}  // namespace

RationalInterval QPoly::eval(const RationalInterval& x) const {
    RationalInterval acc{0, 0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = interval_mul(acc, x);
        acc.lo += *it;
        acc.hi += *it;
    }
    return acc;
}

QPoly QPoly::derivative() const {
    if (coeffs_.size() <= 1) return QPoly();
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
    return QPoly(std::move(d));
}

QPoly QPoly::monic() const {
    if (is_zero()) return *this;
    std::vector<Rational> m(coeffs_);
    const Rational lead = leading();
    for (auto& c : m) c /= lead;
    return QPoly(std::move(m));
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rational> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
    return QPoly(std::move(r));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
    std::vector<Rational> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] -= b.coeffs_[i];
    return QPoly(std::move(r));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (sgn(a.coeffs_[i]) == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return QPoly(std::move(r));
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (a.degree() < b.degree()) return {QPoly(), a};
    std::vector<Rational> rem(a.coeffs());
    std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
    const int db = b.degree();
    const Rational& lead = b.leading();
    for (int k = a.degree(); k >= db; --k) {
        const Rational c = rem[static_cast<std::size_t>(k)] / lead;
        if (sgn(c) == 0) continue;
        quo[static_cast<std::size_t>(k - db)] = c;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(db));
    return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a;
    QPoly y = b;
    while (!y.is_zero()) {
        QPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

QPoly inverse_mod(const QPoly& a, const QPoly& m) {
    // Extended Euclid on (m, a), tracking only the coefficient of a.
    QPoly r0 = m, r1 = a % m;
    QPoly t0, t1 = QPoly({Rational(1)});
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        QPoly t = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    if (r0.degree() != 0) throw Error(ErrorKind::DivisionByZero, "element is not invertible modulo " + m.to_string());
    std::vector<Rational> s(t0.coeffs());
    for (auto& c : s) c /= r0.leading();
    return QPoly(std::move(s)) % m;
}

QPoly square_free_part(const QPoly& p) {
    if (p.degree() <= 0) return p.monic();
    const QPoly g = gcd(p, p.derivative());
    return divmod(p, g).first.monic();
}

SturmChain::SturmChain(const QPoly& p) {
    chain_.push_back(p);
    chain_.push_back(p.derivative());
    while (!chain_.back().is_zero()) {
        QPoly r = chain_[chain_.size() - 2] % chain_.back();
        std::vector<Rational> neg(r.coeffs());
        for (auto& c : neg) c = -c;
        chain_.emplace_back(std::move(neg));
    }
    chain_.pop_back();
}

int SturmChain::sign_variations(const Rational& x) const {
    int variations = 0;
    int last = 0;
    for (const auto& q : chain_) {
        const int s = sgn(q.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

int SturmChain::count_roots(const Rational& lo, const Rational& hi) const {
    return sign_variations(lo) - sign_variations(hi);
}

std::vector<Integer> integer_roots(const QPoly& p) {
    std::vector<Integer> roots;
    if (p.is_zero()) return roots;
    int low = 0;
    while (sgn(p.coeff(low)) == 0) ++low;
    if (low > 0) roots.emplace_back(0);
    Integer a0 = abs(p.coeff(low).get_num());
    // Candidate roots are the divisors of the lowest nonzero coefficient.
    for (Integer d = 1; d * d <= a0; ++d) {
        if (a0 % d != 0) continue;
        for (const Integer& c : {Integer(d), Integer(a0 / d)}) {
            for (const Integer& cand : {c, Integer(-c)}) {
                if (sgn(p.eval(Rational(cand))) == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::string rational_to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

std::string QPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[static_cast<std::size_t>(k)];
        if (sgn(c) == 0) continue;
        Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) out << "-";
        } else {
            out << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0 || mag != 1) out << rational_to_string(mag);
        if (k > 0) {
            if (mag != 1) out << "*";
            out << var;
            if (k > 1) out << "^" << k;
        }
    }
    return out.str();
}

}  // namespace bratteli
