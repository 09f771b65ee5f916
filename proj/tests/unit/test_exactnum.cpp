#include "bratteli/error.hpp"
#include "bratteli/exactnum.hpp"

#include "doctest.h"

#include <cmath>
#include <random>
#include <string>

using namespace bratteli;

namespace {

FieldPtr fib() { return ModulusField::from_charpoly({-1, -1, 1}); }

AlgebraicNumber num(const FieldPtr& f, const char* text) { return AlgebraicNumber::parse(f, text); }

// Independent decimal oracle: phi via Newton on doubles is enough at 6 places.
double phi_double() { return (1.0 + std::sqrt(5.0)) / 2.0; }

}  // namespace

TEST_CASE("field construction isolates the Perron root") {
    auto f = fib();
    CHECK(f->modulus().to_string() == "x^2 - x - 1");
    CHECK(f->perron_interval().lo >= 1);
    CHECK(f->perron_interval().hi <= 2);
    CHECK(f->roots_in_interval(f->modulus()) == 1);

    auto tm = ModulusField::from_charpoly({2, -3, 1});
    CHECK(tm->fine_enclosure().exact);
    CHECK(tm->fine_enclosure().lo == 2);
    CHECK(AlgebraicNumber::lambda_pow(tm, 3).to_string() == "8");

    auto q = ModulusField::from_charpoly({-2, 1});
    CHECK(q->perron_interval().lo == 1);
    CHECK(q->perron_interval().hi == 3);

    CHECK_THROWS_AS(ModulusField::from_charpoly({1, 1}), Error);
    CHECK_THROWS_AS(ModulusField::from_charpoly({-1, 0, 1}), Error);
}

TEST_CASE("collared Thue-Morse charpoly keeps lambda = 2") {
    // x (x - 2) (x - 1) (x + 1)^3, lowest degree first.
    auto f = ModulusField::from_charpoly({0, 2, 3, -2, -4, 0, 1});
    CHECK(f->fine_enclosure().exact);
    CHECK(f->fine_enclosure().lo == 2);
    auto half_l = AlgebraicNumber::lambda_pow(f, 1).scale(Rational(1, 2));
    CHECK(half_l.to_string() == "1");
}

TEST_CASE("field identities") {
    auto f = fib();
    auto phi = AlgebraicNumber::lambda_pow(f, 1);
    CHECK((phi * phi).to_string() == "1 + L");
    CHECK((AlgebraicNumber::lambda_pow(f, 2) - (phi + AlgebraicNumber::one(f))).sign() == 0);
    CHECK(phi.scale(Rational(1, 2)).to_decimal(6) == "0.809016");
    CHECK(num(f, "-1/2 + 1/2*L").sign() == 1);
    CHECK((AlgebraicNumber::lambda_pow(f, 3) - AlgebraicNumber(f, Rational(4))).sign() == 1);
    CHECK(compare(phi, AlgebraicNumber::one(f)) == 1);
    CHECK(phi.inverse() == num(f, "-1/2 + 1/2*L").scale(2));
    CHECK(phi.to_decimal(6) == "1.618033");
    CHECK((-phi).to_decimal(3) == "-1.618");
}

TEST_CASE("text round trip and parse errors") {
    auto f = fib();
    for (const char* s : {"0", "1/2 + 1/2*L", "-3", "-L", "2/3 - 5*L", "L"}) CHECK(num(f, s).to_string() == s);
    CHECK(num(f, "L^2").to_string() == "1 + L");
    CHECK_THROWS_AS(num(f, "1 +"), Error);
    CHECK_THROWS_AS(num(f, "x"), Error);
    CHECK_THROWS_AS(num(f, ""), Error);
}

TEST_CASE("field mismatch and division by zero") {
    auto a = AlgebraicNumber::one(fib());
    auto b = AlgebraicNumber::one(ModulusField::from_charpoly({-2, 1}));
    CHECK_THROWS_AS(a + b, Error);
    CHECK_THROWS_AS(AlgebraicNumber::zero(fib()).inverse(), Error);
}

TEST_CASE("zero test on a reducible modulus") {
    // (x - 3)(x^2 - x - 1) has Perron root 3; phi-polynomials vanish elsewhere only.
    auto f = ModulusField::from_charpoly({3, 2, -4, 1});
    auto x = AlgebraicNumber::lambda_pow(f, 1);
    CHECK(x.to_string() == "3");
    // (x^2 - x - 1)(x^2 - x - 3): lambda = (1 + sqrt 13)/2, so y^2 - y - 3 vanishes
    // while y^2 - y - 1 = 2 does not, although both divide the modulus.
    auto g = ModulusField::from_charpoly({3, 4, -3, -2, 1});
    auto y = AlgebraicNumber::lambda_pow(g, 1);
    auto one = AlgebraicNumber::one(g);
    CHECK((y * y - y - one.scale(3)).sign() == 0);
    CHECK((y * y - y - one) == one.scale(2));
    CHECK((y * y - y - one).inverse() == one.scale(Rational(1, 2)));
}

TEST_CASE("ring axioms and sign properties on random samples") {
    auto f = fib();
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> coef(-9, 9), den(1, 5);
    auto random_num = [&] {
        return AlgebraicNumber(f, std::vector<Rational>{Rational(coef(rng), den(rng)), Rational(coef(rng), den(rng))});
    };
    const double phi = phi_double();
    for (int i = 0; i < 200; ++i) {
        auto a = random_num(), b = random_num(), c = random_num();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        if (!a.is_zero() && !b.is_zero()) {
            CHECK(a.sign() * b.sign() == (a * b).sign());
            CHECK(a / a == AlgebraicNumber::one(f));
        }
        auto z = a - a;
        CHECK((z + b).sign() == b.sign());
        // Decimals agree with compare.
        if (compare(a, b) < 0) CHECK(std::stod(a.to_decimal(8)) <= std::stod(b.to_decimal(8)));
        // Double-precision cross-check of the sign (skip values too close to 0).
        const double v = a.coeffs().empty() ? 0.0
                                            : a.coeffs()[0].get_d() + (a.coeffs().size() > 1 ? a.coeffs()[1].get_d() : 0) * phi;
        if (std::abs(v) > 1e-9) CHECK(a.sign() == (v > 0 ? 1 : -1));
    }
}
