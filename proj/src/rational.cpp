#include "screenlab/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace screenlab {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

Integer pow10(unsigned long k) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
    return r;
}

std::string decimal_from_scaled(const Integer& scaled, unsigned long places) {
    Integer mag = abs(scaled);
    std::string digits = mag.get_str();
    if (places > 0) {
        if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
        digits.insert(digits.size() - places, ".");
    }
    return (sgn(scaled) < 0 ? "-" : "") + digits;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
    std::string text;
    for (char ch : raw) {
        if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
    }
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    bool negative = false;
    std::string body = text;
    if (body[0] == '-' || body[0] == '+') {
        negative = body[0] == '-';
        body = body.substr(1);
    }
    Rational value;
    auto slash = body.find('/');
    auto dot = body.find('.');
    if (slash != std::string::npos) {
        std::string num = body.substr(0, slash);
        std::string den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw std::invalid_argument("malformed fraction literal: " + raw);
        Integer d(den, 10);
        if (d == 0) throw std::invalid_argument("zero denominator in literal: " + raw);
        value = Rational(Integer(num, 10), d);
    } else if (dot != std::string::npos) {
        std::string whole = body.substr(0, dot);
        std::string frac = body.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
            throw std::invalid_argument("malformed decimal literal: " + raw);
        Integer scaled(whole + frac, 10);
        value = Rational(scaled, pow10(frac.size()));
    } else {
        if (!all_digits(body)) throw std::invalid_argument("malformed integer literal: " + raw);
        value = Rational(Integer(body, 10));
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

Integer ceil_of(const Rational& x) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Integer floor_of(const Rational& x) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

std::string to_fraction(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::optional<std::string> to_exact_decimal(const Rational& x) {
    Integer den = x.get_den();
    unsigned long twos = 0;
    unsigned long fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
        den /= 2;
        ++twos;
    }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
        den /= 5;
        ++fives;
    }
    if (den != 1) return std::nullopt;
    unsigned long places = std::max(twos, fives);
    Rational scaled = x * Rational(pow10(places));
    return decimal_from_scaled(scaled.get_num(), places);
}

std::string to_decimal(const Rational& x, int digits) {
    if (auto exact = to_exact_decimal(x)) return *exact;
    Rational scaled = abs(x) * Rational(pow10(static_cast<unsigned long>(digits)));
    Integer rounded = floor_of(scaled + Rational(1, 2));
    if (sgn(x) < 0) rounded = -rounded;
    return "~" + decimal_from_scaled(rounded, static_cast<unsigned long>(digits));
}

long to_long(const Integer& x) {
    if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in long: " + x.get_str());
    return x.get_si();
}

Rational ratio(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational x(num, den);
    x.canonicalize();
    return x;
}

}  // namespace screenlab
