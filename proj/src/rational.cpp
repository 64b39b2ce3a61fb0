#include "homoscope/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace homoscope {

namespace {

// Decimal-only integer parse; BigInt's string constructor would honor
// octal/hex prefixes, which model files must not.
BigInt parse_decimal_int(const std::string& text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
    if (i == text.size()) throw std::invalid_argument("malformed integer: " + text);
    BigInt value = 0;
    for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9')
            throw std::invalid_argument("malformed integer: " + text);
        value = value * 10 + (text[i] - '0');
    }
    return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_decimal_int(text.substr(0, slash));
        BigInt den = parse_decimal_int(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::size_t frac_len = text.size() - dot - 1;
        BigInt num = parse_decimal_int(digits);
        BigInt den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rational(num, den);
    }
    return Rational(parse_decimal_int(text));
}

std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

double log2_bigint(const BigInt& n) {
    // n > 0. Take the top 64 bits so huge values stay finite.
    unsigned bits = static_cast<unsigned>(msb(n)) + 1;
    if (bits <= 63) return std::log2(n.convert_to<double>());
    unsigned shift = bits - 63;
    BigInt top = n >> shift;
    return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

}  // namespace

double log2_rational(const Rational& r) {
    if (r <= 0) throw std::domain_error("log2 of non-positive rational");
    return log2_bigint(numerator(r)) - log2_bigint(denominator(r));
}

double to_double(const Rational& r) {
    if (r == 0) return 0.0;
    double sign = r < 0 ? -1.0 : 1.0;
    Rational a = r < 0 ? Rational(-r) : r;
    double l = log2_rational(a);
    if (l > 1000 || l < -1000) return sign * std::exp2(l);
    return sign * a.convert_to<double>();
}

Rational rational_pow(const Rational& r, std::uint64_t e) {
    Rational result = 1, base = r;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

}  // namespace homoscope
