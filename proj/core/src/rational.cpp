#include "seqlimit/rational.hpp"

#include <cctype>
#include <cmath>

#include "seqlimit/error.hpp"

namespace seqlimit {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational parse_decimal(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = s.substr(e + 1);
        bool exp_negative = false;
        if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
            exp_negative = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        if (!all_digits(exp_part) || exp_part.size() > 6)
            throw DomainError("malformed number: '" + std::string(text) + "'");
        exponent = std::stol(std::string(exp_part));
        if (exp_negative) exponent = -exponent;
        s = s.substr(0, e);
    }
    std::string digits;
    auto dot = s.find('.');
    if (dot == std::string_view::npos) {
        digits = std::string(s);
    } else {
        digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
        exponent -= static_cast<long>(s.size() - dot - 1);
    }
    if (!all_digits(digits)) throw DomainError("malformed number: '" + std::string(text) + "'");

    BigInt num(digits, 10);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational q;
    if (exponent >= 0)
        q = Rational(num * scale);
    else
        q = Rational(num, scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw DomainError("empty rational literal");

    auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_decimal(text);

    std::string_view num_part = text.substr(0, slash);
    std::string_view den_part = text.substr(slash + 1);
    bool negative = false;
    if (!num_part.empty() && (num_part.front() == '-' || num_part.front() == '+')) {
        negative = num_part.front() == '-';
        num_part.remove_prefix(1);
    }
    if (!all_digits(num_part) || !all_digits(den_part))
        throw DomainError("malformed rational: '" + std::string(text) + "'");
    BigInt den(std::string(den_part), 10);
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    Rational q(BigInt(std::string(num_part), 10), den);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str(10);
}

std::string to_string(const BigInt& z) { return z.get_str(10); }

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("cannot convert a non-finite double to a rational");
    Rational q(x);
    q.canonicalize();
    return q;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    BigInt r;
    if (k > n) return BigInt(0);
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

BigInt factorial(std::uint64_t n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Rational pow(const Rational& q, unsigned e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
    r.canonicalize();
    return r;
}

BigInt floor(const Rational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

}  // namespace seqlimit
