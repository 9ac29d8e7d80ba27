#include "lqflab/rational.hpp"

#include <cctype>
#include <ostream>

#include "lqflab/errors.hpp"

namespace lqflab {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
    if (!is_integer_literal(s)) throw ParseError("not a rational: '" + std::string(whole) + "'");
    if (s.front() == '+') s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(long num, long den) {
    if (den == 0) throw InvalidArgument("zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw InvalidArgument("division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    const std::string_view s = trim(text);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(mpq_class(parse_integer(s, text)));
    const mpz_class num = parse_integer(trim(s.substr(0, slash)), text);
    const std::string_view den_text = trim(s.substr(slash + 1));
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
        throw ParseError("signed denominator in '" + std::string(text) + "'");
    const mpz_class den = parse_integer(den_text, text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(mpq_class(num, den));
}

Rational Rational::parse_decimal(std::string_view text) {
    std::string_view s = trim(text);
    if (s.find('/') != std::string_view::npos || is_integer_literal(s)) return parse(s);

    long exponent = 0;
    const auto epos = s.find_first_of("eE");
    if (epos != std::string_view::npos) {
        const std::string_view exp_text = s.substr(epos + 1);
        if (!is_integer_literal(exp_text) || exp_text.size() > 6)
            throw ParseError("bad exponent in '" + std::string(text) + "'");
        exponent = std::stol(std::string(exp_text));
        s = s.substr(0, epos);
    }
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string digits;
    bool seen_point = false;
    bool seen_digit = false;
    for (char c : s) {
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) --exponent;
        } else {
            throw ParseError("not a number: '" + std::string(text) + "'");
        }
    }
    if (!seen_digit) throw ParseError("not a number: '" + std::string(text) + "'");

    mpz_class num(digits, 10);
    if (negative) num = -num;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    return exponent < 0 ? Rational(mpq_class(num, scale)) : Rational(mpq_class(num * scale));
}

std::string Rational::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

RationalVector parse_rational_list(std::string_view csv, bool allow_decimal) {
    RationalVector out;
    if (trim(csv).empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = csv.find(',', start);
        const auto item = csv.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(allow_decimal ? Rational::parse_decimal(item) : Rational::parse(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string format_rational_list(std::span<const Rational> values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += values[i].str();
    }
    return out;
}

}  // namespace lqflab
