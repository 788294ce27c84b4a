#include "vchain/rational.hpp"

#include <cctype>

namespace vchain {

namespace {

using boost::multiprecision::cpp_int;

cpp_int pow10(int n) {
    cpp_int r = 1;
    for (int i = 0; i < n; ++i) r *= 10;
    return r;
}

std::string strip_zeros(std::string digits_int, std::string frac) {
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    return frac.empty() ? digits_int : digits_int + "." + frac;
}

std::string fixed_text(const cpp_int& scaled_abs, int places) {
    std::string s = scaled_abs.str();
    if (places == 0) return s;
    if (static_cast<int>(s.size()) <= places) s.insert(0, places + 1 - s.size(), '0');
    return strip_zeros(s.substr(0, s.size() - places), s.substr(s.size() - places));
}

} // namespace

std::string format_decimal(const Rational& value, int places) {
    cpp_int num = boost::multiprecision::numerator(value);
    const cpp_int den = boost::multiprecision::denominator(value);
    const bool negative = num < 0;
    if (negative) num = -num;

    num *= pow10(places);
    cpp_int q = num / den;
    const cpp_int twice_rem = (num % den) * 2;
    if (twice_rem > den || (twice_rem == den && (q % 2) != 0)) ++q;

    if (q == 0) return "0";
    return (negative ? "-" : "") + fixed_text(q, places);
}

std::string format_exact(const Rational& value) {
    const cpp_int num = boost::multiprecision::numerator(value);
    cpp_int den = boost::multiprecision::denominator(value);
    int twos = 0;
    int fives = 0;
    while (den % 2 == 0) { den /= 2; ++twos; }
    while (den % 5 == 0) { den /= 5; ++fives; }
    if (den != 1) return num.str() + "/" + boost::multiprecision::denominator(value).str();

    const int places = std::max(twos, fives);
    const cpp_int scaled = num * pow10(places) / boost::multiprecision::denominator(value);
    const bool negative = scaled < 0;
    return (negative ? "-" : "") + fixed_text(negative ? cpp_int(-scaled) : scaled, places);
}

namespace {

// cpp_int reads a leading 0 as an octal prefix
cpp_int decimal_int(std::string_view digits) {
    const auto first = digits.find_first_not_of('0');
    if (first == std::string_view::npos) return 0;
    return cpp_int(std::string(digits.substr(first)));
}

} // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    auto all_digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        const cpp_int d = decimal_int(den);
        if (d == 0) return std::nullopt;
        return Rational(decimal_int(num), d);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto whole = text.substr(0, dot);
        const auto frac = text.substr(dot + 1);
        if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
        const cpp_int n = decimal_int(std::string(whole) + std::string(frac));
        return Rational(n, pow10(static_cast<int>(frac.size())));
    }
    if (!all_digits(text)) return std::nullopt;
    return Rational(decimal_int(text));
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

} // namespace vchain
