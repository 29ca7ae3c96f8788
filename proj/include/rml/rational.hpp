#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

#include "rml/error.hpp"

namespace rml {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Canonical `p/q` text form; integers print without a denominator.
inline std::string to_string(const Rational& q)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Accepts `p`, `p/q` and plain decimals such as `0.125` (converted exactly).
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty()) throw InputError("empty rational");
    try {
        if (auto dot = s.find('.'); dot != std::string::npos) {
            if (s.find('/') != std::string::npos) throw InputError("bad rational: " + s);
            bool negative = s[0] == '-';
            std::string body = negative ? s.substr(1) : s;
            dot = body.find('.');
            std::string digits = body.substr(0, dot) + body.substr(dot + 1);
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                throw InputError("bad rational: " + s);
            Integer num(digits);
            Integer den = 1;
            for (std::size_t i = dot + 1; i < body.size(); ++i) den *= 10;
            Rational q(num, den);
            return negative ? Rational(-q) : q;
        }
        if (s.find_first_not_of("0123456789-/") != std::string::npos)
            throw InputError("bad rational: " + s);
        Rational q(s);
        return q;
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        throw InputError("bad rational: " + s);
    }
}

}  // namespace rml
