#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stoch2c {

// All densities and probabilities on the exact path are rationals kept in
// lowest terms; comparisons are exact.  Floating point appears only in the
// Monte Carlo / reporting layer.
using BigInt = boost::multiprecision::cpp_int;
using Ratio = boost::multiprecision::cpp_rational;

inline Ratio make_ratio(const BigInt& num, const BigInt& den) {
    if (den <= 0) throw std::invalid_argument("make_ratio: denominator must be positive");
    return Ratio(num, den);
}

inline Ratio make_ratio(std::int64_t num, std::int64_t den) {
    return make_ratio(BigInt(num), BigInt(den));
}

inline Ratio ratio_pow(const Ratio& r, std::uint64_t e) {
    using boost::multiprecision::pow;
    if (e == 0) return Ratio(1);
    return Ratio(pow(numerator(r), static_cast<unsigned>(e)),
                 pow(denominator(r), static_cast<unsigned>(e)));
}

inline double ratio_to_double(const Ratio& r) { return r.convert_to<double>(); }

// Canonical "num/den" in lowest terms, denominator always printed ("1/1").
inline std::string ratio_to_string(const Ratio& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "a/b", plain integers and decimal literals ("0.25") exactly.
inline Ratio parse_ratio(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_ratio: empty string");
    if (auto slash = text.find('/'); slash != std::string::npos) {
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        return make_ratio(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string head = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        if (frac.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("parse_ratio: bad decimal literal");
        const bool neg = !head.empty() && head[0] == '-';
        if (neg) head.erase(0, 1);
        if (head.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("parse_ratio: bad decimal literal");
        // avoid cpp_int's octal reading of leading zeros
        auto digits = [](const std::string& s) {
            const std::size_t nz = s.find_first_not_of('0');
            return nz == std::string::npos ? BigInt(0) : BigInt(s.substr(nz));
        };
        BigInt scale(1);
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        BigInt num = digits(head) * scale + digits(frac);
        if (neg) num = -num;
        return make_ratio(num, scale);
    }
    return Ratio(BigInt(text));
}

} // namespace stoch2c
