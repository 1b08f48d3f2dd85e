#ifndef CHROMA_RATIONAL_HPP
#define CHROMA_RATIONAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace chroma {

using Int = mpz_class;
using Rat = mpq_class;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse a decimal string ("-12.75", "3", "1e-3" is not supported) into an
/// exact rational scaled by 10^scale_exp.  The result is an integer when the
/// input has at most scale_exp fractional digits; otherwise the extra digits
/// are kept exactly as a rational.
inline Rat parse_scaled_decimal(const std::string& text, int scale_exp) {
    std::string s = text;
    // trim whitespace
    size_t b = s.find_first_not_of(" \t\r\n");
    size_t e = s.find_last_not_of(" \t\r\n");
    if (b == std::string::npos) throw InputError("empty numeric field");
    s = s.substr(b, e - b + 1);

    bool neg = false;
    size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        neg = (s[i] == '-');
        ++i;
    }
    std::string int_part, frac_part;
    bool seen_dot = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (seen_dot) throw InputError("malformed number: " + text);
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            seen_digit = true;
            (seen_dot ? frac_part : int_part) += c;
        } else {
            throw InputError("malformed number: " + text);
        }
    }
    if (!seen_digit) throw InputError("malformed number: " + text);
    if (int_part.empty()) int_part = "0";

    Int numerator(int_part);
    Int den = 1;
    for (char c : frac_part) {
        numerator = numerator * 10 + (c - '0');
        den *= 10;
    }
    Rat value(numerator, den);
    value.canonicalize();
    // Quantize to the grid of spacing 10^-scale_exp: every coordinate becomes
    // an exact integer multiple of the grid unit, but keeps the input scale.
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(scale_exp));
    Rat scaled = value * Rat(scale) + Rat(1, 2);
    Int grid = scaled.get_num() / scaled.get_den();  // floor for non-negative input
    Rat out(grid, scale);
    out.canonicalize();
    return neg ? Rat(-out) : out;
}

inline double to_double(const Rat& q) { return q.get_d(); }

/// Exact rational as "num/den" (or "num" when den == 1); round-trippable.
inline std::string rat_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat parse_rat_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw InputError("malformed rational: " + s);
    q.canonicalize();
    return q;
}

/// sqrt as double with 17 significant digits; used only at output time.
inline double sqrt_double(const Rat& squared) { return std::sqrt(squared.get_d()); }

using RatVec = std::vector<Rat>;

inline Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVec sub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Rat squared_distance(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        Rat d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace chroma

#endif
