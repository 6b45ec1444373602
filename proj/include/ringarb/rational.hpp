#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace ringarb {

// Exact arbitrary-precision rational. All pool state and every invariant
// check run on this type; doubles are a derived view used by search code.
using Rat = mpq_class;

inline double to_double(const Rat& q) { return q.get_d(); }

// Exact: every binary64 value is a rational.
inline Rat rat_from_double(double v) { return Rat(v); }

inline int sgn(const Rat& q) { return ::sgn(q); }

Rat rat_pow(const Rat& base, unsigned exp);

// Parses a plain decimal string ("285.71", "-0.003", "12") into an exact
// rational. Rejects anything else: no exponents, no more than
// `max_frac_digits` digits after the point.
std::optional<Rat> try_parse_decimal(std::string_view text, int max_frac_digits = 36);

// Decimal or "num/den" fraction, used by config inputs where exact
// non-terminating ratios (1/3) are legitimate.
std::optional<Rat> try_parse_ratio(std::string_view text);

// try_parse_decimal that throws std::invalid_argument instead.
Rat parse_decimal(std::string_view text, int max_frac_digits = 36);

// Rounds to `significant_digits` and renders without an exponent.
// Trailing fractional zeros are stripped. Deterministic: round half away
// from zero.
std::string format_decimal(const Rat& q, int significant_digits = 18);

// Exact decimal expansion when the denominator divides 10^max_frac_digits,
// otherwise rounded to max_frac_digits fractional digits.
std::string format_decimal_fixed(const Rat& q, int max_frac_digits = 36);

// sqrt(q) as an exact rational, if q is the square of one.
std::optional<Rat> exact_sqrt(const Rat& q);

// Round-to-nearest sqrt(q) with `digits` fractional decimal digits,
// computed purely in integer arithmetic.
Rat rounded_sqrt(const Rat& q, int digits);

// Exact sign of a + b*sqrt(g), g >= 0. No floating point involved.
int sign_linear_surd(const Rat& a, const Rat& b, const Rat& g);

// Exact three-way comparison of (a1 + b1*sqrt(g1)) vs (a2 + b2*sqrt(g2)).
int cmp_linear_surd(const Rat& a1, const Rat& b1, const Rat& g1,
                    const Rat& a2, const Rat& b2, const Rat& g2);

// Value a + b*sqrt(g) closed under +,-,* (and / by same-g values) as long
// as every operand shares the same radicand. Lets the convergence analysis
// carry quadratic irrationals exactly instead of through floats.
struct Surd {
    Rat a{0};
    Rat b{0};
    Rat g{0};

    Surd() = default;
    /*implicit*/ Surd(Rat rational) : a(std::move(rational)) {}
    Surd(Rat a_, Rat b_, Rat g_);

    bool is_rational() const { return b == 0 || g == 0; }
    double value() const;

    Surd operator-() const { return Surd(-a, -b, g); }
    Surd& operator+=(const Surd& o);
    Surd& operator-=(const Surd& o);
    Surd& operator*=(const Surd& o);
    Surd& operator/=(const Surd& o);

    friend Surd operator+(Surd l, const Surd& r) { return l += r; }
    friend Surd operator-(Surd l, const Surd& r) { return l -= r; }
    friend Surd operator*(Surd l, const Surd& r) { return l *= r; }
    friend Surd operator/(Surd l, const Surd& r) { return l /= r; }
};

int sign(const Surd& s);
int cmp(const Surd& l, const Surd& r);

}  // namespace ringarb
