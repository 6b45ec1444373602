#include "ringarb/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ringarb {

namespace {

mpz_class pow10(unsigned long n) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, n);
    return r;
}

// Round a/b (b > 0) to nearest integer, half away from zero.
mpz_class div_round_nearest(const mpz_class& a, const mpz_class& b) {
    mpz_class two_a = 2 * a;
    if (a >= 0) {
        return (two_a + b) / (2 * b);
    }
    mpz_class q = (-two_a + b) / (2 * b);
    return -q;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rat rat_pow(const Rat& base, unsigned exp) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), exp);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), exp);
    // base canonical implies num^k/den^k canonical
    return r;
}

std::optional<Rat> try_parse_decimal(std::string_view text, int max_frac_digits) {
    bool negative = false;
    std::string_view body = text;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (body.empty()) return std::nullopt;

    std::string_view int_part = body;
    std::string_view frac_part;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
        int_part = body.substr(0, dot);
        frac_part = body.substr(dot + 1);
        if (frac_part.empty()) return std::nullopt;
        if (static_cast<int>(frac_part.size()) > max_frac_digits) return std::nullopt;
        if (!all_digits(frac_part)) return std::nullopt;
    }
    if (!all_digits(int_part)) return std::nullopt;

    mpz_class num(std::string(int_part), 10);
    mpz_class scale(1);
    if (!frac_part.empty()) {
        scale = pow10(frac_part.size());
        num = num * scale + mpz_class(std::string(frac_part), 10);
    }
    Rat q(num, scale);
    q.canonicalize();
    if (negative) q = -q;
    return q;
}

std::optional<Rat> try_parse_ratio(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = try_parse_decimal(text.substr(0, slash));
        auto den = try_parse_decimal(text.substr(slash + 1));
        if (!num || !den || *den == 0) return std::nullopt;
        return *num / *den;
    }
    return try_parse_decimal(text);
}

Rat parse_decimal(std::string_view text, int max_frac_digits) {
    auto q = try_parse_decimal(text, max_frac_digits);
    if (!q) throw std::invalid_argument("not a decimal amount: '" + std::string(text) + "'");
    return *q;
}

namespace {

// floor(log10(q)) for q > 0.
long decimal_exponent(const Rat& q) {
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
    // sizeinbase may overestimate by one digit; settle by comparison.
    auto at_least = [&](long k) {
        // q >= 10^k ?
        if (k >= 0) return num >= den * pow10(k);
        return num * pow10(-k) >= den;
    };
    while (!at_least(e)) --e;
    while (at_least(e + 1)) ++e;
    return e;
}

}  // namespace

std::string format_decimal(const Rat& q, int significant_digits) {
    if (q == 0) return "0";
    if (q < 0) return "-" + format_decimal(-q, significant_digits);

    long e = decimal_exponent(q);
    long shift = significant_digits - 1 - e;
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    if (shift >= 0) {
        num *= pow10(shift);
    } else {
        den *= pow10(-shift);
    }
    mpz_class m = div_round_nearest(num, den);
    if (m == pow10(significant_digits)) {
        m = pow10(significant_digits - 1);
        ++e;
    }

    std::string digits = m.get_str();
    long point = e + 1;  // digits before the decimal point
    std::string out;
    if (point >= static_cast<long>(digits.size())) {
        out = digits + std::string(point - digits.size(), '0');
    } else if (point > 0) {
        out = digits.substr(0, point) + "." + digits.substr(point);
    } else {
        out = "0." + std::string(-point, '0') + digits;
    }
    if (out.find('.') != std::string::npos) {
        auto last = out.find_last_not_of('0');
        if (out[last] == '.') --last;
        out.erase(last + 1);
    }
    return out;
}

std::string format_decimal_fixed(const Rat& q, int max_frac_digits) {
    if (q < 0) return "-" + format_decimal_fixed(-q, max_frac_digits);
    mpz_class scale = pow10(max_frac_digits);
    mpz_class scaled = div_round_nearest(q.get_num() * scale, q.get_den());
    mpz_class ip = scaled / scale;
    mpz_class fp = scaled % scale;
    std::string out = ip.get_str();
    if (fp != 0) {
        std::string frac = fp.get_str();
        frac.insert(0, max_frac_digits - frac.size(), '0');
        auto last = frac.find_last_not_of('0');
        frac.erase(last + 1);
        out += "." + frac;
    }
    return out;
}

std::optional<Rat> exact_sqrt(const Rat& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return Rat(0);
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
        return std::nullopt;
    }
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rat r(rn, rd);
    r.canonicalize();
    return r;
}

Rat rounded_sqrt(const Rat& q, int digits) {
    if (q < 0) throw std::invalid_argument("sqrt of negative rational");
    if (q == 0) return Rat(0);
    // sqrt(p/q) = sqrt(p*q)/q; scale so the integer sqrt carries the
    // requested fractional digits.
    mpz_class scale = pow10(digits);
    mpz_class n = q.get_num() * q.get_den() * scale * scale;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    // mpz_sqrt floors; bump to nearest.
    mpz_class low_err = n - root * root;
    mpz_class high_err = (root + 1) * (root + 1) - n;
    if (high_err < low_err) ++root;
    Rat r(root, q.get_den() * scale);
    r.canonicalize();
    return r;
}

int sign_linear_surd(const Rat& a, const Rat& b, const Rat& g) {
    if (g < 0) throw std::invalid_argument("negative radicand");
    if (b == 0 || g == 0) return sgn(a);
    int sa = sgn(a);
    int sb = sgn(b);
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    int c = cmp(a * a, b * b * g);
    if (c == 0) return 0;
    return c > 0 ? sa : sb;
}

int cmp_linear_surd(const Rat& a1, const Rat& b1, const Rat& g1,
                    const Rat& a2, const Rat& b2, const Rat& g2) {
    Rat t = a1 - a2;
    if (b2 == 0 || g2 == 0) return sign_linear_surd(t, b1, g1);
    if (b1 == 0 || g1 == 0) return -sign_linear_surd(-t, b2, g2);
    if (g1 == g2) return sign_linear_surd(t, b1 - b2, g1);

    // sign of (t + b1*sqrt(g1)) - b2*sqrt(g2)
    int sl = sign_linear_surd(t, b1, g1);
    int sr = sgn(b2);
    if (sl == 0) return -sr;
    if (sl != sr) return sl > 0 ? 1 : -1;
    // same strict sign: compare squares, which removes sqrt(g2)
    Rat d = t * t + b1 * b1 * g1 - b2 * b2 * g2;
    int s2 = sign_linear_surd(d, 2 * t * b1, g1);
    return sl > 0 ? s2 : -s2;
}

Surd::Surd(Rat a_, Rat b_, Rat g_) : a(std::move(a_)), b(std::move(b_)), g(std::move(g_)) {
    if (g < 0) throw std::invalid_argument("negative radicand");
    if (b == 0 || g == 0) {
        b = 0;
        g = 0;
    }
}

double Surd::value() const {
    double v = to_double(a);
    if (b != 0) v += to_double(b) * std::sqrt(to_double(g));
    return v;
}

namespace {
void require_same_field(const Surd& l, const Surd& r) {
    if (!l.is_rational() && !r.is_rational() && l.g != r.g) {
        throw std::invalid_argument("surd arithmetic across different radicands");
    }
}
}  // namespace

Surd& Surd::operator+=(const Surd& o) {
    require_same_field(*this, o);
    if (is_rational() && !o.is_rational()) g = o.g;
    a += o.a;
    b += o.b;
    if (b == 0) g = 0;
    return *this;
}

Surd& Surd::operator-=(const Surd& o) { return *this += -o; }

Surd& Surd::operator*=(const Surd& o) {
    require_same_field(*this, o);
    Rat gg = is_rational() ? o.g : g;
    Rat na = a * o.a + b * o.b * gg;
    Rat nb = a * o.b + b * o.a;
    a = std::move(na);
    b = std::move(nb);
    g = (b == 0) ? Rat(0) : gg;
    return *this;
}

Surd& Surd::operator/=(const Surd& o) {
    require_same_field(*this, o);
    // multiply by the conjugate of o
    Rat gg = is_rational() ? o.g : g;
    Rat denom = o.a * o.a - o.b * o.b * gg;
    if (denom == 0) throw std::invalid_argument("division by zero surd");
    Surd conj(o.a / denom, -o.b / denom, gg);
    return *this *= conj;
}

int sign(const Surd& s) { return sign_linear_surd(s.a, s.b, s.g); }

int cmp(const Surd& l, const Surd& r) {
    return cmp_linear_surd(l.a, l.b, l.g, r.a, r.b, r.g);
}

}  // namespace ringarb
