#include "bgg/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace bgg {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// cpp_int treats a leading 0 as an octal prefix; digit strings here are
// always decimal.
Int int_from_digits(std::string_view digits) {
    std::size_t k = 0;
    while (k + 1 < digits.size() && digits[k] == '0') ++k;
    return Int{std::string(digits.substr(k))};
}

} // namespace

Rat rat_of_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite double has no rational value");
    return Rat(x);
}

double rat_to_double(const Rat& q) { return q.convert_to<double>(); }

Int pow10(unsigned k) {
    static const std::vector<Int> table = [] {
        std::vector<Int> t(1, Int(1));
        for (int i = 1; i <= 640; ++i) t.push_back(t.back() * 10);
        return t;
    }();
    if (k < table.size()) return table[k];
    Int r = table.back();
    for (unsigned i = static_cast<unsigned>(table.size()) - 1; i < k; ++i) r *= 10;
    return r;
}

Rat parse_rational(std::string_view text, bool allow_decimal) {
    std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.remove_prefix(1);
        s = trim(s);
    }

    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        std::string_view ns = trim(s.substr(0, slash));
        std::string_view ds = trim(s.substr(slash + 1));
        if (!all_digits(ns) || !all_digits(ds))
            throw std::invalid_argument("malformed fraction literal '" + std::string(text) + "'");
        Int num = int_from_digits(ns);
        Int den = int_from_digits(ds);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        Rat q(num, den);
        return neg ? Rat(-q) : q;
    }

    if (all_digits(s)) {
        Rat q{int_from_digits(s)};
        return neg ? Rat(-q) : q;
    }

    if (!allow_decimal)
        throw std::invalid_argument("expected integer or p/q literal, got '" + std::string(text) + "'");

    // decimal / scientific
    std::string digits;
    long frac_digits = 0;
    std::size_t i = 0;
    bool saw_digit = false, saw_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            saw_digit = true;
            if (saw_dot) ++frac_digits;
        } else if (c == '.' && !saw_dot) {
            saw_dot = true;
        } else {
            break;
        }
    }
    if (!saw_digit) throw std::invalid_argument("malformed decimal literal '" + std::string(text) + "'");
    long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            eneg = s[i] == '-';
            ++i;
        }
        std::string_view es = s.substr(i);
        if (!all_digits(es) || es.size() > 6)
            throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
        exp10 = std::stol(std::string(es));
        if (eneg) exp10 = -exp10;
        i = s.size();
    }
    if (i != s.size()) throw std::invalid_argument("trailing characters in '" + std::string(text) + "'");

    Int num = int_from_digits(digits.empty() ? "0" : digits);
    Rat q(num, 1);
    long e = exp10 - frac_digits;
    if (e > 0)
        q *= Rat(pow10(static_cast<unsigned>(e)), 1);
    else if (e < 0)
        q /= Rat(pow10(static_cast<unsigned>(-e)), 1);
    return neg ? Rat(-q) : q;
}

namespace {

// floor(log10(a/b)) for a, b > 0. Estimated from bit lengths, then adjusted;
// avoids decimal conversions of huge integers.
long floor_log10(const Int& a, const Int& b) {
    long bits = static_cast<long>(boost::multiprecision::msb(a)) -
                static_cast<long>(boost::multiprecision::msb(b));
    long e = static_cast<long>(std::floor(static_cast<double>(bits) * 0.30102999566398120));
    auto le = [&](long k) { // 10^k <= a/b ?
        if (k >= 0) return b * pow10(static_cast<unsigned>(k)) <= a;
        return b <= a * pow10(static_cast<unsigned>(-k));
    };
    while (!le(e)) --e;
    while (le(e + 1)) ++e;
    return e;
}

// Rounded significand of |q| with `sig` digits: m in [10^(sig-1), 10^sig),
// value ~= m * 10^(e+1-sig). Half rounds away from zero.
void round_significand(const Rat& q, int sig, Int& m, long& e) {
    Int a = boost::multiprecision::abs(numerator(q));
    Int b = denominator(q);
    e = floor_log10(a, b);
    long shift = sig - 1 - e;
    Int num = a, den = b;
    if (shift >= 0)
        num *= pow10(static_cast<unsigned>(shift));
    else
        den *= pow10(static_cast<unsigned>(-shift));
    m = (2 * num + den) / (2 * den);
    if (m == pow10(static_cast<unsigned>(sig))) { // 9.99... rounded up
        m = pow10(static_cast<unsigned>(sig - 1));
        ++e;
    }
}

} // namespace

std::string rat_to_decimal(const Rat& q, int sig) {
    if (sig < 1) sig = 1;
    if (q == 0) return "0";
    Int m;
    long e;
    round_significand(q, sig, m, e);
    std::string digits = m.str();
    // strip trailing zeros of the significand
    std::size_t keep = digits.size();
    while (keep > 1 && digits[keep - 1] == '0') --keep;
    digits.resize(keep);

    std::string out = q < 0 ? "-" : "";
    if (e >= -7 && e <= 20) {
        if (e >= static_cast<long>(digits.size()) - 1) {
            out += digits;
            out.append(static_cast<std::size_t>(e) - digits.size() + 1, '0');
        } else if (e >= 0) {
            out += digits.substr(0, static_cast<std::size_t>(e) + 1);
            out += '.';
            out += digits.substr(static_cast<std::size_t>(e) + 1);
        } else {
            out += "0.";
            out.append(static_cast<std::size_t>(-e) - 1, '0');
            out += digits;
        }
    } else {
        out += digits.substr(0, 1);
        if (digits.size() > 1) {
            out += '.';
            out += digits.substr(1);
        }
        out += 'e';
        out += std::to_string(e);
    }
    return out;
}

Rat snap_decimal(const Rat& q, int sig) {
    if (q == 0) return q;
    Int m;
    long e;
    round_significand(q, sig, m, e);
    long shift = e + 1 - sig;
    Rat r(m, 1);
    if (shift > 0)
        r *= Rat(pow10(static_cast<unsigned>(shift)), 1);
    else if (shift < 0)
        r /= Rat(pow10(static_cast<unsigned>(-shift)), 1);
    return q < 0 ? Rat(-r) : r;
}

std::string rat_to_fraction(const Rat& q) {
    Int num = numerator(q), den = denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string double_to_string(double x, int sig) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig, x);
    return buf;
}

Rat snap_double(double x, int sig) {
    if (x == 0) return Rat(0);
    if (!std::isfinite(x)) throw std::invalid_argument("cannot snap a non-finite double");
    if (sig < 1) sig = 1;
    if (sig > 17) sig = 17;
    double ax = std::fabs(x);
    int e = static_cast<int>(std::floor(std::log10(ax)));
    // correct the borderline cases of the float log
    if (std::pow(10.0, e) > ax) --e;
    if (std::pow(10.0, e + 1) <= ax) ++e;
    long long m = std::llround(ax * std::pow(10.0, sig - 1 - e));
    if (m >= static_cast<long long>(std::pow(10.0, sig))) {
        m /= 10;
        ++e;
    }
    long shift = e + 1 - sig;
    Rat r(Int(m), 1);
    if (shift > 0)
        r *= Rat(pow10(static_cast<unsigned>(shift)), 1);
    else if (shift < 0)
        r /= Rat(pow10(static_cast<unsigned>(-shift)), 1);
    return x < 0 ? Rat(-r) : r;
}

double round_sig(double x, int sig) {
    if (!std::isfinite(x)) return x;
    return std::strtod(double_to_string(x, sig).c_str(), nullptr);
}

} // namespace bgg
