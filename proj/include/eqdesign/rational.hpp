#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "eqdesign/errors.hpp"

namespace eqdesign {

using Int = boost::multiprecision::cpp_int;

/// Exact rational number, always in lowest terms with a positive denominator.
/// Backed by boost cpp_rational, which maintains the canonical form.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long long n) : v_(n) {}
    Rational(const Int& n) : v_(n) {}
    Rational(const Int& num, const Int& den) {
        if (den == 0)
            throw InputError("rational with zero denominator");
        // division normalises the sign and reduces to lowest terms
        v_ = boost::multiprecision::cpp_rational(num);
        v_ /= boost::multiprecision::cpp_rational(den);
    }

    Int numerator() const { return boost::multiprecision::numerator(v_); }
    Int denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_integer() const { return denominator() == 1; }
    bool is_zero() const { return v_ == 0; }
    int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

    /// Largest integer <= value.
    Int floor() const {
        Int q = numerator() / denominator();
        if (v_ < 0 && q * denominator() != numerator())
            --q;
        return q;
    }
    /// Smallest integer >= value.
    Int ceil() const {
        Int q = numerator() / denominator();
        if (v_ > 0 && q * denominator() != numerator())
            ++q;
        return q;
    }

    Rational operator-() const {
        Rational r = *this;
        r.v_ = -r.v_;
        return r;
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.v_ == 0)
            throw InputError("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational abs() const {
        Rational r = *this;
        if (r.v_ < 0)
            r.v_ = -r.v_;
        return r;
    }

    /// "p" for integers, "p/q" otherwise. Never a decimal expansion.
    std::string str() const {
        std::string s = numerator().str();
        if (!is_integer())
            s += "/" + denominator().str();
        return s;
    }

    /// Accepts "p", "-p", "p/q" and "-p/q" with decimal digits.
    static Rational parse(std::string_view text) {
        auto fail = [&] { throw InputError("malformed rational '" + std::string(text) + "'"); };
        size_t slash = text.find('/');
        try {
            if (slash == std::string_view::npos)
                return Rational(parse_int(text));
            Int num = parse_int(text.substr(0, slash));
            Int den = parse_int(text.substr(slash + 1));
            if (den <= 0)
                fail();
            return Rational(num, den);
        } catch (const std::exception&) {
            fail();
        }
        return Rational(); // unreachable
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    static Int parse_int(std::string_view s) {
        if (s.empty())
            throw InputError("empty integer");
        size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size())
            throw InputError("sign without digits");
        for (size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9')
                throw InputError("non-digit in integer");
        return Int(std::string(s));
    }

    boost::multiprecision::cpp_rational v_;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

/// Least common multiple of the denominators, >= 1.
inline Int common_denominator(const std::vector<Rational>& xs) {
    Int l = 1;
    for (const auto& x : xs)
        l = lcm(l, x.denominator());
    return l;
}

/// The rational closest to x among all p/q with 1 <= q <= max_den, found by
/// walking the continued-fraction convergents and the final semiconvergent.
/// Ties cannot occur when x is within half the minimal gap of a candidate,
/// which is the only regime we use this in; on an exact tie the candidate
/// with the smaller denominator wins.
inline Rational closest_with_denominator_at_most(const Rational& x, const Int& max_den) {
    if (max_den < 1)
        throw InputError("denominator bound must be >= 1");
    if (x.denominator() <= max_den)
        return x;

    // Convergents p_k/q_k of the continued fraction of x.
    Int p_prev = 1, q_prev = 0;   // p_{-1}/q_{-1}
    Int p_cur = x.floor(), q_cur = 1;
    Rational rem = x - Rational(p_cur);
    while (q_cur <= max_den && !rem.is_zero()) {
        rem = Rational(1) / rem;
        Int a = rem.floor();
        rem -= Rational(a);
        Int p_next = a * p_cur + p_prev;
        Int q_next = a * q_cur + q_prev;
        if (q_next > max_den) {
            // Best semiconvergent: largest t with q_prev + t*q_cur <= max_den.
            Int t = (max_den - q_prev) / q_cur;
            Rational semi(p_prev + t * p_cur, q_prev + t * q_cur);
            Rational conv(p_cur, q_cur);
            Rational ds = (x - semi).abs(), dc = (x - conv).abs();
            if (dc < ds)
                return conv;
            if (ds < dc)
                return semi;
            return conv.denominator() <= semi.denominator() ? conv : semi;
        }
        p_prev = p_cur; q_prev = q_cur;
        p_cur = p_next; q_cur = q_next;
    }
    return Rational(p_cur, q_cur);
}

} // namespace eqdesign
