#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tourank {

/// Exact rational number.
///
/// Values that fit in int64 numerator/denominator are kept inline and all
/// arithmetic runs on machine words with __int128 intermediates; anything
/// larger is promoted to a heap-allocated boost cpp_rational and demoted
/// back as soon as it fits again. Semantics are arbitrary precision
/// throughout; the small representation is canonical (gcd 1, den > 0) so
/// equality never has to cross representations.
class Rational {
public:
    using BigRat = boost::multiprecision::cpp_rational;

    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(int n) : num_(n), den_(1) {}        // NOLINT

    Rational(long long n, long long d) : num_(0), den_(1) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        assign_small(n, d);
    }

    explicit Rational(const BigRat& b) { assign_big(b); }

    Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
        if (o.big_) big_ = std::make_unique<BigRat>(*o.big_);
    }
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            num_ = o.num_;
            den_ = o.den_;
            big_ = o.big_ ? std::make_unique<BigRat>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    /// Parse "p", "-p" or "p/q" of any magnitude. Throws
    /// std::invalid_argument on junk, including a zero denominator.
    static Rational parse(std::string_view text) {
        auto slash = text.find('/');
        std::string_view num = slash == std::string_view::npos ? text : text.substr(0, slash);
        std::string_view den =
            slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
        check_integer_literal(num);
        check_integer_literal(den);
        using boost::multiprecision::cpp_int;
        cpp_int n{std::string(num)};
        cpp_int d{std::string(den)};
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        Rational r;
        r.assign_big(BigRat(n, d));
        return r;
    }

    /// Exact conversion; every finite double is a rational.
    static Rational from_double(double x) {
        Rational r;
        r.assign_big(BigRat(x));
        return r;
    }

    bool is_small() const { return !big_; }
    bool is_zero() const { return big_ ? big_->is_zero() : num_ == 0; }
    bool is_integer() const {
        return big_ ? denominator(*big_) == 1 : den_ == 1;
    }
    int sign() const {
        if (big_) return big_->sign();
        return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
    }

    BigRat to_big() const {
        if (big_) return *big_;
        return BigRat(num_, den_);
    }
    double to_double() const { return static_cast<double>(to_big()); }

    friend Rational operator-(const Rational& a) {
        if (a.big_) {
            Rational r;
            r.assign_big(-*a.big_);
            return r;
        }
        Rational r;
        r.assign_i128(-static_cast<__int128>(a.num_), a.den_);
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.big_ || b.big_) return from_big(a.to_big() + b.to_big());
        __int128 n = static_cast<__int128>(a.num_) * b.den_ +
                     static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        Rational r;
        r.assign_i128(n, d);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.big_ || b.big_) return from_big(a.to_big() - b.to_big());
        __int128 n = static_cast<__int128>(a.num_) * b.den_ -
                     static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        Rational r;
        r.assign_i128(n, d);
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.big_ || b.big_) return from_big(a.to_big() * b.to_big());
        __int128 n = static_cast<__int128>(a.num_) * b.num_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        Rational r;
        r.assign_i128(n, d);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::invalid_argument("Rational: division by zero");
        if (a.big_ || b.big_) return from_big(a.to_big() / b.to_big());
        __int128 n = static_cast<__int128>(a.num_) * b.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.num_;
        Rational r;
        r.assign_i128(n, d);
        return r;
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    /// Three-way compare: -1, 0, 1.
    int compare(const Rational& o) const {
        if (!big_ && !o.big_) {
            __int128 lhs = static_cast<__int128>(num_) * o.den_;
            __int128 rhs = static_cast<__int128>(o.num_) * den_;
            return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
        }
        BigRat l = to_big(), r = o.to_big();
        return l < r ? -1 : (l > r ? 1 : 0);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        return a.compare(b) == 0;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return a.compare(b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.compare(b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.compare(b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.compare(b) >= 0; }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    /// Canonical rendering: "p" for integers, "p/q" otherwise.
    std::string str() const {
        if (big_) {
            std::string s = numerator(*big_).str();
            if (denominator(*big_) != 1) s += "/" + denominator(*big_).str();
            return s;
        }
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    static void check_integer_literal(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("Rational: empty number");
        std::size_t pos = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (pos == s.size()) throw std::invalid_argument("Rational: bare sign");
        for (; pos < s.size(); ++pos)
            if (s[pos] < '0' || s[pos] > '9')
                throw std::invalid_argument("Rational: bad digit in number");
    }

    static Rational from_big(const BigRat& b) {
        Rational r;
        r.assign_big(b);
        return r;
    }

    static __int128 gcd_i128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    void assign_small(long long n, long long d) {
        assign_i128(static_cast<__int128>(n), static_cast<__int128>(d));
    }

    // Normalize n/d (d != 0) and store small if it fits, big otherwise.
    void assign_i128(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 g = gcd_i128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr __int128 lo = std::numeric_limits<long long>::min() + 1;
        constexpr __int128 hi = std::numeric_limits<long long>::max();
        if (n >= lo && n <= hi && d <= hi) {
            num_ = static_cast<long long>(n);
            den_ = static_cast<long long>(d);
            big_.reset();
        } else {
            big_ = std::make_unique<BigRat>(i128_to_big(n), i128_to_big(d));
            num_ = 0;
            den_ = 1;
        }
    }

    static boost::multiprecision::cpp_int i128_to_big(__int128 v) {
        bool neg = v < 0;
        unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v)
                                  : static_cast<unsigned __int128>(v);
        boost::multiprecision::cpp_int r =
            static_cast<std::uint64_t>(u >> 64);
        r <<= 64;
        r += static_cast<std::uint64_t>(u);
        return neg ? -r : r;
    }

    void assign_big(const BigRat& b) {
        using boost::multiprecision::cpp_int;
        const cpp_int& n = numerator(b);
        const cpp_int& d = denominator(b);
        constexpr long long lo = std::numeric_limits<long long>::min() + 1;
        constexpr long long hi = std::numeric_limits<long long>::max();
        if (n >= lo && n <= hi && d <= hi) {
            num_ = n.convert_to<long long>();
            den_ = d.convert_to<long long>();
            big_.reset();
        } else {
            big_ = std::make_unique<BigRat>(b);
            num_ = 0;
            den_ = 1;
        }
    }

    long long num_, den_;          // canonical, valid iff !big_
    std::unique_ptr<BigRat> big_;  // set iff the value does not fit small
};

/// Convenience literal-ish helper used all over the tests: rat(1,2) == 1/2.
inline Rational rat(long long n, long long d = 1) { return Rational(n, d); }

}  // namespace tourank
