#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace rootshell {

// Exact rational on int64 with __int128 intermediates.  Everything in the
// combinatorial layer runs on these; floats are not allowed there.  Root
// coordinates are tiny (denominators 1, 2 or 3), so int64 after reduction is
// plenty -- but we still guard every product/sum and throw instead of
// silently wrapping.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        normalize_();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return from_i128_(n, d);
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + Rat(-b.num_, b.den_); }
    Rat operator-() const { return Rat(-num_, den_); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return from_i128_((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
        return from_i128_((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    double to_double() const { return (double)num_ / (double)den_; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    std::int64_t num_, den_;

    static Rat from_i128_(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128_(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rat: overflow after reduction");
        Rat r;
        r.num_ = (std::int64_t)n;
        r.den_ = (std::int64_t)d;
        return r;
    }
    static __int128 gcd128_(__int128 a, __int128 b) {
        while (b) { __int128 t = a % b; a = b; b = t; }
        return a ? a : 1;
    }
    void normalize_() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (den_ == 0) den_ = 1;  // num_ was 0
    }
};

using RatVec = std::vector<Rat>;

inline Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rat s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVec operator+(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec+: size mismatch");
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVec operator-(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec-: size mismatch");
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVec operator*(const Rat& c, const RatVec& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

inline RatVec negate(const RatVec& v) { return Rat(-1) * v; }

inline bool is_zero(const RatVec& v) {
    for (auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

inline std::vector<double> to_double(const RatVec& v) {
    std::vector<double> r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[i].to_double();
    return r;
}

}  // namespace rootshell
