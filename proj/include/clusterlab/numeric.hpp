#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "clusterlab/errors.hpp"

namespace clusterlab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Element of a prime field F_p with the modulus carried per value.  A value
// with p == 0 is a raw integer that has not met a modulus yet (arises from
// literals like K(1) inside generic code); it is reduced as soon as it is
// combined with a value that knows its modulus.
struct Fp {
    long long v = 0;
    long long p = 0;

    Fp() = default;
    Fp(long long raw) : v(raw), p(0) {}
    Fp(long long raw, long long mod) : v(raw), p(mod) { reduce(); }

    void reduce() {
        if (p != 0) {
            v %= p;
            if (v < 0) v += p;
        }
    }

    static long long merge_mod(const Fp& a, const Fp& b) {
        if (a.p != 0 && b.p != 0 && a.p != b.p)
            throw ArgumentError("Fp modulus mismatch");
        return a.p != 0 ? a.p : b.p;
    }

    friend Fp operator+(const Fp& a, const Fp& b) { return Fp(a.v + b.v, merge_mod(a, b)); }
    friend Fp operator-(const Fp& a, const Fp& b) { return Fp(a.v - b.v, merge_mod(a, b)); }
    friend Fp operator*(const Fp& a, const Fp& b) { return Fp(a.v * b.v, merge_mod(a, b)); }
    Fp operator-() const { return Fp(-v, p); }
    Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
    Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
    Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }

    Fp inv() const {
        if (p == 0) throw ArgumentError("Fp::inv needs a modulus");
        long long a = v % p, b = p, x0 = 1, x1 = 0;
        if (a < 0) a += p;
        if (a == 0) throw ArgumentError("Fp::inv of zero");
        while (b != 0) {
            long long q = a / b;
            long long t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        return Fp(x0, p);
    }

    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }

    friend bool operator==(const Fp& a, const Fp& b) {
        if (a.p == 0 || b.p == 0) return a.v == b.v;
        return merge_mod(a, b) != 0 && a.v == b.v;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

// Field trait shims used by the generic matrix code.
template <class K> inline K field_inv(const K& x) { return K(1) / x; }
template <> inline Fp field_inv<Fp>(const Fp& x) { return x.inv(); }

template <class K> inline bool is_zero(const K& x) { return x == K(0); }
template <> inline bool is_zero<Fp>(const Fp& x) { return x.v == 0; }

} // namespace clusterlab
