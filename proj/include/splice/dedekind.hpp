#pragma once

// Sawtooth function, Dedekind sums and the reciprocity identities they satisfy.

#include <cstddef>
#include <cstdint>
#include <tuple>

#include "splice/error.hpp"
#include "splice/rational.hpp"

namespace splice {

/// Coefficients of Bezout's identity: a*x + b*y = g with g = gcd(a, b) >= 0.
struct Bezout {
    Integer g;
    Integer x;
    Integer y;
};

inline Bezout extended_gcd(const Integer& a, const Integer& b) {
    Integer old_r = a, r = b;
    Integer old_s = 1, s = 0;
    Integer old_t = 0, t = 1;
    while (r != 0) {
        const Integer q = old_r / r;
        std::tie(old_r, r) = std::make_tuple(r, Integer(old_r - q * r));
        std::tie(old_s, s) = std::make_tuple(s, Integer(old_s - q * s));
        std::tie(old_t, t) = std::make_tuple(t, Integer(old_t - q * t));
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

/// Inverse of `a` modulo `m` (m >= 1), in [0, m). For m == 1 the answer is 0.
inline Integer mod_inverse(const Integer& a, const Integer& m) {
    if (m < 1) throw DomainError("mod_inverse: modulus must be positive");
    const Bezout b = extended_gcd(mod(a, m), m);
    if (b.g != 1) throw DomainError("mod_inverse: " + a.str() + " is not invertible modulo " + m.str());
    return mod(b.x, m);
}

/// ((x)): {x} - 1/2 off the integers, 0 on them.
inline Rational sawtooth(const Rational& x) {
    if (x.is_integer()) return Rational(0);
    return x.frac() - Rational(1, 2);
}

namespace detail {

// Sum over j of (2j - q)(2r_j - q) with r_j = p*j mod q, skipping r_j = 0.
// Fits __int128 for any q below 2^40.
inline Integer naive_dedekind_numerator(std::int64_t p, std::int64_t q) {
    __int128 acc = 0;
    std::int64_t r = 0;
    for (std::int64_t j = 1; j < q; ++j) {
        r += p;
        if (r >= q) r -= q;
        if (r == 0) continue;
        acc += static_cast<__int128>(2 * j - q) * static_cast<__int128>(2 * r - q);
    }
    // cpp_int has no __int128 constructor on every platform; split by hand.
    const bool negative = acc < 0;
    unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-acc) : static_cast<unsigned __int128>(acc);
    Integer out = static_cast<std::uint64_t>(mag >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(mag);
    return negative ? Integer(-out) : out;
}

}  // namespace detail

/// s(p, q) = sum_{j=0}^{q-1} ((j/q)) ((pj/q)), evaluated term by term in O(q).
inline Rational dedekind_sum(const Integer& p, const Integer& q) {
    if (q <= 0) throw DomainError("dedekind_sum: q must be positive, got " + q.str());
    const Integer pr = mod(p, q);
    // Each product of sawtooth values has denominator dividing 4q^2.
    const Integer denom = 4 * q * q;
    const auto q64 = to_int64(q);
    if (q64 && *q64 < (std::int64_t{1} << 40)) {
        return Rational(detail::naive_dedekind_numerator(pr.convert_to<std::int64_t>(), *q64), denom);
    }
    Integer acc = 0;
    Integer r = 0;
    for (Integer j = 1; j < q; ++j) {
        r += pr;
        if (r >= q) r -= q;
        if (r == 0) continue;
        acc += (2 * j - q) * (2 * r - q);
    }
    return Rational(acc, denom);
}

/// Same value as dedekind_sum, via gcd cancellation and the reciprocity law.
/// `steps`, if given, receives the number of reciprocity applications.
inline Rational dedekind_sum_fast(const Integer& p, const Integer& q, std::size_t* steps = nullptr) {
    if (q <= 0) throw DomainError("dedekind_sum_fast: q must be positive, got " + q.str());
    const Integer g = gcd(abs(p), q);
    Integer a = mod(p / g, q / g);
    Integer b = q / g;
    Rational acc;
    int sign = 1;
    std::size_t n = 0;
    // Invariant: the answer is acc + sign * s(a, b), gcd(a, b) = 1, 0 <= a < b.
    while (b > 1) {
        if (2 * a > b) {  // s(a, b) = -s(b - a, b) keeps the quotients large
            a = b - a;
            sign = -sign;
        }
        const Rational defect = Rational(a, b) + Rational(b, a) + Rational(Integer(1), a * b) - Rational(3);
        acc += sign > 0 ? defect / Rational(12) : -defect / Rational(12);
        sign = -sign;
        Integer next = mod(b, a);
        b = a;
        a = std::move(next);
        ++n;
    }
    if (steps) *steps = n;
    return acc;
}

/// R(p, q) = p/q + q/p + gcd(p, q)^2/(pq) - 3, so that s(p,q) + s(q,p) = R(p,q)/12.
inline Rational reciprocity_defect(const Integer& p, const Integer& q) {
    if (p < 1 || q < 1)
        throw DomainError("reciprocity_defect: arguments must be positive, got (" + p.str() + ", " + q.str() + ")");
    const Integer g = gcd(p, q);
    return Rational(p, q) + Rational(q, p) + Rational(g * g, p * q) - Rational(3);
}

/// Both sides of the three-term law for coprime pairs (p, q) and (u, v).
struct ThreeTermSides {
    Rational lhs;
    Rational rhs;
};

inline ThreeTermSides three_term_sides(const Integer& p, const Integer& q, const Integer& u, const Integer& v) {
    if (p < 1 || q < 1 || u < 1 || v < 1) throw DomainError("three_term_check: arguments must be positive");
    if (gcd(p, q) != 1 || gcd(u, v) != 1) throw DomainError("three_term_check: requires gcd(p,q) = gcd(u,v) = 1");
    const Bezout bz = extended_gcd(p, q);  // p*p' + q*q' = 1
    const Integer& pp = bz.x;
    const Integer& qq = bz.y;
    const Integer t = p * v + q * u;
    ThreeTermSides sides;
    sides.lhs = dedekind_sum_fast(p, q) + dedekind_sum_fast(u, v);
    sides.rhs = dedekind_sum_fast(pp * u - qq * v, t) - Rational(1, 4) +
                (Rational(q, v * t) + Rational(v, q * t) + Rational(t, q * v)) / Rational(12);
    return sides;
}

/// s(p,q) + s(u,v) = s(p'u - q'v, t) - 1/4 + (q/(vt) + v/(qt) + t/(qv))/12, t = pv + qu.
inline bool three_term_check(const Integer& p, const Integer& q, const Integer& u, const Integer& v) {
    const ThreeTermSides s = three_term_sides(p, q, u, v);
    return s.lhs == s.rhs;
}

}  // namespace splice
