#pragma once

#include <vector>

// Brute-force isotropy oracle over Z_p for diagonal forms with integer
// coefficients of p-valuation 0 or 1, independent of the invariant-based
// classifier it checks.
//
// Search for primitive zeros mod p^{2w+1} accepted by Hensel's criterion:
// a zero x with some coordinate satisfying v(2 c_i x_i) = w and
// Q(x) = 0 mod p^{2w+1} lifts to Z_p. Zeros are normalized so that the
// witnessing coordinate is 1, which is where a primitive exact zero can
// always be scaled:
//   w = 0: the unit coordinate sits at a unit-coefficient slot; the zero
//          survives reduction mod p.
//   w = 1: every unit-coefficient slot carries a coordinate divisible by p,
//          so primitivity forces a unit coordinate at a p-slot; the zero
//          survives reduction mod p^3 with unit-slot coordinates in p*Z.
// An exact primitive zero always has w <= 1 for these coefficients, so the
// two passes are complete; both are sound by the lifting criterion.

namespace rcert_test {

inline long mod_pos(long long x, long long m) {
    long long r = x % m;
    if (r < 0) r += m;
    return static_cast<long>(r);
}

inline bool oracle_isotropic(long p, const std::vector<long>& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    if (n == 0) return false;
    const long p2 = p * p;
    const long p3 = p * p * p;

    auto vp = [p](long c) {
        long v = 0;
        while (c % p == 0) {
            c /= p;
            ++v;
        }
        return v;
    };

    // Pass A (w = 0): x_i = 1 at a unit-coefficient slot, others mod p,
    // Q(x) = 0 mod p.
    for (int i = 0; i < n; ++i) {
        if (vp(coeffs[i]) != 0) continue;
        std::vector<long> x(static_cast<size_t>(n), 0);
        x[static_cast<size_t>(i)] = 1;
        std::vector<int> free;
        for (int k = 0; k < n; ++k)
            if (k != i) free.push_back(k);
        long total = 1;
        for (size_t k = 0; k < free.size(); ++k) total *= p;
        for (long code = 0; code < total; ++code) {
            long c = code;
            for (int k : free) {
                x[static_cast<size_t>(k)] = c % p;
                c /= p;
            }
            long long q = 0;
            for (int k = 0; k < n; ++k)
                q += static_cast<long long>(coeffs[k]) % p3 * x[static_cast<size_t>(k)] % p3 *
                     x[static_cast<size_t>(k)];
            if (mod_pos(q, p) == 0) return true;
        }
    }

    // Pass B (w = 1): x_i = 1 at a p-coefficient slot; unit slots carry
    // p*y with y mod p; other p-slots range mod p^2; Q(x) = 0 mod p^3.
    for (int i = 0; i < n; ++i) {
        if (vp(coeffs[i]) != 1) continue;
        std::vector<int> unit_slots, p_slots;
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            (vp(coeffs[k]) == 0 ? unit_slots : p_slots).push_back(k);
        }
        long total = 1;
        for (size_t k = 0; k < unit_slots.size(); ++k) total *= p;
        for (size_t k = 0; k < p_slots.size(); ++k) total *= p2;
        for (long code = 0; code < total; ++code) {
            long c = code;
            std::vector<long> x(static_cast<size_t>(n), 0);
            x[static_cast<size_t>(i)] = 1;
            for (int k : unit_slots) {
                x[static_cast<size_t>(k)] = p * (c % p);
                c /= p;
            }
            for (int k : p_slots) {
                x[static_cast<size_t>(k)] = c % p2;
                c /= p2;
            }
            long long q = 0;
            for (int k = 0; k < n; ++k) {
                long xv = x[static_cast<size_t>(k)];
                long long term = mod_pos(coeffs[k], p3);
                term = term * (static_cast<long long>(xv) * xv % p3) % p3;
                q = (q + term) % p3;
            }
            if (mod_pos(q, p3) == 0) return true;
        }
    }
    return false;
}

} // namespace rcert_test
