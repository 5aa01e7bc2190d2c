#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

#include "rcert/errors.hpp"

namespace rcert {

// Truncated exact arithmetic in Q_p for an odd prime p.
//
// A nonzero value is stored as  unit * p^valuation + O(p^{valuation+N})
// with unit in [1, p^N) coprime to p and N the number of significant
// p-adic digits. A value whose computed digits all vanish is kept as an
// explicit "zero to O(p^bound)" state instead of being collapsed to 0,
// so that square-class decisions can refuse to run on it.

int legendre(const mpz_class& a, long p);
bool is_odd_prime(long p);
long canonical_nonsquare_unit(long p);

// Square root mod an odd prime (Tonelli-Shanks); returns the root whose
// least residue is smallest of the pair. Throws NotSquare.
mpz_class sqrt_mod_prime(const mpz_class& a, long p);

mpz_class pow_p(long p, long k);

// Square class of Q_p*/Q_p*^2 = {1, u, p, u*p} for p odd, as two bits
// over the basis (u = nonsquare unit, p).
struct LocalSquareClass {
    bool unit_nonsquare = false;
    bool odd_valuation = false;

    bool trivial() const { return !unit_nonsquare && !odd_valuation; }
    LocalSquareClass operator+(const LocalSquareClass& o) const {
        return {unit_nonsquare != o.unit_nonsquare, odd_valuation != o.odd_valuation};
    }
    bool operator==(const LocalSquareClass& o) const = default;
    std::string to_string() const;
};

// One of the three quadratic extensions of Q_p (p odd) up to isomorphism:
// Q_p(sqrt u), Q_p(sqrt p), Q_p(sqrt (u*p)).
struct QuadExtension {
    enum class Kind { unramified, ramified, ramified_twisted };
    long base_prime = 0;
    Kind kind = Kind::ramified;

    LocalSquareClass adjoined_class() const;
    bool operator==(const QuadExtension& o) const = default;
    std::string to_string() const;
};

class PAdicNumber {
public:
    static constexpr int default_precision = 32;

    static PAdicNumber zero(long p, int precision = default_precision);
    static PAdicNumber from_integer(long p, const mpz_class& n, int precision = default_precision);
    static PAdicNumber from_rational(long p, const mpz_class& num, const mpz_class& den,
                                     int precision = default_precision);
    // unit * p^valuation with unit already reduced; unit must be coprime to p.
    static PAdicNumber from_unit_and_valuation(long p, const mpz_class& unit, long valuation,
                                               int precision = default_precision);

    long prime() const { return prime_; }
    int precision() const { return precision_; }
    bool is_zero_to_precision() const { return zero_; }
    bool is_exact_zero() const;

    // Exact valuation; throws ZeroToPrecision on a zero-to-precision value.
    long valuation() const;
    // Lower bound on the valuation, defined for every value.
    long min_valuation() const { return valuation_; }
    bool has_valuation_at_least(long k) const { return valuation_ >= k; }

    const mpz_class& unit() const;
    // Unit part reduced mod p (in [1, p-1]).
    long unit_mod_p() const;

    PAdicNumber operator+(const PAdicNumber& o) const;
    PAdicNumber operator-(const PAdicNumber& o) const;
    PAdicNumber operator-() const;
    PAdicNumber operator*(const PAdicNumber& o) const;
    PAdicNumber operator/(const PAdicNumber& o) const;
    PAdicNumber inverse() const;
    PAdicNumber pow(long k) const;

    LocalSquareClass square_class() const;

    std::string to_string() const;

private:
    PAdicNumber(long p, int precision) : prime_(p), precision_(precision) {}

    static void check_same_prime(const PAdicNumber& a, const PAdicNumber& b);

    long prime_ = 0;
    bool zero_ = true;
    // Exact valuation when nonzero; a lower bound on the valuation when zero_.
    long valuation_ = 0;
    int precision_ = default_precision;
    mpz_class unit_ = 0;
};

// Sentinel valuation bound carried by an exact zero.
inline constexpr long kExactZeroValuation = INT64_MAX / 4;

bool is_square(const PAdicNumber& x);
PAdicNumber hensel_sqrt(const PAdicNumber& x);

// Tame Hilbert symbol (a,b)_{Q_p}, p odd:
//   (-1)^{v(a) v(b) (p-1)/2} * legendre(u_a)^{v(b)} * legendre(u_b)^{v(a)}.
int hilbert_symbol(const PAdicNumber& a, const PAdicNumber& b);

// Squareness of x in the quadratic extension: the kernel of
// Q_p*/Q_p*^2 -> K*/K*^2 is {1, d} for K = Q_p(sqrt d).
bool is_square_in_extension(const PAdicNumber& x, const QuadExtension& ext);
bool is_square_class_in_extension(const LocalSquareClass& c, const QuadExtension& ext);

// Hilbert symbol over the quadratic extension for arguments from Q_p*.
// Both arguments acquire even K-valuation (ramified case) or a residue
// field where every base unit is a square (unramified case), so the tame
// formula evaluates to +1; kept as a function for uniform call sites.
int ext_hilbert_symbol(const PAdicNumber& a, const PAdicNumber& b, const QuadExtension& ext);

// Solves x0^2 - b*x1^2 = c with b a nonsquare unit (the norm equation of
// the unramified quadratic extension). Requires v(c) even; exhausts
// (x0, x1) mod p for a nonsingular point and Hensel-lifts the quadratic
// in one variable holding the other fixed.
std::pair<PAdicNumber, PAdicNumber> solve_norm_equation(const PAdicNumber& b, const PAdicNumber& c);

} // namespace rcert
