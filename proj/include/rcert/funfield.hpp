#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rcert/padic.hpp"

namespace rcert {

// Field tower of the verification: Q_p and its quadratic extensions at the
// bottom, the rational function field F = Q_p(t) in the middle (scalars
// restricted to Laurent polynomials), and the completions Q_p((t)), K((t))
// where all anisotropy decisions are made. Every form, symbol and algebra
// carries exactly one tag; cross-tag operations are rejected except the
// embeddings Qp -> RationalFunction -> LaurentQp and QuadExt -> LaurentQuadExt.
struct FieldTag {
    enum class Kind { Qp, QuadExt, LaurentQp, LaurentQuadExt, RationalFunction };

    Kind kind = Kind::Qp;
    long prime = 0;
    QuadExtension::Kind ext_kind = QuadExtension::Kind::ramified;

    static FieldTag qp(long p) { return {Kind::Qp, p, {}}; }
    static FieldTag quad_ext(const QuadExtension& e) { return {Kind::QuadExt, e.base_prime, e.kind}; }
    static FieldTag laurent_qp(long p) { return {Kind::LaurentQp, p, {}}; }
    static FieldTag laurent_quad_ext(const QuadExtension& e) {
        return {Kind::LaurentQuadExt, e.base_prime, e.kind};
    }
    static FieldTag rational_function(long p) { return {Kind::RationalFunction, p, {}}; }

    bool is_laurent() const { return kind == Kind::LaurentQp || kind == Kind::LaurentQuadExt; }
    bool has_extension() const { return kind == Kind::QuadExt || kind == Kind::LaurentQuadExt; }
    QuadExtension extension() const;

    // Residue-level field of a Laurent tag (t-adic residue).
    FieldTag residue() const;
    // Image of RationalFunction/Qp under the documented embeddings.
    FieldTag laurent() const;

    bool operator==(const FieldTag& o) const = default;
    std::string to_string() const;
};

// Laurent polynomial in t with truncated p-adic coefficients. Finitely many
// nonzero coefficients, none of them zero to precision; |exponent| <= 64.
class LaurentPoly {
public:
    static constexpr long max_degree = 64;

    LaurentPoly(long p, int precision = PAdicNumber::default_precision)
        : prime_(p), precision_(precision) {}

    static LaurentPoly constant(long p, const mpz_class& num, const mpz_class& den = 1,
                                int precision = PAdicNumber::default_precision);
    static LaurentPoly from_padic(const PAdicNumber& c);
    static LaurentPoly monomial(long exp, const PAdicNumber& c);
    static LaurentPoly t(long p, int precision = PAdicNumber::default_precision);

    long prime() const { return prime_; }
    int precision() const { return precision_; }
    const std::map<long, PAdicNumber>& coefficients() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_monomial() const { return coeffs_.size() == 1; }
    long monomial_exponent() const;
    const PAdicNumber& monomial_coefficient() const;
    PAdicNumber coefficient(long exp) const;

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    // Division by a monomial divisor (the only division the scalars need).
    LaurentPoly divide_by_monomial(const LaurentPoly& m) const;
    LaurentPoly monomial_inverse() const;

    void set_coefficient(long exp, const PAdicNumber& c);

    // True when x - y has no coefficient distinguishable from zero.
    static bool equal_to_precision(const LaurentPoly& x, const LaurentPoly& y);
    // Minimum p-adic valuation bound over the coefficients of x - y
    // (kExactZeroValuation when every coefficient cancels exactly).
    static long difference_valuation(const LaurentPoly& x, const LaurentPoly& y);

    std::string to_string() const;

private:
    long prime_;
    int precision_;
    std::map<long, PAdicNumber> coeffs_;

    void check_degree(long exp) const;
};

// Square class of a monomial +-u^a p^b t^c over the generating set
// (-1, u, p, t); the group law is bitwise xor. The set is generating but
// not independent: -1 falls into the square class of 1 (p = 1 mod 4) or
// of u (p = 3 mod 4), so classes are stored un-reduced and compared after
// reduction.
struct MonomialClass {
    bool s = false; // -1
    bool a = false; // u
    bool b = false; // p
    bool c = false; // t

    static MonomialClass one() { return {}; }
    static MonomialClass minus_one() { return {true, false, false, false}; }
    static MonomialClass u() { return {false, true, false, false}; }
    static MonomialClass p() { return {false, false, true, false}; }
    static MonomialClass t() { return {false, false, false, true}; }

    bool is_one() const { return !s && !a && !b && !c; }
    MonomialClass operator+(const MonomialClass& o) const {
        return {s != o.s, a != o.a, b != o.b, c != o.c};
    }
    MonomialClass operator-() const { return *this + minus_one(); }
    bool operator==(const MonomialClass& o) const = default;
    bool operator<(const MonomialClass& o) const;

    bool t_free() const { return !c; }
    MonomialClass without_t() const { return {s, a, b, false}; }

    // Exact representative (-1)^s u^a p^b t^c with u the canonical
    // nonsquare unit of p.
    LaurentPoly representative(long prime, int precision = PAdicNumber::default_precision) const;
    PAdicNumber representative_padic(long prime, int precision = PAdicNumber::default_precision) const;
    LocalSquareClass local_class(long prime) const;

    std::string to_string() const;
};

// Folds the redundant sign generator: for p = 1 mod 4, -1 is a square;
// for p = 3 mod 4, -1 lies in the class of u.
MonomialClass reduced(const MonomialClass& c, long prime);
bool classes_equal(const MonomialClass& x, const MonomialClass& y, long prime);

// Square class of a monomial Laurent value c*t^k; exact (uses the local
// square class of c and the parity of k). Throws NotMonomial otherwise.
MonomialClass monomial_class(const LaurentPoly& x);

// Square class of a Q_p scalar as a (reduced) monomial class.
MonomialClass monomialclass_of_padic(const PAdicNumber& c);

// Accepts "1", "-1", "u" (alias "b"), "p", "t", integer literals, and
// '*'-joined products with an optional leading '-'.
MonomialClass parse_monomial_class(const std::string& text, long prime);

} // namespace rcert
