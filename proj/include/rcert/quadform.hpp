#pragma once

#include <utility>
#include <vector>

#include "rcert/funfield.hpp"

namespace rcert {

// Diagonal quadratic form with monomial square-class entries over a tagged
// field. The API is isometry-invariant: everything depends on the entries
// only up to squares.
struct DiagonalForm {
    std::vector<MonomialClass> entries;
    FieldTag field;

    static DiagonalForm make(std::vector<MonomialClass> entries, FieldTag field);

    int dimension() const { return static_cast<int>(entries.size()); }
    DiagonalForm scaled(const MonomialClass& lambda) const;
    DiagonalForm negated() const { return scaled(MonomialClass::minus_one()); }
    DiagonalForm direct_sum(const DiagonalForm& o) const;

    std::string to_string() const;
};

// Complete isometry invariants over Q_p: dimension, signed discriminant
// (-1)^{n(n-1)/2} * prod a_i, and the Hasse invariant prod_{i<j} (a_i,a_j).
struct LocalInvariants {
    int dimension = 0;
    LocalSquareClass discriminant;
    int hasse = 1;

    bool operator==(const LocalInvariants& o) const = default;
};

// n-fold Pfister form <<a_1,...,a_n>> = <1,-a_1> x ... x <1,-a_n>.
DiagonalForm pfister(const std::vector<MonomialClass>& slots, FieldTag field);

LocalInvariants local_invariants(const DiagonalForm& q);

// Isotropy over Q_p (dimension criteria on (d, hasse)) or over a quadratic
// extension of Q_p for entries from the base monomial group.
bool is_isotropic_local(const DiagonalForm& q);

// Residue decomposition q = q1 + t*q2 over a Laurent field, by parity of
// the t-exponent; entries of the parts have the t-bit cleared and live over
// the residue field.
std::pair<DiagonalForm, DiagonalForm> springer_split(const DiagonalForm& q);

// Anisotropy over Q_p((t)) or K((t)): both residue forms anisotropic.
bool is_anisotropic_laurent(const DiagonalForm& q);

// Canonical anisotropic kernel over Q_p, reconstructed from the Witt-class
// invariants; dimension <= 4.
DiagonalForm witt_reduce_local(const DiagonalForm& q);

// Tag change along F = Q_p(t) -> Q_p((t)) (and K-variants); values unchanged.
DiagonalForm specialize_to_laurent(const DiagonalForm& q);
LaurentPoly specialize_to_laurent(const LaurentPoly& x); // identity on values

// Parses "<1,-t,-u,t*u>" and "<<u,p>>" (entries via parse_monomial_class).
DiagonalForm parse_form(const std::string& text, FieldTag field);

} // namespace rcert
