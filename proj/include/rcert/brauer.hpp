#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "rcert/quadform.hpp"

namespace rcert {

// Formal sum of quaternion symbols (a,b) with monomial entries: a 2-torsion
// Brauer class presented by generators. Addition is multiset union followed
// by cancellation of duplicate pairs.
struct SymbolSum {
    std::vector<std::pair<MonomialClass, MonomialClass>> symbols;
    FieldTag field;

    static SymbolSum make(FieldTag field,
                          std::vector<std::pair<MonomialClass, MonomialClass>> symbols = {});

    SymbolSum operator+(const SymbolSum& o) const;
    bool is_trivial_presentation() const { return symbols.empty(); }

    std::string to_string() const;
};

// Atomic presentation over the generators (-1, u, p, t): the coordinates of
// a sum in the 10 unordered generator pairs, after bilinear expansion and
// the rewrites (x,x) -> (-1,x), (x,-x) -> 0. Equal vectors mean provably
// equal classes.
using AtomicSymbols = std::array<bool, 10>;

AtomicSymbols atomic_symbols(const SymbolSum& s);
// Reduction-aware equality: slots are reduced with the ambient prime before
// expansion (sound: reduction only rewrites values by squares).
bool symbol_sums_equal(const SymbolSum& x, const SymbolSum& y);

// Fixed point of the rewrite system: expand both slots over the basis via
// bilinearity, apply (x,-x)=0 and (x,x)=(-1,x), cancel 2-torsion duplicates,
// re-emit greedily by shared slot, sorted canonically.
SymbolSum milnor_normalize(const SymbolSum& s);

// Complete invariant of monomial-entry 2-torsion classes over Q_p((t)):
// the Hilbert value of the t-free (unramified) part over Q_p, and the tame
// residue square class.
struct BrauerResidueInvariants {
    int unramified_part = 1;
    LocalSquareClass ramified_part;

    bool trivial() const { return unramified_part == 1 && ramified_part.trivial(); }
    bool operator==(const BrauerResidueInvariants& o) const = default;
};

BrauerResidueInvariants brauer_residue_invariants(const SymbolSum& s);

// Tag change along the embedding into the Laurent completion.
SymbolSum specialize_to_laurent(const SymbolSum& s);

// Nonsplitness over the Laurent completion carried by the tag (Q_p((t)) or
// K((t))), decided by residue invariants and cross-checked against
// anisotropy of the norm form whenever the class compacts to a single
// symbol. Disagreement of the two routes is an internal error.
bool is_nonsplit_over_completion(const SymbolSum& s);

// Element of H^3(F, mu_2) given by a cup product of three monomial classes,
// with the decision record.
struct H3Class {
    bool nonzero = false;
    // Residue route: the t-adic residue symbol over Q_p and its Hilbert value.
    std::string residue_symbol;
    int residue_value = 1;
    // Pfister route: the associated 3-fold Pfister form over Q_p((t)).
    std::string pfister_form;
    bool pfister_anisotropic = false;
};

// Decides (a) u (b) u (c) != 0 over Q_p((t)) by two independent routes
// (residue to a Q_p 2-symbol, and anisotropy of <<a,b,c>>), which must
// agree; nonzero over the completion certifies nonzero over Q_p(t).
H3Class h3_symbol_is_nonzero(long prime, const MonomialClass& a, const MonomialClass& b,
                             const MonomialClass& c);

// Canonical presentation of a cup-product triple: trilinear expansion over
// the generators, (x,x) -> (-1,x) rewrites, and removal of atoms containing
// a t-free pair that splits over Q_p (sound: a split 2-factor kills the cup
// product over F as well).
using AtomicTriple = std::array<int, 3>; // generator indices, sorted
std::vector<AtomicTriple> normalize_triple(long prime, const MonomialClass& a,
                                           const MonomialClass& b, const MonomialClass& c);
std::string triple_to_string(const std::vector<AtomicTriple>& atoms);

} // namespace rcert
