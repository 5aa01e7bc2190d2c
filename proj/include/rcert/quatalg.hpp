#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "rcert/brauer.hpp"

namespace rcert {

// Quaternion algebra (a, b) over a tagged field: basis {1, i, j, ij} with
// i^2 = a, j^2 = b, ij = -ji. The split_field kind models matrices over the
// center itself (elements are scalars, the canonical involution is the
// identity); it carries the adjoint involutions of plain quadratic forms.
class QuaternionAlgebra {
public:
    enum class Kind { quaternion, split_field };

    static std::shared_ptr<const QuaternionAlgebra> make(FieldTag field, LaurentPoly a, LaurentPoly b);
    static std::shared_ptr<const QuaternionAlgebra> make_field(FieldTag field,
                                                               int precision = PAdicNumber::default_precision);

    Kind kind() const { return kind_; }
    const FieldTag& field() const { return field_; }
    const LaurentPoly& a() const;
    const LaurentPoly& b() const;
    long prime() const { return field_.prime; }
    int precision() const { return precision_; }
    int degree() const { return kind_ == Kind::quaternion ? 2 : 1; }

    SymbolSum brauer_class() const;
    std::string to_string() const;

private:
    QuaternionAlgebra(Kind k, FieldTag f, LaurentPoly a, LaurentPoly b, int precision)
        : kind_(k), field_(f), a_(std::move(a)), b_(std::move(b)), precision_(precision) {}

    Kind kind_;
    FieldTag field_;
    LaurentPoly a_, b_;
    int precision_;
};

using AlgebraPtr = std::shared_ptr<const QuaternionAlgebra>;

class QuaternionElement {
public:
    static QuaternionElement zero(const AlgebraPtr& alg);
    static QuaternionElement one(const AlgebraPtr& alg);
    static QuaternionElement scalar(const AlgebraPtr& alg, const LaurentPoly& x0);
    // coords over (1, i, j, ij)
    static QuaternionElement make(const AlgebraPtr& alg, LaurentPoly x0, LaurentPoly x1, LaurentPoly x2,
                                  LaurentPoly x3);
    static QuaternionElement basis(const AlgebraPtr& alg, int index); // 0..3

    const AlgebraPtr& algebra() const { return alg_; }
    const LaurentPoly& coord(int k) const { return x_[k]; }

    bool is_zero() const;
    bool is_scalar() const;
    bool is_pure() const { return x_[0].is_zero(); }

    QuaternionElement operator+(const QuaternionElement& o) const;
    QuaternionElement operator-(const QuaternionElement& o) const;
    QuaternionElement operator-() const;
    QuaternionElement operator*(const QuaternionElement& o) const;
    QuaternionElement scale(const LaurentPoly& c) const;

    QuaternionElement conj() const;
    LaurentPoly nrd() const; // x0^2 - a x1^2 - b x2^2 + ab x3^2
    // Inverse conj(x)/nrd(x); requires a monomial reduced norm.
    QuaternionElement inverse() const;

    // (basis index, coefficient) when exactly one coordinate is a nonzero
    // monomial.
    std::optional<std::pair<int, LaurentPoly>> single_component() const;

    static bool equal(const QuaternionElement& x, const QuaternionElement& y);
    std::string to_string() const;

private:
    explicit QuaternionElement(AlgebraPtr alg, std::array<LaurentPoly, 4> x)
        : alg_(std::move(alg)), x_(std::move(x)) {}

    AlgebraPtr alg_;
    std::array<LaurentPoly, 4> x_;
};

class QuatMatrix {
public:
    static QuatMatrix zero(const AlgebraPtr& alg, int n);
    static QuatMatrix identity(const AlgebraPtr& alg, int n);
    static QuatMatrix diagonal(std::vector<QuaternionElement> entries);

    int size() const { return n_; }
    const AlgebraPtr& algebra() const { return alg_; }
    const QuaternionElement& at(int r, int c) const { return m_[static_cast<size_t>(r) * n_ + c]; }
    void set(int r, int c, const QuaternionElement& v);

    QuatMatrix operator*(const QuatMatrix& o) const;
    QuatMatrix operator+(const QuatMatrix& o) const;
    QuatMatrix conj_transpose() const;
    QuatMatrix scale(const LaurentPoly& c) const;

    bool is_diagonal() const;
    // lambda * identity with lambda a central scalar
    std::optional<LaurentPoly> central_scalar() const;

    std::string to_string() const;

private:
    QuatMatrix(AlgebraPtr alg, int n) : alg_(std::move(alg)), n_(n) {}

    AlgebraPtr alg_;
    int n_;
    std::vector<QuaternionElement> m_;
};

enum class InvolutionType { orthogonal, symplectic, unitary };
std::string to_string(InvolutionType t);

// X -> D conj(X)^T D^{-1} on M_n(H), D diagonal with invertible entries of
// uniform conjugation sign (all pure or all scalar); for the unitary kind
// the map is composed with the extension automorphism gamma, which fixes
// the represented M_n(H) part elementwise.
class Involution {
public:
    enum class Kind { first_kind, unitary_twist };

    static Involution first_kind(QuatMatrix D);
    static Involution unitary_twist(QuatMatrix D, MonomialClass twist);

    Kind kind() const { return kind_; }
    InvolutionType type() const { return type_; }
    // Type of the underlying first-kind involution (meaningful for the
    // unitary kind, where type() is unitary by definition).
    InvolutionType underlying_type() const { return underlying_type_; }
    const QuatMatrix& inner() const { return D_; }
    const MonomialClass& twist() const { return twist_; }
    int size() const { return D_.size(); }
    int algebra_degree() const { return D_.size() * D_.algebra()->degree(); }
    int fixed_space_dimension() const { return fixed_dim_; }

    QuatMatrix apply(const QuatMatrix& X) const;
    std::string to_string() const;

private:
    Involution(Kind k, QuatMatrix D, MonomialClass twist);
    void classify();

    Kind kind_;
    QuatMatrix D_;
    std::vector<QuaternionElement> dinv_;
    MonomialClass twist_;
    InvolutionType type_ = InvolutionType::orthogonal;
    InvolutionType underlying_type_ = InvolutionType::orthogonal;
    int fixed_dim_ = 0;
};

// Diagonal epsilon-hermitian form over (Q, canonical involution); skew
// (epsilon = -1) entries are pure quaternions.
struct SkewHermitianForm {
    std::vector<QuaternionElement> entries;
    int sign = -1;
    AlgebraPtr algebra;

    static SkewHermitianForm make(AlgebraPtr alg, std::vector<QuaternionElement> entries, int sign = -1);
    int rank() const { return static_cast<int>(entries.size()); }
    std::string to_string() const;
};

// Adjoint involution of a diagonal form: Int(diag(d_i)^{-1}) o conj-transpose.
Involution adjoint_involution(const SkewHermitianForm& h);

// disc(sigma) = class of (-1)^n prod Nrd(d_i) for an orthogonal first-kind
// involution with pure diagonal entries.
MonomialClass involution_discriminant(const Involution& sigma);

// disc(h) = (-1)^{m(m-1)/2} Nrd(M(h)) with m the degree of the ambient
// matrix algebra.
MonomialClass hermitian_discriminant(const SkewHermitianForm& h);

// sigma(g) * g when it is a central scalar; NotSimilitude otherwise.
LaurentPoly multiplier(const Involution& sigma, const QuatMatrix& g);

LaurentPoly nrd_diag_matrix(const QuatMatrix& X);
// Diagonal matrices, or matrices over the commutative center (determinant).
LaurentPoly nrd_matrix(const QuatMatrix& X);

// Nrd(g) = +mu(g)^m test for an orthogonal involution on an algebra of
// even degree 2m.
bool is_proper_similitude(const Involution& sigma, const QuatMatrix& g);

// Brauer class of the discriminant algebra of (M_n(H) x K, sigma x gamma),
// K = F(sqrt d): lambda^n M_n(H) + (d, disc sigma), i.e. H enters for odd n.
SymbolSum discriminant_algebra_class(long n, const AlgebraPtr& H, const MonomialClass& d,
                                     const MonomialClass& disc_sigma);

// Clifford components of a tensor product of two orthogonal factors with
// the given discriminants: ((d1,d2), Q + (d1,d2)).
std::pair<SymbolSum, SymbolSum> clifford_component_classes(const MonomialClass& disc1,
                                                           const MonomialClass& disc2,
                                                           const SymbolSum& q_class);

// Element x0 + x1 e_k in the commutative subfield generated by the
// designated basis element (1 = i, 2 = j) with Nrd = c.
QuaternionElement find_unit_with_nrd(const AlgebraPtr& H, const LaurentPoly& c, int generator);

// Pure quaternion w with w^2 = target anticommuting with the given basis
// direction.
QuaternionElement find_pure_with_square(const AlgebraPtr& Q, const LaurentPoly& target,
                                        const QuaternionElement& anticommuting_with);

// Solves X^2 - s Y^2 = C for monomial Laurent s, C; exact monomial solution.
std::pair<LaurentPoly, LaurentPoly> solve_x2_minus_sy2(const LaurentPoly& s, const LaurentPoly& C);

} // namespace rcert
