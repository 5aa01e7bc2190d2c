#include <doctest.h>

#include <random>

#include "rcert/quatalg.hpp"

using namespace rcert;

namespace {

const MonomialClass kU = MonomialClass::u();
const MonomialClass kP = MonomialClass::p();
const MonomialClass kT = MonomialClass::t();

LaurentPoly C(long p, long n) { return LaurentPoly::constant(p, n); }

// H = (b, t) over Q_p(t): i^2 = b (nonsquare unit), j^2 = t.
AlgebraPtr make_H(long p) {
    long b = canonical_nonsquare_unit(p);
    return QuaternionAlgebra::make(FieldTag::rational_function(p), C(p, b), LaurentPoly::t(p));
}

// Q = (p t, u) over Q_p(t): i^2 = p t, j^2 = u.
AlgebraPtr make_Q(long p) {
    long u = canonical_nonsquare_unit(p);
    return QuaternionAlgebra::make(FieldTag::rational_function(p),
                                   LaurentPoly::monomial(1, PAdicNumber::from_integer(p, p)), C(p, u));
}

QuaternionElement random_element(std::mt19937& rng, const AlgebraPtr& alg) {
    auto coord = [&]() {
        LaurentPoly r(alg->prime());
        int terms = static_cast<int>(rng() % 3);
        for (int k = 0; k < terms; ++k) {
            long e = static_cast<long>(rng() % 5) - 2;
            long c = static_cast<long>(rng() % 19) - 9;
            if (c == 0) c = 2;
            r = r + LaurentPoly::monomial(e, PAdicNumber::from_integer(alg->prime(), c));
        }
        return r;
    };
    return QuaternionElement::make(alg, coord(), coord(), coord(), coord());
}

// Involution of the even-rank family: Int(diag(j/t, i/b, ..., i/b)) o conj-t.
Involution case1_sigma(const AlgebraPtr& H, int n) {
    long p = H->prime();
    QuaternionElement i = QuaternionElement::basis(H, 1);
    QuaternionElement j = QuaternionElement::basis(H, 2);
    std::vector<QuaternionElement> d;
    d.push_back(j.scale(LaurentPoly::t(p).monomial_inverse()));
    for (int k = 1; k < n; ++k) d.push_back(i.scale(H->a().monomial_inverse()));
    return Involution::first_kind(QuatMatrix::diagonal(d));
}

Involution case2_sigma(const AlgebraPtr& H, int n) {
    QuaternionElement i = QuaternionElement::basis(H, 1);
    QuaternionElement j = QuaternionElement::basis(H, 2);
    std::vector<QuaternionElement> d;
    d.push_back(i);
    for (int k = 1; k < n; ++k) d.push_back(j);
    return Involution::first_kind(QuatMatrix::diagonal(d));
}

} // namespace

TEST_CASE("multiplication table") {
    AlgebraPtr H = make_H(5);
    QuaternionElement i = QuaternionElement::basis(H, 1);
    QuaternionElement j = QuaternionElement::basis(H, 2);
    QuaternionElement ij = QuaternionElement::basis(H, 3);

    CHECK(QuaternionElement::equal(i * j, ij));
    CHECK(QuaternionElement::equal(j * i, -ij));
    CHECK(QuaternionElement::equal(i * i, QuaternionElement::scalar(H, H->a())));
    CHECK(QuaternionElement::equal(j * j, QuaternionElement::scalar(H, H->b())));
    CHECK(QuaternionElement::equal(ij * ij, QuaternionElement::scalar(H, -(H->a() * H->b()))));

    // (x0 + x1 i)^2 = x0^2 + a x1^2 + 2 x0 x1 i
    QuaternionElement x = QuaternionElement::scalar(H, C(5, 3)) + i.scale(C(5, 2));
    QuaternionElement sq = x * x;
    CHECK(LaurentPoly::equal_to_precision(sq.coord(0), C(5, 9) + H->a() * C(5, 4)));
    CHECK(LaurentPoly::equal_to_precision(sq.coord(1), C(5, 12)));
    CHECK(sq.coord(2).is_zero());
    CHECK(sq.coord(3).is_zero());
}

TEST_CASE("reduced norm and conjugation") {
    AlgebraPtr H = make_H(5); // (2, t)
    QuaternionElement i = QuaternionElement::basis(H, 1);
    QuaternionElement j = QuaternionElement::basis(H, 2);

    CHECK(LaurentPoly::equal_to_precision(i.nrd(), C(5, -2))); // -b
    QuaternionElement jt = j.scale(LaurentPoly::t(5).monomial_inverse());
    CHECK(classes_equal(monomial_class(jt.nrd()), MonomialClass::minus_one() + kT, 5));

    std::mt19937 rng(808);
    for (int iter = 0; iter < 500; ++iter) {
        AlgebraPtr alg = (iter % 2) ? make_H(5) : make_Q(7);
        QuaternionElement x = random_element(rng, alg);
        QuaternionElement y = random_element(rng, alg);
        CHECK(LaurentPoly::equal_to_precision((x * y).nrd(), x.nrd() * y.nrd()));
        CHECK(QuaternionElement::equal((x * y).conj(), y.conj() * x.conj()));
        QuaternionElement xc = x * x.conj();
        CHECK(xc.is_scalar());
        CHECK(LaurentPoly::equal_to_precision(xc.coord(0), x.nrd()));
    }
}

TEST_CASE("element inverse") {
    AlgebraPtr H = make_H(5);
    QuaternionElement j = QuaternionElement::basis(H, 2);
    CHECK(QuaternionElement::equal(j * j.inverse(), QuaternionElement::one(H)));
    QuaternionElement x = QuaternionElement::scalar(H, C(5, 1)) + j; // nrd = 1 - t, not monomial
    CHECK_THROWS_AS(x.inverse(), Error);
}

TEST_CASE("involution application") {
    AlgebraPtr H = make_H(5);
    Involution sigma = case1_sigma(H, 2);
    QuaternionElement i = QuaternionElement::basis(H, 1);
    QuaternionElement j = QuaternionElement::basis(H, 2);

    // sigma(diag(j, i)) = -diag(j, i)
    QuatMatrix X = QuatMatrix::diagonal({j, i});
    QuatMatrix sX = sigma.apply(X);
    QuatMatrix expect = X.scale(C(5, -1));
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            CHECK(QuaternionElement::equal(sX.at(r, c), expect.at(r, c)));

    QuatMatrix I = QuatMatrix::identity(H, 2);
    QuatMatrix sI = sigma.apply(I);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) CHECK(QuaternionElement::equal(sI.at(r, c), I.at(r, c)));

    std::mt19937 rng(909);
    for (int iter = 0; iter < 50; ++iter) {
        QuatMatrix A = QuatMatrix::zero(H, 2);
        QuatMatrix B = QuatMatrix::zero(H, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                A.set(r, c, random_element(rng, H));
                B.set(r, c, random_element(rng, H));
            }
        QuatMatrix ss = sigma.apply(sigma.apply(A));
        QuatMatrix anti = sigma.apply(A * B);
        QuatMatrix anti2 = sigma.apply(B) * sigma.apply(A);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                CHECK(QuaternionElement::equal(ss.at(r, c), A.at(r, c)));
                CHECK(QuaternionElement::equal(anti.at(r, c), anti2.at(r, c)));
            }
    }
}

TEST_CASE("involution types by fixed-space count") {
    AlgebraPtr H = make_H(5);
    for (int n : {2, 4, 6}) {
        Involution s = case1_sigma(H, n);
        CHECK(s.type() == InvolutionType::orthogonal);
        CHECK(s.fixed_space_dimension() == (2 * n) * (2 * n + 1) / 2);
    }
    CHECK(case2_sigma(H, 3).type() == InvolutionType::orthogonal);
    CHECK(case2_sigma(H, 3).fixed_space_dimension() == 6 * 7 / 2);

    // canonical involution on Q itself (n = 1, D = 1) is symplectic
    Involution canon = Involution::first_kind(QuatMatrix::identity(H, 1));
    CHECK(canon.type() == InvolutionType::symplectic);
    CHECK(canon.fixed_space_dimension() == 1);

    // scalar D on M_2(H) is adjoint to a hermitian form over the canonical
    // involution, hence symplectic
    Involution herm = Involution::first_kind(
        QuatMatrix::diagonal({QuaternionElement::one(H), QuaternionElement::scalar(H, C(5, -7))}));
    CHECK(herm.type() == InvolutionType::symplectic);

    // transpose-type involution on M_2(F) is orthogonal
    AlgebraPtr M = QuaternionAlgebra::make_field(FieldTag::rational_function(5));
    Involution tr = Involution::first_kind(
        QuatMatrix::diagonal({QuaternionElement::one(M), QuaternionElement::scalar(M, C(5, -5))}));
    CHECK(tr.type() == InvolutionType::orthogonal);

    Involution tau = Involution::unitary_twist(case1_sigma(H, 2).inner(), kP);
    CHECK(tau.type() == InvolutionType::unitary);
    CHECK(tau.underlying_type() == InvolutionType::orthogonal);

    // mixed pure and scalar diagonal is rejected
    QuaternionElement i = QuaternionElement::basis(H, 1);
    CHECK_THROWS_AS(Involution::first_kind(QuatMatrix::diagonal({i, QuaternionElement::one(H)})),
                    MalformedInvolution);
}

TEST_CASE("involution discriminants match the worked instances") {
    AlgebraPtr H5 = make_H(5);
    CHECK(classes_equal(involution_discriminant(case1_sigma(H5, 2)), kT + kU, 5));
    CHECK(classes_equal(involution_discriminant(case2_sigma(H5, 3)), kU, 5));

    AlgebraPtr H7 = make_H(7);
    CHECK(classes_equal(involution_discriminant(case1_sigma(H7, 4)), kT + kU, 7));
    CHECK(classes_equal(involution_discriminant(case2_sigma(H7, 5)), kU, 7));

    AlgebraPtr Q = make_Q(5);
    QuaternionElement i = QuaternionElement::basis(Q, 1);
    QuaternionElement j = QuaternionElement::basis(Q, 2);
    SkewHermitianForm h = SkewHermitianForm::make(Q, {j, j.scale(C(5, -5)), i});
    CHECK(classes_equal(involution_discriminant(adjoint_involution(h)), kP + kT, 5));

    // symplectic input rejected
    CHECK_THROWS_AS(involution_discriminant(Involution::first_kind(QuatMatrix::identity(H5, 1))),
                    Error);
}

TEST_CASE("involution and hermitian discriminants agree on the worked instances") {
    // the adjoint structure behind each family: case 1 is <j, i>, case 2 is
    // <i, j, j>, the rank-3 example is <j, -p j, i>
    for (long p : {5L, 7L}) {
        AlgebraPtr H = make_H(p);
        QuaternionElement i = QuaternionElement::basis(H, 1);
        QuaternionElement j = QuaternionElement::basis(H, 2);

        SkewHermitianForm f1 = SkewHermitianForm::make(H, {j, i});
        CHECK(classes_equal(hermitian_discriminant(f1),
                            involution_discriminant(adjoint_involution(f1)), p));
        CHECK(classes_equal(hermitian_discriminant(f1), kT + kU, p));

        SkewHermitianForm f2 = SkewHermitianForm::make(H, {i, j, j});
        CHECK(classes_equal(hermitian_discriminant(f2),
                            involution_discriminant(adjoint_involution(f2)), p));
        CHECK(classes_equal(hermitian_discriminant(f2), kU, p));

        AlgebraPtr Q = make_Q(p);
        QuaternionElement qi = QuaternionElement::basis(Q, 1);
        QuaternionElement qj = QuaternionElement::basis(Q, 2);
        SkewHermitianForm f3 = SkewHermitianForm::make(Q, {qj, qj.scale(C(p, -p)), qi});
        CHECK(classes_equal(hermitian_discriminant(f3),
                            involution_discriminant(adjoint_involution(f3)), p));
        CHECK(classes_equal(hermitian_discriminant(f3), kP + kT, p));
    }
}

TEST_CASE("hermitian discriminants") {
    AlgebraPtr Q = make_Q(5);
    QuaternionElement i = QuaternionElement::basis(Q, 1);
    QuaternionElement j = QuaternionElement::basis(Q, 2);

    SkewHermitianForm h3 = SkewHermitianForm::make(Q, {j, j.scale(C(5, -5)), i});
    CHECK(classes_equal(hermitian_discriminant(h3), kP + kT, 5));

    SkewHermitianForm h2 = SkewHermitianForm::make(Q, {j, j.scale(C(5, -5))});
    CHECK(hermitian_discriminant(h2).is_one());

    AlgebraPtr H = make_H(5);
    SkewHermitianForm h1 = SkewHermitianForm::make(H, {QuaternionElement::basis(H, 1)});
    CHECK(classes_equal(hermitian_discriminant(h1), kU, 5));

    CHECK_THROWS_AS(SkewHermitianForm::make(Q, {QuaternionElement::one(Q)}), NotPure);
}

TEST_CASE("multipliers of the worked similitudes") {
    for (long p : {5L, 7L}) { // covers both residue classes of p mod 4
        AlgebraPtr H = make_H(p);
        QuaternionElement i = QuaternionElement::basis(H, 1);
        QuaternionElement j = QuaternionElement::basis(H, 2);
        LaurentPoly minus_one = C(p, -1);

        // even-rank family: g = diag(j, u j, ..., u j), mu = -t
        Involution s1 = case1_sigma(H, 2);
        QuaternionElement u1 = find_unit_with_nrd(H, minus_one, 1);
        QuatMatrix g1 = QuatMatrix::diagonal({j, u1 * j});
        CHECK(LaurentPoly::equal_to_precision(multiplier(s1, g1), -LaurentPoly::t(p)));

        // odd-rank family: g = diag(j, j conj(u), j conj(u)), mu = t
        Involution s2 = case2_sigma(H, 3);
        QuaternionElement u2 = QuaternionElement::one(H);
        if (p % 4 == 1) {
            u2 = find_unit_with_nrd(H, minus_one, 2);
        } else {
            u2 = find_pure_with_square(H, minus_one, j);
        }
        QuatMatrix g2 = QuatMatrix::diagonal({j, j * u2.conj(), j * u2.conj()});
        CHECK(LaurentPoly::equal_to_precision(multiplier(s2, g2), LaurentPoly::t(p)));

        // identity
        CHECK(LaurentPoly::equal_to_precision(multiplier(s1, QuatMatrix::identity(H, 2)), C(p, 1)));
    }

    // rank-3 orthogonal example: g = diag(i', i', i), mu = -p t
    AlgebraPtr Q = make_Q(5);
    QuaternionElement i = QuaternionElement::basis(Q, 1);
    QuaternionElement j = QuaternionElement::basis(Q, 2);
    SkewHermitianForm h = SkewHermitianForm::make(Q, {j, j.scale(C(5, -5)), i});
    Involution sh = adjoint_involution(h);
    LaurentPoly mpt = LaurentPoly::monomial(1, PAdicNumber::from_integer(5, -5));
    QuaternionElement iprime = find_pure_with_square(Q, mpt, j);
    QuatMatrix g = QuatMatrix::diagonal({iprime, iprime, i});
    CHECK(LaurentPoly::equal_to_precision(multiplier(sh, g), mpt));

    // non-similitude rejected
    AlgebraPtr H = make_H(5);
    Involution s1 = case1_sigma(H, 2);
    QuatMatrix bad = QuatMatrix::diagonal({QuaternionElement::basis(H, 2), QuaternionElement::one(H)});
    CHECK_THROWS_AS(multiplier(s1, bad), NotSimilitude);
}

TEST_CASE("multiplier is multiplicative on products of similitudes") {
    std::mt19937 rng(1010);
    AlgebraPtr H = make_H(5);
    QuaternionElement j = QuaternionElement::basis(H, 2);
    Involution s = case1_sigma(H, 2);
    QuaternionElement u = find_unit_with_nrd(H, C(5, -1), 1);
    QuatMatrix g0 = QuatMatrix::diagonal({j, u * j});

    auto random_similitude = [&]() {
        long c = static_cast<long>(rng() % 30) + 1;
        if (rng() % 2) c = -c;
        QuatMatrix g = QuatMatrix::identity(H, 2).scale(C(5, c));
        int e = static_cast<int>(rng() % 3);
        for (int k = 0; k < e; ++k) g = g * g0;
        return g;
    };
    for (int iter = 0; iter < 100; ++iter) {
        QuatMatrix a = random_similitude();
        QuatMatrix b = random_similitude();
        CHECK(LaurentPoly::equal_to_precision(multiplier(s, a * b), multiplier(s, a) * multiplier(s, b)));
    }
}

TEST_CASE("reduced norms of matrices and properness") {
    AlgebraPtr Q = make_Q(5);
    QuaternionElement i = QuaternionElement::basis(Q, 1);
    QuaternionElement j = QuaternionElement::basis(Q, 2);
    LaurentPoly mpt = LaurentPoly::monomial(1, PAdicNumber::from_integer(5, -5));
    QuaternionElement iprime = find_pure_with_square(Q, mpt, j);

    QuatMatrix g = QuatMatrix::diagonal({iprime, iprime, i});
    // Nrd = (p t)(p t)(-p t) = -p^3 t^3
    CHECK(LaurentPoly::equal_to_precision(nrd_diag_matrix(g),
                                          LaurentPoly::monomial(3, PAdicNumber::from_integer(5, -125))));
    CHECK(LaurentPoly::equal_to_precision(nrd_diag_matrix(QuatMatrix::identity(Q, 3)), C(5, 1)));
    AlgebraPtr H = make_H(5);
    CHECK(LaurentPoly::equal_to_precision(
        nrd_diag_matrix(QuatMatrix::diagonal({QuaternionElement::basis(H, 2)})),
        -LaurentPoly::t(5)));

    SkewHermitianForm h = SkewHermitianForm::make(Q, {j, j.scale(C(5, -5)), i});
    CHECK(is_proper_similitude(adjoint_involution(h), g));

    // improper: diag(1,-1) on M_2(F) with the adjoint of <1,-p>
    AlgebraPtr M = QuaternionAlgebra::make_field(FieldTag::rational_function(5));
    Involution tr = Involution::first_kind(QuatMatrix::diagonal(
        {QuaternionElement::one(M), QuaternionElement::scalar(M, LaurentPoly::constant(5, -1, 5))}));
    QuatMatrix refl = QuatMatrix::diagonal({QuaternionElement::one(M),
                                            QuaternionElement::scalar(M, C(5, -1))});
    CHECK(!is_proper_similitude(tr, refl));
    CHECK(is_proper_similitude(tr, QuatMatrix::identity(M, 2)));

    QuatMatrix nondiag = QuatMatrix::zero(H, 2);
    nondiag.set(0, 0, QuaternionElement::basis(H, 1));
    nondiag.set(0, 1, QuaternionElement::one(H));
    nondiag.set(1, 0, QuaternionElement::one(H));
    nondiag.set(1, 1, QuaternionElement::basis(H, 1));
    CHECK_THROWS_AS(nrd_matrix(nondiag), NrdUnsupported);
}

TEST_CASE("finding units with prescribed norm") {
    AlgebraPtr H = make_H(5); // (2, t)
    QuaternionElement u = find_unit_with_nrd(H, C(5, -1), 1);
    CHECK(u.coord(1).is_zero()); // x1 = 0: -1 is already a square in Q_5
    CHECK(u.coord(0).monomial_coefficient().unit() % 25 == 7);
    CHECK(LaurentPoly::difference_valuation(u.nrd(), C(5, -1)) >= 30);

    CHECK(QuaternionElement::equal(find_unit_with_nrd(H, C(5, 1), 1), QuaternionElement::one(H)));
    CHECK_THROWS_AS(find_unit_with_nrd(H, LaurentPoly::t(5), 1), NoSolution);

    AlgebraPtr H7 = make_H(7);
    QuaternionElement u7 = find_unit_with_nrd(H7, C(7, -1), 1);
    CHECK(LaurentPoly::difference_valuation(u7.nrd(), C(7, -1)) >= 30);
    CHECK_THROWS_AS(find_unit_with_nrd(H7, C(7, -1), 2), NoSolution); // -1 not a norm of F(j)
}

TEST_CASE("finding pure elements with prescribed square") {
    AlgebraPtr Q5 = make_Q(5);
    QuaternionElement j5 = QuaternionElement::basis(Q5, 2);
    LaurentPoly target5 = LaurentPoly::monomial(1, PAdicNumber::from_integer(5, -5));
    QuaternionElement w5 = find_pure_with_square(Q5, target5, j5);
    CHECK(w5.coord(3).is_zero()); // -1 square: i' = sqrt(-1) i
    CHECK(w5.coord(1).monomial_coefficient().unit() % 25 == 7);
    QuaternionElement sq5 = w5 * w5;
    CHECK(LaurentPoly::difference_valuation(sq5.coord(0), target5) >= 30);
    CHECK((w5 * j5 + j5 * w5).is_zero());

    AlgebraPtr Q7 = make_Q(7);
    QuaternionElement j7 = QuaternionElement::basis(Q7, 2);
    LaurentPoly target7 = LaurentPoly::monomial(1, PAdicNumber::from_integer(7, -7));
    QuaternionElement w7 = find_pure_with_square(Q7, target7, j7);
    QuaternionElement sq7 = w7 * w7;
    CHECK(LaurentPoly::difference_valuation(sq7.coord(0), target7) >= 30);
    CHECK((w7 * j7 + j7 * w7).is_zero());

    // target = i^2 recovers i itself
    QuaternionElement i5 = QuaternionElement::basis(Q5, 1);
    CHECK(QuaternionElement::equal(find_pure_with_square(Q5, Q5->a(), j5), i5));

    // genuine class obstructions
    CHECK_THROWS_AS(find_pure_with_square(
                        Q5, LaurentPoly::monomial(1, PAdicNumber::from_integer(5, 25)), j5),
                    NoSolution); // p^2 t / (p t) = p has odd p-valuation
    CHECK_THROWS_AS(find_pure_with_square(Q5, C(5, 2), j5),
                    NoSolution); // u / (p t) has odd t-valuation
}

TEST_CASE("discriminant algebra classes") {
    AlgebraPtr H = make_H(5);
    FieldTag F = H->field();
    SymbolSum even = discriminant_algebra_class(2, H, kP, kT + kU);
    CHECK(symbol_sums_equal(even, SymbolSum::make(F, {{kP, kT + kU}})));

    SymbolSum odd = discriminant_algebra_class(3, H, kP, kU);
    CHECK(symbol_sums_equal(odd, SymbolSum::make(F, {{kU, kT + kP}})));

    AlgebraPtr split = QuaternionAlgebra::make_field(F);
    SymbolSum sp = discriminant_algebra_class(5, split, kP, kU + kT);
    CHECK(symbol_sums_equal(sp, SymbolSum::make(F, {{kP, kU + kT}})));
}

TEST_CASE("clifford component classes") {
    AlgebraPtr Q = make_Q(5);
    FieldTag F = Q->field();
    auto [c1, c2] = clifford_component_classes(kP, kU, Q->brauer_class());
    CHECK(symbol_sums_equal(c1, SymbolSum::make(F, {{kP, kU}})));
    CHECK(symbol_sums_equal(c2, SymbolSum::make(F, {{kT, kU}})));

    auto [d1, d2] = clifford_component_classes(MonomialClass::one(), kU, Q->brauer_class());
    CHECK(d1.symbols.empty());
    CHECK(symbol_sums_equal(d2, Q->brauer_class()));

    auto [e1, e2] = clifford_component_classes(kU, kP, Q->brauer_class());
    CHECK(symbol_sums_equal(e1, c1));
    CHECK(symbol_sums_equal(e2, c2));
}
