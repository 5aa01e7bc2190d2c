#include <doctest.h>

#include <random>

#include "rcert/padic.hpp"

using namespace rcert;

namespace {

PAdicNumber Z(long p, long n, int prec = PAdicNumber::default_precision) {
    return PAdicNumber::from_integer(p, n, prec);
}

// Representatives of the eight signed monomial values +-1, +-u, +-p, +-u p.
std::vector<PAdicNumber> signed_monomials(long p) {
    long u = canonical_nonsquare_unit(p);
    std::vector<PAdicNumber> out;
    for (long s : {1L, -1L})
        for (long a : {1L, u})
            for (long b : {1L, p}) out.push_back(Z(p, s * a * b));
    return out;
}

} // namespace

TEST_CASE("legendre symbol") {
    CHECK(legendre(4, 5) == 1);
    CHECK(legendre(2, 5) == -1);
    CHECK(legendre(3, 7) == -1);
    CHECK(legendre(10, 5) == 0);
    CHECK(legendre(-1, 5) == 1);
    CHECK(legendre(-1, 7) == -1);
    CHECK_THROWS_AS(legendre(3, 4), UnsupportedPrime);
}

TEST_CASE("canonical nonsquare unit") {
    CHECK(canonical_nonsquare_unit(3) == 2);
    CHECK(canonical_nonsquare_unit(5) == 2);
    CHECK(canonical_nonsquare_unit(7) == 3);
    CHECK(canonical_nonsquare_unit(11) == 2);
    CHECK(canonical_nonsquare_unit(13) == 2);
    CHECK_THROWS_AS(canonical_nonsquare_unit(2), UnsupportedPrime);
    CHECK_THROWS_AS(canonical_nonsquare_unit(9), UnsupportedPrime);
}

TEST_CASE("construction and arithmetic") {
    PAdicNumber x = Z(5, 50); // 2 * 5^2
    CHECK(x.valuation() == 2);
    CHECK(x.unit() == 2);

    PAdicNumber half = PAdicNumber::from_rational(5, 1, 2);
    CHECK((half + half - Z(5, 1)).is_zero_to_precision());
    CHECK(PAdicNumber::from_rational(5, 1, 5).valuation() == -1);
    CHECK(PAdicNumber::from_rational(5, 0, 3).is_exact_zero());
    CHECK_THROWS_AS(PAdicNumber::from_integer(2, 1), UnsupportedPrime);
    CHECK_THROWS_AS(PAdicNumber::from_integer(9, 1), UnsupportedPrime);

    // cancellation costs precision
    PAdicNumber a = Z(5, 1 + 3125); // 1 + 5^5
    PAdicNumber d = a - Z(5, 1);
    CHECK(d.valuation() == 5);
    CHECK(d.unit() == 1);
    CHECK(d.precision() == PAdicNumber::default_precision - 5);

    // multiplication keeps min precision
    PAdicNumber lo = PAdicNumber::from_integer(5, 7, 8);
    CHECK((lo * Z(5, 3)).precision() == 8);

    CHECK_THROWS_AS(PAdicNumber::zero(5).valuation(), ZeroToPrecision);
    CHECK((Z(5, 7) / Z(5, 7) - Z(5, 1)).is_zero_to_precision());
}

TEST_CASE("is_square and hensel_sqrt") {
    CHECK(is_square(Z(5, 4)));
    CHECK(!is_square(Z(5, 5)));
    CHECK(is_square(Z(5, 6)));

    CHECK(hensel_sqrt(Z(5, 4)).unit() == 2);
    PAdicNumber r6 = hensel_sqrt(PAdicNumber::from_integer(5, 6, 2));
    CHECK(r6.unit() == 16); // 16^2 = 256 = 6 mod 25
    CHECK_THROWS_AS(hensel_sqrt(Z(5, 2)), NotSquare);

    CHECK_THROWS_AS(is_square(PAdicNumber::zero(5)), ZeroToPrecision);
    CHECK_THROWS_AS(is_square(Z(5, 3) - Z(5, 3)), ZeroToPrecision);

    std::mt19937 rng(12345);
    const std::vector<long> primes{3, 5, 7, 13, 17, 97}; // 17, 97 exercise deep Tonelli-Shanks loops
    for (int iter = 0; iter < 200; ++iter) {
        long p = primes[rng() % primes.size()];
        long n = static_cast<long>(rng() % 10000) + 1;
        while (n % p == 0) ++n;
        long v = static_cast<long>(rng() % 3);
        PAdicNumber x = Z(p, n) * Z(p, n) * Z(p, p).pow(2 * v); // n^2 p^{2v}
        CHECK(is_square(x));
        PAdicNumber r = hensel_sqrt(x);
        PAdicNumber res = r * r - x;
        CHECK(res.has_valuation_at_least(x.valuation() + x.precision()));
        CHECK(hensel_sqrt(x).unit() == r.unit()); // deterministic root choice
    }
}

TEST_CASE("hilbert symbol examples") {
    CHECK(hilbert_symbol(Z(5, 2), Z(5, 3)) == 1);
    CHECK(hilbert_symbol(Z(5, 5), Z(5, 2)) == -1);
    CHECK(hilbert_symbol(Z(5, 5), Z(5, 5)) == 1);
    CHECK(hilbert_symbol(Z(7, 7), Z(7, 7)) == -1); // (p,p) = (p,-1), -1 nonsquare mod 7
    CHECK_THROWS_AS(hilbert_symbol(PAdicNumber::zero(5), Z(5, 1)), ZeroToPrecision);
}

TEST_CASE("hilbert symbol group laws over the monomial values") {
    for (long p : {3L, 5L, 7L, 13L}) {
        auto vals = signed_monomials(p);
        for (const auto& a : vals) {
            CHECK(hilbert_symbol(a, -a) == 1);
            for (const auto& b : vals) {
                CHECK(hilbert_symbol(a, b) == hilbert_symbol(b, a));
                if (a.valuation() == 0 && b.valuation() == 0) CHECK(hilbert_symbol(a, b) == 1);
                for (const auto& c : vals)
                    CHECK(hilbert_symbol(a, b * c) == hilbert_symbol(a, b) * hilbert_symbol(a, c));
            }
        }
    }
}

TEST_CASE("squares in quadratic extensions") {
    QuadExtension ram{5, QuadExtension::Kind::ramified};
    QuadExtension unram{5, QuadExtension::Kind::unramified};
    QuadExtension tw{5, QuadExtension::Kind::ramified_twisted};

    CHECK(!is_square_in_extension(Z(5, 2), ram)); // b stays nonsquare in Q_5(sqrt 5)
    CHECK(is_square_in_extension(Z(5, 5), ram));
    CHECK(is_square_in_extension(Z(5, 2), unram)); // adjoined root
    CHECK(is_square_in_extension(Z(5, 10), tw));
    CHECK(!is_square_in_extension(Z(5, 5), unram));
    CHECK(is_square_in_extension(Z(5, 4), ram));

    // base-field symbols split over every quadratic extension
    for (const auto& a : signed_monomials(5))
        for (const auto& b : signed_monomials(5))
            for (const auto& ext : {ram, unram, tw}) CHECK(ext_hilbert_symbol(a, b, ext) == 1);
}

TEST_CASE("norm equation") {
    auto [x0, x1] = solve_norm_equation(Z(5, 2), Z(5, -1));
    CHECK(x1.is_zero_to_precision());
    CHECK(x0.unit() % 25 == 7);

    auto [y0, y1] = solve_norm_equation(Z(5, 2), Z(5, 1));
    CHECK(y0.unit() == 1);
    CHECK(y1.is_zero_to_precision());

    auto [z0, z1] = solve_norm_equation(Z(7, 3), Z(7, -1));
    CHECK(z0.unit() % 7 == 3);
    CHECK(z1.unit() % 7 == 1);

    CHECK_THROWS_AS(solve_norm_equation(Z(5, 2), Z(5, 5)), NoSolution);
    CHECK_THROWS_AS(solve_norm_equation(Z(5, 4), Z(5, 1)), Error); // b must be nonsquare

    // random solvable instances: residual vanishes to full precision
    std::mt19937 rng(777);
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L}) {
        long u = canonical_nonsquare_unit(p);
        for (int iter = 0; iter < 100; ++iter) {
            long c = static_cast<long>(rng() % 5000) + 1;
            while (c % p == 0) ++c;
            if (rng() % 2) c = -c;
            long v2 = (rng() % 2) ? 2 : 0;
            PAdicNumber cv = Z(p, c) * Z(p, p).pow(v2);
            auto [a, b] = solve_norm_equation(Z(p, u), cv);
            PAdicNumber res = a * a - Z(p, u) * b * b - cv;
            CHECK(res.has_valuation_at_least(PAdicNumber::default_precision));
        }
    }
}

TEST_CASE("arithmetic agrees with exact rational arithmetic") {
    // Random expression trees evaluated both ways; the embedding of the
    // exact mpq result must match the p-adic computation to precision.
    std::mt19937 rng(1618);
    const std::vector<long> primes{3, 5, 7, 13};
    for (int iter = 0; iter < 500; ++iter) {
        long p = primes[rng() % primes.size()];
        auto rand_rational = [&]() {
            long num = static_cast<long>(rng() % 2001) - 1000;
            long den = static_cast<long>(rng() % 50) + 1;
            if (num == 0) num = 1;
            return mpq_class(num, den);
        };
        mpq_class q = rand_rational();
        PAdicNumber x = PAdicNumber::from_rational(p, q.get_num(), q.get_den());
        for (int step = 0; step < 6; ++step) {
            mpq_class r = rand_rational();
            PAdicNumber y = PAdicNumber::from_rational(p, r.get_num(), r.get_den());
            switch (rng() % 4) {
                case 0: q += r; x = x + y; break;
                case 1: q -= r; x = x - y; break;
                case 2: q *= r; x = x * y; break;
                default: q /= r; x = x / y; break;
            }
            if (q == 0) { q = 1; x = PAdicNumber::from_integer(p, 1); }
        }
        q.canonicalize();
        PAdicNumber expect = PAdicNumber::from_rational(p, q.get_num(), q.get_den());
        CHECK((x - expect).is_zero_to_precision());
    }
}

TEST_CASE("is_square iff hensel_sqrt succeeds") {
    for (long p : {3L, 5L, 7L, 13L}) {
        for (long n = 1; n <= 60; ++n) {
            if (n % p == 0) continue;
            PAdicNumber x = Z(p, n);
            bool ok;
            try {
                hensel_sqrt(x);
                ok = true;
            } catch (const NotSquare&) {
                ok = false;
            }
            CHECK(ok == is_square(x));
        }
    }
}
