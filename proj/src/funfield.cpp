#include "rcert/funfield.hpp"

#include <algorithm>
#include <sstream>

namespace rcert {

QuadExtension FieldTag::extension() const {
    if (!has_extension()) throw Error("FieldTag: no quadratic extension on " + to_string());
    return {prime, ext_kind};
}

FieldTag FieldTag::residue() const {
    switch (kind) {
        case Kind::LaurentQp: return qp(prime);
        case Kind::LaurentQuadExt: return quad_ext({prime, ext_kind});
        default: throw Error("FieldTag: residue field only defined for Laurent tags");
    }
}

FieldTag FieldTag::laurent() const {
    switch (kind) {
        case Kind::Qp:
        case Kind::RationalFunction:
        case Kind::LaurentQp: return laurent_qp(prime);
        case Kind::QuadExt:
        case Kind::LaurentQuadExt: return laurent_quad_ext({prime, ext_kind});
    }
    throw Error("FieldTag: bad kind");
}

std::string FieldTag::to_string() const {
    std::string base = "Q_" + std::to_string(prime);
    switch (kind) {
        case Kind::Qp: return base;
        case Kind::QuadExt: return QuadExtension{prime, ext_kind}.to_string();
        case Kind::LaurentQp: return base + "((t))";
        case Kind::LaurentQuadExt: return QuadExtension{prime, ext_kind}.to_string() + "((t))";
        case Kind::RationalFunction: return base + "(t)";
    }
    throw Error("FieldTag: bad kind");
}

void LaurentPoly::check_degree(long exp) const {
    if (exp > max_degree || exp < -max_degree)
        throw DegreeOverflow("LaurentPoly: exponent " + std::to_string(exp) + " exceeds bound " +
                             std::to_string(max_degree));
}

LaurentPoly LaurentPoly::constant(long p, const mpz_class& num, const mpz_class& den, int precision) {
    return from_padic(PAdicNumber::from_rational(p, num, den, precision));
}

LaurentPoly LaurentPoly::from_padic(const PAdicNumber& c) {
    LaurentPoly r(c.prime(), c.precision());
    if (!c.is_zero_to_precision()) r.coeffs_.emplace(0, c);
    return r;
}

LaurentPoly LaurentPoly::monomial(long exp, const PAdicNumber& c) {
    LaurentPoly r(c.prime(), c.precision());
    r.check_degree(exp);
    if (!c.is_zero_to_precision()) r.coeffs_.emplace(exp, c);
    return r;
}

LaurentPoly LaurentPoly::t(long p, int precision) {
    return monomial(1, PAdicNumber::from_integer(p, 1, precision));
}

long LaurentPoly::monomial_exponent() const {
    if (!is_monomial()) throw NotMonomial("LaurentPoly: not a monomial: " + to_string());
    return coeffs_.begin()->first;
}

const PAdicNumber& LaurentPoly::monomial_coefficient() const {
    if (!is_monomial()) throw NotMonomial("LaurentPoly: not a monomial: " + to_string());
    return coeffs_.begin()->second;
}

PAdicNumber LaurentPoly::coefficient(long exp) const {
    auto it = coeffs_.find(exp);
    if (it == coeffs_.end()) return PAdicNumber::zero(prime_, precision_);
    return it->second;
}

void LaurentPoly::set_coefficient(long exp, const PAdicNumber& c) {
    check_degree(exp);
    if (c.is_zero_to_precision())
        coeffs_.erase(exp);
    else
        coeffs_.insert_or_assign(exp, c);
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    if (prime_ != o.prime_) throw Error("LaurentPoly: mixed primes");
    LaurentPoly r(prime_, std::min(precision_, o.precision_));
    for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e, c);
    for (const auto& [e, c] : o.coeffs_) {
        auto it = r.coeffs_.find(e);
        if (it == r.coeffs_.end()) {
            r.coeffs_.emplace(e, c);
        } else {
            PAdicNumber s = it->second + c;
            if (s.is_zero_to_precision())
                r.coeffs_.erase(it);
            else
                it->second = s;
        }
    }
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r(prime_, precision_);
    for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e, -c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (prime_ != o.prime_) throw Error("LaurentPoly: mixed primes");
    LaurentPoly r(prime_, std::min(precision_, o.precision_));
    std::map<long, PAdicNumber> acc;
    for (const auto& [e1, c1] : coeffs_) {
        for (const auto& [e2, c2] : o.coeffs_) {
            long e = e1 + e2;
            r.check_degree(e);
            PAdicNumber prod = c1 * c2;
            auto it = acc.find(e);
            if (it == acc.end())
                acc.emplace(e, prod);
            else
                it->second = it->second + prod;
        }
    }
    for (const auto& [e, c] : acc)
        if (!c.is_zero_to_precision()) r.coeffs_.emplace(e, c);
    return r;
}

LaurentPoly LaurentPoly::divide_by_monomial(const LaurentPoly& m) const {
    return *this * m.monomial_inverse();
}

LaurentPoly LaurentPoly::monomial_inverse() const {
    long e = monomial_exponent();
    return monomial(-e, monomial_coefficient().inverse());
}

bool LaurentPoly::equal_to_precision(const LaurentPoly& x, const LaurentPoly& y) {
    return (x - y).is_zero();
}

long LaurentPoly::difference_valuation(const LaurentPoly& x, const LaurentPoly& y) {
    if (x.prime_ != y.prime_) throw Error("LaurentPoly: mixed primes");
    long v = kExactZeroValuation;
    std::map<long, bool> exps;
    for (const auto& [e, c] : x.coeffs_) exps[e] = true;
    for (const auto& [e, c] : y.coeffs_) exps[e] = true;
    for (const auto& [e, unused] : exps) {
        PAdicNumber d = x.coefficient(e) - y.coefficient(e);
        v = std::min(v, d.min_valuation());
    }
    return v;
}

namespace {

// Rational reconstruction of u mod m: the smallest num/den = u with
// |num|, |den| below the bound, found by truncating the extended Euclid
// remainder sequence. Display-only; verified by the congruence.
std::optional<std::pair<mpz_class, mpz_class>> reconstruct_rational(const mpz_class& u,
                                                                    const mpz_class& m, long p) {
    const mpz_class bound = 1000000;
    mpz_class r0 = m, r1 = u, t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    mpz_class num = r1, den = t1;
    if (den < 0) {
        den = -den;
        num = -num;
    }
    if (den > bound || den == 0) return std::nullopt;
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1 && g != 0) {
        num /= g;
        den /= g;
    }
    mpz_class check = (num - u * den) % m;
    if (check != 0) return std::nullopt;
    return std::make_pair(num, den);
}

// Exact small rationals print as themselves; anything else prints as its
// balanced mod-p^N representative with an explicit precision marker.
std::string balanced_coeff_string(const PAdicNumber& c) {
    long p = c.prime();
    mpz_class mod = pow_p(p, c.precision());
    long v = c.valuation();
    if (auto rec = reconstruct_rational(c.unit(), mod, p)) {
        mpz_class num = rec->first, den = rec->second;
        if (v >= 0 && v <= 12) {
            num *= pow_p(p, v);
            v = 0;
        } else if (v < 0 && v >= -12) {
            den *= pow_p(p, -v);
            v = 0;
        }
        std::string s = num.get_str();
        if (den != 1) s += "/" + den.get_str();
        if (v != 0) s += "*" + std::to_string(p) + "^" + std::to_string(v);
        return s;
    }
    mpz_class u = c.unit();
    if (u > mod / 2) u -= mod;
    std::string s = u.get_str();
    if (v != 0) s += "*" + std::to_string(p) + "^" + std::to_string(v);
    return s + " + O(" + std::to_string(p) + "^" + std::to_string(v + c.precision()) + ")";
}

} // namespace

std::string LaurentPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        std::string cs = balanced_coeff_string(c);
        if (!first) os << " + ";
        first = false;
        if (e == 0) {
            os << cs;
            continue;
        }
        if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
        std::string ts = (e == 1) ? "t" : "t^" + std::to_string(e);
        if (cs == "1")
            os << ts;
        else if (cs == "-1")
            os << "-" << ts;
        else
            os << cs << "*" << ts;
    }
    return os.str();
}

bool MonomialClass::operator<(const MonomialClass& o) const {
    auto key = [](const MonomialClass& m) { return (m.s ? 8 : 0) | (m.a ? 4 : 0) | (m.b ? 2 : 0) | (m.c ? 1 : 0); };
    return key(*this) < key(o);
}

LaurentPoly MonomialClass::representative(long prime, int precision) const {
    mpz_class n = 1;
    if (s) n = -n;
    if (a) n *= canonical_nonsquare_unit(prime);
    if (b) n *= prime;
    return LaurentPoly::monomial(c ? 1 : 0, PAdicNumber::from_integer(prime, n, precision));
}

PAdicNumber MonomialClass::representative_padic(long prime, int precision) const {
    if (c) throw Error("MonomialClass: t-dependent class has no Q_p representative: " + to_string());
    mpz_class n = 1;
    if (s) n = -n;
    if (a) n *= canonical_nonsquare_unit(prime);
    if (b) n *= prime;
    return PAdicNumber::from_integer(prime, n, precision);
}

LocalSquareClass MonomialClass::local_class(long prime) const {
    return without_t().representative_padic(prime).square_class();
}

std::string MonomialClass::to_string() const {
    std::string body;
    auto push = [&body](const char* f) {
        if (!body.empty()) body += "*";
        body += f;
    };
    if (a) push("u");
    if (b) push("p");
    if (c) push("t");
    if (body.empty()) body = "1";
    return s ? "-" + body : body;
}

MonomialClass reduced(const MonomialClass& c, long prime) {
    if (!is_odd_prime(prime)) throw UnsupportedPrime("reduced: p must be an odd prime");
    MonomialClass r = c;
    if (r.s) {
        r.s = false;
        if (prime % 4 == 3) r.a = !r.a;
    }
    return r;
}

bool classes_equal(const MonomialClass& x, const MonomialClass& y, long prime) {
    return reduced(x, prime) == reduced(y, prime);
}

MonomialClass monomialclass_of_padic(const PAdicNumber& c) {
    LocalSquareClass q = c.square_class();
    return {false, q.unit_nonsquare, q.odd_valuation, false};
}

MonomialClass monomial_class(const LaurentPoly& x) {
    if (!x.is_monomial()) throw NotMonomial("monomial_class: not a monomial: " + x.to_string());
    const PAdicNumber& coeff = x.monomial_coefficient();
    LocalSquareClass q = coeff.square_class();
    long k = x.monomial_exponent();
    // The sign of the coefficient is not observable p-adically; it is folded
    // into the unit bit by the Legendre symbol, i.e. the class comes out
    // reduced.
    return {false, q.unit_nonsquare, q.odd_valuation, ((k % 2) + 2) % 2 == 1};
}

MonomialClass parse_monomial_class(const std::string& text, long prime) {
    std::string body = text;
    MonomialClass cls;
    if (!body.empty() && body[0] == '-') {
        cls.s = true;
        body = body.substr(1);
    }
    if (body.empty()) throw Error("parse_monomial_class: empty monomial");
    std::vector<std::string> factors;
    std::string cur;
    for (char ch : body) {
        if (ch == '*') {
            factors.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    factors.push_back(cur);
    for (const std::string& f : factors) {
        if (f.empty()) throw Error("parse_monomial_class: empty factor in '" + text + "'");
        if (f == "1") continue;
        if (f == "u" || f == "b") {
            cls.a = !cls.a;
        } else if (f == "p") {
            cls.b = !cls.b;
        } else if (f == "t") {
            cls.c = !cls.c;
        } else if (std::all_of(f.begin(), f.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            PAdicNumber val = PAdicNumber::from_integer(prime, mpz_class(f));
            MonomialClass add = monomialclass_of_padic(val);
            cls = cls + add;
        } else {
            throw Error("parse_monomial_class: bad factor '" + f + "'");
        }
    }
    return cls;
}

} // namespace rcert
