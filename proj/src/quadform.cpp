#include "rcert/quadform.hpp"

#include <algorithm>
#include <sstream>

namespace rcert {

namespace {

void require_t_free_entries(const DiagonalForm& q) {
    for (const auto& e : q.entries)
        if (!e.t_free())
            throw Error("DiagonalForm: t-dependent entry " + e.to_string() + " over " + q.field.to_string());
}

int hilbert_of_classes(const MonomialClass& x, const MonomialClass& y, long p) {
    return hilbert_symbol(x.representative_padic(p), y.representative_padic(p));
}

// Isotropy over Q_p by the rank criteria on (unsigned d, hasse):
//   n=2: d = -1;  n=3: hasse = (-1,-d);  n=4: d != 1 or hasse = (-1,-1);
//   n>=5: always.
bool qp_isotropic(const std::vector<MonomialClass>& entries, long p) {
    int n = static_cast<int>(entries.size());
    if (n <= 1) return false;
    if (n >= 5) return true;

    MonomialClass d; // unsigned discriminant
    for (const auto& e : entries) d = d + e;
    int hasse = 1;
    for (size_t i = 0; i < entries.size(); ++i)
        for (size_t j = i + 1; j < entries.size(); ++j)
            hasse *= hilbert_of_classes(entries[i], entries[j], p);

    if (n == 2) return classes_equal(d, MonomialClass::minus_one(), p);
    PAdicNumber minus_one = PAdicNumber::from_integer(p, -1);
    if (n == 3) {
        int rhs = hilbert_symbol(minus_one, (-d).representative_padic(p));
        return hasse == rhs;
    }
    // n == 4
    if (!classes_equal(d, MonomialClass::one(), p)) return true;
    int m11 = hilbert_symbol(minus_one, minus_one);
    return hasse == m11;
}

// Isotropy over a quadratic extension K of Q_p for entries from the base
// monomial group. Every base value has even K-valuation or a residue field
// where base units are squares, so the K-Hasse data degenerates and only
// the dimension-2 squareness test carries content.
bool ext_isotropic(const std::vector<MonomialClass>& entries, const QuadExtension& ext) {
    long p = ext.base_prime;
    int n = static_cast<int>(entries.size());
    if (n <= 1) return false;
    if (n >= 5) return true;
    if (n == 2) {
        MonomialClass d = entries[0] + entries[1] + MonomialClass::minus_one();
        return is_square_class_in_extension(d.local_class(p), ext);
    }
    MonomialClass d;
    for (const auto& e : entries) d = d + e;
    int hasse = 1;
    for (size_t i = 0; i < entries.size(); ++i)
        for (size_t j = i + 1; j < entries.size(); ++j)
            hasse *= ext_hilbert_symbol(entries[i].representative_padic(p),
                                        entries[j].representative_padic(p), ext);
    PAdicNumber minus_one = PAdicNumber::from_integer(p, -1);
    if (n == 3) return hasse == ext_hilbert_symbol(minus_one, (-d).representative_padic(p), ext);
    if (!is_square_class_in_extension(d.local_class(p), ext)) return true;
    return hasse == ext_hilbert_symbol(minus_one, minus_one, ext);
}

} // namespace

DiagonalForm DiagonalForm::make(std::vector<MonomialClass> entries, FieldTag field) {
    DiagonalForm q{std::move(entries), field};
    if (!field.is_laurent() && field.kind != FieldTag::Kind::RationalFunction)
        require_t_free_entries(q);
    return q;
}

DiagonalForm DiagonalForm::scaled(const MonomialClass& lambda) const {
    DiagonalForm r = *this;
    for (auto& e : r.entries) e = e + lambda;
    return r;
}

DiagonalForm DiagonalForm::direct_sum(const DiagonalForm& o) const {
    if (!(field == o.field)) throw Error("DiagonalForm: direct sum across different fields");
    DiagonalForm r = *this;
    r.entries.insert(r.entries.end(), o.entries.begin(), o.entries.end());
    return r;
}

std::string DiagonalForm::to_string() const {
    std::ostringstream os;
    os << "<";
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i) os << ",";
        os << entries[i].to_string();
    }
    os << ">";
    return os.str();
}

DiagonalForm pfister(const std::vector<MonomialClass>& slots, FieldTag field) {
    if (slots.empty()) throw Error("pfister: empty slot list");
    std::vector<MonomialClass> entries{MonomialClass::one()};
    for (const auto& a : slots) {
        std::vector<MonomialClass> next = entries;
        for (const auto& e : entries) next.push_back(e + (-a));
        entries = std::move(next);
    }
    return DiagonalForm::make(std::move(entries), field);
}

LocalInvariants local_invariants(const DiagonalForm& q) {
    if (q.field.kind != FieldTag::Kind::Qp)
        throw UnsupportedField("local_invariants: requires a Qp tag, got " + q.field.to_string());
    require_t_free_entries(q);
    long p = q.field.prime;
    int n = q.dimension();

    MonomialClass d;
    for (const auto& e : q.entries) d = d + e;
    if ((n * (n - 1) / 2) % 2 == 1) d = -d;

    int hasse = 1;
    for (size_t i = 0; i < q.entries.size(); ++i)
        for (size_t j = i + 1; j < q.entries.size(); ++j)
            hasse *= hilbert_of_classes(q.entries[i], q.entries[j], p);

    return {n, d.local_class(p), hasse};
}

bool is_isotropic_local(const DiagonalForm& q) {
    require_t_free_entries(q);
    switch (q.field.kind) {
        case FieldTag::Kind::Qp: return qp_isotropic(q.entries, q.field.prime);
        case FieldTag::Kind::QuadExt: return ext_isotropic(q.entries, q.field.extension());
        default:
            throw UnsupportedField("is_isotropic_local: requires Qp or QuadExt tag, got " +
                                   q.field.to_string());
    }
}

std::pair<DiagonalForm, DiagonalForm> springer_split(const DiagonalForm& q) {
    if (!q.field.is_laurent())
        throw UnsupportedField("springer_split: requires a Laurent tag, got " + q.field.to_string());
    FieldTag res = q.field.residue();
    std::vector<MonomialClass> even, odd;
    for (const auto& e : q.entries) {
        if (e.t_free())
            even.push_back(e);
        else
            odd.push_back(e.without_t());
    }
    return {DiagonalForm::make(std::move(even), res), DiagonalForm::make(std::move(odd), res)};
}

bool is_anisotropic_laurent(const DiagonalForm& q) {
    auto [q1, q2] = springer_split(q);
    return !is_isotropic_local(q1) && !is_isotropic_local(q2);
}

namespace {

bool witt_equivalent_to(const DiagonalForm& q, const DiagonalForm& cand, long p) {
    // q + (-cand) must be hyperbolic: even dimension 2k, unsigned
    // discriminant (-1)^k, hasse (-1,-1)^{k(k-1)/2}.
    std::vector<MonomialClass> sum = q.entries;
    for (const auto& e : cand.entries) sum.push_back(-e);
    if (sum.size() % 2 != 0) return false;
    long k = static_cast<long>(sum.size()) / 2;

    MonomialClass d;
    for (const auto& e : sum) d = d + e;
    MonomialClass expect_d = (k % 2 == 1) ? MonomialClass::minus_one() : MonomialClass::one();
    if (!classes_equal(d, expect_d, p)) return false;

    int hasse = 1;
    for (size_t i = 0; i < sum.size(); ++i)
        for (size_t j = i + 1; j < sum.size(); ++j)
            hasse *= hilbert_of_classes(sum[i], sum[j], p);
    PAdicNumber minus_one = PAdicNumber::from_integer(p, -1);
    int m11 = hilbert_symbol(minus_one, minus_one);
    int expect_h = ((k * (k - 1) / 2) % 2 == 1) ? m11 : 1;
    return hasse == expect_h;
}

} // namespace

DiagonalForm witt_reduce_local(const DiagonalForm& q) {
    if (q.field.kind != FieldTag::Kind::Qp)
        throw UnsupportedField("witt_reduce_local: requires a Qp tag");
    require_t_free_entries(q);
    long p = q.field.prime;
    int n = q.dimension();

    const MonomialClass reps[4] = {MonomialClass::one(), MonomialClass::u(), MonomialClass::p(),
                                   MonomialClass::u() + MonomialClass::p()};

    for (int dim = n % 2; dim <= std::min(n, 4); dim += 2) {
        // Non-decreasing index tuples give one representative per multiset.
        std::vector<int> idx(dim, 0);
        while (true) {
            std::vector<MonomialClass> entries;
            for (int i : idx) entries.push_back(reps[i]);
            DiagonalForm cand = DiagonalForm::make(entries, q.field);
            if (!qp_isotropic(cand.entries, p) && witt_equivalent_to(q, cand, p)) return cand;

            int pos = dim - 1;
            while (pos >= 0 && idx[pos] == 3) --pos;
            if (pos < 0) break;
            int v = idx[pos] + 1;
            for (int i = pos; i < dim; ++i) idx[i] = v;
        }
    }
    throw Error("witt_reduce_local: no anisotropic kernel found (internal error)");
}

DiagonalForm specialize_to_laurent(const DiagonalForm& q) {
    DiagonalForm r = q;
    r.field = q.field.laurent();
    return r;
}

LaurentPoly specialize_to_laurent(const LaurentPoly& x) { return x; }

DiagonalForm parse_form(const std::string& text, FieldTag field) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
            s.end());
    if (s.size() >= 4 && s.rfind("<<", 0) == 0 && s.substr(s.size() - 2) == ">>") {
        std::string inner = s.substr(2, s.size() - 4);
        std::vector<MonomialClass> slots;
        std::string cur;
        for (char ch : inner) {
            if (ch == ',') {
                slots.push_back(parse_monomial_class(cur, field.prime));
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) slots.push_back(parse_monomial_class(cur, field.prime));
        return pfister(slots, field);
    }
    if (s.size() >= 2 && s.front() == '<' && s.back() == '>') {
        std::string inner = s.substr(1, s.size() - 2);
        std::vector<MonomialClass> entries;
        std::string cur;
        for (char ch : inner) {
            if (ch == ',') {
                entries.push_back(parse_monomial_class(cur, field.prime));
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) entries.push_back(parse_monomial_class(cur, field.prime));
        return DiagonalForm::make(std::move(entries), field);
    }
    throw Error("parse_form: expected <...> or <<...>>, got '" + text + "'");
}

} // namespace rcert
