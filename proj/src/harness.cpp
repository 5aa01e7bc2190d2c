#include "rcert/harness.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

namespace rcert {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string bool_str(bool b) { return b ? "true" : "false"; }

// Collects checks; stage() fences an exception-throwing block so one broken
// step is recorded and the remaining blocks still run.
struct CheckList {
    std::vector<Check> checks;

    bool add(const std::string& name, const std::string& expected, const std::string& actual) {
        bool pass = (expected == actual);
        checks.push_back({name, expected, actual, pass});
        return pass;
    }
    bool add_bool(const std::string& name, bool expected, bool actual) {
        return add(name, bool_str(expected), bool_str(actual));
    }

    template <typename F>
    bool stage(const std::string& name, F&& f) {
        try {
            f();
            return true;
        } catch (const std::exception& e) {
            checks.push_back({name, "completes", std::string("error: ") + e.what(), false});
            return false;
        }
    }

    bool verdict() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }

    ordered_json to_json() const {
        ordered_json arr = ordered_json::array();
        for (const auto& c : checks) {
            ordered_json j;
            j["name"] = c.name;
            j["expected"] = c.expected;
            j["actual"] = c.actual;
            j["pass"] = c.pass;
            arr.push_back(j);
        }
        return arr;
    }
};

ordered_json scenario_json(const Scenario& sc, long unit_value) {
    ordered_json j;
    j["kind"] = sc.kind_name();
    j["p"] = sc.p;
    if (sc.kind == Scenario::Kind::a1 || sc.kind == Scenario::Kind::a2) j["m"] = sc.m;
    j["unit"] = unit_value;
    j["precision"] = sc.precision;
    return j;
}

ordered_json finalize(Certificate& cert, const CheckList& list, ordered_json body) {
    cert.checks = list.checks;
    cert.verdict = list.verdict();
    body["checks"] = list.to_json();
    body["verdict"] = cert.verdict;
    body["not_mechanized"] = ordered_json::array(
        {"triviality statements (G(F)/R = 1); this tool certifies non-triviality witnesses only"});
    cert.doc = std::move(body);
    return cert.doc;
}

// Residual threshold: full precision minus slack for the final subtraction.
long residual_threshold(int precision) { return precision - 2; }

// Records a check of the form "<equation> holds to valuation >= N-2" given
// the valuation bound of the computed residual.
void add_residual_check(CheckList& list, const std::string& name, const std::string& equation,
                        long v, int N) {
    std::string want = equation + " to valuation >= " + std::to_string(residual_threshold(N));
    list.add(name, want, v >= residual_threshold(N) ? want : "residual valuation " + std::to_string(v));
}

} // namespace

long Scenario::validated_unit() const {
    if (!is_odd_prime(p))
        throw UnsupportedPrime("scenario: p must be an odd prime, got " + std::to_string(p));
    if (m < 1) throw Error("scenario: m must be >= 1");
    if (precision < 4) throw Error("scenario: precision must be >= 4");
    if (!unit_override) return canonical_nonsquare_unit(p);
    long u = *unit_override;
    if (u % p == 0 || legendre(u, p) != -1)
        throw Error("scenario: --unit must be a nonsquare unit mod p, got " + std::to_string(u));
    return u;
}

std::string Scenario::kind_name() const {
    switch (kind) {
        case Kind::prelim: return "prelim";
        case Kind::a1: return "a1";
        case Kind::a2: return "a2";
        case Kind::dd: return "dd";
    }
    throw Error("scenario: bad kind");
}

std::string Scenario::group_type() const {
    switch (kind) {
        case Kind::prelim: return "";
        case Kind::a1: return "2A_" + std::to_string(4 * m - 1);
        case Kind::a2: return "2A_" + std::to_string(4 * m + 1);
        case Kind::dd: return "2D_3";
    }
    throw Error("scenario: bad kind");
}

std::string Certificate::to_text() const {
    std::ostringstream os;
    os << "scenario " << scenario.kind_name() << "  p=" << scenario.p;
    if (scenario.kind == Scenario::Kind::a1 || scenario.kind == Scenario::Kind::a2)
        os << "  m=" << scenario.m;
    os << "  precision=" << scenario.precision << "\n";
    for (const auto& c : checks)
        os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << ": expected " << c.expected
           << ", actual " << c.actual << "\n";
    os << "verdict: " << (verdict ? "true" : "false") << "\n";
    return os.str();
}

Certificate run_prelim(const Scenario& sc) {
    Certificate cert;
    cert.scenario = sc;
    long unit_value = sc.validated_unit();
    long p = sc.p;
    int N = sc.precision;

    CheckList list;
    ordered_json body;
    body["schema"] = "rcert-certificate/1";
    body["scenario"] = scenario_json(sc, unit_value);
    body["group"] = nullptr;

    PAdicNumber bp = PAdicNumber::from_integer(p, unit_value, N);
    PAdicNumber pp = PAdicNumber::from_integer(p, p, N);
    QuadExtension K{p, QuadExtension::Kind::ramified};

    ordered_json cons;
    cons["b"] = std::to_string(unit_value);
    cons["K"] = K.to_string();

    list.stage("hilbert_p_b_is_minus_one", [&] {
        list.add("hilbert_p_b_is_minus_one", "-1", std::to_string(hilbert_symbol(pp, bp)));
    });
    list.stage("pfister_b_p_anisotropic_over_Qp", [&] {
        DiagonalForm f = pfister({MonomialClass::u(), MonomialClass::p()}, FieldTag::qp(p));
        list.add_bool("pfister_b_p_anisotropic_over_Qp", true, !is_isotropic_local(f));
        cons["pfister_b_p"] = f.to_string();
    });
    list.stage("b_nonsquare_in_Qp_sqrt_p", [&] {
        list.add_bool("b_nonsquare_in_Qp_sqrt_p", true, !is_square_in_extension(bp, K));
    });
    list.stage("norm_form_anisotropic_over_K((t))", [&] {
        DiagonalForm nH = pfister({MonomialClass::u(), MonomialClass::t()},
                                  FieldTag::laurent_quad_ext(K));
        list.add_bool("norm_form_anisotropic_over_K((t))", true, is_anisotropic_laurent(nH));
        cons["norm_form_H"] = nH.to_string();
    });
    list.stage("minus_one_in_nrd_H", [&] {
        auto H = QuaternionAlgebra::make(FieldTag::rational_function(p),
                                         LaurentPoly::constant(p, unit_value, 1, N),
                                         LaurentPoly::t(p, N));
        QuaternionElement u = find_unit_with_nrd(H, LaurentPoly::constant(p, -1, 1, N), 1);
        long v = LaurentPoly::difference_valuation(u.nrd(), LaurentPoly::constant(p, -1, 1, N));
        add_residual_check(list, "minus_one_in_nrd_H", "Nrd(u) = -1", v, N);
        cons["u_with_nrd_minus_one"] = u.to_string();
    });

    body["construction"] = cons;
    body["obstruction"] = nullptr;
    finalize(cert, list, std::move(body));
    return cert;
}

namespace {

// Shared tail of the a1/a2/dd pipelines: normal form of the cup product,
// the two independent nonzero deciders, and the certificate block.
void obstruction_checks(CheckList& list, ordered_json& body, long p, const MonomialClass& mu_class,
                        const MonomialClass& slot2, const MonomialClass& slot3,
                        const MonomialClass& target1, const MonomialClass& target2,
                        const MonomialClass& target3) {
    ordered_json obs;
    obs["triple"] = ordered_json::array(
        {mu_class.to_string(), slot2.to_string(), slot3.to_string()});
    obs["target"] = ordered_json::array(
        {target1.to_string(), target2.to_string(), target3.to_string()});

    std::string normalized;
    list.stage("obstruction_normal_form", [&] {
        auto actual = normalize_triple(p, mu_class, slot2, slot3);
        auto target = normalize_triple(p, target1, target2, target3);
        normalized = triple_to_string(actual);
        list.add("obstruction_normal_form", triple_to_string(target), normalized);
    });
    obs["normal_form"] = normalized;

    list.stage("obstruction_nonzero", [&] {
        H3Class h3 = h3_symbol_is_nonzero(p, target1, target2, target3);
        H3Class orig = h3_symbol_is_nonzero(p, mu_class, slot2, slot3);
        list.add_bool("obstruction_nonzero_residue", true, h3.residue_value == -1 && orig.residue_value == -1);
        list.add_bool("obstruction_nonzero_pfister", true,
                      h3.pfister_anisotropic && orig.pfister_anisotropic);
        ordered_json w;
        w["residue_symbol"] = h3.residue_symbol;
        w["residue_value"] = h3.residue_value;
        w["pfister_form"] = h3.pfister_form;
        w["pfister_anisotropic"] = h3.pfister_anisotropic;
        obs["witness"] = w;
        obs["nonzero"] = h3.nonzero;
    });

    body["obstruction"] = obs;
}

} // namespace

Certificate run_unitary_family(const Scenario& sc) {
    if (sc.kind != Scenario::Kind::a1 && sc.kind != Scenario::Kind::a2)
        throw Error("run_unitary_family: scenario kind must be a1 or a2");
    Certificate cert;
    cert.scenario = sc;
    long unit_value = sc.validated_unit();
    long p = sc.p;
    int N = sc.precision;
    bool case1 = (sc.kind == Scenario::Kind::a1);
    long n = case1 ? 2 * sc.m : 2 * sc.m + 1;

    CheckList list;
    ordered_json body;
    body["schema"] = "rcert-certificate/1";
    body["scenario"] = scenario_json(sc, unit_value);

    FieldTag F = FieldTag::rational_function(p);
    LaurentPoly b_poly = LaurentPoly::constant(p, unit_value, 1, N);
    LaurentPoly t_poly = LaurentPoly::t(p, N);
    AlgebraPtr H = QuaternionAlgebra::make(F, b_poly, t_poly);
    QuaternionElement i = QuaternionElement::basis(H, 1);
    QuaternionElement j = QuaternionElement::basis(H, 2);

    ordered_json group;
    group["type"] = sc.group_type();
    group["algebra"] = "M_" + std::to_string(n) + "(" + H->to_string() + ")";
    group["center_extension"] = "F(sqrt p)";
    body["group"] = group;

    ordered_json cons;

    // Core element u and the similitude shape g = diag(j, u j, ..., u j)
    // (even rank) or diag(j, j conj(u), ..., j conj(u)) (odd rank).
    QuaternionElement u = QuaternionElement::one(H);
    std::string u_construction;
    bool have_u = list.stage("core_element", [&] {
        LaurentPoly minus_one = LaurentPoly::constant(p, -1, 1, N);
        if (case1) {
            u = find_unit_with_nrd(H, minus_one, 1);
            u_construction = "unit in F(i) with Nrd = -1";
            add_residual_check(list, "core_element_equation", "Nrd(u) = -1",
                               LaurentPoly::difference_valuation(u.nrd(), minus_one), N);
        } else {
            try {
                u = find_unit_with_nrd(H, minus_one, 2);
                u_construction = "unit in F(j) with Nrd = -1";
                add_residual_check(list, "core_element_equation", "Nrd(u) = -1",
                                   LaurentPoly::difference_valuation(u.nrd(), minus_one), N);
            } catch (const NoSolution&) {
                // -1 is not a norm of F(sqrt t) when -1 is a nonsquare unit;
                // a pure element anticommuting with j with square -1 gives
                // the same similitude shape.
                u = find_pure_with_square(H, minus_one, j);
                u_construction = "pure element anticommuting with j, u^2 = -1";
                QuaternionElement sq = u * u;
                long v = sq.is_scalar() ? LaurentPoly::difference_valuation(sq.coord(0), minus_one)
                                        : -kExactZeroValuation;
                bool anti = (u * j + j * u).is_zero();
                std::string want = "u^2 = -1 to valuation >= " +
                                   std::to_string(residual_threshold(N)) + ", u j = -j u";
                list.add("core_element_equation", want,
                         (v >= residual_threshold(N) && anti)
                             ? want
                             : "residual valuation " + std::to_string(v) + ", anticommutes " +
                                   bool_str(anti));
            }
        }
        cons["u"] = u.to_string();
        cons["u_construction"] = u_construction;
    });

    // Involution and its discriminant.
    std::vector<QuaternionElement> diag;
    if (case1) {
        diag.push_back(j.scale(t_poly.monomial_inverse()));                 // j/t
        LaurentPoly binv = LaurentPoly::constant(p, 1, unit_value, N);      // 1/b
        for (long k = 1; k < n; ++k) diag.push_back(i.scale(binv));        // i/b
    } else {
        diag.push_back(i);
        for (long k = 1; k < n; ++k) diag.push_back(j);
    }

    MonomialClass disc_expected =
        case1 ? MonomialClass::t() + MonomialClass::u() : MonomialClass::u();
    MonomialClass disc_actual;
    bool have_sigma = false;
    Involution* tau_ptr = nullptr;
    std::optional<Involution> sigma_opt, tau_opt;
    have_sigma = list.stage("involution", [&] {
        sigma_opt = Involution::first_kind(QuatMatrix::diagonal(diag));
        tau_opt = Involution::unitary_twist(QuatMatrix::diagonal(diag), MonomialClass::p());
        tau_ptr = &*tau_opt;
        list.add("sigma_is_orthogonal", to_string(InvolutionType::orthogonal),
                 to_string(sigma_opt->type()));
        disc_actual = involution_discriminant(*sigma_opt);
        list.add_bool("disc_sigma = " + disc_expected.to_string(), true,
                      classes_equal(disc_actual, disc_expected, p));
        cons["sigma"] = sigma_opt->to_string();
        cons["fixed_space_dimension"] = sigma_opt->fixed_space_dimension();
        cons["disc_sigma"] = disc_actual.to_string();
        cons["tau"] = "sigma (x) gamma, gamma the nontrivial automorphism of F(sqrt p)/F";
    });

    // Multiplier of g.
    LaurentPoly mu_expected =
        case1 ? -LaurentPoly::t(p, N) : LaurentPoly::t(p, N);
    MonomialClass mu_class_symbolic =
        case1 ? MonomialClass::minus_one() + MonomialClass::t() : MonomialClass::t();
    if (have_u && have_sigma) {
        list.stage("multiplier", [&] {
            std::vector<QuaternionElement> gdiag;
            gdiag.push_back(j);
            for (long k = 1; k < n; ++k) gdiag.push_back(case1 ? u * j : j * u.conj());
            QuatMatrix g = QuatMatrix::diagonal(gdiag);
            LaurentPoly mu = multiplier(*tau_ptr, g);
            list.add("multiplier_exact", mu_expected.to_string(),
                     LaurentPoly::equal_to_precision(mu, mu_expected) ? mu_expected.to_string()
                                                                      : mu.to_string());
            cons["g"] = g.to_string();
            cons["mu"] = mu.to_string();
        });
    }

    // Discriminant algebra class.
    SymbolSum dclass = SymbolSum::make(F);
    MonomialClass slot2, slot3;
    list.stage("discriminant_algebra", [&] {
        dclass = discriminant_algebra_class(n, H, MonomialClass::p(),
                                            have_sigma ? disc_actual : disc_expected);
        SymbolSum target =
            case1 ? milnor_normalize(SymbolSum::make(
                        F, {{MonomialClass::p(), MonomialClass::t() + MonomialClass::u()}}))
                  : milnor_normalize(SymbolSum::make(
                        F, {{MonomialClass::u(), MonomialClass::t() + MonomialClass::p()}}));
        list.add("discriminant_algebra_class", target.to_string(),
                 symbol_sums_equal(dclass, target) ? target.to_string() : dclass.to_string());
        if (dclass.symbols.size() != 1) throw Error("discriminant algebra class is not a single symbol");
        slot2 = dclass.symbols[0].first;
        slot3 = dclass.symbols[0].second;
        cons["discriminant_algebra"] = dclass.to_string();
    });
    body["construction"] = cons;

    // Obstruction mu(g) u D(B,tau), normal form (t)(p)(b) resp. (t)(b)(p).
    MonomialClass t1 = MonomialClass::t();
    MonomialClass t2 = case1 ? MonomialClass::p() : MonomialClass::u();
    MonomialClass t3 = case1 ? MonomialClass::u() : MonomialClass::p();
    obstruction_checks(list, body, p, mu_class_symbolic, slot2, slot3, t1, t2, t3);

    finalize(cert, list, std::move(body));
    return cert;
}

Certificate run_example_DD(const Scenario& sc) {
    Certificate cert;
    cert.scenario = sc;
    long unit_value = sc.validated_unit();
    long p = sc.p;
    int N = sc.precision;

    CheckList list;
    ordered_json body;
    body["schema"] = "rcert-certificate/1";
    body["scenario"] = scenario_json(sc, unit_value);

    FieldTag F = FieldTag::rational_function(p);
    LaurentPoly pt_poly = LaurentPoly::monomial(1, PAdicNumber::from_integer(p, p, N)); // p*t
    LaurentPoly u_poly = LaurentPoly::constant(p, unit_value, 1, N);
    AlgebraPtr Q = QuaternionAlgebra::make(F, pt_poly, u_poly); // i^2 = p t, j^2 = u
    QuaternionElement i = QuaternionElement::basis(Q, 1);
    QuaternionElement j = QuaternionElement::basis(Q, 2);

    ordered_json group;
    group["type"] = sc.group_type();
    group["algebra"] = "M_3(" + Q->to_string() + ")";
    body["group"] = group;

    ordered_json cons;

    // Clifford components of the rank-2 part <j, -p j>.
    list.stage("clifford_components", [&] {
        DiagonalForm rank2 = DiagonalForm::make({MonomialClass::one(), -MonomialClass::p()}, FieldTag::qp(p));
        LocalInvariants inv = local_invariants(rank2);
        MonomialClass disc1{false, inv.discriminant.unit_nonsquare, inv.discriminant.odd_valuation, false};
        SkewHermitianForm rank1 = SkewHermitianForm::make(Q, {j});
        MonomialClass disc2 = involution_discriminant(adjoint_involution(rank1));
        auto [c_plus, c_minus] = clifford_component_classes(disc1, disc2, Q->brauer_class());

        SymbolSum plus_target = SymbolSum::make(F, {{MonomialClass::p(), MonomialClass::u()}});
        SymbolSum minus_target = SymbolSum::make(F, {{MonomialClass::t(), MonomialClass::u()}});
        list.add("clifford_component_plus", milnor_normalize(plus_target).to_string(),
                 symbol_sums_equal(c_plus, plus_target) ? milnor_normalize(plus_target).to_string()
                                                        : c_plus.to_string());
        list.add("clifford_component_minus", milnor_normalize(minus_target).to_string(),
                 symbol_sums_equal(c_minus, minus_target) ? milnor_normalize(minus_target).to_string()
                                                          : c_minus.to_string());
        list.add_bool("clifford_plus_nonsplit_over_Qp((t))", true,
                      is_nonsplit_over_completion(specialize_to_laurent(c_plus)));
        list.add_bool("clifford_minus_nonsplit_over_Qp((t))", true,
                      is_nonsplit_over_completion(specialize_to_laurent(c_minus)));
        cons["clifford_components"] = ordered_json::array({c_plus.to_string(), c_minus.to_string()});
    });

    // h = <j, -p j, i> and its adjoint involution.
    SkewHermitianForm h = SkewHermitianForm::make(
        Q, {j, j.scale(LaurentPoly::constant(p, -p, 1, N)), i});
    cons["h"] = h.to_string();
    MonomialClass disc_expected = MonomialClass::p() + MonomialClass::t();
    std::optional<Involution> sigma_h;
    bool have_sigma = list.stage("involution", [&] {
        sigma_h = adjoint_involution(h);
        list.add("sigma_h_is_orthogonal", to_string(InvolutionType::orthogonal),
                 to_string(sigma_h->type()));
        MonomialClass disc_actual = involution_discriminant(*sigma_h);
        list.add_bool("disc_sigma_h = p*t", true, classes_equal(disc_actual, disc_expected, p));
        MonomialClass disc_h = hermitian_discriminant(h);
        list.add_bool("hermitian_disc_h = p*t", true, classes_equal(disc_h, disc_expected, p));
        cons["sigma_h"] = sigma_h->to_string();
        cons["disc_sigma_h"] = disc_actual.to_string();
        cons["hermitian_disc_h"] = disc_h.to_string();
    });

    // Pure i' with i'^2 = -p t anticommuting with j, and g = diag(i', i', i).
    LaurentPoly target = LaurentPoly::monomial(1, PAdicNumber::from_integer(p, -p, N)); // -p t
    std::optional<QuaternionElement> iprime;
    bool have_iprime = list.stage("i_prime", [&] {
        iprime = find_pure_with_square(Q, target, j);
        QuaternionElement sq = *iprime * *iprime;
        long v = sq.is_scalar() ? LaurentPoly::difference_valuation(sq.coord(0), target)
                                : -kExactZeroValuation;
        add_residual_check(list, "i_prime_square_residual", "i'^2 = -p*t", v, N);
        list.add_bool("i_prime_anticommutes_j", true, (*iprime * j + j * *iprime).is_zero());
        cons["i_prime"] = iprime->to_string();
    });

    if (have_sigma && have_iprime) {
        list.stage("multiplier", [&] {
            QuatMatrix g = QuatMatrix::diagonal({*iprime, *iprime, i});
            LaurentPoly mu = multiplier(*sigma_h, g);
            list.add("multiplier_exact", target.to_string(),
                     LaurentPoly::equal_to_precision(mu, target) ? target.to_string() : mu.to_string());
            list.add_bool("proper_similitude", true, is_proper_similitude(*sigma_h, g));
            cons["g"] = g.to_string();
            cons["mu"] = mu.to_string();
            cons["nrd_g"] = nrd_diag_matrix(g).to_string();
        });
    }
    body["construction"] = cons;

    // Obstruction (-p t) u (p) u (u), normal form (t)(p)(u).
    MonomialClass mu_class = MonomialClass::minus_one() + MonomialClass::p() + MonomialClass::t();
    obstruction_checks(list, body, p, mu_class, MonomialClass::p(), MonomialClass::u(),
                       MonomialClass::t(), MonomialClass::p(), MonomialClass::u());

    // q = <1,-t> x <<p,u>> anisotropic over Q_p((t)).
    list.stage("pfister_q", [&] {
        DiagonalForm q = pfister({MonomialClass::t(), MonomialClass::p(), MonomialClass::u()},
                                 FieldTag::laurent_qp(p));
        bool aniso = is_anisotropic_laurent(q);
        list.add_bool("pfister_q_anisotropic_over_Qp((t))", true, aniso);
        body["construction"]["q"] = q.to_string();
    });

    finalize(cert, list, std::move(body));
    return cert;
}

Certificate run_scenario(const Scenario& sc) {
    switch (sc.kind) {
        case Scenario::Kind::prelim: return run_prelim(sc);
        case Scenario::Kind::a1:
        case Scenario::Kind::a2: return run_unitary_family(sc);
        case Scenario::Kind::dd: return run_example_DD(sc);
    }
    throw Error("run_scenario: bad kind");
}

int cli_main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic verifier for similitude and symbol-obstruction certificates"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run a scenario and emit a certificate");
    std::string scenario_name;
    long p = 5;
    long m = 1;
    long unit = 0;
    int precision = PAdicNumber::default_precision;
    std::string format = "text";
    std::string out_path;
    verify->add_option("--scenario", scenario_name, "prelim|a1|a2|dd")->required();
    verify->add_option("--p", p, "odd prime")->required();
    verify->add_option("--m", m, "rank parameter (a1/a2)");
    verify->add_option("--unit", unit, "nonsquare unit mod p (default: smallest)");
    verify->add_option("--precision", precision, "p-adic digits (default 32)");
    verify->add_option("--format", format, "text|json");
    verify->add_option("--out", out_path, "also write the report to this path");

    // hilbert
    auto* hil = app.add_subcommand("hilbert", "Hilbert symbol of two monomials over Q_p");
    long hp = 5;
    std::vector<std::string> hargs;
    hil->add_option("--p", hp, "odd prime")->required();
    hil->add_option("args", hargs, "two monomial strings (no t)")->expected(2);

    // symbol3
    auto* sym = app.add_subcommand("symbol3", "decide a triple symbol over Q_p((t))");
    long sp = 5;
    std::vector<std::string> sargs;
    sym->add_option("--p", sp, "odd prime")->required();
    sym->add_option("args", sargs, "three monomial strings")->expected(3);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            Scenario sc;
            if (scenario_name == "prelim")
                sc.kind = Scenario::Kind::prelim;
            else if (scenario_name == "a1")
                sc.kind = Scenario::Kind::a1;
            else if (scenario_name == "a2")
                sc.kind = Scenario::Kind::a2;
            else if (scenario_name == "dd")
                sc.kind = Scenario::Kind::dd;
            else
                throw Error("unknown scenario '" + scenario_name + "'");
            sc.p = p;
            sc.m = m;
            if (verify->count("--unit")) sc.unit_override = unit;
            sc.precision = precision;
            if (format != "text" && format != "json") throw Error("unknown format '" + format + "'");
            sc.validated_unit(); // config validation up front -> exit 2

            Certificate cert = run_scenario(sc);
            std::string report = (format == "json") ? cert.to_json_string() : cert.to_text();
            std::cout << report;
            if (!out_path.empty()) {
                std::ofstream f(out_path);
                if (!f) throw Error("cannot write to " + out_path);
                f << report;
            }
            return cert.verdict ? 0 : 1;
        }
        if (hil->parsed()) {
            MonomialClass a = parse_monomial_class(hargs[0], hp);
            MonomialClass b = parse_monomial_class(hargs[1], hp);
            if (!a.t_free() || !b.t_free())
                throw Error("hilbert: arguments must be t-free monomials");
            if (!is_odd_prime(hp)) throw UnsupportedPrime("hilbert: p must be an odd prime");
            int v = hilbert_symbol(a.representative_padic(hp), b.representative_padic(hp));
            std::cout << (v == 1 ? "+1" : "-1") << "\n";
            return 0;
        }
        if (sym->parsed()) {
            if (!is_odd_prime(sp)) throw UnsupportedPrime("symbol3: p must be an odd prime");
            MonomialClass a = parse_monomial_class(sargs[0], sp);
            MonomialClass b = parse_monomial_class(sargs[1], sp);
            MonomialClass c = parse_monomial_class(sargs[2], sp);
            H3Class h3 = h3_symbol_is_nonzero(sp, a, b, c);
            std::cout << (h3.nonzero ? "nonzero" : "zero") << "\n";
            return 0;
        }
    } catch (const InternalDeciderMismatch& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace rcert
