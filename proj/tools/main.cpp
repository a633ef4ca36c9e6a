// liesym CLI: equation specs in (TOML), symmetry / conservation-law /
// reduction reports out (text and JSON).

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "liesym/ode.hpp"
#include "liesym/plate.hpp"
#include "liesym/rod.hpp"
#include "toml_lite.hpp"

using namespace liesym;
using nlohmann::json;

namespace {

struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------- formatting

std::string jet_name(const JetCoord& c) {
    std::string out = "w";
    for (int i = 0; i < c.k - c.j; ++i) out += '1';
    for (int i = 0; i < c.j; ++i) out += '2';
    return out;
}

std::string jet_str(const JetExpr& e) {
    if (e.terms().empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, coef] : e.terms()) {
        if (!first) out += " + ";
        first = false;
        std::string c = coef.str();
        bool trivial_coef = c == "1";
        std::string vars;
        for (const auto& [coord, power] : mono) {
            if (!vars.empty()) vars += "*";
            vars += jet_name(coord);
            if (power != 1) vars += "^" + std::to_string(power);
        }
        if (vars.empty()) {
            out += c;
        } else if (trivial_coef) {
            out += vars;
        } else {
            out += "(" + c + ")*" + vars;
        }
    }
    return out;
}

std::string field_str(const VectorField& X) {
    std::ostringstream os;
    os << "xi1=" << X.xi1.str() << ", xi2=" << X.xi2.str()
       << ", sigma=" << X.sigma.str() << ", u=" << X.u.str();
    return os.str();
}

// ------------------------------------------------------------- reporting

struct Reporter {
    bool json_mode = false;
    json reports = json::array();
    bool all_pass = true;

    void add(const std::string& name, bool pass, double max_abs, double tol,
             const std::string& detail = "") {
        all_pass = all_pass && pass;
        json r = {{"name", name},
                  {"pass", pass},
                  {"max_abs", max_abs},
                  {"tol", tol}};
        if (!detail.empty()) r["detail"] = detail;
        reports.push_back(r);
        if (!json_mode) {
            std::cout << (pass ? "[pass] " : "[FAIL] ") << name
                      << "  (max " << max_abs << ", tol " << tol << ")";
            if (!detail.empty()) std::cout << "  " << detail;
            std::cout << "\n";
        }
    }
    void info(const std::string& name, const std::string& text) {
        reports.push_back({{"name", name}, {"text", text}});
        if (!json_mode) std::cout << name << ": " << text << "\n";
    }
    int finish(const std::string& command) {
        if (json_mode) {
            json out = {{"schema", 1},
                        {"command", command},
                        {"pass", all_pass},
                        {"reports", reports}};
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << (all_pass ? "PASS" : "FAIL") << "\n";
        }
        return all_pass ? 0 : 1;
    }
};

// ------------------------------------------------------------- input spec

struct OmegaSpec {
    std::string form;  // identity | power | exp
    double p = 1.0;    // power exponent
    std::complex<double> a{1.0, 0.0};  // exp rate
};

struct InputSpec {
    std::string kind;  // "rod" | "plate"
    std::optional<RodEquation> rod;
    std::optional<PlateEquation> plate;
    std::optional<double> plate_kappa;  // TEq parameter
    std::optional<OmegaSpec> omega;
    // domain
    double x1_lo = 0.5, x1_hi = 2.0, x2_lo = 0.5, x2_hi = 2.0;
    int n_samples = 64;
    bool has_domain = false;
    // verify
    std::optional<Expr> w;
    std::optional<VectorField> field;

    Operator4 op() const {
        if (rod) return rod->op();
        if (plate) return plate->op();
        if (plate_kappa) return teq_operator(*plate_kappa);
        throw SpecError("the input file does not define an operator");
    }
    SampleSet samples(unsigned seed) const {
        if (has_domain)
            return SampleSet::box(seed, n_samples, x1_lo, x1_hi, x2_lo, x2_hi);
        return SampleSet::box(seed, n_samples, 0.5, 2.0, 0.5, 2.0);
    }
};

double num_at(const toml_lite::Section& s, const std::string& key,
              double fallback) {
    auto it = s.find(key);
    if (it == s.end()) return fallback;
    if (it->second.kind != toml_lite::Value::Kind::Number)
        throw SpecError("key '" + key + "' must be a number");
    return it->second.number;
}

Expr expr_at(const toml_lite::Section& s, const std::string& key,
             const std::string& fallback) {
    auto it = s.find(key);
    const std::string text =
        it == s.end() ? fallback : it->second.str;
    if (it != s.end() && it->second.kind != toml_lite::Value::Kind::String)
        throw SpecError("key '" + key + "' must be an expression string");
    try {
        return parse_expr(text);
    } catch (const std::exception& e) {
        throw SpecError("cannot parse '" + key + "': " + e.what());
    }
}

KappaForm parse_kappa(const toml_lite::Value& v) {
    if (v.kind == toml_lite::Value::Kind::Number)
        return KappaForm::constant(v.number);
    if (v.kind == toml_lite::Value::Kind::String)
        return KappaForm::general_form(parse_expr(v.str));
    if (v.kind != toml_lite::Value::Kind::Table)
        throw SpecError("kappa must be a number, string, or tagged table");
    const auto& t = v.table;
    const std::string form = v.at("form").str;
    auto num = [&](const std::string& k, double d) {
        auto it = t.find(k);
        return it == t.end() ? d : it->second.number;
    };
    auto profile = [&]() {
        auto it = t.find("f");
        if (it == t.end()) throw SpecError("kappa form needs a profile 'f'");
        return parse_expr(it->second.str);
    };
    if (form == "zero") return KappaForm::zero();
    if (form == "constant") return KappaForm::constant(num("kappa0", 0.0));
    if (form == "ridge")
        return KappaForm::ridge(num("beta1", 0.0), num("beta2", 0.0),
                                profile());
    if (form == "inv_square_time")
        return KappaForm::inv_square_time(num("kappa0", 1.0), num("beta", 0.0));
    if (form == "quartic_ridge_b")
        return KappaForm::quartic_ridge_b(num("kappa0", 1.0), num("beta", 0.0));
    if (form == "similarity_b")
        return KappaForm::similarity_b(num("beta1", 0.0), num("beta2", 0.0),
                                       profile());
    if (form == "pow_four_thirds")
        return KappaForm::pow_four_thirds(num("kappa0", 1.0), num("beta", 0.0));
    if (form == "quartic_ridge_c")
        return KappaForm::quartic_ridge_c(num("kappa0", 1.0), num("beta", 0.0));
    if (form == "similarity_c")
        return KappaForm::similarity_c(num("beta1", 0.0), num("beta2", 0.0),
                                       profile());
    if (form == "general") {
        auto it = t.find("expr");
        if (it == t.end()) throw SpecError("general kappa needs 'expr'");
        return KappaForm::general_form(parse_expr(it->second.str));
    }
    throw SpecError("unknown kappa form '" + form + "'");
}

InputSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open input file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    toml_lite::Document doc;
    try {
        doc = toml_lite::parse(ss.str());
    } catch (const toml_lite::TomlError& e) {
        throw SpecError(std::string("TOML error: ") + e.what());
    }

    InputSpec spec;
    const toml_lite::Section& eq = doc.at("equation");
    spec.kind = eq.at("kind").str;

    if (spec.kind == "rod") {
        const toml_lite::Section& r = doc.at("rod");
        RodEquation rod;
        rod.gamma = num_at(r, "gamma", 1.0);
        rod.chi11 = num_at(r, "chi11", 0.0);
        rod.chi12 = num_at(r, "chi12", 0.0);
        rod.chi22 = num_at(r, "chi22", 0.0);
        auto it = r.find("kappa");
        if (it != r.end()) rod.kappa = parse_kappa(it->second);
        rod.validate();
        spec.rod = rod;
    } else if (spec.kind == "plate") {
        const toml_lite::Section& p = doc.at("plate");
        if (p.count("kappa")) spec.plate_kappa = num_at(p, "kappa", 0.0);
        if (p.count("a11") || p.count("a12") || p.count("a22") ||
            p.count("a0")) {
            PlateEquation pe;
            pe.A2 = {expr_at(p, "a11", "0"), expr_at(p, "a12", "0"),
                     expr_at(p, "a22", "0")};
            pe.A0 = expr_at(p, "a0", "0");
            spec.plate = pe;
        } else if (spec.plate_kappa) {
            // TEq with the given kappa: Delta^2 W - k W_11 + k W_22 + k^2/4.
            const Operator4 o = teq_operator(*spec.plate_kappa);
            PlateEquation pe;
            pe.A2 = o.A2;
            pe.A0 = o.A0;
            spec.plate = pe;
        }
        if (p.count("omega")) {
            const toml_lite::Value& ov = p.at("omega");
            OmegaSpec os;
            os.form = ov.at("form").str;
            if (os.form == "power") {
                auto it2 = ov.table.find("p");
                os.p = it2 == ov.table.end() ? 1.0 : it2->second.number;
            } else if (os.form == "exp") {
                double re = 1.0, im = 0.0;
                if (ov.table.count("a_re")) re = ov.at("a_re").number;
                if (ov.table.count("a_im")) im = ov.at("a_im").number;
                os.a = {re, im};
            } else if (os.form != "identity") {
                throw SpecError("omega form must be identity, power, or exp");
            }
            spec.omega = os;
        }
        if (!spec.plate && !spec.omega)
            throw SpecError(
                "[plate] needs coefficients a11/a12/a22/a0, kappa, or omega");
    } else {
        throw SpecError("equation kind must be 'rod' or 'plate'");
    }

    if (doc.has("domain")) {
        const toml_lite::Section& d = doc.at("domain");
        spec.x1_lo = num_at(d, "x1_lo", 0.5);
        spec.x1_hi = num_at(d, "x1_hi", 2.0);
        spec.x2_lo = num_at(d, "x2_lo", 0.5);
        spec.x2_hi = num_at(d, "x2_hi", 2.0);
        spec.n_samples = (int)num_at(d, "n", 64);
        spec.has_domain = true;
    }
    if (doc.has("verify")) {
        const toml_lite::Section& v = doc.at("verify");
        if (v.count("w")) spec.w = expr_at(v, "w", "0");
    }
    if (doc.has("field")) {
        const toml_lite::Section& f = doc.at("field");
        VectorField X;
        X.xi1 = expr_at(f, "xi1", "0");
        X.xi2 = expr_at(f, "xi2", "0");
        X.sigma = expr_at(f, "sigma", "0");
        X.u = expr_at(f, "u", "0");
        spec.field = X;
    }
    return spec;
}

CExpr omega_cexpr(const OmegaSpec& o) {
    const CExpr z = CExpr::z();
    if (o.form == "identity") return z;
    if (o.form == "power") return cpow(z, o.p);
    return cexp(CExpr::constant(o.a) * z);
}

Expr rod_lambda(const VectorField& X) {
    return X.sigma - 4 * X.xi1.diff(1);
}

// --------------------------------------------------------------- commands

int cmd_classify(const InputSpec& spec, Reporter& rep, unsigned seed,
                 double tol) {
    if (spec.rod) {
        const ClassificationResult c = rod_classify(*spec.rod);
        rep.info("subclass", std::string(1, c.subclass));
        rep.info("table_row", std::to_string(c.table_row));
        if (!c.note.empty()) rep.info("note", c.note);
        const SampleSet s = spec.samples(seed);
        for (const TaggedGenerator& g : c.generators) {
            const SymmetryReport r =
                determining_residuals(spec.rod->op(), g.X, rod_lambda(g.X), s,
                                      tol);
            std::string tag = g.variational == VariationalTag::AsIs
                                  ? "variational as-is"
                                  : "variational with +1/2 X0";
            rep.add("generator " + g.label, r.pass, r.max_abs, tol,
                    field_str(g.X) + "  [" + tag + "]");
        }
        return rep.finish("classify");
    }
    if (!spec.plate) throw SpecError("classify needs [plate] coefficients");
    const PlateClassification c = plate_classify(*spec.plate, seed, tol);
    rep.info("s1_zero", c.s1_zero ? "true" : "false");
    rep.info("s2_zero", c.s2_zero ? "true" : "false");
    rep.info("s3_zero", c.s3_zero ? "true" : "false");
    rep.info("s2_real", c.s2_real ? "true" : "false");
    rep.info("max_group_dimension", std::to_string(c.max_group_dimension));
    if (!c.note.empty()) rep.info("note", c.note);
    for (const std::string& inv : c.invariant_coordinates)
        rep.info("invariant", inv);
    return rep.finish("classify");
}

int cmd_check_symmetry(const InputSpec& spec, Reporter& rep, unsigned seed,
                       double tol) {
    if (!spec.field)
        throw SpecError("check-symmetry needs a [field] section");
    const VectorField X = *spec.field;
    const Operator4 op = spec.op();
    const SampleSet s = spec.samples(seed);

    const bool pure_solution =
        expr_equivalent(X.xi1, Expr::constant(0), s) &&
        expr_equivalent(X.xi2, Expr::constant(0), s) &&
        expr_equivalent(X.sigma, Expr::constant(0), s) &&
        !expr_equivalent(X.u, Expr::constant(0), s);
    if (pure_solution) {
        const VerifyReport r = residual_on_solution(op, X.u, s, tol);
        rep.add("solution symmetry X_u (D[u] = 0)", r.pass, r.max_abs, tol);
        return rep.finish("check-symmetry");
    }
    if (!expr_equivalent(X.u, Expr::constant(0), s))
        throw SpecError(
            "mixed fields with both (xi, sigma) and u are not point "
            "symmetries of this class; check the parts separately");

    const Expr lambda = infer_lambda(op, X);
    const SymmetryReport r = determining_residuals(op, X, lambda, s, tol);
    rep.add("determining equations", r.pass, r.max_abs, tol,
            "lambda = " + lambda.str());
    if (r.pass) {
        if (is_variational(X, lambda, s, tol).pass) {
            rep.info("variational", "yes, as-is");
        } else {
            const VectorField fixed = X + 0.5 * VectorField::X0();
            const Expr lf = infer_lambda(op, fixed);
            if (determining_residuals(op, fixed, lf, s, tol).pass &&
                is_variational(fixed, lf, s, tol).pass)
                rep.info("variational", "needs +1/2 X0 to be variational");
            else
                rep.info("variational", "no");
        }
    }
    return rep.finish("check-symmetry");
}

int cmd_currents(const InputSpec& spec, Reporter& rep, unsigned seed,
                 double tol, bool table, const std::string& u_text) {
    if (!spec.rod) throw SpecError("currents needs a rod equation");
    const RodEquation& eq = *spec.rod;
    const SampleSet s = spec.samples(seed);
    const Operator4 op = eq.op();

    auto verify = [&](const std::string& name, const CurrentPair& cur) {
        if (spec.w) {
            const VerifyReport r = conservation_check(cur, *spec.w, s, tol,
                                                      &op);
            rep.add(name + " on w", r.pass, r.max_abs, tol);
        }
    };

    if (!u_text.empty()) {
        const Expr u = parse_expr(u_text);
        const CurrentPair cur = p_u_current(eq, u);
        rep.info("P_u^1", jet_str(cur.P1));
        rep.info("P_u^2", jet_str(cur.P2));
        verify("P_u", cur);
        return rep.finish("currents");
    }
    if (table) {
        if (eq.chi11 != 0.0 || eq.chi12 != 0.0 ||
            eq.kappa.normalize().tag != KappaForm::Tag::Zero)
            throw SpecError(
                "--table expects the uniform beam (chi11 = chi12 = 0, "
                "kappa = 0)");
        for (const Table3Entry& e : beam_table3(eq.gamma, eq.chi22)) {
            rep.info(e.label, "Psi = " + jet_str(e.Psi) +
                                  " ; P = " + jet_str(e.P) +
                                  " ; q = " + jet_str(e.q));
            verify(e.label, {e.P, e.Psi});
        }
        return rep.finish("currents");
    }
    const ClassificationResult cls = rod_classify(eq);
    const auto laws = table2_laws(eq);
    const JetExpr Dw = apply_op(op);
    for (size_t i = 0; i < laws.size(); ++i) {
        rep.info(laws[i].first, "P^1 = " + jet_str(laws[i].second.P1) +
                                    " ; P^2 = " + jet_str(laws[i].second.P2));
        const JetExpr Q =
            characteristic(cls.generators[i].variational_field());
        const double res =
            jet_residual(laws[i].second.divergence(), Q * Dw, s);
        rep.add(laws[i].first + " divergence identity", res <= tol, res, tol);
        verify(laws[i].first, laws[i].second);
    }
    return rep.finish("currents");
}

int cmd_reduce(const InputSpec& spec, Reporter& rep, unsigned seed, double tol,
               const std::string& kind, double c, int sign,
               const std::string& U_text, bool integrate,
               const std::vector<double>& C) {
    const SampleSet s = spec.samples(seed);

    if (spec.kind == "plate") {
        if (!spec.plate_kappa)
            throw SpecError("plate reduce needs [plate] kappa (TEq form)");
        const double kappa = *spec.plate_kappa;
        const auto coeff = teq_reduced_ode_coefficients();
        static const char* names[5] = {"u''''", "u'''", "u''", "u'", "u"};
        for (int i = 0; i < 5; ++i)
            rep.info(names[i], coeff[i].str());
        if (C.size() == 4) {
            const Expr W = teq_invariant_solution(kappa, C[0], C[1], C[2],
                                                  C[3]);
            const SampleSet box =
                SampleSet::box(seed, spec.n_samples, 0.5, 1.2, 0.5, 1.2);
            const VerifyReport r =
                residual_on_solution(teq_operator(kappa), W, box, 1e-8);
            rep.add("invariant solution residual", r.pass, r.max_abs, 1e-8);
        }
        return rep.finish("reduce");
    }

    if (!spec.rod) throw SpecError("reduce needs a rod or plate equation");
    ReductionSpec rs;
    if (kind == "travelling-wave") {
        rs.kind = ReductionKind::TravellingWave;
        rs.c = c;
        rs.sign = sign;
    } else if (kind == "y3") {
        rs.kind = ReductionKind::Y3;
    } else if (kind == "y4") {
        rs.kind = ReductionKind::Y4;
    } else {
        throw SpecError("kind must be travelling-wave, y3, or y4");
    }
    const ReducedODE red = rod_reduce(*spec.rod, rs);
    rep.info("equation", red.description);
    rep.info("s", red.s_map.str());
    static const char* names[5] = {"U''''", "U'''", "U''", "U'", "U"};
    for (int i = 0; i < 5; ++i)
        rep.info(names[i], red.coeff[i].str());
    if (red.self_similar)
        rep.info("note", "self-similar special case");

    if (!U_text.empty()) {
        const Expr U = parse_expr(U_text);
        const VerifyReport r = lift_and_verify(*spec.rod, red, U, s, tol);
        rep.add("closed-form lift residual", r.pass, r.max_abs, tol);
    }
    if (integrate) {
        // Augmented companion system u .. u^(5) (the differentiated ODE
        // supplies u^(5) and u^(6)) so the dense output interpolates the
        // fourth derivative accurately.
        std::array<Expr, 5> cf = red.coeff, c1, c2;
        for (int i = 0; i < 5; ++i) {
            c1[i] = cf[i].diff(1);
            c2[i] = c1[i].diff(1);
        }
        double smin = 1e300, smax = -1e300;
        for (auto [a, b] : s.points) {
            const double sv = red.s_map.eval(a, b);
            smin = std::min(smin, sv);
            smax = std::max(smax, sv);
        }
        const auto rhs = [&](double t, const std::vector<double>& y,
                             std::vector<double>& dy) {
            std::array<double, 5> cv, dv, ddv;
            for (int i = 0; i < 5; ++i) {
                cv[i] = cf[i].eval(t, 0);
                dv[i] = c1[i].eval(t, 0);
                ddv[i] = c2[i].eval(t, 0);
            }
            double u6 = 0.0;
            for (int i = 0; i < 5; ++i)
                u6 -= ddv[i] * y[4 - i] + 2.0 * dv[i] * y[5 - i];
            for (int i = 1; i < 5; ++i) u6 -= cv[i] * y[6 - i];
            for (int d = 0; d < 5; ++d) dy[d] = y[d + 1];
            dy[5] = u6 / cv[0];
        };
        const double s0 = smin - 0.05;
        std::vector<double> y0 = {1.0, 0.5, -0.25, 0.125, 0.0, 0.0};
        std::array<double, 5> cv, dv;
        for (int i = 0; i < 5; ++i) {
            cv[i] = cf[i].eval(s0, 0);
            dv[i] = c1[i].eval(s0, 0);
        }
        double u4 = 0.0;
        for (int i = 1; i < 5; ++i) u4 -= cv[i] * y0[4 - i];
        y0[4] = u4 / cv[0];
        double u5 = 0.0;
        for (int i = 0; i < 5; ++i) u5 -= dv[i] * y0[4 - i];
        for (int i = 1; i < 5; ++i) u5 -= cv[i] * y0[5 - i];
        y0[5] = u5 / cv[0];
        const DenseSolution dense(integrate_adaptive(rhs, y0, s0, smax + 0.05),
                                  6);
        const auto U = [&](double sv, int d) { return dense.eval(sv, d); };
        const VerifyReport r =
            lift_and_verify(*spec.rod, red, U, s, std::max(tol, 1e-5));
        rep.add("sampled lift residual", r.pass, r.max_abs,
                std::max(tol, 1e-5));
    }
    return rep.finish("reduce");
}

int cmd_transform(const InputSpec& spec, Reporter& rep, unsigned seed,
                  double tol, double k1, double k2, double k3) {
    if (!spec.omega)
        throw SpecError("transform needs [plate] omega = { form = ... }");
    const AnalyticSeed seed2 = AnalyticSeed::from_omega(omega_cexpr(*spec.omega));
    const ChangeOfVariables cov =
        to_constant_coefficients(seed2, k1, k2, k3);
    rep.info("closed_form", cov.closed_form ? "true" : "false");
    if (cov.closed_form) {
        rep.info("y1", cov.y1.str());
        rep.info("y2", cov.y2.str());
        rep.info("U", cov.U.str());
    } else {
        rep.info("y", "numeric quadrature of 1/f along axis-parallel paths");
    }
    // Round trip / consistency: closed-form maps must agree with the numeric
    // evaluators.
    const SampleSet s = spec.samples(seed);
    double worst = 0.0;
    int checked = 0;
    for (auto [a, b] : s.points) {
        if (checked >= 16) break;
        try {
            const auto [y1, y2] = cov.map(a, b);
            if (cov.closed_form) {
                worst = std::max(worst, std::abs(y1 - cov.y1.eval(a, b)));
                worst = std::max(worst, std::abs(y2 - cov.y2.eval(a, b)));
            }
            if (cov.has_inverse) {
                worst = std::max(worst,
                                 std::abs(cov.inv_x1.eval(y1, y2) - a));
                worst = std::max(worst,
                                 std::abs(cov.inv_x2.eval(y1, y2) - b));
            }
            ++checked;
        } catch (const EvalDomainError&) {
            continue;  // point outside the chart
        }
    }
    rep.add("chart consistency", worst <= std::max(tol, 1e-8), worst,
            std::max(tol, 1e-8), std::to_string(checked) + " points");
    return rep.finish("transform");
}

int cmd_selfcheck(Reporter& rep, unsigned seed, double tol) {
    for (const auto& [name, r] : identity_battery(seed, tol))
        rep.add("identity: " + name, r.pass, r.max_abs, tol);

    // Biharmonic seven-parameter group.
    {
        Operator4 bi;
        bi.A4 = biharmonic_a4();
        const SampleSet s = SampleSet::standard(seed, 48);
        int i = 0;
        for (const VectorField& X : biharmonic_generators()) {
            const Expr lambda = infer_lambda(bi, X);
            const SymmetryReport r = determining_residuals(bi, X, lambda, s,
                                                           tol);
            rep.add("biharmonic X" + std::to_string(i++), r.pass, r.max_abs,
                    tol);
        }
    }

    // One instance per rod classification row.
    {
        const SampleSet s = SampleSet::box(seed, 40, 0.5, 2.0, 0.5, 2.0);
        const Expr y = Expr::var(1);
        const Expr f = Expr::constant(1) + y * y;
        for (int row = 1; row <= 11; ++row) {
            RodEquation eq;
            eq.gamma = 1.25;
            auto subB = [&] {
                eq.chi22 = 1.0;
                eq.chi12 = 0.5;
                eq.chi11 = 0.25;
            };
            auto subC = [&] {
                eq.chi12 = 1.5;
                eq.chi11 = 0.75;
            };
            auto subA = [&] {
                eq.chi11 = 2.0;
                eq.chi12 = 0.5;
                eq.chi22 = 3.0;
            };
            switch (row) {
                case 1: subA(); eq.kappa = KappaForm::ridge(0.7, 1.1, f); break;
                case 2: subB(); eq.kappa = KappaForm::similarity_b(0.4, 0.9, f); break;
                case 3: subC(); eq.kappa = KappaForm::similarity_c(0.4, 0.9, f); break;
                case 4: subB(); eq.kappa = KappaForm::inv_square_time(2.0, 0.6); break;
                case 5: subC(); eq.kappa = KappaForm::pow_four_thirds(2.0, 0.6); break;
                case 6: subB(); eq.kappa = KappaForm::quartic_ridge_b(1.0, 6.0); break;
                case 7: subC(); eq.kappa = KappaForm::quartic_ridge_c(1.0, 9.0); break;
                case 8: subA(); eq.kappa = KappaForm::constant(1.0); break;
                case 9: subB(); eq.kappa = KappaForm::constant(1.0); break;
                case 10: subB(); break;
                case 11: subC(); break;
            }
            const ClassificationResult c = rod_classify(eq);
            bool ok = c.table_row == row;
            double worst = 0.0;
            for (const TaggedGenerator& g : c.generators) {
                const SymmetryReport r = determining_residuals(
                    eq.op(), g.X, rod_lambda(g.X), s, tol);
                ok = ok && r.pass;
                worst = std::max(worst, r.max_abs);
                const VectorField v = g.variational_field();
                ok = ok && is_variational(v, rod_lambda(v), s, tol).pass;
            }
            rep.add("rod table row " + std::to_string(row), ok, worst, tol);
        }
    }

    // Beam conservation laws on the exact travelling wave.
    {
        RodEquation eq;
        eq.gamma = 1.0;
        eq.chi22 = 1.0;
        const SampleSet s = SampleSet::standard(seed, 48);
        const Expr w = cos(Expr::var(1) - Expr::var(2));
        const Operator4 op = eq.op();
        for (const Table3Entry& e : beam_table3(1.0, 1.0)) {
            const VerifyReport r =
                conservation_check({e.P, e.Psi}, w, s, tol, &op);
            rep.add("beam law: " + e.label, r.pass, r.max_abs, tol);
        }
    }

    // E_omega worked example, kappa = 8.
    {
        const AnalyticSeed sd =
            AnalyticSeed::from_omega(cexp(CExpr::constant({2.0, 0.0}) *
                                          CExpr::z()));
        const PlateEquation pe = e_omega(sd);
        const Operator4 teq = teq_operator(8.0);
        const SampleSet s = SampleSet::standard(seed, 32);
        double worst = 0.0;
        for (int slot = 0; slot < 3; ++slot)
            for (auto [a, b] : s.points)
                worst = std::max(worst, std::abs(pe.A2[slot].eval(a, b) -
                                                 teq.A2[slot].eval(a, b)));
        for (auto [a, b] : s.points)
            worst = std::max(worst,
                             std::abs(pe.A0.eval(a, b) - teq.A0.eval(a, b)));
        rep.add("E_omega(e^{2z}) equals TEq(kappa = 8)", worst <= 1e-9, worst,
                1e-9);
    }
    return rep.finish("selfcheck");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Lie point-symmetry analysis of fourth-order plate and rod "
        "equations"};
    app.require_subcommand(1);

    std::string input, u_text, kind = "travelling-wave", U_text;
    bool json_mode = false, table = false, integrate = false;
    unsigned seed = 1;
    double tol = 1e-9, cspeed = 1.0, k1 = 0.0, k2 = 1.0, k3 = 0.0;
    int sign = +1;
    std::vector<double> C;

    app.add_option("--input", input, "TOML equation spec");
    app.add_flag("--json", json_mode, "emit a JSON report");
    app.add_option("--seed", seed, "sample seed");
    app.add_option("--tol", tol, "verification tolerance");

    CLI::App* classify = app.add_subcommand("classify",
                                            "group classification");
    CLI::App* check = app.add_subcommand(
        "check-symmetry", "verify a candidate field ([field] section)");
    CLI::App* currents = app.add_subcommand("currents",
                                            "conserved currents");
    currents->add_flag("--table", table, "print the beam Table-3 laws");
    currents->add_option("--u", u_text, "solution-symmetry current P_u");
    CLI::App* reduce = app.add_subcommand("reduce",
                                          "group-invariant reduction");
    reduce->add_option("--kind", kind, "travelling-wave | y3 | y4");
    reduce->add_option("--c", cspeed, "travelling-wave speed");
    reduce->add_option("--sign", sign, "travelling-wave sign (+1 or -1)");
    reduce->add_option("--U", U_text, "closed-form reduced solution U(s)");
    reduce->add_flag("--integrate", integrate,
                     "integrate the reduced ODE and verify the lift");
    reduce->add_option("--C", C,
                       "plate TEq invariant-solution constants C1..C4")
        ->expected(4);
    CLI::App* transform = app.add_subcommand(
        "transform", "plate change of variables to constant coefficients");
    transform->add_option("--k1", k1, "coefficient of omega1 = 1/omega'");
    transform->add_option("--k2", k2, "coefficient of omega2 = omega/omega'");
    transform->add_option("--k3", k3, "coefficient of omega3 = omega^2/omega'");
    CLI::App* selfcheck = app.add_subcommand(
        "selfcheck", "identity battery and table-driven suites");

    CLI11_PARSE(app, argc, argv);

    Reporter rep;
    rep.json_mode = json_mode;
    try {
        if (selfcheck->parsed()) return cmd_selfcheck(rep, seed, tol);
        if (input.empty()) throw SpecError("--input <file> is required");
        const InputSpec spec = load_spec(input);
        if (classify->parsed()) return cmd_classify(spec, rep, seed, tol);
        if (check->parsed()) return cmd_check_symmetry(spec, rep, seed, tol);
        if (currents->parsed())
            return cmd_currents(spec, rep, seed, tol, table, u_text);
        if (reduce->parsed())
            return cmd_reduce(spec, rep, seed, tol, kind, cspeed, sign,
                              U_text, integrate, C);
        if (transform->parsed())
            return cmd_transform(spec, rep, seed, tol, k1, k2, k3);
    } catch (const IncompatibleReduction& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
