#include "ttw/cli.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

namespace ttw::cli {

const std::map<std::string, double>& default_tolerances()
{
    static const std::map<std::string, double> t = {
        {"orthonormality", 1e-8},  {"spectrum", 1e-8},        {"angular", 1e-6},
        {"relations", 1e-7},       {"susy", 1e-7},            {"nilpotent", 1e-9},
        {"labels", 1e-8},          {"eigenvectors", 1e-7},    {"matrix_elements", 1e-7},
        {"vhat_even", 1e-8},       {"casimir_zero", 1e-7},    {"casimir_spread", 1e-6},
        {"centrality", 1e-6},      {"yhat_forms", 1e-7},      {"degeneration", 1e-8},
    };
    return t;
}

double RunConfig::tol(const std::string& name) const
{
    auto it = tolerances.find(name);
    if (it == tolerances.end()) throw ConfigError("no tolerance named '" + name + "'");
    return it->second;
}

void RunConfig::validate() const
{
    params.validate();
    trunc.validate();
    for (const auto& [name, v] : tolerances)
        if (!(v > 0.0)) throw ConfigError("invariant violated: tolerance '" + name + "' must be positive");
    if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
}

RunConfig default_config()
{
    RunConfig c;
    c.tolerances = default_tolerances();
    return c;
}

RunConfig apply_config(const nlohmann::json& j, RunConfig base)
{
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    auto num = [](const nlohmann::json& v, const std::string& key) {
        if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
        return v.get<double>();
    };
    auto integer = [](const nlohmann::json& v, const std::string& key) {
        if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
        return v.get<int>();
    };
    for (const auto& [key, v] : j.items()) {
        if (key == "k") base.params.k = num(v, key);
        else if (key == "a") base.params.a = num(v, key);
        else if (key == "b") base.params.b = num(v, key);
        else if (key == "omega") base.params.omega = num(v, key);
        else if (key == "N_max") base.trunc.N_max = integer(v, key);
        else if (key == "n_max") base.trunc.n_max = integer(v, key);
        else if (key == "quad_radial") { base.trunc.quad_radial = integer(v, key); base.explicit_quad_radial = true; }
        else if (key == "quad_angular") { base.trunc.quad_angular = integer(v, key); base.explicit_quad_angular = true; }
        else if (key == "tolerances") {
            if (!v.is_object()) throw ConfigError("config key 'tolerances' must be an object");
            for (const auto& [name, t] : v.items()) {
                if (!default_tolerances().contains(name)) throw ConfigError("unknown tolerance '" + name + "'");
                base.tolerances[name] = num(t, "tolerances." + name);
            }
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    const Truncation d = Truncation::with_defaults(base.trunc.N_max, base.trunc.n_max);
    if (!base.explicit_quad_radial) base.trunc.quad_radial = d.quad_radial;
    if (!base.explicit_quad_angular) base.trunc.quad_angular = d.quad_angular;
    return base;
}

bool VerifyReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<std::string> VerifyReport::failing() const
{
    std::vector<std::string> f;
    for (const auto& c : checks)
        if (!c.pass) f.push_back(c.generator_set == "none" ? c.name : c.name + "[" + c.generator_set + "]");
    return f;
}

namespace {

double qhat_formula(const ModelParams& p, int n, int sign)
{
    return 0.5 * (1.0 + sign * (2.0 * n + p.a + p.b) * p.k);
}

nlohmann::json config_json(const RunConfig& c)
{
    return {{"k", c.params.k},
            {"a", c.params.a},
            {"b", c.params.b},
            {"omega", c.params.omega},
            {"N_max", c.trunc.N_max},
            {"n_max", c.trunc.n_max},
            {"quad_radial", c.trunc.quad_radial},
            {"quad_angular", c.trunc.quad_angular},
            {"swap_jacobi", c.params.swap_jacobi},
            {"tolerances", c.tolerances}};
}

struct CheckList {
    const RunConfig& cfg;
    std::vector<Check> checks;

    // residual-type check: value <= tolerance
    void residual(const std::string& name, const std::string& set, double value, const std::string& tol)
    {
        const double t = cfg.tol(tol);
        checks.push_back({name, set, value, t, std::isfinite(value) && value <= t});
    }
    // count-type check: number of violations must be zero
    void count(const std::string& name, const std::string& set, int violations)
    {
        checks.push_back({name, set, static_cast<double>(violations), 0.0, violations == 0});
    }
};

void common_checks(const Realization& real, CheckList& cl, nlohmann::json& body)
{
    const ModelParams& p = real.params();
    const Eigen::MatrixXd g = real.gram();
    cl.residual("orthonormality", "none", max_abs(g - Eigen::MatrixXd::Identity(g.rows(), g.cols())),
                "orthonormality");

    double spec = 0.0;
    for (std::size_t i = 0; i < real.dim(); ++i) {
        const BasisIndex& idx = real.basis()[i];
        if (idx.sector != Sector::zero_fermion) continue;
        const double e = energy(p, {idx.N, idx.n});
        const SampledState& s = real.sampled(i, idx.n);
        const SampledState r = real.image(GeneratorId::Hk, i) - e * s;
        spec = std::max(spec, std::sqrt(std::max(0.0, inner(r, r))) / e);
    }
    cl.residual("spectrum", "none", spec, "spectrum");

    double ang = 0.0;
    for (int n = 0; n <= real.trunc().n_max; ++n) {
        ang = std::max(ang, angular_eigencheck(p, n, p.a, p.b));
        if (n >= 1) ang = std::max(ang, angular_eigencheck(p, n - 1, p.a + 1, p.b + 1));
    }
    cl.residual("angular_eigencheck", "none", ang, "angular");

    const Degeneration d = n0_degeneration(real);
    cl.residual("n0_overlap", "none", std::max(std::abs(1.0 - d.min_overlap), std::abs(1.0 - d.max_overlap)),
                "degeneration");
    cl.residual("n0_two_fermion_norm", "none", d.max_two_fermion_norm, "degeneration");
    body["n0_degeneration"] = {{"min_overlap", d.min_overlap},
                               {"max_overlap", d.max_overlap},
                               {"two_fermion_norm", d.max_two_fermion_norm},
                               {"completeness_residual", d.completeness}};
}

int census_violations_standard(const Classification& c, const RunConfig& cfg)
{
    int bad = 0;
    if (static_cast<int>(c.blocks.size()) != cfg.trunc.n_max + 1) ++bad;
    for (const auto& b : c.blocks) {
        if (b.n == 0) {
            if (!b.atypical || b.towers.size() != 2 || b.lws_kernel_dim != 1) ++bad;
        } else {
            const bool ground_ok = b.ground_lowering[0] <= cfg.tol("matrix_elements") &&
                                   b.ground_lowering[2] <= cfg.tol("matrix_elements") && b.ground_lowering[1] > 1e-3;
            if (b.atypical || b.towers.size() != 4 || !ground_ok) ++bad;
        }
    }
    return bad;
}

int census_violations_chiral(const Classification& c, const RunConfig& cfg)
{
    const double tol = cfg.tol("labels") * 10;  // Rayleigh quotient of an SVD kernel vector
    int bad = 0;
    if (static_cast<int>(c.blocks.size()) != 2 * cfg.trunc.n_max + 1) ++bad;
    std::map<int, std::vector<const IrrepBlock*>> by_n;
    for (const auto& b : c.blocks) by_n[b.n].push_back(&b);
    for (const auto& [n, blocks] : by_n) {
        const double tau = tau_q(cfg.params, n).tau;
        for (const auto* b : blocks)
            if (!b->atypical || !b->lws || b->towers.size() != 2) ++bad;
        if (n == 0) {
            if (blocks.size() != 1 || std::abs(blocks[0]->tau - tau) > tol || std::abs(blocks[0]->weight - tau) > tol)
                ++bad;
            continue;
        }
        if (blocks.size() != 2) {
            ++bad;
            continue;
        }
        bool found_plus = false, found_minus = false;
        for (const auto* b : blocks) {
            if (std::abs(b->tau - tau) <= tol && std::abs(b->weight - tau) <= tol) found_plus = true;
            if (std::abs(b->tau - (tau - 0.5)) <= tol && std::abs(b->weight + tau - 0.5) <= tol) found_minus = true;
        }
        if (!found_plus || !found_minus) ++bad;
    }
    return bad;
}

void set_checks(const Realization& real, GeneratorSet set, CheckList& cl, nlohmann::json& body)
{
    const RunConfig& cfg = cl.cfg;
    const ModelParams& p = real.params();
    const std::string tag = to_string(set);
    const AlgebraMatrices alg = AlgebraMatrices::build(real, set);

    const RelationReport rel = verify_relations(alg, real);
    cl.residual("relations", tag, rel.max_interior(), "relations");
    body["relations"].push_back({{"generator_set", tag}, {"table", rel}});

    const SusyReport susy = susy_check(real, set, real.interior(1));
    cl.residual("susy", tag,
                std::max({susy.anticommutator, susy.commutator_q, susy.commutator_qdag}), "susy");
    cl.residual("nilpotency", tag, std::max(susy.nilpotent_q, susy.nilpotent_qdag), "nilpotent");
    body["susy"].push_back(susy);

    const Classification cls = classify(real, alg);
    cl.residual("casimir_centrality", tag, std::max(cls.centrality_c2, cls.centrality_c3), "centrality");
    body["irreps"].push_back(cls);

    if (set == GeneratorSet::standard) {
        cl.count("irrep_census", tag, census_violations_standard(cls, cfg));
        double zero = 0.0, spread = 0.0;
        int nonzero_bad = 0;
        for (const auto& b : cls.blocks) {
            if (b.n == 0) {
                zero = std::max({zero, b.c2.max_abs, b.c3.max_abs});
            } else {
                spread = std::max({spread, b.c2.spread, b.c3.spread});
                if (std::abs(b.c2.mean) <= cfg.tol("casimir_zero")) ++nonzero_bad;
            }
        }
        cl.residual("casimir_zero_n0", tag, zero, "casimir_zero");
        cl.residual("casimir_constant", tag, spread, "casimir_spread");
        cl.count("casimir_nonzero_typical", tag, nonzero_bad);
        return;
    }

    cl.count("irrep_census", tag, census_violations_chiral(cls, cfg));
    double zero = 0.0;
    for (const auto& b : cls.blocks) zero = std::max({zero, b.c2.max_abs, b.c3.max_abs, b.c2.leakage, b.c3.leakage});
    cl.residual("casimir_zero", tag, zero, "casimir_zero");

    const YhatAnalysis yh = yhat_blocks(real, alg.Y);
    double ev = 0.0, vec = 0.0;
    for (const auto& blk : yh.even_blocks) {
        ev = std::max(ev, std::abs(blk.eigenvalues[0] - qhat_formula(p, blk.n, +1)));
        ev = std::max(ev, std::abs(blk.eigenvalues[1] - qhat_formula(p, blk.n, -1)));
        const MixingCoeffs mc = mixing_coeffs(p, blk.n);
        const Eigen::Vector2d plus(mc.A_plus, mc.B_plus), minus(mc.A_minus, mc.B_minus);
        // up to sign
        vec = std::max(vec, std::min((blk.eigenvectors.col(0) - plus).cwiseAbs().maxCoeff(),
                                     (blk.eigenvectors.col(0) + plus).cwiseAbs().maxCoeff()));
        vec = std::max(vec, std::min((blk.eigenvectors.col(1) - minus).cwiseAbs().maxCoeff(),
                                     (blk.eigenvectors.col(1) + minus).cwiseAbs().maxCoeff()));
    }
    double odd = 0.0;
    for (const auto& [i, v] : yh.diagonal) {
        const BasisIndex& idx = real.basis()[i];
        double expected = qhat_formula(p, idx.n, +1);
        if (idx.sector == Sector::one_fermion_plus) expected -= 0.5;
        if (idx.sector == Sector::one_fermion_minus) expected = qhat_formula(p, idx.n, -1) - 0.5;
        odd = std::max(odd, std::abs(v - expected));
    }
    cl.residual("yhat_even_eigenvalues", tag, ev, "labels");
    cl.residual("yhat_eigenvectors", tag, vec, "eigenvectors");
    cl.residual("yhat_unmixed_labels", tag, odd, "labels");
    cl.residual("yhat_unmixed_offdiagonal", tag, yh.offdiag_unmixed, "relations");
    body["yhat"] = yh;

    const MatrixElementReport me = matrix_element_check(real, alg, yh);
    cl.residual("chiral_matrix_elements", tag, me.max_residual, "matrix_elements");
    cl.residual("vhat_even_annihilation", tag, me.max_vhat_even_image_norm, "vhat_even");
    body["matrix_elements"] = me;

    const YhatForms forms = yhat_forms(real);
    double fm = forms.max_pairwise;
    for (double x : forms.vs_differential) fm = std::max(fm, x);
    cl.residual("yhat_equivalent_forms", tag, fm, "yhat_forms");
    body["yhat_forms"] = {{"vs_differential", forms.vs_differential}, {"max_pairwise", forms.max_pairwise}};
}

}  // namespace

VerifyReport verify(const RunConfig& cfg, const std::vector<GeneratorSet>& sets)
{
    cfg.validate();
    const Realization real(cfg.params, cfg.trunc);
    CheckList cl{cfg, {}};
    VerifyReport rep;
    rep.body = {{"schema_version", 1}, {"command", "verify"}, {"config", config_json(cfg)}};
    rep.body["relations"] = nlohmann::json::array();
    rep.body["susy"] = nlohmann::json::array();
    rep.body["irreps"] = nlohmann::json::array();
    common_checks(real, cl, rep.body);
    for (GeneratorSet s : sets) set_checks(real, s, cl, rep.body);
    rep.checks = std::move(cl.checks);

    nlohmann::json jc = nlohmann::json::array();
    for (const auto& c : rep.checks)
        jc.push_back({{"name", c.name},
                      {"generator_set", c.generator_set},
                      {"value", c.value},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
    rep.body["checks"] = jc;
    rep.body["passed"] = rep.passed();
    rep.body["failing"] = rep.failing();
    return rep;
}

std::vector<SpectrumRow> spectrum(const RunConfig& cfg)
{
    cfg.validate();
    std::vector<SpectrumRow> rows;
    for (int n = 0; n <= cfg.trunc.n_max; ++n) {
        const TauQ tq = tau_q(cfg.params, n);
        for (int N = 0; N <= cfg.trunc.N_max; ++N)
            rows.push_back({N, n, energy(cfg.params, {N, n}), tq.tau, tq.q, qhat_formula(cfg.params, n, +1),
                            qhat_formula(cfg.params, n, -1)});
    }
    return rows;
}

BasisDump basis_dump(const ModelParams& p, const BasisIndex& idx, int grid)
{
    p.validate();
    if (!idx.valid()) throw ConfigError("invalid basis index " + idx.label());
    if (grid < 2) throw ConfigError("invariant violated: grid >= 2");
    const SuperWavefunction psi = basis_state(p, idx);
    const double m = (2.0 * idx.n + p.a + p.b) * p.k;
    const double s = m + 2.0 * idx.N + 1.0;
    const double z_max = s + 12.0 * std::sqrt(s) + 30.0;

    BasisDump out;
    out.r_max = std::sqrt(z_max / p.omega);
    const double phi_max = std::numbers::pi / (2.0 * p.k);
    const double dr = out.r_max / (grid - 1), dphi = phi_max / (grid - 1);
    out.rows.reserve(static_cast<std::size_t>(grid) * grid);
    for (int i = 0; i < grid; ++i) {
        const double r = i * dr;
        const double wr = (i == 0 || i == grid - 1) ? 0.5 : 1.0;
        for (int j = 0; j < grid; ++j) {
            const double phi = j * dphi;
            const double wphi = (j == 0 || j == grid - 1) ? 0.5 : 1.0;
            Vec4 c = Vec4::Zero();
            // the factors vanish on r = 0 and on both angular walls
            if (r > 0.0 && j > 0 && j < grid - 1) c = psi.value(r, phi);
            out.rows.push_back({r, phi, c[0], c[1], c[2], c[3]});
            out.trapezoid_norm += wr * wphi * c.squaredNorm() * r;
        }
    }
    out.trapezoid_norm *= dr * dphi;
    return out;
}

namespace {

void write_output(const RunConfig& cfg, const std::string& text, std::ostream& out)
{
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw std::runtime_error("cannot open output file " + cfg.out);
    f << text;
}

std::string fmt(double x)
{
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

std::vector<GeneratorSet> parse_sets(const std::string& s)
{
    if (s == "both") return {GeneratorSet::standard, GeneratorSet::chiral};
    return {generator_set_from_string(s)};
}

std::string classification_csv(const nlohmann::json& irreps)
{
    std::ostringstream s;
    s << "generator_set,n,size,tau,weight,kind,lws_kernel_dim,C2_mean,C2_spread,C3_mean,C3_spread\n";
    for (const auto& c : irreps)
        for (const auto& b : c["blocks"])
            s << c["generator_set"].get<std::string>() << ',' << b["n"] << ',' << b["size"] << ','
              << fmt(b["tau"]) << ',' << fmt(b["weight"]) << ',' << b["kind"].get<std::string>() << ','
              << b["lws_kernel_dim"] << ',' << fmt(b["C2"]["mean"]) << ',' << fmt(b["C2"]["spread"]) << ','
              << fmt(b["C3"]["mean"]) << ',' << fmt(b["C3"]["spread"]) << '\n';
    return s.str();
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Numerical laboratory for the standard and chiral super-TTW superalgebras"};
    app.require_subcommand(1);

    std::string config_path, out_path, format = "json";
    std::optional<double> k, a, b, omega;
    std::optional<int> N_max, n_max, quad_r, quad_a;
    bool swap = false;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--k", k, "deformation parameter k");
    app.add_option("--a", a, "barrier strength a (>= 1)");
    app.add_option("--b", b, "barrier strength b (>= 1)");
    app.add_option("--omega", omega, "oscillator frequency");
    app.add_option("--N-max", N_max, "radial truncation");
    app.add_option("--n-max", n_max, "angular truncation");
    app.add_option("--quad-radial", quad_r, "Gauss-Laguerre nodes");
    app.add_option("--quad-angular", quad_a, "Gauss-Jacobi nodes");
    app.add_flag("--debug-swap-jacobi", swap, "build angular factors with swapped Jacobi parameters");

    auto* spec_cmd = app.add_subcommand("spectrum", "energies and osp(2|2) labels");
    std::string set_name = "both";
    auto* verify_cmd = app.add_subcommand("verify", "run the full verification suite");
    verify_cmd->add_option("--set", set_name, "standard, chiral or both")
        ->check(CLI::IsMember({"standard", "chiral", "both"}));
    auto* cas_cmd = app.add_subcommand("casimir", "Casimir eigenvalues per irrep block");
    auto* irr_cmd = app.add_subcommand("irreps", "irrep decomposition of the truncated space");
    std::string sector;
    int dump_n = 0, dump_N = 0, grid = 400;
    auto* dump_cmd = app.add_subcommand("basis-dump", "sample one basis state on a uniform grid (CSV)");
    dump_cmd->add_option("--sector", sector, "zero_fermion, one_fermion_minus, one_fermion_plus, two_fermion")
        ->required();
    dump_cmd->add_option("--n", dump_n, "angular quantum number")->required();
    dump_cmd->add_option("--N", dump_N, "radial quantum number")->required();
    dump_cmd->add_option("--grid", grid, "points per axis");
    for (auto* sub : {spec_cmd, verify_cmd, cas_cmd, irr_cmd, dump_cmd}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    RunConfig cfg = default_config();
    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw ConfigError("cannot read config file " + config_path);
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(f);
            } catch (const nlohmann::json::parse_error& e) {
                throw ConfigError(std::string("config is not valid JSON: ") + e.what());
            }
            cfg = apply_config(j, cfg);
        }
        nlohmann::json flags = nlohmann::json::object();
        if (k) flags["k"] = *k;
        if (a) flags["a"] = *a;
        if (b) flags["b"] = *b;
        if (omega) flags["omega"] = *omega;
        if (N_max) flags["N_max"] = *N_max;
        if (n_max) flags["n_max"] = *n_max;
        if (quad_r) flags["quad_radial"] = *quad_r;
        if (quad_a) flags["quad_angular"] = *quad_a;
        cfg = apply_config(flags, cfg);
        cfg.params.swap_jacobi = swap;
        cfg.out = out_path;
        cfg.format = format;
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    }

    try {
        const bool csv = cfg.format == "csv";
        if (*spec_cmd) {
            const auto rows = spectrum(cfg);
            if (csv) {
                std::ostringstream s;
                s << "N,n,E,tau,q,qhat_plus,qhat_minus\n";
                for (const auto& r : rows)
                    s << r.N << ',' << r.n << ',' << fmt(r.energy) << ',' << fmt(r.tau) << ',' << fmt(r.q) << ','
                      << fmt(r.qhat_plus) << ',' << fmt(r.qhat_minus) << '\n';
                write_output(cfg, s.str(), out);
            } else {
                nlohmann::json j{{"schema_version", 1}, {"command", "spectrum"}, {"config", config_json(cfg)}};
                j["rows"] = nlohmann::json::array();
                for (const auto& r : rows)
                    j["rows"].push_back({{"N", r.N},
                                         {"n", r.n},
                                         {"E", r.energy},
                                         {"tau", r.tau},
                                         {"q", r.q},
                                         {"qhat_plus", r.qhat_plus},
                                         {"qhat_minus", r.qhat_minus}});
                write_output(cfg, j.dump(2) + "\n", out);
            }
            return 0;
        }

        if (*verify_cmd) {
            const VerifyReport rep = verify(cfg, parse_sets(set_name));
            if (csv) {
                std::ostringstream s;
                s << "name,generator_set,value,tolerance,pass\n";
                for (const auto& c : rep.checks)
                    s << c.name << ',' << c.generator_set << ',' << fmt(c.value) << ',' << fmt(c.tolerance) << ','
                      << (c.pass ? "true" : "false") << '\n';
                write_output(cfg, s.str(), out);
            } else {
                write_output(cfg, rep.body.dump(2) + "\n", out);
            }
            if (!rep.passed()) {
                err << "failing checks:";
                for (const auto& f : rep.failing()) err << ' ' << f;
                err << '\n';
                return 1;
            }
            return 0;
        }

        if (*cas_cmd || *irr_cmd) {
            const Realization real(cfg.params, cfg.trunc);
            nlohmann::json j{{"schema_version", 1},
                             {"command", *cas_cmd ? "casimir" : "irreps"},
                             {"config", config_json(cfg)}};
            j["irreps"] = nlohmann::json::array();
            for (GeneratorSet s : {GeneratorSet::standard, GeneratorSet::chiral}) {
                nlohmann::json c = classify(real, s);
                if (*cas_cmd) {
                    for (auto& blk : c["blocks"]) {
                        blk.erase("lws");
                        blk.erase("towers");
                        blk.erase("ground_lowering_norms");
                    }
                }
                j["irreps"].push_back(c);
            }
            write_output(cfg, csv ? classification_csv(j["irreps"]) : j.dump(2) + "\n", out);
            return 0;
        }

        if (*dump_cmd) {
            const BasisIndex idx{sector_from_string(sector), dump_n, dump_N};
            const BasisDump d = basis_dump(cfg.params, idx, grid);
            std::ostringstream s;
            s << "r,phi,c0,c1,c2,c3\n";
            for (const auto& row : d.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << fmt(row[i]);
                s << '\n';
            }
            write_output(cfg, s.str(), out);
            err << "trapezoid norm " << fmt(d.trapezoid_norm) << " (r_max " << fmt(d.r_max) << ")\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace ttw::cli
