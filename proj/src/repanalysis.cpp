#include "ttw/repanalysis.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace ttw {

const char* to_string(CoordKind k)
{
    switch (k) {
    case CoordKind::zero: return "zero_fermion";
    case CoordKind::minus: return "one_fermion_minus";
    case CoordKind::plus: return "one_fermion_plus";
    case CoordKind::two: return "two_fermion";
    case CoordKind::qhat_plus: return "even_qhat_plus";
    case CoordKind::qhat_minus: return "even_qhat_minus";
    }
    return "?";
}

namespace {

CoordKind kind_of(Sector s)
{
    switch (s) {
    case Sector::zero_fermion: return CoordKind::zero;
    case Sector::one_fermion_minus: return CoordKind::minus;
    case Sector::one_fermion_plus: return CoordKind::plus;
    case Sector::two_fermion: return CoordKind::two;
    }
    return CoordKind::zero;
}

std::vector<Coordinate> default_coords(const Realization& real)
{
    std::vector<Coordinate> c;
    for (const auto& idx : real.basis()) c.push_back({kind_of(idx.sector), idx.n, idx.N});
    return c;
}

// first nonzero component positive
void fix_gauge(Eigen::Ref<Eigen::VectorXd> v, double eps = 1e-12)
{
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > eps) {
            if (v[i] < 0.0) v = -v;
            return;
        }
    }
}

double sample_norm(const SampledState& s) { return std::sqrt(std::max(0.0, inner(s, s))); }

BlockEigen block_eigen(const Eigen::MatrixXd& c, const std::vector<int>& inside)
{
    BlockEigen be;
    if (inside.empty()) return be;
    const Eigen::MatrixXd sub = restrict(c, inside, inside);
    Eigen::EigenSolver<Eigen::MatrixXd> es(sub, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) be.eigenvalues.push_back(es.eigenvalues()[i].real());
    std::sort(be.eigenvalues.begin(), be.eigenvalues.end());
    be.mean = std::accumulate(be.eigenvalues.begin(), be.eigenvalues.end(), 0.0) / be.eigenvalues.size();
    be.spread = be.eigenvalues.back() - be.eigenvalues.front();
    for (double e : be.eigenvalues) be.max_abs = std::max(be.max_abs, std::abs(e));

    std::vector<bool> in(c.rows(), false);
    for (int i : inside) in[i] = true;
    for (int j : inside)
        for (Eigen::Index i = 0; i < c.rows(); ++i)
            if (!in[i]) be.leakage = std::max(be.leakage, std::abs(c(i, j)));
    return be;
}

}  // namespace

YhatAnalysis yhat_blocks(const Realization& real, const OperatorMatrix& yhat)
{
    YhatAnalysis out;
    const auto& basis = real.basis();
    const Eigen::MatrixXd& y = yhat.entries;
    out.change_of_basis = Eigen::MatrixXd::Identity(real.dim(), real.dim());
    out.coords = default_coords(real);

    std::vector<bool> mixed(real.dim(), false);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const BasisIndex& idx = basis[i];
        if (idx.sector != Sector::zero_fermion || idx.n < 1) continue;
        const int iz = static_cast<int>(i);
        const int it = real.index_of({Sector::two_fermion, idx.n, idx.N});
        Eigen::Matrix2d b;
        b << y(iz, iz), y(iz, it), y(it, iz), y(it, it);
        b = 0.5 * (b + b.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(b);
        YhatEvenBlock blk;
        blk.n = idx.n;
        blk.N = idx.N;
        blk.eigenvalues << es.eigenvalues()[1], es.eigenvalues()[0];
        blk.eigenvectors.col(0) = es.eigenvectors().col(1);
        blk.eigenvectors.col(1) = es.eigenvectors().col(0);
        for (int c = 0; c < 2; ++c) {
            Eigen::Vector2d v = blk.eigenvectors.col(c);
            fix_gauge(v);
            blk.eigenvectors.col(c) = v;
        }
        out.even_blocks.push_back(blk);

        out.change_of_basis(iz, iz) = blk.eigenvectors(0, 0);
        out.change_of_basis(it, iz) = blk.eigenvectors(1, 0);
        out.change_of_basis(iz, it) = blk.eigenvectors(0, 1);
        out.change_of_basis(it, it) = blk.eigenvectors(1, 1);
        out.coords[iz].kind = CoordKind::qhat_plus;
        out.coords[it].kind = CoordKind::qhat_minus;
        mixed[iz] = mixed[it] = true;
    }

    const std::vector<int> interior = real.interior(1);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        if (mixed[j]) continue;
        out.diagonal.emplace_back(static_cast<int>(j), y(j, j));
        if (basis[j].N > real.trunc().N_max - 1) continue;
        for (int i : interior)
            if (static_cast<std::size_t>(i) != j) out.offdiag_unmixed = std::max(out.offdiag_unmixed, std::abs(y(i, j)));
    }

    const Eigen::MatrixXd& u = out.change_of_basis;
    out.orthogonality_defect =
        max_abs(u.transpose() * u - Eigen::MatrixXd::Identity(real.dim(), real.dim()));
    return out;
}

AlgebraMatrices rotate(const AlgebraMatrices& alg, const Eigen::MatrixXd& u)
{
    auto r = [&](const OperatorMatrix& m) {
        return OperatorMatrix{u.transpose() * m.entries * u, m.grade, m.tag};
    };
    return {alg.set,  r(alg.K0),    r(alg.Kplus),  r(alg.Kminus), r(alg.Y),
            r(alg.Vplus), r(alg.Vminus), r(alg.Wplus), r(alg.Wminus)};
}

MatrixElementReport matrix_element_check(const Realization& real, const AlgebraMatrices& chiral,
                                         const YhatAnalysis& yh)
{
    MatrixElementReport rep;
    const AlgebraMatrices a = rotate(chiral, yh.change_of_basis);
    const ModelParams& p = real.params();
    const int depth_limit = real.trunc().N_max - 1;

    auto check = [&](const std::string& fam, const OperatorMatrix& op, int col, int row, double expected,
                     int n, int N) {
        Eigen::VectorXd target = Eigen::VectorXd::Zero(real.dim());
        double actual = 0.0;
        if (row >= 0) {
            target[row] = expected;
            actual = op.entries(row, col);
        }
        const double res = (op.entries.col(col) - target).cwiseAbs().maxCoeff();
        rep.checks.push_back({fam, n, N, expected, actual, res});
        rep.max_residual = std::max(rep.max_residual, res);
    };

    for (const auto& blk : yh.even_blocks) {
        const int n = blk.n, N = blk.N;
        if (N > depth_limit) continue;
        const double m = (2.0 * n + p.a + p.b) * p.k;
        const int qp = real.index_of({Sector::zero_fermion, n, N});
        const int qm = real.index_of({Sector::two_fermion, n, N});
        check("What_plus|q+)", a.Wplus, qp, real.index_of({Sector::one_fermion_plus, n, N}),
              -std::sqrt(N + m + 1.0), n, N);
        check("What_minus|q+)", a.Wminus, qp, N >= 1 ? real.index_of({Sector::one_fermion_plus, n, N - 1}) : -1,
              -std::sqrt(static_cast<double>(N)), n, N);
        check("What_plus|q-)", a.Wplus, qm, real.index_of({Sector::one_fermion_minus, n, N + 1}),
              std::sqrt(N + 1.0), n, N);
        check("What_minus|q-)", a.Wminus, qm, real.index_of({Sector::one_fermion_minus, n, N}), std::sqrt(N + m),
              n, N);
    }

    // Vhat+- on every even working-basis vector, measured on the sampled image
    const Eigen::MatrixXd& u = yh.change_of_basis;
    for (std::size_t j = 0; j < real.dim(); ++j) {
        if (!real.basis()[j].even()) continue;
        for (GeneratorId g : {GeneratorId::Vhat_plus, GeneratorId::Vhat_minus}) {
            SampledState img = real.image(g, j);
            img.values.setZero();
            for (std::size_t i = 0; i < real.dim(); ++i)
                if (u(i, j) != 0.0) img.values += u(i, j) * real.image(g, i).values;
            rep.max_vhat_even_image_norm = std::max(rep.max_vhat_even_image_norm, sample_norm(img));
        }
    }
    return rep;
}

CasimirMatrices casimirs(const AlgebraMatrices& g)
{
    const OperatorMatrix one = identity_like(g.K0);
    const OperatorMatrix kp_y = g.K0 + g.Y;
    const OperatorMatrix km_y = g.K0 - g.Y;
    const OperatorMatrix wv = g.Wplus * g.Vminus;
    const OperatorMatrix vw = g.Vplus * g.Wminus;

    CasimirMatrices c;
    c.C2 = kp_y * km_y - g.Kplus * g.Kminus - wv - vw;
    c.C2.tag = "C2";

    const OperatorMatrix t1 = kp_y * km_y * g.Y;
    const OperatorMatrix t2 = ((g.Y + 0.5 * one) * g.Kplus - 0.5 * (g.Vplus * g.Wplus)) * g.Kminus;
    const OperatorMatrix t3 = 0.5 * ((g.K0 - 3.0 * g.Y - one) * wv);
    const OperatorMatrix t4 = 0.5 * ((g.Kplus * g.Vminus - (g.K0 + 3.0 * g.Y - one) * g.Vplus) * g.Wminus);
    c.C3 = t1 - t2 + t3 + t4;
    c.C3.grade = Grade::even;
    c.C3.tag = "C3";
    return c;
}

std::vector<std::vector<int>> connected_blocks(const std::vector<const Eigen::MatrixXd*>& mats, double threshold)
{
    const Eigen::Index n = mats.front()->rows();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto* m : mats)
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                if (i != j && std::abs((*m)(i, j)) > threshold) parent[find(i)] = find(j);

    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

Classification classify(const Realization& real, GeneratorSet set, double threshold, double atypical_tol)
{
    return classify(real, AlgebraMatrices::build(real, set), threshold, atypical_tol);
}

Classification classify(const Realization& real, const AlgebraMatrices& alg, double threshold,
                        double atypical_tol)
{
    Classification out;
    out.set = alg.set;
    Eigen::MatrixXd u = Eigen::MatrixXd::Identity(real.dim(), real.dim());
    out.coords = default_coords(real);
    if (alg.set == GeneratorSet::chiral) {
        YhatAnalysis yh = yhat_blocks(real, alg.Y);
        u = yh.change_of_basis;
        out.coords = yh.coords;
    }
    const AlgebraMatrices a = rotate(alg, u);
    const CasimirMatrices cas = casimirs(a);
    const std::vector<int> deep = real.interior(2);

    std::vector<const Eigen::MatrixXd*> mats;
    for (const auto& name : AlgebraMatrices::names()) mats.push_back(&a.by_name(name).entries);
    const auto comps = connected_blocks(mats, threshold);

    for (const auto& name : AlgebraMatrices::names()) {
        const OperatorMatrix& g = a.by_name(name);
        out.centrality_c2 = std::max(out.centrality_c2, max_abs(restrict(graded_bracket(cas.C2, g).entries, deep, deep)));
        out.centrality_c3 = std::max(out.centrality_c3, max_abs(restrict(graded_bracket(cas.C3, g).entries, deep, deep)));
    }

    for (const auto& comp : comps) {
        IrrepBlock blk;
        blk.set = alg.set;
        blk.indices = comp;
        blk.n = out.coords[comp.front()].n;

        std::vector<int> inside;
        std::set_intersection(comp.begin(), comp.end(), deep.begin(), deep.end(), std::back_inserter(inside));
        blk.c2 = block_eigen(cas.C2.entries, inside);
        blk.c3 = block_eigen(cas.C3.entries, inside);
        blk.atypical = blk.c2.max_abs <= atypical_tol && blk.c3.max_abs <= atypical_tol;

        // joint kernel of the three lowering generators on the block
        const std::vector<int> all_rows = [&] {
            std::vector<int> r(real.dim());
            std::iota(r.begin(), r.end(), 0);
            return r;
        }();
        const Eigen::Index cols = static_cast<Eigen::Index>(comp.size());
        Eigen::MatrixXd lower(3 * real.dim(), cols);
        lower << restrict(a.Kminus.entries, all_rows, comp), restrict(a.Vminus.entries, all_rows, comp),
            restrict(a.Wminus.entries, all_rows, comp);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(lower, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv[i] <= 1e-6) ++blk.lws_kernel_dim;
        int ground = -1;
        for (int i : comp)
            if (out.coords[i].N == 0 &&
                (out.coords[i].kind == CoordKind::zero || out.coords[i].kind == CoordKind::qhat_plus))
                ground = i;
        if (ground >= 0)
            blk.ground_lowering = {a.Kminus.entries.col(ground).norm(), a.Vminus.entries.col(ground).norm(),
                                   a.Wminus.entries.col(ground).norm()};
        if (blk.lws_kernel_dim == 1) {
            Eigen::VectorXd v = svd.matrixV().col(sv.size() - 1);
            fix_gauge(v);
            blk.lws = v;
        }
        if (blk.lws && blk.atypical) {
            const Eigen::VectorXd& v = *blk.lws;
            blk.tau = v.dot(restrict(a.K0.entries, comp, comp) * v);
            blk.weight = v.dot(restrict(a.Y.entries, comp, comp) * v);
        } else if (ground >= 0) {
            // typical: labelled by |tau, tau, q>
            blk.tau = a.K0.entries(ground, ground);
            blk.weight = a.Y.entries(ground, ground);
        }

        std::map<CoordKind, Tower> towers;
        for (int i : comp) {
            const CoordKind kind = out.coords[i].kind;
            const double k0 = a.K0.entries(i, i);
            auto it = towers.find(kind);
            if (it == towers.end() || k0 < it->second.lowest_k0)
                towers[kind] = {to_string(kind), k0, a.Y.entries(i, i)};
        }
        for (auto& [kind, t] : towers) blk.towers.push_back(t);
        std::sort(blk.towers.begin(), blk.towers.end(),
                  [](const Tower& x, const Tower& y) { return x.lowest_k0 < y.lowest_k0; });
        out.blocks.push_back(std::move(blk));
    }
    return out;
}

void to_json(nlohmann::json& j, const YhatAnalysis& y)
{
    j["even_blocks"] = nlohmann::json::array();
    for (const auto& b : y.even_blocks)
        j["even_blocks"].push_back({{"n", b.n},
                                    {"N", b.N},
                                    {"eigenvalues", {b.eigenvalues[0], b.eigenvalues[1]}},
                                    {"eigenvector_plus", {b.eigenvectors(0, 0), b.eigenvectors(1, 0)}},
                                    {"eigenvector_minus", {b.eigenvectors(0, 1), b.eigenvectors(1, 1)}}});
    j["offdiag_unmixed"] = y.offdiag_unmixed;
    j["orthogonality_defect"] = y.orthogonality_defect;
}

void to_json(nlohmann::json& j, const MatrixElementReport& r)
{
    j["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks)
        j["checks"].push_back({{"family", c.family},
                               {"n", c.n},
                               {"N", c.N},
                               {"expected", c.expected},
                               {"actual", c.actual},
                               {"column_residual", c.column_residual}});
    j["max_residual"] = r.max_residual;
    j["max_vhat_even_image_norm"] = r.max_vhat_even_image_norm;
}

namespace {

nlohmann::json block_eigen_json(const BlockEigen& b)
{
    return {{"mean", b.mean}, {"spread", b.spread}, {"max_abs", b.max_abs}, {"leakage", b.leakage},
            {"eigenvalues", b.eigenvalues}};
}

}  // namespace

void to_json(nlohmann::json& j, const Classification& c)
{
    j["generator_set"] = to_string(c.set);
    j["centrality_C2"] = c.centrality_c2;
    j["centrality_C3"] = c.centrality_c3;
    j["blocks"] = nlohmann::json::array();
    for (const auto& b : c.blocks) {
        nlohmann::json jb{{"n", b.n},
                          {"size", b.indices.size()},
                          {"tau", b.tau},
                          {"weight", b.weight},
                          {"kind", b.atypical ? "atypical" : "typical"},
                          {"lws_kernel_dim", b.lws_kernel_dim},
                          {"ground_lowering_norms", {{"K-", b.ground_lowering[0]}, {"V-", b.ground_lowering[1]}, {"W-", b.ground_lowering[2]}}},
                          {"C2", block_eigen_json(b.c2)},
                          {"C3", block_eigen_json(b.c3)}};
        if (b.lws) {
            nlohmann::json comp = nlohmann::json::array();
            for (Eigen::Index i = 0; i < b.lws->size(); ++i)
                if (std::abs((*b.lws)[i]) > 1e-12) {
                    const Coordinate& co = c.coords[b.indices[i]];
                    comp.push_back({{"coordinate", to_string(co.kind)}, {"N", co.N}, {"amplitude", (*b.lws)[i]}});
                }
            jb["lws"] = comp;
        } else {
            jb["lws"] = "none";
        }
        jb["towers"] = nlohmann::json::array();
        for (const auto& t : b.towers)
            jb["towers"].push_back({{"kind", t.kind}, {"lowest_K0", t.lowest_k0}, {"weight", t.weight}});
        j["blocks"].push_back(jb);
    }
}

}  // namespace ttw

namespace ttw {

YhatForms yhat_forms(const Realization& real)
{
    const auto m = [&](GeneratorId g) { return real.build(g); };
    const OperatorMatrix pi = m(GeneratorId::Pi), y = m(GeneratorId::Y), k0 = m(GeneratorId::K0);
    const OperatorMatrix vp = m(GeneratorId::Vplus), vm = m(GeneratorId::Vminus);
    const OperatorMatrix wp = m(GeneratorId::Wplus), wm = m(GeneratorId::Wminus);
    const OperatorMatrix yhat = m(GeneratorId::Yhat);

    const OperatorMatrix base = -1.0 * (vp * vm) - wp * wm;
    const std::array<OperatorMatrix, 4> forms = {
        pi * (base - vp * wm + vm * wp - y),
        pi * (base + wm * vp - wp * vm + y),
        pi * (base - vp * wm - wp * vm + k0),
        pi * (vm * vp + wm * wp + wm * vp + vm * wp - k0),
    };

    std::vector<int> rows(real.dim());
    std::iota(rows.begin(), rows.end(), 0);
    const std::vector<int> cols = real.interior(1);
    YhatForms out;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        out.vs_differential[i] = max_abs(restrict(forms[i].entries - yhat.entries, rows, cols));
        for (std::size_t j = 0; j < i; ++j)
            out.max_pairwise =
                std::max(out.max_pairwise, max_abs(restrict(forms[i].entries - forms[j].entries, rows, cols)));
    }
    return out;
}

Degeneration n0_degeneration(const Realization& real)
{
    Degeneration out;
    bool first = true;
    for (int N = 0; N < real.trunc().N_max; ++N) {
        const int z = real.index_of({Sector::zero_fermion, 0, N});
        const int z1 = real.index_of({Sector::zero_fermion, 0, N + 1});
        const SampledState up = real.image(GeneratorId::Vplus, z);
        const SampledState down = real.image(GeneratorId::Vminus, z1);
        const double ov = inner(up, down) / std::sqrt(inner(up, up) * inner(down, down));
        out.min_overlap = first ? ov : std::min(out.min_overlap, ov);
        out.max_overlap = first ? ov : std::max(out.max_overlap, ov);
        first = false;
    }

    // V-|z_N> lies along the one-fermion state p_{N-1}; V+ of that must vanish
    for (int N = 1; N <= real.trunc().N_max; ++N) {
        const int z = real.index_of({Sector::zero_fermion, 0, N});
        const int p = real.index_of({Sector::one_fermion_plus, 0, N - 1});
        SampledState rest = real.image(GeneratorId::Vminus, z);
        const double c = inner(real.sampled(p, 0), rest);
        for (std::size_t i = 0; i < real.dim(); ++i) {
            if (real.basis()[i].n != 0) continue;
            const double ci = inner(real.sampled(i, 0), rest);
            rest = rest - ci * real.sampled(i, 0);
        }
        out.completeness = std::max(out.completeness, sample_norm(rest));
        const double v = std::abs(c) * sample_norm(real.image(GeneratorId::Vplus, p));
        out.max_two_fermion_norm = std::max(out.max_two_fermion_norm, v);
    }
    return out;
}

}  // namespace ttw
