#include "ttw/diffreal.hpp"

#include "ttw/specfun.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace ttw {

namespace {

constexpr std::array<std::pair<GeneratorId, const char*>, 25> kNames{{
    {GeneratorId::K0, "K0"},
    {GeneratorId::Kplus, "Kplus"},
    {GeneratorId::Kminus, "Kminus"},
    {GeneratorId::Y, "Y"},
    {GeneratorId::Vplus, "Vplus"},
    {GeneratorId::Vminus, "Vminus"},
    {GeneratorId::Wplus, "Wplus"},
    {GeneratorId::Wminus, "Wminus"},
    {GeneratorId::Yhat, "Yhat"},
    {GeneratorId::Vhat_plus, "Vhat_plus"},
    {GeneratorId::Vhat_minus, "Vhat_minus"},
    {GeneratorId::What_plus, "What_plus"},
    {GeneratorId::What_minus, "What_minus"},
    {GeneratorId::Pi, "Pi"},
    {GeneratorId::Gamma, "Gamma"},
    {GeneratorId::K0B, "K0B"},
    {GeneratorId::KplusB, "KplusB"},
    {GeneratorId::KminusB, "KminusB"},
    {GeneratorId::Hk, "Hk"},
    {GeneratorId::Hs, "Hs"},
    {GeneratorId::Hs_hat, "Hs_hat"},
    {GeneratorId::Q, "Q"},
    {GeneratorId::Qdag, "Qdag"},
    {GeneratorId::Qhat, "Qhat"},
    {GeneratorId::Qhat_dag, "Qhat_dag"},
}};

LocalOperator scalar_op(double s)
{
    LocalOperator op;
    op.m0 = s * Mat4::Identity();
    return op;
}

LocalOperator matrix_op(const Mat4& m)
{
    LocalOperator op;
    op.m0 = m;
    return op;
}

struct PointContext {
    const ModelParams& p;
    double r, phi;
    FermionOps f;
    double tan_k, cot_k, sec2, csc2;

    PointContext(const ModelParams& params, double r_, double phi_)
        : p(params), r(r_), phi(phi_), f(FermionOps::rotated(phi_))
    {
        const double c = std::cos(p.k * phi), s = std::sin(p.k * phi);
        tan_k = s / c;
        cot_k = c / s;
        sec2 = 1.0 / (c * c);
        csc2 = 1.0 / (s * s);
    }
};

LocalOperator hk(const PointContext& c)
{
    const ModelParams& p = c.p;
    const double r = c.r;
    LocalOperator op;
    const Mat4 id = Mat4::Identity();
    op.mrr = -id;
    op.mr = -(1.0 / r) * id;
    op.mpp = -(1.0 / (r * r)) * id;
    const double pot = p.omega * p.omega * r * r +
                       p.k * p.k / (r * r) * (p.a * (p.a - 1.0) * c.sec2 + p.b * (p.b - 1.0) * c.csc2);
    op.m0 = pot * id;
    return op;
}

LocalOperator k_ladder_bosonic(const PointContext& c, int sign)
{
    const double w = c.p.omega;
    const double r = c.r;
    LocalOperator op = -1.0 * hk(c);
    op.m0 += (2.0 * w * w * r * r - sign * 2.0 * w) * Mat4::Identity();
    op.mr += (-sign * 2.0 * w * r) * Mat4::Identity();
    return (1.0 / (4.0 * w)) * op;
}

LocalOperator gamma_op(const PointContext& c)
{
    const ModelParams& p = c.p;
    const FermionOps& f = c.f;
    const Mat4 xx = f.create_x * f.annihilate_x;
    const Mat4 yy = f.create_y * f.annihilate_y;
    const Mat4 mix = f.create_x * f.annihilate_y + f.create_y * f.annihilate_x;
    const Mat4 m = p.a * (xx - c.tan_k * mix + (p.k * c.sec2 - 1.0) * yy) +
                   p.b * (xx + c.cot_k * mix + (p.k * c.csc2 - 1.0) * yy);
    return matrix_op(p.k / (2.0 * p.omega * c.r * c.r) * m);
}

LocalOperator y_op(const PointContext& c)
{
    const ModelParams& p = c.p;
    return matrix_op(0.5 * (c.f.number() - (p.k * (p.a + p.b) + 1.0) * Mat4::Identity()));
}

// Raw V (creation part) and W (annihilation part) of the odd generators.
LocalOperator v_op(const PointContext& c, int sign)
{
    const ModelParams& p = c.p;
    const double pre = 1.0 / (2.0 * std::sqrt(p.omega));
    const Mat4& bx = c.f.create_x;
    const Mat4& by = c.f.create_y;
    LocalOperator op;
    op.mr = -sign * bx;
    op.m0 = (p.omega * c.r + sign * p.k * (p.a + p.b) / c.r) * bx -
            sign * (p.k * p.a * c.tan_k - p.k * p.b * c.cot_k) / c.r * by;
    op.mp = -sign / c.r * by;
    return pre * op;
}

LocalOperator w_op(const PointContext& c, int sign)
{
    const ModelParams& p = c.p;
    const double pre = 1.0 / (2.0 * std::sqrt(p.omega));
    const Mat4& bx = c.f.annihilate_x;
    const Mat4& by = c.f.annihilate_y;
    LocalOperator op;
    op.mr = -sign * bx;
    op.m0 = (p.omega * c.r - sign * p.k * (p.a + p.b) / c.r) * bx -
            sign * (-p.k * p.a * c.tan_k + p.k * p.b * c.cot_k) / c.r * by;
    op.mp = -sign / c.r * by;
    return pre * op;
}

LocalOperator yhat_op(const PointContext& c)
{
    const ModelParams& p = c.p;
    const FermionOps& f = c.f;
    const Mat4& bxd = f.create_x;
    const Mat4& byd = f.create_y;
    const Mat4& bx = f.annihilate_x;
    const Mat4& by = f.annihilate_y;
    // D1 = d_phi + ka tan - kb cot,  D2 = d_phi - ka tan + kb cot
    const double g = p.k * p.a * c.tan_k - p.k * p.b * c.cot_k;
    const Mat4 with_d1 = -bxd * byd - byd * bx;
    const Mat4 with_d2 = by * bx + bxd * by;
    LocalOperator op;
    op.mp = 0.5 * (with_d1 + with_d2);
    op.m0 = 0.5 * (g * with_d1 - g * with_d2 -
                   p.k * (p.a + p.b) * (2.0 * byd * by - Mat4::Identity()) + parity_matrix());
    return op;
}

LocalOperator build(GeneratorId g, const PointContext& c)
{
    const double w = c.p.omega;
    const double sw = std::sqrt(w);
    switch (g) {
    case GeneratorId::Hk: return hk(c);
    case GeneratorId::K0B: return (1.0 / (4.0 * w)) * hk(c);
    case GeneratorId::KplusB: return k_ladder_bosonic(c, +1);
    case GeneratorId::KminusB: return k_ladder_bosonic(c, -1);
    case GeneratorId::Gamma: return gamma_op(c);
    case GeneratorId::K0: return build(GeneratorId::K0B, c) + gamma_op(c);
    case GeneratorId::Kplus: return k_ladder_bosonic(c, +1) - gamma_op(c);
    case GeneratorId::Kminus: return k_ladder_bosonic(c, -1) - gamma_op(c);
    case GeneratorId::Y: return y_op(c);
    case GeneratorId::Vplus: return v_op(c, +1);
    case GeneratorId::Vminus: return v_op(c, -1);
    case GeneratorId::Wplus: return w_op(c, +1);
    case GeneratorId::Wminus: return w_op(c, -1);
    case GeneratorId::Pi: return matrix_op(parity_matrix());
    case GeneratorId::Yhat: return yhat_op(c);
    case GeneratorId::Vhat_plus: return parity_projector(+1) * (v_op(c, +1) + w_op(c, +1));
    case GeneratorId::Vhat_minus: return parity_projector(+1) * (v_op(c, -1) + w_op(c, -1));
    case GeneratorId::What_plus: return parity_projector(-1) * (v_op(c, +1) + w_op(c, +1));
    case GeneratorId::What_minus: return parity_projector(-1) * (v_op(c, -1) + w_op(c, -1));
    case GeneratorId::Hs: return hk(c) + (4.0 * w) * (gamma_op(c) + y_op(c));
    case GeneratorId::Hs_hat: return hk(c) + (4.0 * w) * (gamma_op(c) + yhat_op(c));
    case GeneratorId::Q: return (2.0 * sw) * w_op(c, +1);
    case GeneratorId::Qdag: return (2.0 * sw) * v_op(c, -1);
    case GeneratorId::Qhat: return (2.0 * sw) * build(GeneratorId::What_plus, c);
    case GeneratorId::Qhat_dag: return (2.0 * sw) * build(GeneratorId::Vhat_minus, c);
    }
    return scalar_op(0.0);
}

void check_same_params(const ModelParams& a, const ModelParams& b)
{
    if (!(a == b)) throw std::invalid_argument("state and grid are built over different ModelParams");
}

}  // namespace

const char* to_string(GeneratorId g)
{
    for (const auto& [id, name] : kNames)
        if (id == g) return name;
    return "?";
}

GeneratorId generator_from_string(const std::string& s)
{
    for (const auto& [id, name] : kNames)
        if (s == name) return id;
    throw std::invalid_argument("unknown generator '" + s + "'");
}

Grade grade(GeneratorId g)
{
    switch (g) {
    case GeneratorId::Vplus:
    case GeneratorId::Vminus:
    case GeneratorId::Wplus:
    case GeneratorId::Wminus:
    case GeneratorId::Vhat_plus:
    case GeneratorId::Vhat_minus:
    case GeneratorId::What_plus:
    case GeneratorId::What_minus:
    case GeneratorId::Q:
    case GeneratorId::Qdag:
    case GeneratorId::Qhat:
    case GeneratorId::Qhat_dag: return Grade::odd;
    default: return Grade::even;
    }
}

const std::vector<GeneratorId>& all_generators()
{
    static const std::vector<GeneratorId> ids = [] {
        std::vector<GeneratorId> v;
        for (const auto& entry : kNames) v.push_back(entry.first);
        return v;
    }();
    return ids;
}

LocalOperator operator+(const LocalOperator& x, const LocalOperator& y)
{
    return {x.m0 + y.m0, x.mr + y.mr, x.mp + y.mp, x.mrr + y.mrr, x.mpp + y.mpp};
}

LocalOperator operator-(const LocalOperator& x, const LocalOperator& y)
{
    return {x.m0 - y.m0, x.mr - y.mr, x.mp - y.mp, x.mrr - y.mrr, x.mpp - y.mpp};
}

LocalOperator operator*(double s, const LocalOperator& x)
{
    return {s * x.m0, s * x.mr, s * x.mp, s * x.mrr, s * x.mpp};
}

LocalOperator operator*(const Mat4& m, const LocalOperator& x)
{
    return {m * x.m0, m * x.mr, m * x.mp, m * x.mrr, m * x.mpp};
}

LocalOperator local_operator(GeneratorId g, const ModelParams& p, double r, double phi)
{
    return build(g, PointContext(p, r, phi));
}

GridPtr make_grid(const ModelParams& p, int block_n, int quad_radial, int quad_angular)
{
    p.validate();
    if (block_n < 0) throw DomainError("make_grid: block n must be nonnegative");
    auto g = std::make_shared<Grid>();
    g->params = p;
    g->block_n = block_n;

    const double alpha = (2.0 * block_n + p.a + p.b) * p.k - 1.0;
    const QuadratureRule lag = gauss_laguerre_rule(quad_radial, alpha);
    for (std::size_t i = 0; i < lag.size(); ++i) {
        const double z = lag.nodes[i];
        g->r.push_back(std::sqrt(z / p.omega));
        // r dr = dz / (2 omega); divide out the Laguerre weight z^alpha e^-z
        g->wr.push_back(std::exp(std::log(lag.weights[i]) + z - alpha * std::log(z)) / (2.0 * p.omega));
    }

    const QuadratureRule jac = gauss_jacobi_rule(quad_angular, p.b - 0.5, p.a - 0.5);
    for (std::size_t j = 0; j < jac.size(); ++j) {
        const double x = jac.nodes[j];
        g->phi.push_back(std::acos(x) / (2.0 * p.k));
        // dphi = dx / (2k sqrt(1-x^2)); divide out (1-x)^{b-1/2} (1+x)^{a-1/2}
        g->wphi.push_back(jac.weights[j] / (2.0 * p.k) * std::pow(1.0 - x, -p.b) * std::pow(1.0 + x, -p.a));
    }
    return g;
}

std::vector<StateJet> sample_jets(const SuperWavefunction& s, const Grid& g)
{
    check_same_params(s.params(), g.params);
    std::vector<StateJet> jets(g.size());
    const std::size_t nphi = g.nphi();
#pragma omp parallel for schedule(static)
    for (std::size_t idx = 0; idx < jets.size(); ++idx) jets[idx] = s.at(g.r[idx / nphi], g.phi[idx % nphi]);
    return jets;
}

SampledState sample(const SuperWavefunction& s, const GridPtr& g)
{
    check_same_params(s.params(), g->params);
    SampledState out{g, Eigen::Matrix<double, 4, Eigen::Dynamic>(4, g->size())};
    const std::size_t nphi = g->nphi();
    for (std::size_t idx = 0; idx < g->size(); ++idx)
        out.values.col(idx) = s.value(g->r[idx / nphi], g->phi[idx % nphi]);
    return out;
}

std::vector<LocalOperator> operator_field(GeneratorId gen, const Grid& g)
{
    std::vector<LocalOperator> field(g.size());
    const std::size_t nphi = g.nphi();
    for (std::size_t idx = 0; idx < field.size(); ++idx)
        field[idx] = local_operator(gen, g.params, g.r[idx / nphi], g.phi[idx % nphi]);
    return field;
}

SampledState apply(const std::vector<LocalOperator>& field, const std::vector<StateJet>& jets, const GridPtr& g)
{
    if (field.size() != g->size() || jets.size() != g->size())
        throw std::invalid_argument("apply: operator field or state samples do not match the grid");
    SampledState out{g, Eigen::Matrix<double, 4, Eigen::Dynamic>(4, g->size())};
    for (std::size_t idx = 0; idx < g->size(); ++idx) out.values.col(idx) = field[idx].apply(jets[idx]);
    return out;
}

SampledState apply(GeneratorId gen, const SuperWavefunction& s, const GridPtr& g)
{
    check_same_params(s.params(), g->params);
    return apply(operator_field(gen, *g), sample_jets(s, *g), g);
}

double inner(const SampledState& u, const SampledState& v)
{
    if (!u.grid || u.grid != v.grid) throw std::invalid_argument("inner: states sampled on different grids");
    const Grid& g = *u.grid;
    const std::size_t nphi = g.nphi();
    // Neumaier summation, fixed point order
    double sum = 0.0, comp = 0.0;
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        const double term = g.wr[idx / nphi] * g.wphi[idx % nphi] * u.values.col(idx).dot(v.values.col(idx));
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

double inner(const SuperWavefunction& u, const SuperWavefunction& v, const GridPtr& g)
{
    return inner(sample(u, g), sample(v, g));
}

SampledState operator-(const SampledState& u, const SampledState& v)
{
    if (u.grid != v.grid) throw std::invalid_argument("states sampled on different grids");
    return {u.grid, u.values - v.values};
}

SampledState operator*(double s, const SampledState& u) { return {u.grid, s * u.values}; }

}  // namespace ttw
