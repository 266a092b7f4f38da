#include "ttw/model.hpp"

#include "ttw/specfun.hpp"

#include <cmath>
#include <numbers>

namespace ttw {

void ModelParams::validate() const
{
    if (!std::isfinite(k) || !(k > 0.0)) throw ConfigError("invariant violated: k > 0");
    if (!std::isfinite(omega) || !(omega > 0.0)) throw ConfigError("invariant violated: omega > 0");
    if (!std::isfinite(a) || !(a >= 1.0)) throw ConfigError("invariant violated: a >= 1");
    if (!std::isfinite(b) || !(b >= 1.0)) throw ConfigError("invariant violated: b >= 1");
}

const char* to_string(Sector s)
{
    switch (s) {
    case Sector::zero_fermion: return "zero_fermion";
    case Sector::one_fermion_minus: return "one_fermion_minus";
    case Sector::one_fermion_plus: return "one_fermion_plus";
    case Sector::two_fermion: return "two_fermion";
    }
    return "?";
}

Sector sector_from_string(const std::string& s)
{
    for (auto sec : {Sector::zero_fermion, Sector::one_fermion_minus, Sector::one_fermion_plus,
                     Sector::two_fermion})
        if (s == to_string(sec)) return sec;
    throw ConfigError("unknown sector '" + s + "'");
}

bool BasisIndex::valid() const
{
    if (n < 0 || N < 0) return false;
    if ((sector == Sector::one_fermion_minus || sector == Sector::two_fermion) && n < 1) return false;
    return true;
}

std::string BasisIndex::label() const
{
    return std::string(to_string(sector)) + "(n=" + std::to_string(n) + ",N=" + std::to_string(N) + ")";
}

FermionOps FermionOps::fixed()
{
    FermionOps f;
    f.create_x.setZero();
    f.create_y.setZero();
    f.create_x(1, 0) = 1.0;  // |0> -> fx+|0>
    f.create_x(3, 2) = 1.0;  // fy+|0> -> fx+ fy+|0>
    f.create_y(2, 0) = 1.0;  // |0> -> fy+|0>
    f.create_y(3, 1) = -1.0; // fx+|0> -> fy+ fx+|0> = -fx+ fy+|0>
    f.annihilate_x = f.create_x.transpose();
    f.annihilate_y = f.create_y.transpose();
    return f;
}

FermionOps FermionOps::rotated(double phi)
{
    const FermionOps f = fixed();
    const double c = std::cos(phi), s = std::sin(phi);
    FermionOps r;
    r.create_x = c * f.create_x + s * f.create_y;
    r.create_y = -s * f.create_x + c * f.create_y;
    r.annihilate_x = r.create_x.transpose();
    r.annihilate_y = r.create_y.transpose();
    return r;
}

FermionOps FermionOps::rotated_dphi(double phi)
{
    const FermionOps f = fixed();
    const double c = std::cos(phi), s = std::sin(phi);
    FermionOps r;
    r.create_x = -s * f.create_x + c * f.create_y;
    r.create_y = -c * f.create_x - s * f.create_y;
    r.annihilate_x = r.create_x.transpose();
    r.annihilate_y = r.create_y.transpose();
    return r;
}

Mat4 parity_matrix()
{
    const FermionOps f = FermionOps::fixed();
    const Mat4 id = Mat4::Identity();
    return (2.0 * f.create_x * f.annihilate_x - id) * (2.0 * f.create_y * f.annihilate_y - id);
}

Mat4 parity_projector(int sign)
{
    return 0.5 * (Mat4::Identity() + (sign >= 0 ? 1.0 : -1.0) * parity_matrix());
}

double energy(const ModelParams& p, QuantumNumbers qn)
{
    return 2.0 * p.omega * (2.0 * qn.N + (2.0 * qn.n + p.a + p.b) * p.k + 1.0);
}

TauQ tau_q(const ModelParams& p, int n)
{
    if (n < 0) throw DomainError("tau_q: n must be nonnegative");
    return {(n + 0.5 * (p.a + p.b)) * p.k + 0.5, -0.5 * ((p.a + p.b) * p.k + 1.0)};
}

QHat q_hat(const ModelParams& p, int n)
{
    if (n < 1) throw DomainError("q_hat: the even-sector mixing needs n >= 1");
    const double m = (2.0 * n + p.a + p.b) * p.k;
    return {0.5 * (1.0 + m), 0.5 * (1.0 - m)};
}

MixingCoeffs mixing_coeffs(const ModelParams& p, int n)
{
    if (n < 1) throw DomainError("mixing_coeffs: the even-sector mixing needs n >= 1");
    const double den = 2.0 * n + p.a + p.b;
    const double big = std::sqrt((n + p.a + p.b) / den);
    const double small = std::sqrt(n / den);
    return {big, -small, small, big};
}

Jet RadialFactor::eval(double r) const
{
    // g = r^power exp(-omega r^2 / 2), handled through its log-derivative
    const double g = std::exp(power * std::log(r) - 0.5 * omega * r * r);
    const double u = power / r - omega * r;
    const Jet gj{g, u * g, (u * u - power / (r * r) - omega) * g};

    const double z = omega * r * r;
    const double dz = 2.0 * omega * r;
    const double l0 = laguerre_eval(N, alpha, z, 0);
    const double l1 = laguerre_eval(N, alpha, z, 1);
    const double l2 = laguerre_eval(N, alpha, z, 2);
    const Jet lj{l0, l1 * dz, l2 * dz * dz + l1 * 2.0 * omega};
    return (N % 2 == 0 ? 1.0 : -1.0) * (gj * lj);
}

Jet AngularFactor::eval(double phi) const
{
    const double c = std::cos(k * phi), s = std::sin(k * phi);
    const double h = std::pow(c, aa) * std::pow(s, bb);
    const double u = -aa * k * s / c + bb * k * c / s;
    const double du = -aa * k * k / (c * c) - bb * k * k / (s * s);
    const Jet hj{h, u * h, (u * u + du) * h};

    const double alpha = swapped ? bb - 0.5 : aa - 0.5;
    const double beta = swapped ? aa - 0.5 : bb - 0.5;
    const double x = -std::cos(2.0 * k * phi);
    const double dx = 2.0 * k * std::sin(2.0 * k * phi);
    const double ddx = 4.0 * k * k * std::cos(2.0 * k * phi);
    const double p0 = jacobi_eval(n, alpha, beta, x, 0);
    const double p1 = jacobi_eval(n, alpha, beta, x, 1);
    const double p2 = jacobi_eval(n, alpha, beta, x, 2);
    const Jet pj{p0, p1 * dx, p2 * dx * dx + p1 * ddx};
    return hj * pj;
}

namespace {

struct VecJet {
    Vec4 v = Vec4::Zero(), d = Vec4::Zero(), dd = Vec4::Zero();
};

VecJet fermion_jet(FermionFactor f, double phi)
{
    VecJet j;
    const double c = std::cos(phi), s = std::sin(phi);
    switch (f) {
    case FermionFactor::vacuum: j.v[0] = 1.0; break;
    case FermionFactor::pair: j.v[3] = 1.0; break;
    case FermionFactor::rot_x:
        j.v << 0.0, c, s, 0.0;
        j.d << 0.0, -s, c, 0.0;
        j.dd << 0.0, -c, -s, 0.0;
        break;
    case FermionFactor::rot_y:
        j.v << 0.0, -s, c, 0.0;
        j.d << 0.0, -c, -s, 0.0;
        j.dd << 0.0, s, -c, 0.0;
        break;
    }
    return j;
}

}  // namespace

StateJet SuperWavefunction::at(double r, double phi) const
{
    StateJet out;
    for (const Term& t : terms_) {
        const Jet R = t.radial.eval(r);
        const Jet A = t.angular.eval(phi);
        const VecJet F = fermion_jet(t.fermion, phi);
        const Vec4 af = A.v * F.v;
        const Vec4 af1 = A.d * F.v + A.v * F.d;
        const Vec4 af2 = A.dd * F.v + 2.0 * A.d * F.d + A.v * F.dd;
        out.v += t.coeff * R.v * af;
        out.dr += t.coeff * R.d * af;
        out.dp += t.coeff * R.v * af1;
        out.drr += t.coeff * R.dd * af;
        out.dpp += t.coeff * R.v * af2;
        out.drp += t.coeff * R.d * af1;
    }
    return out;
}

double normalization(const ModelParams& p, int N, int n)
{
    const double m = (2.0 * n + p.a + p.b) * p.k;
    // int r^{2m} e^{-w r^2} L^2 r dr = w^{-m}/(2w) int z^m e^{-z} L(z)^2 dz
    const QuadratureRule lag = gauss_laguerre_rule(N + 2, m);
    const double rad_sum = lag.integrate([&](double z) {
        const double l = laguerre_eval(N, m, z);
        return l * l;
    });
    const double log_rad = std::log(rad_sum) - std::log(2.0 * p.omega) - m * std::log(p.omega);

    // x = cos 2k phi; Phi^2 dphi = 2^{-a-b}/(2k) P(-x)^2 (1-x)^{b-1/2} (1+x)^{a-1/2} dx
    const QuadratureRule jac = gauss_jacobi_rule(n + 2, p.b - 0.5, p.a - 0.5);
    const double alpha = p.swap_jacobi ? p.b - 0.5 : p.a - 0.5;
    const double beta = p.swap_jacobi ? p.a - 0.5 : p.b - 0.5;
    const double ang_sum = jac.integrate([&](double x) {
        const double v = jacobi_eval(n, alpha, beta, -x);
        return v * v;
    });
    const double log_ang = std::log(ang_sum) - (p.a + p.b) * std::log(2.0) - std::log(2.0 * p.k);
    return std::exp(-0.5 * (log_rad + log_ang));
}

SuperWavefunction basis_state(const ModelParams& p, const BasisIndex& idx)
{
    p.validate();
    if (!idx.valid()) throw DomainError("basis_state: invalid index " + idx.label());

    const int n = idx.n, N = idx.N;
    const double c = 2.0 * n + p.a + p.b;
    const double m = c * p.k;
    const double norm = normalization(p, N, n);
    const AngularFactor phi_n{p.k, p.a, p.b, n, p.swap_jacobi};
    const AngularFactor phi_lower{p.k, p.a + 1.0, p.b + 1.0, n - 1, p.swap_jacobi};

    std::vector<Term> terms;
    switch (idx.sector) {
    case Sector::zero_fermion: {
        const RadialFactor rad{m, m, N, p.omega};
        terms.push_back({norm, rad, phi_n, FermionFactor::vacuum});
        break;
    }
    case Sector::one_fermion_minus: {
        const RadialFactor rad{m - 1.0, m - 1.0, N, p.omega};
        const double pref = std::sqrt((N + m) / (n * c)) * norm / std::sqrt(p.omega);
        terms.push_back({pref * n, rad, phi_n, FermionFactor::rot_x});
        terms.push_back({pref * (n + p.a + p.b), rad, phi_lower, FermionFactor::rot_y});
        break;
    }
    case Sector::one_fermion_plus: {
        const RadialFactor rad{m + 1.0, m + 1.0, N, p.omega};
        double pref = -std::sqrt((n + p.a + p.b) / (c * (N + m + 1.0))) * std::sqrt(p.omega) * norm;
        // at n = 0 this is the normalized V+ image of the zero-fermion state
        if (n == 0) pref = -pref;
        terms.push_back({pref, rad, phi_n, FermionFactor::rot_x});
        if (n >= 1) terms.push_back({-pref, rad, phi_lower, FermionFactor::rot_y});
        break;
    }
    case Sector::two_fermion: {
        const RadialFactor rad{m, m, N, p.omega};
        terms.push_back({std::sqrt((n + p.a + p.b) / n) * norm, rad, phi_lower, FermionFactor::pair});
        break;
    }
    }
    return SuperWavefunction(p, n, std::move(terms));
}

double angular_eigencheck(const ModelParams& p, int n, double aa, double bb)
{
    const AngularFactor phi{p.k, aa, bb, n, p.swap_jacobi};
    const double eig = p.k * p.k * (2.0 * n + aa + bb) * (2.0 * n + aa + bb);
    const QuadratureRule rule = gauss_jacobi_rule(2 * n + 8, bb - 0.5, aa - 0.5);
    double worst = 0.0, scale = 0.0;
    for (double x : rule.nodes) {
        const double ph = std::acos(x) / (2.0 * p.k);
        const Jet f = phi.eval(ph);
        const double sec2 = 1.0 / std::pow(std::cos(p.k * ph), 2);
        const double csc2 = 1.0 / std::pow(std::sin(p.k * ph), 2);
        const double lhs = -f.dd + p.k * p.k * (aa * (aa - 1.0) * sec2 + bb * (bb - 1.0) * csc2) * f.v;
        worst = std::max(worst, std::abs(lhs - eig * f.v));
        scale = std::max(scale, std::abs(eig * f.v));
    }
    return scale > 0.0 ? worst / scale : worst;
}

}  // namespace ttw
