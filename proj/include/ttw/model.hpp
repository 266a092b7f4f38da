#ifndef TTW_MODEL_HPP
#define TTW_MODEL_HPP

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace ttw {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameters of the deformed oscillator H_k: deformation k, barrier
/// strengths a, b and frequency omega.  Restricted to a, b >= 1.
struct ModelParams {
    double k = 3.0;
    double a = 2.0;
    double b = 3.0;
    double omega = 1.0;
    // Debug mis-convention: builds the angular factor with the two Jacobi
    // exponents exchanged.  Only used as a negative control.
    bool swap_jacobi = false;

    void validate() const;
    bool operator==(const ModelParams&) const = default;
};

struct QuantumNumbers {
    int N = 0;  // radial
    int n = 0;  // angular
};

enum class Sector { zero_fermion, one_fermion_minus, one_fermion_plus, two_fermion };

const char* to_string(Sector s);
Sector sector_from_string(const std::string& s);

struct BasisIndex {
    Sector sector = Sector::zero_fermion;
    int n = 0;
    int N = 0;

    bool valid() const;
    bool even() const { return sector == Sector::zero_fermion || sector == Sector::two_fermion; }
    std::string label() const;
    bool operator==(const BasisIndex&) const = default;
};

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;

/// Two fermionic modes on the ordered basis
/// { |0>, fx+|0>, fy+|0>, fx+ fy+|0> }.
struct FermionOps {
    Mat4 create_x, create_y, annihilate_x, annihilate_y;

    static FermionOps fixed();
    // Rotated modes: bx+ = cos(phi) fx+ + sin(phi) fy+, by+ = -sin(phi) fx+ + cos(phi) fy+.
    static FermionOps rotated(double phi);
    // Derivative of the rotated operators with respect to phi.
    static FermionOps rotated_dphi(double phi);

    Mat4 number() const { return create_x * annihilate_x + create_y * annihilate_y; }
};

Mat4 parity_matrix();                // Pi = (2 nx - 1)(2 ny - 1)
Mat4 parity_projector(int sign);     // Pi^{+/-} = (1 +/- Pi)/2

double energy(const ModelParams& p, QuantumNumbers qn);

struct TauQ {
    double tau;
    double q;
};
TauQ tau_q(const ModelParams& p, int n);

struct QHat {
    double plus;
    double minus;
};
QHat q_hat(const ModelParams& p, int n);

struct MixingCoeffs {
    double A_plus, B_plus, A_minus, B_minus;
};
MixingCoeffs mixing_coeffs(const ModelParams& p, int n);

// value and first two derivatives of a scalar function of one variable
struct Jet {
    double v = 0.0;
    double d = 0.0;
    double dd = 0.0;
};

inline Jet operator*(const Jet& f, const Jet& g)
{
    return {f.v * g.v, f.d * g.v + f.v * g.d, f.dd * g.v + 2.0 * f.d * g.d + f.v * g.dd};
}
inline Jet operator*(double s, const Jet& f) { return {s * f.v, s * f.d, s * f.dd}; }

// (-1)^N r^power exp(-omega r^2/2) L_N^(alpha)(omega r^2)
struct RadialFactor {
    double power;
    double alpha;
    int N;
    double omega;

    Jet eval(double r) const;
};

// cos^aa(k phi) sin^bb(k phi) P_n^(aa-1/2, bb-1/2)(-cos 2k phi)
struct AngularFactor {
    double k;
    double aa;
    double bb;
    int n;
    bool swapped = false;

    Jet eval(double phi) const;
};

// Fermionic content in the rotated frame.
enum class FermionFactor { vacuum, rot_x, rot_y, pair };

struct Term {
    double coeff;
    RadialFactor radial;
    AngularFactor angular;
    FermionFactor fermion;
};

/// Four fixed-basis components with all derivatives up to second order
/// at one point.
struct StateJet {
    Vec4 v = Vec4::Zero();
    Vec4 dr = Vec4::Zero();
    Vec4 dp = Vec4::Zero();
    Vec4 drr = Vec4::Zero();
    Vec4 dpp = Vec4::Zero();
    Vec4 drp = Vec4::Zero();
};

/// A state of the super system written in the fixed fermion basis.  Each
/// coefficient function is a finite sum of separable closed-form terms,
/// so derivatives are exact.
class SuperWavefunction {
public:
    SuperWavefunction(ModelParams params, int block_n, std::vector<Term> terms)
        : params_(params), block_n_(block_n), terms_(std::move(terms))
    {
    }

    const ModelParams& params() const { return params_; }
    int block_n() const { return block_n_; }
    const std::vector<Term>& terms() const { return terms_; }

    StateJet at(double r, double phi) const;
    Vec4 value(double r, double phi) const { return at(r, phi).v; }

private:
    ModelParams params_;
    int block_n_;
    std::vector<Term> terms_;
};

/// Normalization constant of the zero-fermion state (N, n), computed by
/// Gauss quadrature.
double normalization(const ModelParams& p, int N, int n);

SuperWavefunction basis_state(const ModelParams& p, const BasisIndex& idx);

/// Max relative residual of the angular eigen-equation for
/// Phi_n^(aa,bb) over a Gauss-Jacobi grid.
double angular_eigencheck(const ModelParams& p, int n, double aa, double bb);

}  // namespace ttw

#endif
