#ifndef TTW_DIFFREAL_HPP
#define TTW_DIFFREAL_HPP

#include "ttw/model.hpp"

#include <memory>
#include <string>
#include <vector>

namespace ttw {

enum class GeneratorId {
    K0, Kplus, Kminus, Y,
    Vplus, Vminus, Wplus, Wminus,
    Yhat, Vhat_plus, Vhat_minus, What_plus, What_minus,
    Pi, Gamma, K0B, KplusB, KminusB,
    Hk, Hs, Hs_hat, Q, Qdag, Qhat, Qhat_dag
};

enum class Grade { even = 0, odd = 1 };

inline Grade operator^(Grade a, Grade b)
{
    return static_cast<Grade>(static_cast<int>(a) ^ static_cast<int>(b));
}

const char* to_string(GeneratorId g);
GeneratorId generator_from_string(const std::string& s);
Grade grade(GeneratorId g);
const std::vector<GeneratorId>& all_generators();

/// A second-order differential operator with 4x4 fermionic coefficients,
/// frozen at one point (r, phi):  m0 + mr d_r + mp d_phi + mrr d_r^2 + mpp d_phi^2.
/// The derivatives act on the fixed-basis coefficient functions.
struct LocalOperator {
    Mat4 m0 = Mat4::Zero();
    Mat4 mr = Mat4::Zero();
    Mat4 mp = Mat4::Zero();
    Mat4 mrr = Mat4::Zero();
    Mat4 mpp = Mat4::Zero();

    Vec4 apply(const StateJet& s) const
    {
        return m0 * s.v + mr * s.dr + mp * s.dp + mrr * s.drr + mpp * s.dpp;
    }
};

LocalOperator operator+(const LocalOperator& x, const LocalOperator& y);
LocalOperator operator-(const LocalOperator& x, const LocalOperator& y);
LocalOperator operator*(double s, const LocalOperator& x);
LocalOperator operator*(const Mat4& m, const LocalOperator& x);

LocalOperator local_operator(GeneratorId g, const ModelParams& p, double r, double phi);

/// Tensor-product quadrature grid for the angular block n:
/// Gauss-Laguerre in z = omega r^2 (exponent (2n+a+b)k - 1) times
/// Gauss-Jacobi in x = cos 2k phi (exponents b-1/2, a-1/2).  The stored
/// weights already include the r dr dphi measure.
struct Grid {
    ModelParams params;
    int block_n = 0;
    std::vector<double> r, phi;
    std::vector<double> wr, wphi;

    std::size_t nr() const { return r.size(); }
    std::size_t nphi() const { return phi.size(); }
    std::size_t size() const { return r.size() * phi.size(); }
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(const ModelParams& p, int block_n, int quad_radial, int quad_angular);

/// Fixed-basis components sampled at every grid point (column = point,
/// radial index major).
struct SampledState {
    GridPtr grid;
    Eigen::Matrix<double, 4, Eigen::Dynamic> values;
};

std::vector<StateJet> sample_jets(const SuperWavefunction& s, const Grid& g);
SampledState sample(const SuperWavefunction& s, const GridPtr& g);

std::vector<LocalOperator> operator_field(GeneratorId gen, const Grid& g);
SampledState apply(const std::vector<LocalOperator>& field, const std::vector<StateJet>& jets,
                   const GridPtr& g);
SampledState apply(GeneratorId gen, const SuperWavefunction& s, const GridPtr& g);

/// Quadrature inner product sum_e int c_e^u c_e^v r dr dphi, compensated
/// summation in a fixed order.
double inner(const SampledState& u, const SampledState& v);
double inner(const SuperWavefunction& u, const SuperWavefunction& v, const GridPtr& g);

SampledState operator-(const SampledState& u, const SampledState& v);
SampledState operator*(double s, const SampledState& u);

}  // namespace ttw

#endif
