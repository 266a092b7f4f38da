#ifndef TTW_REPANALYSIS_HPP
#define TTW_REPANALYSIS_HPP

#include "ttw/opmatrix.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ttw {

// What a coordinate of the (possibly rotated) working basis is.
enum class CoordKind { zero, minus, plus, two, qhat_plus, qhat_minus };
const char* to_string(CoordKind k);

struct Coordinate {
    CoordKind kind;
    int n;
    int N;
};

/// Diagonalization of the 2x2 even blocks of Yhat on span{|q>, |q+1>}.
struct YhatEvenBlock {
    int n = 0;
    int N = 0;
    Eigen::Vector2d eigenvalues;   // (q+, q-)
    Eigen::Matrix2d eigenvectors;  // columns (A+, B+), (A-, B-); first entry positive
};

struct YhatAnalysis {
    std::vector<YhatEvenBlock> even_blocks;
    // Yhat diagonal entries on states left unmixed (odd states, n = 0 zero-fermion states)
    std::vector<std::pair<int, double>> diagonal;
    double offdiag_unmixed = 0.0;  // largest off-diagonal entry in unmixed columns (interior)
    Eigen::MatrixXd change_of_basis;  // columns: new basis in old coordinates
    std::vector<Coordinate> coords;
    double orthogonality_defect = 0.0;
};

YhatAnalysis yhat_blocks(const Realization& real, const OperatorMatrix& yhat);

struct ElementCheck {
    std::string family;
    int n, N;
    double expected;
    double actual;
    double column_residual;  // max |column - expected column|
};

struct MatrixElementReport {
    std::vector<ElementCheck> checks;
    double max_residual = 0.0;
    double max_vhat_even_image_norm = 0.0;
};

/// Chiral odd-generator matrix elements on the Yhat eigenbasis.
MatrixElementReport matrix_element_check(const Realization& real, const AlgebraMatrices& chiral,
                                         const YhatAnalysis& yh);

struct CasimirMatrices {
    OperatorMatrix C2, C3;
};

/// Quadratic and cubic Casimirs built as matrix polynomials; the same
/// polynomial serves both generator sets.
CasimirMatrices casimirs(const AlgebraMatrices& alg);

struct BlockEigen {
    std::vector<double> eigenvalues;
    double mean = 0.0;
    double spread = 0.0;
    double max_abs = 0.0;
    double leakage = 0.0;  // largest entry coupling the block to outside coordinates
};

struct Tower {
    std::string kind;
    double lowest_k0;
    double weight;
};

struct IrrepBlock {
    GeneratorSet set;
    int n = 0;
    std::vector<int> indices;          // working-basis coordinates
    double tau = 0.0;     // K0 label of the irrep
    double weight = 0.0;  // Y label of the irrep
    bool atypical = false;
    // |K-|, |V-|, |W-| applied to the zero-fermion (or q+) N = 0 state
    std::array<double, 3> ground_lowering{};
    int lws_kernel_dim = 0;
    std::optional<Eigen::VectorXd> lws;  // in block coordinates
    std::vector<Tower> towers;
    BlockEigen c2, c3;
};

struct Classification {
    GeneratorSet set;
    std::vector<Coordinate> coords;
    std::vector<IrrepBlock> blocks;
    double centrality_c2 = 0.0;  // max |[C2, G]| on the depth-2 interior
    double centrality_c3 = 0.0;
};

/// Rotate all eight generators to the working basis (identity for the
/// standard set, Yhat eigenbasis for the chiral set).
AlgebraMatrices rotate(const AlgebraMatrices& alg, const Eigen::MatrixXd& u);

Classification classify(const Realization& real, GeneratorSet set, double threshold = 1e-8,
                        double atypical_tol = 1e-7);
Classification classify(const Realization& real, const AlgebraMatrices& alg, double threshold = 1e-8,
                        double atypical_tol = 1e-7);

std::vector<std::vector<int>> connected_blocks(const std::vector<const Eigen::MatrixXd*>& mats,
                                               double threshold);

/// The four product forms of Yhat (built from the unhatted generators and
/// Pi) against the differential Yhat, columns in the depth-1 interior.
struct YhatForms {
    std::array<double, 4> vs_differential{};
    double max_pairwise = 0.0;
};
YhatForms yhat_forms(const Realization& real);

/// n = 0: V+|tau,tau+N,q> and V-|tau,tau+N+1,q> normalised and compared,
/// and the would-be two-fermion state V+V-|tau,tau+N,q>.
struct Degeneration {
    double min_overlap = 1.0;
    double max_overlap = 1.0;
    double max_two_fermion_norm = 0.0;
    double completeness = 0.0;  // V-|zero> minus its projection on the basis
};
Degeneration n0_degeneration(const Realization& real);

void to_json(nlohmann::json& j, const YhatAnalysis& y);
void to_json(nlohmann::json& j, const MatrixElementReport& r);
void to_json(nlohmann::json& j, const Classification& c);

}  // namespace ttw

#endif
