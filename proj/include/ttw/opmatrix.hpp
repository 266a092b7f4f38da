#ifndef TTW_OPMATRIX_HPP
#define TTW_OPMATRIX_HPP

#include "ttw/diffreal.hpp"
#include "ttw/model.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace ttw {

struct Truncation {
    int N_max = 5;
    int n_max = 5;
    int quad_radial = 28;
    int quad_angular = 18;

    static Truncation with_defaults(int N_max, int n_max);
    void validate() const;
};

struct OperatorMatrix {
    Eigen::MatrixXd entries;
    Grade grade = Grade::even;
    std::string tag;

    Eigen::Index dim() const { return entries.rows(); }
};

OperatorMatrix operator+(const OperatorMatrix& x, const OperatorMatrix& y);
OperatorMatrix operator-(const OperatorMatrix& x, const OperatorMatrix& y);
OperatorMatrix operator*(double s, const OperatorMatrix& x);
// operator product; grade adds mod 2
OperatorMatrix operator*(const OperatorMatrix& x, const OperatorMatrix& y);
OperatorMatrix identity_like(const OperatorMatrix& x, double s = 1.0);

/// Commutator unless both arguments are odd, then anticommutator.
OperatorMatrix graded_bracket(const OperatorMatrix& x, const OperatorMatrix& y);

/// Truncated orthonormal basis, grids and cached samples for one model.
/// Basis order: n ascending, then N ascending, then sector
/// (zero, minus, plus, two) with minus/two omitted at n = 0.
class Realization {
public:
    Realization(const ModelParams& params, const Truncation& trunc);

    const ModelParams& params() const { return params_; }
    const Truncation& trunc() const { return trunc_; }
    const std::vector<BasisIndex>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }
    const SuperWavefunction& state(std::size_t i) const { return states_[i]; }
    const GridPtr& grid(int n) const { return grids_.at(n); }
    int index_of(const BasisIndex& idx) const;

    /// Indices whose images under `depth` successive generators stay
    /// inside the truncation: N <= N_max - depth (n is conserved).
    std::vector<int> interior(int depth) const;

    // basis state i sampled on the grid of block n
    const SampledState& sampled(std::size_t i, int n) const { return samples_[n][i]; }
    SampledState image(GeneratorId gen, std::size_t i) const;

    OperatorMatrix build(GeneratorId gen) const;         // OpenMP over columns
    OperatorMatrix build_serial(GeneratorId gen) const;  // reference
    Eigen::MatrixXd gram() const;

private:
    void build_column(const std::vector<std::vector<LocalOperator>>& fields, std::size_t j,
                      Eigen::MatrixXd& out) const;
    std::vector<std::vector<LocalOperator>> fields_for(GeneratorId gen) const;

    ModelParams params_;
    Truncation trunc_;
    std::vector<BasisIndex> basis_;
    std::vector<SuperWavefunction> states_;
    std::vector<GridPtr> grids_;
    std::vector<std::vector<StateJet>> jets_;         // state i on its own grid
    std::vector<std::vector<SampledState>> samples_;  // [n][i]
};

Eigen::MatrixXd restrict(const Eigen::MatrixXd& m, const std::vector<int>& rows, const std::vector<int>& cols);
double max_abs(const Eigen::MatrixXd& m);

enum class GeneratorSet { standard, chiral };
const char* to_string(GeneratorSet s);
GeneratorSet generator_set_from_string(const std::string& s);

/// The eight osp(2|2) generators of one realization, projected.
struct AlgebraMatrices {
    GeneratorSet set;
    OperatorMatrix K0, Kplus, Kminus, Y, Vplus, Vminus, Wplus, Wminus;

    static AlgebraMatrices build(const Realization& real, GeneratorSet set);
    const OperatorMatrix& by_name(const std::string& name) const;
    static const std::vector<std::string>& names();
};

struct RelationResult {
    std::string name;
    std::string generator_set;
    double residual_interior = 0.0;
    double residual_full = 0.0;
    int depth = 1;
};

struct RelationReport {
    std::vector<RelationResult> results;
    double max_interior() const;
};

RelationReport verify_relations(const AlgebraMatrices& alg, const Realization& real);
RelationReport verify_relations(const Realization& real, GeneratorSet set);

struct SusyReport {
    GeneratorSet set;
    double anticommutator = 0.0;  // {Q, Q+} - H
    double commutator_q = 0.0;    // [H, Q]
    double commutator_qdag = 0.0; // [H, Q+]
    double nilpotent_q = 0.0;     // Q^2
    double nilpotent_qdag = 0.0;  // (Q+)^2
    double max() const;
};

/// SUSY identities checked column-wise on `sample` (indices into the
/// basis, each required to lie in the depth-1 interior).
SusyReport susy_check(const Realization& real, GeneratorSet set, const std::vector<int>& sample);

void to_json(nlohmann::json& j, const RelationResult& r);
void to_json(nlohmann::json& j, const RelationReport& r);
void to_json(nlohmann::json& j, const SusyReport& r);

}  // namespace ttw

#endif
