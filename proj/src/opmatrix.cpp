#include "ttw/opmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ttw {

Truncation Truncation::with_defaults(int N_max, int n_max)
{
    return {N_max, n_max, 2 * (N_max + n_max) + 8, 2 * n_max + 8};
}

void Truncation::validate() const
{
    if (N_max < 1) throw ConfigError("invariant violated: N_max >= 1");
    if (n_max < 1) throw ConfigError("invariant violated: n_max >= 1");
    if (quad_radial < 2 * (N_max + n_max) + 8)
        throw ConfigError("invariant violated: quad_radial >= 2(N_max + n_max) + 8");
    if (quad_angular < 2 * n_max + 8) throw ConfigError("invariant violated: quad_angular >= 2 n_max + 8");
}

namespace {

void check_dims(const OperatorMatrix& x, const OperatorMatrix& y)
{
    if (x.entries.rows() != y.entries.rows() || x.entries.cols() != y.entries.cols())
        throw std::invalid_argument("operator matrices have different dimensions");
}

}  // namespace

OperatorMatrix operator+(const OperatorMatrix& x, const OperatorMatrix& y)
{
    check_dims(x, y);
    return {x.entries + y.entries, x.grade, "(" + x.tag + "+" + y.tag + ")"};
}

OperatorMatrix operator-(const OperatorMatrix& x, const OperatorMatrix& y)
{
    check_dims(x, y);
    return {x.entries - y.entries, x.grade, "(" + x.tag + "-" + y.tag + ")"};
}

OperatorMatrix operator*(double s, const OperatorMatrix& x) { return {s * x.entries, x.grade, x.tag}; }

OperatorMatrix operator*(const OperatorMatrix& x, const OperatorMatrix& y)
{
    check_dims(x, y);
    return {x.entries * y.entries, x.grade ^ y.grade, x.tag + "*" + y.tag};
}

OperatorMatrix identity_like(const OperatorMatrix& x, double s)
{
    return {s * Eigen::MatrixXd::Identity(x.dim(), x.dim()), Grade::even, "1"};
}

OperatorMatrix graded_bracket(const OperatorMatrix& x, const OperatorMatrix& y)
{
    check_dims(x, y);
    const bool anti = x.grade == Grade::odd && y.grade == Grade::odd;
    const Eigen::MatrixXd xy = x.entries * y.entries;
    const Eigen::MatrixXd yx = y.entries * x.entries;
    return {anti ? Eigen::MatrixXd(xy + yx) : Eigen::MatrixXd(xy - yx), x.grade ^ y.grade,
            (anti ? "{" : "[") + x.tag + "," + y.tag + (anti ? "}" : "]")};
}

Realization::Realization(const ModelParams& params, const Truncation& trunc) : params_(params), trunc_(trunc)
{
    params_.validate();
    trunc_.validate();
    for (int n = 0; n <= trunc_.n_max; ++n) {
        for (int N = 0; N <= trunc_.N_max; ++N) {
            for (Sector s : {Sector::zero_fermion, Sector::one_fermion_minus, Sector::one_fermion_plus,
                             Sector::two_fermion}) {
                const BasisIndex idx{s, n, N};
                if (idx.valid()) basis_.push_back(idx);
            }
        }
        grids_.push_back(make_grid(params_, n, trunc_.quad_radial, trunc_.quad_angular));
    }
    for (const auto& idx : basis_) states_.push_back(basis_state(params_, idx));

    jets_.resize(basis_.size());
    samples_.assign(grids_.size(), std::vector<SampledState>(basis_.size()));
    const auto count = static_cast<long>(basis_.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        jets_[i] = sample_jets(states_[i], *grids_[basis_[i].n]);
        for (std::size_t n = 0; n < grids_.size(); ++n) samples_[n][i] = sample(states_[i], grids_[n]);
    }
}

int Realization::index_of(const BasisIndex& idx) const
{
    const auto it = std::find(basis_.begin(), basis_.end(), idx);
    return it == basis_.end() ? -1 : static_cast<int>(it - basis_.begin());
}

std::vector<int> Realization::interior(int depth) const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].N <= trunc_.N_max - depth) out.push_back(static_cast<int>(i));
    return out;
}

SampledState Realization::image(GeneratorId gen, std::size_t i) const
{
    const GridPtr& g = grids_[basis_[i].n];
    return apply(operator_field(gen, *g), jets_[i], g);
}

std::vector<std::vector<LocalOperator>> Realization::fields_for(GeneratorId gen) const
{
    std::vector<std::vector<LocalOperator>> fields;
    for (const auto& g : grids_) fields.push_back(operator_field(gen, *g));
    return fields;
}

void Realization::build_column(const std::vector<std::vector<LocalOperator>>& fields, std::size_t j,
                               Eigen::MatrixXd& out) const
{
    const int n = basis_[j].n;
    const SampledState img = apply(fields[n], jets_[j], grids_[n]);
    for (std::size_t i = 0; i < basis_.size(); ++i) out(i, j) = inner(samples_[n][i], img);
}

OperatorMatrix Realization::build(GeneratorId gen) const
{
    const auto fields = fields_for(gen);
    Eigen::MatrixXd m(dim(), dim());
    const auto count = static_cast<long>(dim());
#pragma omp parallel for schedule(dynamic)
    for (long j = 0; j < count; ++j) build_column(fields, static_cast<std::size_t>(j), m);
    return {m, grade(gen), to_string(gen)};
}

OperatorMatrix Realization::build_serial(GeneratorId gen) const
{
    const auto fields = fields_for(gen);
    Eigen::MatrixXd m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) build_column(fields, j, m);
    return {m, grade(gen), to_string(gen)};
}

Eigen::MatrixXd Realization::gram() const
{
    Eigen::MatrixXd g(dim(), dim());
    const auto count = static_cast<long>(dim());
#pragma omp parallel for schedule(dynamic)
    for (long j = 0; j < count; ++j) {
        const int n = basis_[j].n;
        for (std::size_t i = 0; i < dim(); ++i) g(i, j) = inner(samples_[n][i], samples_[n][j]);
    }
    return g;
}

Eigen::MatrixXd restrict(const Eigen::MatrixXd& m, const std::vector<int>& rows, const std::vector<int>& cols)
{
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
    return out;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

const char* to_string(GeneratorSet s) { return s == GeneratorSet::standard ? "standard" : "chiral"; }

GeneratorSet generator_set_from_string(const std::string& s)
{
    if (s == "standard") return GeneratorSet::standard;
    if (s == "chiral") return GeneratorSet::chiral;
    throw ConfigError("unknown generator set '" + s + "'");
}

AlgebraMatrices AlgebraMatrices::build(const Realization& real, GeneratorSet set)
{
    const bool chiral = set == GeneratorSet::chiral;
    AlgebraMatrices m{set,
                      real.build(GeneratorId::K0),
                      real.build(GeneratorId::Kplus),
                      real.build(GeneratorId::Kminus),
                      real.build(chiral ? GeneratorId::Yhat : GeneratorId::Y),
                      real.build(chiral ? GeneratorId::Vhat_plus : GeneratorId::Vplus),
                      real.build(chiral ? GeneratorId::Vhat_minus : GeneratorId::Vminus),
                      real.build(chiral ? GeneratorId::What_plus : GeneratorId::Wplus),
                      real.build(chiral ? GeneratorId::What_minus : GeneratorId::Wminus)};
    return m;
}

const std::vector<std::string>& AlgebraMatrices::names()
{
    static const std::vector<std::string> n{"K0", "K+", "K-", "Y", "V+", "V-", "W+", "W-"};
    return n;
}

const OperatorMatrix& AlgebraMatrices::by_name(const std::string& name) const
{
    if (name == "K0") return K0;
    if (name == "K+") return Kplus;
    if (name == "K-") return Kminus;
    if (name == "Y") return Y;
    if (name == "V+") return Vplus;
    if (name == "V-") return Vminus;
    if (name == "W+") return Wplus;
    if (name == "W-") return Wminus;
    throw std::invalid_argument("unknown generator name " + name);
}

double RelationReport::max_interior() const
{
    double m = 0.0;
    for (const auto& r : results) m = std::max(m, r.residual_interior);
    return m;
}

namespace {

using Combination = std::vector<std::pair<double, std::string>>;

// Nonvanishing structure constants; every other pair brackets to zero.
const std::map<std::pair<std::string, std::string>, Combination>& structure_constants()
{
    static const std::map<std::pair<std::string, std::string>, Combination> table{
        {{"K0", "K+"}, {{1.0, "K+"}}},
        {{"K0", "K-"}, {{-1.0, "K-"}}},
        {{"K+", "K-"}, {{-2.0, "K0"}}},
        {{"K0", "V+"}, {{0.5, "V+"}}},
        {{"K0", "V-"}, {{-0.5, "V-"}}},
        {{"K0", "W+"}, {{0.5, "W+"}}},
        {{"K0", "W-"}, {{-0.5, "W-"}}},
        {{"K+", "V-"}, {{-1.0, "V+"}}},
        {{"K-", "V+"}, {{1.0, "V-"}}},
        {{"K+", "W-"}, {{-1.0, "W+"}}},
        {{"K-", "W+"}, {{1.0, "W-"}}},
        {{"Y", "V+"}, {{0.5, "V+"}}},
        {{"Y", "V-"}, {{0.5, "V-"}}},
        {{"Y", "W+"}, {{-0.5, "W+"}}},
        {{"Y", "W-"}, {{-0.5, "W-"}}},
        {{"V+", "W+"}, {{1.0, "K+"}}},
        {{"V-", "W-"}, {{1.0, "K-"}}},
        {{"V+", "W-"}, {{1.0, "K0"}, {-1.0, "Y"}}},
        {{"V-", "W+"}, {{1.0, "K0"}, {1.0, "Y"}}},
    };
    return table;
}

std::string display(const std::string& name, bool chiral)
{
    if (!chiral || name[0] == 'K') return name;
    return name.substr(0, 1) + "hat" + name.substr(1);
}

RelationResult residual_of(const std::string& name, const Eigen::MatrixXd& diff, const std::vector<int>& inner_idx,
                           GeneratorSet set)
{
    RelationResult r;
    r.name = name;
    r.generator_set = to_string(set);
    r.residual_interior = max_abs(restrict(diff, inner_idx, inner_idx));
    r.residual_full = max_abs(diff);
    r.depth = 1;
    return r;
}

}  // namespace

RelationReport verify_relations(const AlgebraMatrices& alg, const Realization& real)
{
    const bool chiral = alg.set == GeneratorSet::chiral;
    const std::vector<int> interior = real.interior(1);
    const auto& names = AlgebraMatrices::names();
    const auto& table = structure_constants();
    RelationReport report;

    for (std::size_t i = 0; i < names.size(); ++i) {
        for (std::size_t j = i; j < names.size(); ++j) {
            const OperatorMatrix& x = alg.by_name(names[i]);
            const OperatorMatrix& y = alg.by_name(names[j]);
            Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(x.dim(), x.dim());
            auto it = table.find({names[i], names[j]});
            if (it != table.end())
                for (const auto& [c, g] : it->second) expected += c * alg.by_name(g).entries;
            const OperatorMatrix br = graded_bracket(x, y);
            const bool anti = x.grade == Grade::odd && y.grade == Grade::odd;
            const std::string label = std::string(anti ? "{" : "[") + display(names[i], chiral) + "," +
                                      display(names[j], chiral) + (anti ? "}" : "]");
            report.results.push_back(residual_of(label, br.entries - expected, interior, alg.set));
        }
    }

    const std::vector<std::pair<std::string, std::string>> adjoints{
        {"K0", "K0"}, {"K+", "K-"}, {"Y", "Y"}, {"V+", "W-"}, {"V-", "W+"}};
    for (const auto& [x, y] : adjoints) {
        const Eigen::MatrixXd diff = alg.by_name(x).entries.transpose() - alg.by_name(y).entries;
        report.results.push_back(
            residual_of("herm " + display(x, chiral) + "^T=" + display(y, chiral), diff, interior, alg.set));
    }
    return report;
}

RelationReport verify_relations(const Realization& real, GeneratorSet set)
{
    return verify_relations(AlgebraMatrices::build(real, set), real);
}

double SusyReport::max() const
{
    return std::max({anticommutator, commutator_q, commutator_qdag, nilpotent_q, nilpotent_qdag});
}

SusyReport susy_check(const Realization& real, GeneratorSet set, const std::vector<int>& sample)
{
    if (sample.empty()) throw std::invalid_argument("susy_check: empty sample");
    const std::vector<int> interior = real.interior(1);
    for (int s : sample)
        if (std::find(interior.begin(), interior.end(), s) == interior.end())
            throw std::invalid_argument("susy_check: sample state outside the interior block");

    const bool chiral = set == GeneratorSet::chiral;
    const OperatorMatrix h = real.build(chiral ? GeneratorId::Hs_hat : GeneratorId::Hs);
    const OperatorMatrix q = real.build(chiral ? GeneratorId::Qhat : GeneratorId::Q);
    const OperatorMatrix qd = real.build(chiral ? GeneratorId::Qhat_dag : GeneratorId::Qdag);

    auto res = [&](const OperatorMatrix& m) { return max_abs(restrict(m.entries, interior, sample)); };
    SusyReport r;
    r.set = set;
    r.anticommutator = res(graded_bracket(q, qd) - h);
    r.commutator_q = res(graded_bracket(h, q));
    r.commutator_qdag = res(graded_bracket(h, qd));
    r.nilpotent_q = res(q * q);
    r.nilpotent_qdag = res(qd * qd);
    return r;
}

void to_json(nlohmann::json& j, const RelationResult& r)
{
    j = {{"relation", r.name},
         {"generator_set", r.generator_set},
         {"residual", r.residual_interior},
         {"residual_full_block", r.residual_full},
         {"block", "interior(depth=" + std::to_string(r.depth) + ")"}};
}

void to_json(nlohmann::json& j, const RelationReport& r)
{
    j = nlohmann::json::array();
    for (const auto& x : r.results) j.push_back(x);
}

void to_json(nlohmann::json& j, const SusyReport& r)
{
    j = {{"generator_set", to_string(r.set)},
         {"anticommutator_QQdag_minus_H", r.anticommutator},
         {"commutator_H_Q", r.commutator_q},
         {"commutator_H_Qdag", r.commutator_qdag},
         {"Q_squared", r.nilpotent_q},
         {"Qdag_squared", r.nilpotent_qdag}};
}

}  // namespace ttw
