#ifndef TTW_CLI_HPP
#define TTW_CLI_HPP

#include "ttw/opmatrix.hpp"
#include "ttw/repanalysis.hpp"

#include "json.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace ttw::cli {

struct RunConfig {
    ModelParams params;
    Truncation trunc;
    std::map<std::string, double> tolerances;
    std::string out;  // empty: standard output
    std::string format = "json";
    bool explicit_quad_radial = false;
    bool explicit_quad_angular = false;

    double tol(const std::string& name) const;
    void validate() const;
};

const std::map<std::string, double>& default_tolerances();
RunConfig default_config();

// Overlay a JSON config object on `base`.  Unknown keys throw ConfigError.
// Quadrature sizes follow N_max/n_max unless given explicitly.
RunConfig apply_config(const nlohmann::json& j, RunConfig base);

struct Check {
    std::string name;
    std::string generator_set;  // "standard", "chiral" or "none"
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<Check> checks;
    nlohmann::json body;
    bool passed() const;
    std::vector<std::string> failing() const;
};

VerifyReport verify(const RunConfig& cfg, const std::vector<GeneratorSet>& sets);

struct SpectrumRow {
    int N, n;
    double energy, tau, q;
    double qhat_plus, qhat_minus;
};
std::vector<SpectrumRow> spectrum(const RunConfig& cfg);

struct BasisDump {
    std::vector<std::array<double, 6>> rows;  // r, phi, c0..c3
    double trapezoid_norm = 0.0;
    double r_max = 0.0;
};
BasisDump basis_dump(const ModelParams& p, const BasisIndex& idx, int grid);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ttw::cli

#endif
