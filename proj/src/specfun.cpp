#include "ttw/specfun.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace ttw {

namespace {

void check_order(int order)
{
    if (order < 0 || order > 2)
        throw DomainError("derivative order must be 0, 1 or 2");
}

double laguerre_value(int N, double alpha, double x)
{
    if (N < 0) return 0.0;
    if (N == 0) return 1.0;
    double pm1 = 1.0;
    double p = 1.0 + alpha - x;
    for (int j = 1; j < N; ++j) {
        const double next = ((2 * j + 1 + alpha - x) * p - (j + alpha) * pm1) / (j + 1);
        pm1 = p;
        p = next;
    }
    return p;
}

double jacobi_value(int n, double a, double b, double x)
{
    if (n < 0) return 0.0;
    if (n == 0) return 1.0;
    double pm1 = 1.0;
    double p = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    for (int j = 1; j < n; ++j) {
        const double s = 2.0 * j + a + b;
        const double c1 = 2.0 * (j + 1) * (j + a + b + 1) * s;
        const double c2 = (s + 1.0) * ((s + 2.0) * s * x + a * a - b * b);
        const double c3 = 2.0 * (j + a) * (j + b) * (s + 2.0);
        const double next = (c2 * p - c3 * pm1) / c1;
        pm1 = p;
        p = next;
    }
    return p;
}

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights are
// mass * (first eigenvector component)^2.
void golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double log_mass,
                  QuadratureRule& rule)
{
    const Eigen::Index m = diag.size();
    rule.nodes.resize(m);
    rule.weights.resize(m);
    if (m == 1) {
        rule.nodes[0] = diag[0];
        rule.weights[0] = std::exp(log_mass);
        return;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw NumericError("tridiagonal eigen-solve failed for Gauss rule");
    for (Eigen::Index i = 0; i < m; ++i) {
        const double v0 = solver.eigenvectors()(0, i);
        rule.nodes[i] = solver.eigenvalues()[i];
        rule.weights[i] = std::exp(log_mass + 2.0 * std::log(std::abs(v0)));
    }
}

}  // namespace

double laguerre_eval(int N, double alpha, double x, int order)
{
    if (N < 0) throw DomainError("laguerre_eval: N must be nonnegative");
    if (!(alpha > -1.0)) throw DomainError("laguerre_eval: alpha must exceed -1");
    check_order(order);
    switch (order) {
    case 0: return laguerre_value(N, alpha, x);
    case 1: return -laguerre_value(N - 1, alpha + 1.0, x);
    default: return laguerre_value(N - 2, alpha + 2.0, x);
    }
}

double jacobi_eval(int n, double alpha, double beta, double x, int order)
{
    if (n < 0) throw DomainError("jacobi_eval: n must be nonnegative");
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw DomainError("jacobi_eval: alpha and beta must exceed -1");
    check_order(order);
    switch (order) {
    case 0: return jacobi_value(n, alpha, beta, x);
    case 1: return 0.5 * (n + alpha + beta + 1.0) * jacobi_value(n - 1, alpha + 1.0, beta + 1.0, x);
    default:
        return 0.25 * (n + alpha + beta + 1.0) * (n + alpha + beta + 2.0) *
               jacobi_value(n - 2, alpha + 2.0, beta + 2.0, x);
    }
}

double log_jacobi_mass(double alpha, double beta)
{
    return (alpha + beta + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
           std::lgamma(alpha + beta + 2.0);
}

QuadratureRule gauss_laguerre_rule(int m, double alpha)
{
    if (m < 1) throw DomainError("gauss_laguerre_rule: need at least one node");
    if (!(alpha > -1.0)) throw DomainError("gauss_laguerre_rule: alpha must exceed -1");
    QuadratureRule rule{RuleKind::laguerre, alpha, 0.0, {}, {}};
    Eigen::VectorXd diag(m), off(m > 1 ? m - 1 : 0);
    for (int j = 0; j < m; ++j) diag[j] = 2.0 * j + alpha + 1.0;
    for (int j = 1; j < m; ++j) off[j - 1] = std::sqrt(j * (j + alpha));
    golub_welsch(diag, off, std::lgamma(alpha + 1.0), rule);
    return rule;
}

QuadratureRule gauss_jacobi_rule(int m, double alpha, double beta)
{
    if (m < 1) throw DomainError("gauss_jacobi_rule: need at least one node");
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw DomainError("gauss_jacobi_rule: alpha and beta must exceed -1");
    QuadratureRule rule{RuleKind::jacobi, alpha, beta, {}, {}};
    const double ab = alpha + beta;
    Eigen::VectorXd diag(m), off(m > 1 ? m - 1 : 0);
    for (int j = 0; j < m; ++j) {
        if (j == 0) {
            diag[j] = (beta - alpha) / (ab + 2.0);
        } else {
            const double s = 2.0 * j + ab;
            diag[j] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
        }
    }
    for (int j = 1; j < m; ++j) {
        const double s = 2.0 * j + ab;
        double v;
        if (j == 1)
            v = 4.0 * (1.0 + alpha) * (1.0 + beta) / (s * s * (s + 1.0));
        else
            v = 4.0 * j * (j + alpha) * (j + beta) * (j + ab) / (s * s * (s + 1.0) * (s - 1.0));
        off[j - 1] = std::sqrt(v);
    }
    golub_welsch(diag, off, log_jacobi_mass(alpha, beta), rule);
    return rule;
}

}  // namespace ttw
