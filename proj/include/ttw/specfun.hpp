#ifndef TTW_SPECFUN_HPP
#define TTW_SPECFUN_HPP

#include <stdexcept>
#include <vector>

namespace ttw {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RuleKind { laguerre, jacobi };

// Gauss rule for  int x^alpha e^-x f  (laguerre, on (0,inf))  or
// int (1-x)^alpha (1+x)^beta f  (jacobi, on (-1,1)).
struct QuadratureRule {
    RuleKind kind;
    double alpha = 0.0;
    double beta = 0.0;            // unused for laguerre
    std::vector<double> nodes;    // strictly increasing
    std::vector<double> weights;  // all positive

    std::size_t size() const { return nodes.size(); }

    template <class F>
    double integrate(F&& f) const
    {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

/// Generalized Laguerre polynomial L_N^(alpha)(x), or its first/second
/// derivative (order 1/2) via d/dx L_N^(a) = -L_{N-1}^(a+1).
double laguerre_eval(int N, double alpha, double x, int order = 0);

/// Jacobi polynomial P_n^(alpha,beta)(x), or its first/second derivative via
/// d/dx P_n^(a,b) = (n+a+b+1)/2 P_{n-1}^(a+1,b+1).
double jacobi_eval(int n, double alpha, double beta, double x, int order = 0);

QuadratureRule gauss_laguerre_rule(int m, double alpha);
QuadratureRule gauss_jacobi_rule(int m, double alpha, double beta);

// log of 2^(a+b+1) B(a+1, b+1), the total mass of the Jacobi weight
double log_jacobi_mass(double alpha, double beta);

}  // namespace ttw

#endif
