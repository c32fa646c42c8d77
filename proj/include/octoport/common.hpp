#ifndef OCTOPORT_COMMON_HPP
#define OCTOPORT_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace octoport {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Invalid dimensions, mode ids, malformed specs.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested accuracy not representable at the given cutoff.
struct TruncationError : std::runtime_error {
    double deficit;
    TruncationError(const std::string& msg, double d)
        : std::runtime_error(msg), deficit(d) {}
};

// A quadrature or iteration failed to reach its tolerance.
struct ToleranceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Resource limits (memory estimate, branch count) exceeded.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_unitary(const Matrix& m, double tol = 1e-10) {
    Matrix g = m.adjoint() * m;
    g.diagonal().array() -= 1.0;
    return g.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace octoport

#endif
