#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <string>

namespace hpart {

/// Objective returning f(x); writes the gradient when @p grad is non-null.
/// Non-finite values mark infeasible points and make the line search back off.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

struct BfgsOptions {
    std::size_t max_iterations = 2000;
    /// Stop once |f_k - f_{k-1}| <= f_tol * (1 + |f_k|) on two consecutive iterations.
    double f_tol = 1e-8;
    /// Stop once the gradient's max-norm falls below this.
    double g_tol = 1e-9;
};

struct BfgsResult {
    Eigen::VectorXd x;
    double f = 0.0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
    std::string message;
};

/// Quasi-Newton minimization with an inverse-Hessian BFGS update and a
/// backtracking Armijo line search.
[[nodiscard]] BfgsResult minimize_bfgs(const Objective& f, Eigen::VectorXd x0, const BfgsOptions& options = {});

}  // namespace hpart
