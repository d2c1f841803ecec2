#include "hpart/optimizer.hpp"

#include <cmath>
#include <limits>

namespace hpart {

BfgsResult minimize_bfgs(const Objective& f, Eigen::VectorXd x0, const BfgsOptions& options) {
    const Eigen::Index n = x0.size();
    BfgsResult res;
    res.x = std::move(x0);

    Eigen::VectorXd g(n);
    res.f = f(res.x, &g);
    res.evaluations = 1;
    if (!std::isfinite(res.f) || !g.allFinite()) {
        res.message = "objective is not finite at the starting point";
        return res;
    }

    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
    bool fresh_hessian = true;
    int small_changes = 0;

    Eigen::VectorXd x_new(n);
    Eigen::VectorXd g_new(n);

    for (res.iterations = 0; res.iterations < options.max_iterations; ++res.iterations) {
        if (g.lpNorm<Eigen::Infinity>() <= options.g_tol) {
            res.converged = true;
            res.message = "gradient tolerance reached";
            return res;
        }

        Eigen::VectorXd dir = -h * g;
        double slope = g.dot(dir);
        if (!(slope < 0.0)) {
            h.setIdentity();
            fresh_hessian = true;
            dir = -g;
            slope = -g.squaredNorm();
        }

        // First step on a fresh Hessian is capped so the trial point stays in a sane range.
        double step = 1.0;
        if (fresh_hessian) step = std::min(1.0, 1.0 / std::max(1.0, dir.lpNorm<Eigen::Infinity>()));

        constexpr double kArmijo = 1e-4;
        double f_new = std::numeric_limits<double>::infinity();
        bool accepted = false;
        for (int tries = 0; tries < 60; ++tries) {
            x_new = res.x + step * dir;
            f_new = f(x_new, &g_new);
            ++res.evaluations;
            if (std::isfinite(f_new) && g_new.allFinite() && f_new <= res.f + kArmijo * step * slope) {
                accepted = true;
                break;
            }
            step *= std::isfinite(f_new) ? 0.5 : 0.1;
        }

        if (!accepted) {
            if (!fresh_hessian) {
                h.setIdentity();
                fresh_hessian = true;
                continue;
            }
            res.converged = g.lpNorm<Eigen::Infinity>() <= 1e-5 * (1.0 + std::abs(res.f));
            res.message = "line search failed";
            return res;
        }

        const Eigen::VectorXd s = x_new - res.x;
        const Eigen::VectorXd y = g_new - g;
        const double change = std::abs(res.f - f_new);
        res.x = x_new;
        g = g_new;
        const double f_old = res.f;
        res.f = f_new;

        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            if (fresh_hessian) {
                h = (sy / y.squaredNorm()) * Eigen::MatrixXd::Identity(n, n);
                fresh_hessian = false;
            }
            const double rho = 1.0 / sy;
            const Eigen::VectorXd hy = h * y;
            h += ((sy + y.dot(hy)) * rho * rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
        }

        small_changes = change <= options.f_tol * (1.0 + std::abs(f_old)) ? small_changes + 1 : 0;
        if (small_changes >= 2) {
            res.converged = true;
            res.message = "objective change below tolerance";
            ++res.iterations;
            return res;
        }
    }
    res.message = "maximum iterations reached";
    return res;
}

}  // namespace hpart
