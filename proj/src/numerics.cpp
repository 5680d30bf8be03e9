// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "irsma/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace irsma
{

double lambert_w_m1(double x)
{
    const double branch = -1.0 / std::numbers::e;
    if (!(x < 0.0) || std::isnan(x) || x < branch - 4.0 * std::numeric_limits<double>::epsilon())
        throw std::domain_error("lambert_w_m1: argument must lie in [-1/e, 0).");
    if (x <= branch)
        return -1.0;

    // Initial guess: branch-point series near -1/e, asymptotic log expansion elsewhere
    double w;
    if (x < -0.25)
    {
        const double p = -std::sqrt(2.0 * (1.0 + std::numbers::e * x));
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    }
    else
    {
        const double l1 = std::log(-x);
        const double l2 = std::log(-l1);
        w = l1 - l2 + l2 / l1;
    }
    if (w > -1.0)
        w = -1.0;

    // Halley iterations on f(w) = w e^w - x
    bool done = false;
    for (int it = 0; it < 64 && !done; ++it)
    {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        if (f == 0.0)
            break;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0)
            break;
        const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        const double dw = f / denom;
        if (!std::isfinite(dw))
            break;
        double wn = w - dw;
        if (wn > -1.0)
            wn = 0.5 * (w - 1.0);
        done = std::abs(wn - w) <= 1e-14 * (1.0 + std::abs(wn));
        w = wn;
    }

    const double residual = std::abs(w * std::exp(w) - x);
    if (std::isfinite(w) && w <= -1.0 && residual <= 1e-13 * std::abs(x))
        return w;

    // w e^w is decreasing on (-inf, -1]
    return bisect([x](double v) { return v * std::exp(v) - x; }, -800.0, -1.0, 1e-15);
}

double bisect(const std::function<double(double)> &f, double lo, double hi, double tol)
{
    if (!(lo <= hi))
        throw std::invalid_argument("bisect: lower bound exceeds upper bound.");
    if (!(tol > 0.0))
        throw std::invalid_argument("bisect: tolerance must be positive.");
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("bisect: no sign change on the bracket.");
    while (hi - lo > tol)
    {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double fm = f(mid);
        if (fm == 0.0)
            return mid;
        if ((fm > 0.0) == (flo > 0.0))
        {
            lo = mid;
            flo = fm;
        }
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double perspective_log2(double t, double s)
{
    if (t <= 0.0)
        return 0.0;
    return t * std::log1p(s / t) / std::numbers::ln2;
}

std::string to_string(SolveStatus s)
{
    switch (s)
    {
    case SolveStatus::Converged:
        return "converged";
    case SolveStatus::Infeasible:
        return "infeasible";
    case SolveStatus::MaxIterations:
        return "max_iterations";
    }
    return "unknown";
}

double concave_value(const ConcaveConstraint &c, const Eigen::VectorXd &x)
{
    double g = -c.rhs;
    for (const auto &term : c.terms)
    {
        double s = 0.0;
        for (const auto &[j, a] : term.s)
            s += a * x[j];
        g += term.weight * perspective_log2(x[term.t_var], s);
    }
    for (const auto &[j, a] : c.linear)
        g -= a * x[j];
    return g;
}

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

double linear_slack(const LinearConstraint &c, const Eigen::VectorXd &x)
{
    double v = c.b;
    for (const auto &[j, a] : c.a)
        v -= a * x[j];
    return v;
}

class BarrierEngine
{
public:
    explicit BarrierEngine(const ConvexProgram &p) : p_(p), n_(p.variables)
    {
        m_ = static_cast<int>(p.concave.size() + p.linear.size()) + n_;
    }

    int barrier_terms() const { return m_; }

    // t c.x - sum log(slacks); +inf outside the domain
    double value(const Eigen::VectorXd &x, double t) const
    {
        double f = t * p_.cost.dot(x);
        for (int j = 0; j < n_; ++j)
        {
            if (!(x[j] > 0.0))
                return inf;
            f -= std::log(x[j]);
        }
        for (const auto &c : p_.concave)
        {
            const double g = concave_value(c, x);
            if (!(g > 0.0))
                return inf;
            f -= std::log(g);
        }
        for (const auto &c : p_.linear)
        {
            const double s = linear_slack(c, x);
            if (!(s > 0.0))
                return inf;
            f -= std::log(s);
        }
        return std::isfinite(f) ? f : inf;
    }

    void derivatives(const Eigen::VectorXd &x, double t, Eigen::VectorXd &grad, Eigen::MatrixXd &hess) const
    {
        grad = t * p_.cost;
        hess.setZero(n_, n_);
        for (int j = 0; j < n_; ++j)
        {
            grad[j] -= 1.0 / x[j];
            hess(j, j) += 1.0 / (x[j] * x[j]);
        }

        Eigen::VectorXd gg(n_), v(n_);
        for (const auto &c : p_.concave)
        {
            const double g = concave_value(c, x);
            gg.setZero();
            for (const auto &[j, a] : c.linear)
                gg[j] -= a;
            // curvature pieces -h v v^T / g, collected after g is known
            for (const auto &term : c.terms)
            {
                const double tt = x[term.t_var];
                double s = 0.0;
                for (const auto &[j, a] : term.s)
                    s += a * x[j];
                const double u = s / tt;
                const double phi_t = (std::log1p(u) - u / (1.0 + u)) / std::numbers::ln2;
                const double phi_s = 1.0 / ((1.0 + u) * std::numbers::ln2);
                gg[term.t_var] += term.weight * phi_t;
                for (const auto &[j, a] : term.s)
                    gg[j] += term.weight * phi_s * a;

                const double h = term.weight / (tt * (1.0 + u) * (1.0 + u) * std::numbers::ln2);
                v.setZero();
                v[term.t_var] += u;
                for (const auto &[j, a] : term.s)
                    v[j] -= a;
                hess.noalias() += (h / g) * v * v.transpose();
            }
            grad -= gg / g;
            hess.noalias() += (gg / g) * (gg / g).transpose();
        }
        for (const auto &c : p_.linear)
        {
            const double s = linear_slack(c, x);
            for (const auto &[j, a] : c.a)
            {
                grad[j] += a / s;
                for (const auto &[l, b] : c.a)
                    hess(j, l) += a * b / (s * s);
            }
        }
    }

    double max_violation(const Eigen::VectorXd &x) const
    {
        double worst = -inf;
        for (int j = 0; j < n_; ++j)
            worst = std::max(worst, -x[j]);
        for (const auto &c : p_.concave)
            worst = std::max(worst, -concave_value(c, x));
        for (const auto &c : p_.linear)
            worst = std::max(worst, -linear_slack(c, x));
        return worst;
    }

    // Newton centering at fixed t. Returns false if no further progress is possible.
    // stop(x) is polled after each accepted step.
    template <typename Stop>
    bool center(Eigen::VectorXd &x, double t, const SolverSettings &settings, int &budget, double &decrement,
                Stop &&stop) const
    {
        Eigen::VectorXd grad(n_);
        Eigen::MatrixXd hess(n_, n_);
        double f = value(x, t);
        double previous = std::numeric_limits<double>::infinity();
        for (int it = 0; it < settings.max_newton_per_center; ++it)
        {
            if (budget <= 0)
                return false;
            derivatives(x, t, grad, hess);
            Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
            Eigen::VectorXd dx = ldlt.solve(-grad);
            if (ldlt.info() != Eigen::Success || !dx.allFinite())
            {
                const double reg = 1e-12 * std::max(1.0, hess.diagonal().cwiseAbs().maxCoeff());
                hess.diagonal().array() += reg;
                dx = hess.ldlt().solve(-grad);
                if (!dx.allFinite())
                    return false;
            }
            const double slope = grad.dot(dx);
            decrement = -slope;
            // Near the optimum the decrement settles at a roundoff floor instead of shrinking quadratically
            if (decrement <= 1e-10 || slope >= 0.0 || (decrement < 1e-6 && decrement > 0.25 * previous))
                return true;
            previous = decrement;

            // Backtracking: stay in the domain, then sufficient decrease with a roundoff allowance
            double alpha = 1.0;
            double fn = inf;
            Eigen::VectorXd xn;
            bool accepted = false;
            for (int ls = 0; ls < 80; ++ls)
            {
                xn = x + alpha * dx;
                fn = value(xn, t);
                if (fn <= f + 0.01 * alpha * slope + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(f))
                {
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            // Full steps that barely reduce the decrement indicate a poor quadratic model; try longer ones
            if (accepted && alpha == 1.0 && decrement > 1e-3)
            {
                for (int ex = 0; ex < 12; ++ex)
                {
                    const Eigen::VectorXd xe = x + 2.0 * alpha * dx;
                    const double fe = value(xe, t);
                    if (!(fe < fn))
                        break;
                    alpha *= 2.0;
                    xn = xe;
                    fn = fe;
                }
            }
            --budget;
            if (!accepted)
                return true;
            x = xn;
            f = fn;
            if (stop(x))
                return true;
        }
        return true;
    }

    double kkt_residual(const Eigen::VectorXd &x, double t) const
    {
        Eigen::VectorXd grad(n_);
        Eigen::MatrixXd hess(n_, n_);
        derivatives(x, t, grad, hess);
        const double scale = std::max(1e-300, t * p_.cost.cwiseAbs().maxCoeff());
        // Newton-decrement-weighted residual is scale free; report the plain infinity norm relative to t|c|
        return grad.cwiseAbs().maxCoeff() / scale;
    }

private:
    const ConvexProgram &p_;
    int n_ = 0;
    int m_ = 0;
};

struct NeverStop
{
    bool operator()(const Eigen::VectorXd &) const { return false; }
};

// Runs the barrier path from a strictly feasible x; returns the status.
SolveStatus barrier_path(const BarrierEngine &engine, const ConvexProgram &p, Eigen::VectorXd &x,
                         const SolverSettings &settings, int &budget, BarrierReport &report,
                         const std::function<bool(const Eigen::VectorXd &)> &stop)
{
    const int m = engine.barrier_terms();
    const double obj0 = std::abs(p.cost.dot(x));
    double t = 10.0 * static_cast<double>(m) / std::max(obj0, 1e-12);
    double decrement = 0.0;
    for (int outer = 0; outer < 400; ++outer)
    {
        bool stopped = false;
        auto poll = [&](const Eigen::VectorXd &xx)
        {
            stopped = stop && stop(xx);
            return stopped;
        };
        const bool ok = engine.center(x, t, settings, budget, decrement, poll);
        report.objective_trace.push_back(p.cost.dot(x));
        report.duality_gap = m / t;
        report.kkt_residual = engine.kkt_residual(x, t);
        report.concave_multipliers.clear();
        for (const auto &c : p.concave)
            report.concave_multipliers.push_back(1.0 / (t * std::max(concave_value(c, x), 1e-300)));
        if (stopped)
            return SolveStatus::Converged;
        if (!ok || budget <= 0)
            return SolveStatus::MaxIterations;
        if (m / t <= settings.gap_tol * std::max(std::abs(p.cost.dot(x)), 1e-12))
            return SolveStatus::Converged;
        t *= settings.barrier_growth;
    }
    return SolveStatus::MaxIterations;
}

} // namespace

BarrierResult solve_convex_program(const ConvexProgram &program, const Eigen::VectorXd &x0,
                                   const SolverSettings &settings)
{
    const int n = program.variables;
    if (program.cost.size() != n || x0.size() != n)
        throw std::invalid_argument("solve_convex_program: dimension mismatch.");
    if (!(x0.array() > 0.0).all())
        throw std::invalid_argument("solve_convex_program: starting point must be positive.");
    auto check_index = [n](int j)
    {
        if (j < 0 || j >= n)
            throw std::invalid_argument("solve_convex_program: variable index out of range.");
    };
    for (const auto &c : program.concave)
    {
        for (const auto &term : c.terms)
        {
            check_index(term.t_var);
            if (!(term.weight > 0.0))
                throw std::invalid_argument("solve_convex_program: perspective weights must be positive.");
            for (const auto &[j, a] : term.s)
            {
                check_index(j);
                if (a < 0.0)
                    throw std::invalid_argument("solve_convex_program: perspective coefficients must be nonnegative.");
            }
        }
        for (const auto &[j, a] : c.linear)
            check_index(j);
    }
    for (const auto &c : program.linear)
    {
        for (const auto &[j, a] : c.a)
            check_index(j);
    }

    BarrierResult result;
    BarrierReport &report = result.report;
    BarrierEngine engine(program);
    int budget = settings.max_iterations;

    Eigen::VectorXd x = x0;
    if (engine.max_violation(x) >= 0.0)
    {
        // Phase I: min r s.t. g(x) + r >= 0, a.x - b <= r, with r = r' - 1 and r' > 0
        ConvexProgram aug;
        aug.variables = n + 1;
        aug.cost = Eigen::VectorXd::Zero(n + 1);
        aug.cost[n] = 1.0;
        aug.concave = program.concave;
        for (auto &c : aug.concave)
        {
            c.linear.emplace_back(n, -1.0);
            c.rhs += 1.0;
        }
        aug.linear = program.linear;
        for (auto &c : aug.linear)
        {
            c.a.emplace_back(n, -1.0);
            c.b -= 1.0;
        }
        double worst = 0.0;
        for (const auto &c : program.concave)
            worst = std::max(worst, -concave_value(c, x));
        for (const auto &c : program.linear)
            worst = std::max(worst, -linear_slack(c, x));
        Eigen::VectorXd y(n + 1);
        y.head(n) = x;
        y[n] = worst + 2.0;

        BarrierEngine aug_engine(aug);
        BarrierReport phase1;
        const double margin = 1e-3;
        auto stop = [&](const Eigen::VectorXd &yy)
        { return yy[n] - 1.0 < -margin && engine.max_violation(yy.head(n)) < 0.0; };
        int before = budget;
        SolverSettings s1 = settings;
        s1.gap_tol = 1e-12;
        barrier_path(aug_engine, aug, y, s1, budget, phase1, stop);
        report.phase1_iterations = before - budget;
        report.phase1_value = y[n] - 1.0;
        x = y.head(n);
        if (engine.max_violation(x) >= 0.0)
        {
            report.status = SolveStatus::Infeasible;
            report.max_violation = engine.max_violation(x);
            result.x = x;
            report.newton_iterations = settings.max_iterations - budget;
            return result;
        }
    }
    else
        report.phase1_value = engine.max_violation(x);

    report.status = barrier_path(engine, program, x, settings, budget, report, nullptr);
    report.newton_iterations = settings.max_iterations - budget;
    report.max_violation = engine.max_violation(x);
    result.x = x;
    return result;
}

} // namespace irsma
