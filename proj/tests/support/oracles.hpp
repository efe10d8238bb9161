#ifndef WDW_TESTS_ORACLES_HPP
#define WDW_TESTS_ORACLES_HPP

#include <array>
#include <cmath>
#include <functional>

// Independent cross-checks used by the test suite. Everything here is
// deliberately implemented with different numerics than the library code
// (dense RK4 on moment ODEs, central finite differences) so agreement is
// meaningful.

namespace oracle {

/** Second-moment matrix of a Gaussian state. */
struct Moments {
    double xx, xp, pp;
};

/** Integrates the covariance ODE for a (possibly inverted) harmonic
 * potential V = k x^2 / 2 with friction and momentum diffusion:
 *   d(xx)/dt = 2 xp
 *   d(xp)/dt = pp - k xx - 2 gamma xp
 *   d(pp)/dt = -2 k xp - 4 gamma pp + 2 D
 * Plain RK4 with n_steps fixed steps. */
inline Moments evolve_covariance(Moments m, double k, double gamma, double D,
                                 double t, int n_steps) {
    auto rhs = [&](const Moments& s) {
        return Moments{2.0 * s.xp,
                       s.pp - k * s.xx - 2.0 * gamma * s.xp,
                       -2.0 * k * s.xp - 4.0 * gamma * s.pp + 2.0 * D};
    };
    auto axpy = [](const Moments& a, double c, const Moments& b) {
        return Moments{a.xx + c * b.xx, a.xp + c * b.xp, a.pp + c * b.pp};
    };
    const double h = t / n_steps;
    for (int i = 0; i < n_steps; ++i) {
        const Moments k1 = rhs(m);
        const Moments k2 = rhs(axpy(m, 0.5 * h, k1));
        const Moments k3 = rhs(axpy(m, 0.5 * h, k2));
        const Moments k4 = rhs(axpy(m, h, k3));
        m.xx += h / 6.0 * (k1.xx + 2 * k2.xx + 2 * k3.xx + k4.xx);
        m.xp += h / 6.0 * (k1.xp + 2 * k2.xp + 2 * k3.xp + k4.xp);
        m.pp += h / 6.0 * (k1.pp + 2 * k2.pp + 2 * k3.pp + k4.pp);
    }
    return m;
}

/** Purity of a Gaussian state with covariance determinant det. */
inline double gaussian_purity(double det, double hbar) {
    return hbar / (2.0 * std::sqrt(det));
}

/** 5-point central first derivative, O(h^4). */
inline double deriv1(const std::function<double(double)>& f, double x,
                     double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) /
           (12.0 * h);
}

/** 5-point central third derivative, O(h^2). */
inline double deriv3(const std::function<double(double)>& f, double x,
                     double h) {
    return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) /
           (2.0 * h * h * h);
}

} // namespace oracle

#endif
