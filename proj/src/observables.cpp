#include "wdw/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "wdw/spectral.hpp"

namespace wdw {

double norm(const WignerField& w) {
    double s = 0.0;
    for (double v : w.data.values) s += v;
    return s * w.data.grid.cell_area();
}

double purity(const WignerField& w) {
    double s = 0.0;
    for (double v : w.data.values) s += v * v;
    return 2.0 * M_PI * w.cfg.hbar * s * w.data.grid.cell_area();
}

double linear_entropy(const WignerField& w) { return -std::log(purity(w)); }

double fringe_mean_sq_wavenumber(const WignerField& w) {
    const RealField dW = spectral_derivative_p(w.data, 1);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < dW.values.size(); ++i) {
        num += dW.values[i] * dW.values[i];
        den += w.data.values[i] * w.data.values[i];
    }
    if (den <= 0.0)
        throw std::invalid_argument("fringe_mean_sq_wavenumber: <W^2> vanishes");
    return num / den;
}

double entropy_rate_formula(const WignerField& w) {
    if (w.env.D == 0.0) return 0.0;
    return 2.0 * w.env.D * fringe_mean_sq_wavenumber(w);
}

Covariance covariance(const WignerField& w) {
    const auto& g = w.data.grid;
    double n = 0.0, mx = 0.0, mp = 0.0;
    for (std::size_t i = 0; i < g.n_x; ++i)
        for (std::size_t j = 0; j < g.n_p; ++j) {
            const double v = w.data.at(i, j);
            n += v;
            mx += v * g.x[i];
            mp += v * g.p[j];
        }
    mx /= n;
    mp /= n;
    double sxx = 0.0, sxp = 0.0, spp = 0.0;
    for (std::size_t i = 0; i < g.n_x; ++i) {
        const double ex = g.x[i] - mx;
        for (std::size_t j = 0; j < g.n_p; ++j) {
            const double v = w.data.at(i, j);
            const double ep = g.p[j] - mp;
            sxx += v * ex * ex;
            sxp += v * ex * ep;
            spp += v * ep * ep;
        }
    }
    return {mx, mp, sxx / n, sxp / n, spp / n};
}

void marginals(const WignerField& w, std::vector<double>& out_x,
               std::vector<double>& out_p) {
    const auto& g = w.data.grid;
    out_x.assign(g.n_x, 0.0);
    out_p.assign(g.n_p, 0.0);
    for (std::size_t i = 0; i < g.n_x; ++i)
        for (std::size_t j = 0; j < g.n_p; ++j) {
            const double v = w.data.at(i, j);
            out_x[i] += v;
            out_p[j] += v;
        }
    for (double& v : out_x) v *= g.dp;
    for (double& v : out_p) v *= g.dx;
}

EntropySample measure(const WignerField& w) {
    EntropySample s;
    s.time = w.time;
    s.norm = norm(w);
    s.purity = purity(w);
    s.linear_entropy = -std::log(s.purity);
    s.ksq_p = fringe_mean_sq_wavenumber(w);
    s.rate_formula = 2.0 * w.env.D * s.ksq_p;
    s.rate_identity_valid = (w.env.gamma == 0.0);
    const Covariance c = covariance(w);
    s.sigma_xx = c.xx;
    s.sigma_xp = c.xp;
    s.sigma_pp = c.pp;
    return s;
}

std::vector<double> momentum_spectrum_power(const WignerField& w) {
    const ComplexField f = forward_p(w.data);
    const auto& g = w.data.grid;
    std::vector<double> power(g.n_p, 0.0);
    for (std::size_t i = 0; i < g.n_x; ++i)
        for (std::size_t j = 0; j < g.n_p; ++j)
            power[j] += std::norm(f.at(i, j));
    return power;
}

double fringe_band_amplitude(const WignerField& w, double lo, double hi) {
    const std::vector<double> power = momentum_spectrum_power(w);
    const auto& lam = w.data.grid.lam_p;
    double s = 0.0;
    for (std::size_t j = 0; j < lam.size(); ++j) {
        const double a = std::abs(lam[j]);
        if (a >= lo && a <= hi) s += power[j];
    }
    return std::sqrt(s);
}

} // namespace wdw
