#include "wdw/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wdw {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Signed DFT index: 0,1,...,n/2-1,-n/2,...,-1
double freq_index(std::size_t j, std::size_t n) {
    return j < n / 2 ? static_cast<double>(j)
                     : static_cast<double>(j) - static_cast<double>(n);
}

} // namespace

PhaseSpaceGrid build_grid(double x_min, double x_max, double p_min,
                          double p_max, std::size_t n_x, std::size_t n_p) {
    if (!(x_max > x_min) || !(p_max > p_min))
        throw std::invalid_argument("build_grid: degenerate bounds");
    if (!power_of_two(n_x) || !power_of_two(n_p) || n_x < 16 || n_p < 16)
        throw std::invalid_argument(
            "build_grid: point counts must be powers of two >= 16, got " +
            std::to_string(n_x) + "x" + std::to_string(n_p));

    PhaseSpaceGrid g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.p_min = p_min;
    g.p_max = p_max;
    g.n_x = n_x;
    g.n_p = n_p;
    g.dx = (x_max - x_min) / static_cast<double>(n_x);
    g.dp = (p_max - p_min) / static_cast<double>(n_p);

    const double two_pi = 2.0 * M_PI;
    const double dk = two_pi / (x_max - x_min);
    const double dl = two_pi / (p_max - p_min);

    g.x.resize(n_x);
    g.k_x.resize(n_x);
    for (std::size_t i = 0; i < n_x; ++i) {
        g.x[i] = x_min + static_cast<double>(i) * g.dx;
        g.k_x[i] = freq_index(i, n_x) * dk;
    }
    g.p.resize(n_p);
    g.lam_p.resize(n_p);
    for (std::size_t j = 0; j < n_p; ++j) {
        g.p[j] = p_min + static_cast<double>(j) * g.dp;
        g.lam_p[j] = freq_index(j, n_p) * dl;
    }
    return g;
}

ComplexField complexify(const RealField& f) {
    ComplexField c(f.grid);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        c.values[i] = {f.values[i], 0.0};
    return c;
}

RealField realify(const ComplexField& f, double* imag_max) {
    RealField r(f.grid);
    double im = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        r.values[i] = f.values[i].real();
        im = std::max(im, std::abs(f.values[i].imag()));
    }
    if (imag_max) *imag_max = im;
    return r;
}

} // namespace wdw
