#ifndef WDW_GRID_HPP
#define WDW_GRID_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace wdw {

/** Uniform rectangular (x,p) lattice together with the two spectral dual
 * lattices used by the pseudo-spectral evolver.
 *
 * The lattice is periodic: x_i = x_min + i*dx for i in [0, n_x) and the
 * point x_max is the periodic image of x_min (same along p). Dual
 * wavenumbers follow the usual DFT ordering with signed indices, so
 * k_x[j] = j*2*pi/(x_max-x_min) for j < n_x/2 and (j-n_x)*2*pi/(x_max-x_min)
 * above. */
struct PhaseSpaceGrid {
    double x_min = 0, x_max = 0;
    double p_min = 0, p_max = 0;
    std::size_t n_x = 0, n_p = 0;
    double dx = 0, dp = 0;

    std::vector<double> x;      // position samples, size n_x
    std::vector<double> p;      // momentum samples, size n_p
    std::vector<double> k_x;    // wavenumbers dual to x, size n_x
    std::vector<double> lam_p;  // wavenumbers dual to p, size n_p

    std::size_t size() const { return n_x * n_p; }
    double cell_area() const { return dx * dp; }
    double area() const { return (x_max - x_min) * (p_max - p_min); }

    bool same_shape(const PhaseSpaceGrid& o) const {
        return n_x == o.n_x && n_p == o.n_p && x_min == o.x_min &&
               x_max == o.x_max && p_min == o.p_min && p_max == o.p_max;
    }
};

/** Builds the grid and its dual lattices.
 * Throws std::invalid_argument for degenerate bounds or point counts that
 * are not powers of two >= 16. */
PhaseSpaceGrid build_grid(double x_min, double x_max, double p_min,
                          double p_max, std::size_t n_x, std::size_t n_p);

/** Real-valued samples on a PhaseSpaceGrid, row-major [i_x][i_p]. */
struct RealField {
    PhaseSpaceGrid grid;
    std::vector<double> values;

    RealField() = default;
    explicit RealField(const PhaseSpaceGrid& g)
        : grid(g), values(g.size(), 0.0) {}

    double& at(std::size_t ix, std::size_t ip) {
        return values[ix * grid.n_p + ip];
    }
    double at(std::size_t ix, std::size_t ip) const {
        return values[ix * grid.n_p + ip];
    }
};

/** Complex-valued samples on a PhaseSpaceGrid, row-major [i_x][i_p]. */
struct ComplexField {
    PhaseSpaceGrid grid;
    std::vector<std::complex<double>> values;

    ComplexField() = default;
    explicit ComplexField(const PhaseSpaceGrid& g)
        : grid(g), values(g.size(), {0.0, 0.0}) {}

    std::complex<double>& at(std::size_t ix, std::size_t ip) {
        return values[ix * grid.n_p + ip];
    }
    const std::complex<double>& at(std::size_t ix, std::size_t ip) const {
        return values[ix * grid.n_p + ip];
    }
};

ComplexField complexify(const RealField& f);

/** Real part of a complex field; max |imag| is reported through *imag_max
 * when non-null so callers can verify the residue before discarding it. */
RealField realify(const ComplexField& f, double* imag_max = nullptr);

} // namespace wdw

#endif
