#ifndef WDW_SPECTRAL_HPP
#define WDW_SPECTRAL_HPP

#include <complex>
#include <cstddef>

#include "wdw/grid.hpp"

namespace wdw {

/** One-dimensional DFTs along either axis of a 2D field, backed by FFTW.
 *
 * Conventions: the forward transform along an axis of length n is
 * unnormalized, F[j] = sum_m f[m] exp(-2*pi*i*j*m/n); the inverse carries
 * the 1/n factor, so inverse(forward(f)) = f to round-off. With the dual
 * lattices of PhaseSpaceGrid this means d/dp maps to multiplication by
 * (i*lam_p) in the p-dual domain, and likewise d/dx to (i*k_x).
 *
 * The engine owns an aligned work buffer; plans are created once per grid
 * shape with FFTW_ESTIMATE so that results are reproducible run to run.
 * Transforms execute in place on the engine buffer. */
class SpectralEngine {
public:
    explicit SpectralEngine(const PhaseSpaceGrid& grid);
    ~SpectralEngine();
    SpectralEngine(const SpectralEngine&) = delete;
    SpectralEngine& operator=(const SpectralEngine&) = delete;

    const PhaseSpaceGrid& grid() const { return grid_; }

    // Interleaved row-major [i_x][i_p] buffer of n_x*n_p complex samples.
    std::complex<double>* data() { return buf_; }
    const std::complex<double>* data() const { return buf_; }

    void load(const RealField& f);
    void load(const ComplexField& f);
    ComplexField store() const;
    RealField store_real(double* imag_max = nullptr) const;

    // In-place transforms on the engine buffer.
    void forward_x();
    void inverse_x();
    void forward_p();
    void inverse_p();

private:
    PhaseSpaceGrid grid_;
    std::complex<double>* buf_;
    void* plan_fx_;
    void* plan_bx_;
    void* plan_fp_;
    void* plan_bp_;
};

// Pure per-field transforms (spawn a transient engine; fine for tests and
// observables, the evolver keeps its own persistent engine).
ComplexField forward_x(const ComplexField& f);
ComplexField inverse_x(const ComplexField& f);
ComplexField forward_p(const ComplexField& f);
ComplexField inverse_p(const ComplexField& f);
ComplexField forward_p(const RealField& f);
ComplexField forward_x(const RealField& f);

/** Derivative of given order along p by spectral multiplication with
 * (i*lam_p)^order. For odd orders the unpaired Nyquist mode is zeroed. */
RealField spectral_derivative_p(const RealField& f, unsigned order);

} // namespace wdw

#endif
