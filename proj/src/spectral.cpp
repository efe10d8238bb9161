#include "wdw/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <algorithm>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace wdw {

namespace {
fftw_complex* as_fftw(std::complex<double>* p) {
    return reinterpret_cast<fftw_complex*>(p);
}

// FFTW's planner mutates global state; executing existing plans is safe
// concurrently but creating or destroying them is not.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

SpectralEngine::SpectralEngine(const PhaseSpaceGrid& grid) : grid_(grid) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    const int nx = static_cast<int>(grid_.n_x);
    const int np = static_cast<int>(grid_.n_p);
    buf_ = reinterpret_cast<std::complex<double>*>(
        fftw_alloc_complex(grid_.size()));
    std::fill_n(buf_, grid_.size(), std::complex<double>{0.0, 0.0});

    // Along p: nx contiguous rows of length np.
    int np_dims[] = {np};
    plan_fp_ = fftw_plan_many_dft(1, np_dims, nx, as_fftw(buf_), nullptr, 1,
                                  np, as_fftw(buf_), nullptr, 1, np,
                                  FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bp_ = fftw_plan_many_dft(1, np_dims, nx, as_fftw(buf_), nullptr, 1,
                                  np, as_fftw(buf_), nullptr, 1, np,
                                  FFTW_BACKWARD, FFTW_ESTIMATE);
    // Along x: np columns with stride np.
    int nx_dims[] = {nx};
    plan_fx_ = fftw_plan_many_dft(1, nx_dims, np, as_fftw(buf_), nullptr, np,
                                  1, as_fftw(buf_), nullptr, np, 1,
                                  FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bx_ = fftw_plan_many_dft(1, nx_dims, np, as_fftw(buf_), nullptr, np,
                                  1, as_fftw(buf_), nullptr, np, 1,
                                  FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan_fp_ || !plan_bp_ || !plan_fx_ || !plan_bx_)
        throw std::runtime_error("SpectralEngine: FFTW planning failed");
}

SpectralEngine::~SpectralEngine() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fx_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bx_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fp_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bp_));
    fftw_free(buf_);
}

void SpectralEngine::load(const RealField& f) {
    if (!f.grid.same_shape(grid_))
        throw std::invalid_argument("SpectralEngine::load: grid mismatch");
    for (std::size_t i = 0; i < f.values.size(); ++i)
        buf_[i] = {f.values[i], 0.0};
}

void SpectralEngine::load(const ComplexField& f) {
    if (!f.grid.same_shape(grid_))
        throw std::invalid_argument("SpectralEngine::load: grid mismatch");
    std::memcpy(buf_, f.values.data(), f.values.size() * sizeof(*buf_));
}

ComplexField SpectralEngine::store() const {
    ComplexField out(grid_);
    std::memcpy(out.values.data(), buf_, grid_.size() * sizeof(*buf_));
    return out;
}

RealField SpectralEngine::store_real(double* imag_max) const {
    RealField out(grid_);
    double im = 0.0;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        out.values[i] = buf_[i].real();
        im = std::max(im, std::abs(buf_[i].imag()));
    }
    if (imag_max) *imag_max = im;
    return out;
}

void SpectralEngine::forward_x() {
    fftw_execute(static_cast<fftw_plan>(plan_fx_));
}

void SpectralEngine::inverse_x() {
    fftw_execute(static_cast<fftw_plan>(plan_bx_));
    const double s = 1.0 / static_cast<double>(grid_.n_x);
    for (std::size_t i = 0; i < grid_.size(); ++i) buf_[i] *= s;
}

void SpectralEngine::forward_p() {
    fftw_execute(static_cast<fftw_plan>(plan_fp_));
}

void SpectralEngine::inverse_p() {
    fftw_execute(static_cast<fftw_plan>(plan_bp_));
    const double s = 1.0 / static_cast<double>(grid_.n_p);
    for (std::size_t i = 0; i < grid_.size(); ++i) buf_[i] *= s;
}

namespace {

template <typename Field, typename Op>
ComplexField transformed(const Field& f, Op op) {
    SpectralEngine eng(f.grid);
    eng.load(f);
    op(eng);
    return eng.store();
}

} // namespace

ComplexField forward_x(const ComplexField& f) {
    return transformed(f, [](SpectralEngine& e) { e.forward_x(); });
}
ComplexField inverse_x(const ComplexField& f) {
    return transformed(f, [](SpectralEngine& e) { e.inverse_x(); });
}
ComplexField forward_p(const ComplexField& f) {
    return transformed(f, [](SpectralEngine& e) { e.forward_p(); });
}
ComplexField inverse_p(const ComplexField& f) {
    return transformed(f, [](SpectralEngine& e) { e.inverse_p(); });
}
ComplexField forward_p(const RealField& f) {
    return transformed(f, [](SpectralEngine& e) { e.forward_p(); });
}
ComplexField forward_x(const RealField& f) {
    return transformed(f, [](SpectralEngine& e) { e.forward_x(); });
}

RealField spectral_derivative_p(const RealField& f, unsigned order) {
    if (order < 1)
        throw std::invalid_argument("spectral_derivative_p: order must be >= 1");
    SpectralEngine eng(f.grid);
    eng.load(f);
    eng.forward_p();

    const auto& lam = f.grid.lam_p;
    const std::size_t nx = f.grid.n_x, np = f.grid.n_p;
    const bool odd = (order % 2) != 0;
    std::vector<std::complex<double>> mult(np);
    for (std::size_t j = 0; j < np; ++j) {
        mult[j] = std::pow(std::complex<double>(0.0, lam[j]),
                           static_cast<double>(order));
        if (odd && j == np / 2) mult[j] = 0.0; // unpaired Nyquist mode
    }
    auto* buf = eng.data();
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < np; ++j) buf[i * np + j] *= mult[j];

    eng.inverse_p();
    return eng.store_real();
}

} // namespace wdw
