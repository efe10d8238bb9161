#include "wdw/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "wdw/classical.hpp"
#include "wdw/evolver.hpp"
#include "wdw/grid.hpp"

namespace wdw {

namespace {

constexpr double kCeilingMargin = 0.2; // entropy gap that flags saturation

// Infers the (uniform) sample stride and samples-per-period count.
std::size_t samples_per_period(const std::vector<EntropySample>& s, double T) {
    if (s.size() < 3)
        throw std::invalid_argument("period_averaged_rate: too few samples");
    const double stride = s[1].time - s[0].time;
    if (stride <= 0.0)
        throw std::invalid_argument("period_averaged_rate: non-increasing times");
    for (std::size_t i = 1; i + 1 < s.size(); ++i)
        if (std::abs((s[i + 1].time - s[i].time) - stride) > 1e-6 * stride)
            throw std::invalid_argument(
                "period_averaged_rate: sample times are not uniform");
    const double spp_exact = T / stride;
    const auto spp = static_cast<std::size_t>(std::llround(spp_exact));
    if (spp < 2 || std::abs(spp_exact - static_cast<double>(spp)) > 1e-6)
        throw std::invalid_argument(
            "period_averaged_rate: stride must divide the driving period");
    if (spp % 2 != 0)
        throw std::invalid_argument(
            "period_averaged_rate: need an even sample count per period");
    return spp;
}

void run_jobs(std::size_t n, std::size_t jobs,
              const std::function<void(std::size_t)>& work) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            work(i);
        }
    };
    std::vector<std::thread> pool;
    const std::size_t n_threads = std::min(jobs, n);
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

void validate_setup(const RunSetup& s) {
    if (s.periods <= 0.0)
        throw std::invalid_argument("RunSetup: periods must be positive");
    if (s.steps_per_period == 0 || s.samples_per_period == 0)
        throw std::invalid_argument("RunSetup: step and sample counts must be positive");
    if (s.steps_per_period % s.samples_per_period != 0)
        throw std::invalid_argument(
            "RunSetup: samples_per_period must divide steps_per_period");
    if (s.renorm_per_period == 0 || s.ensemble_periods <= 0.0)
        throw std::invalid_argument("RunSetup: bad ensemble parameters");
}

} // namespace

SmoothedSeries period_averaged_rate(const EntropyTimeSeries& series) {
    const auto& s = series.samples;
    const double T = series.period;
    if (T <= 0.0)
        throw std::invalid_argument("period_averaged_rate: period must be positive");
    const std::size_t spp = samples_per_period(s, T);
    if (s.size() < 2 * spp + 1)
        throw std::invalid_argument(
            "period_averaged_rate: need at least two periods of data");

    // Trapezoid weights over exactly one period: half weight at the two
    // window edges. A pure oscillation at the driving frequency (or any
    // harmonic) sums to zero under this window.
    const std::size_t h = spp / 2;
    SmoothedSeries out;
    out.times.reserve(s.size() - spp);
    out.values.reserve(s.size() - spp);
    for (std::size_t i = h; i + h < s.size(); ++i) {
        double acc = 0.5 * (s[i - h].rate_formula + s[i + h].rate_formula);
        for (std::size_t j = i - h + 1; j < i + h; ++j)
            acc += s[j].rate_formula;
        out.times.push_back(s[i].time);
        out.values.push_back(acc / static_cast<double>(spp));
    }
    return out;
}

TransitionFit detect_transition(const EntropyTimeSeries& series, double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("detect_transition: alpha must be positive");

    TransitionFit fit;
    fit.alpha = alpha;
    fit.parameter = series.env.D;
    fit.lambda_bar = series.lambda_bar;

    const double lam = series.lambda_bar;
    if (!(lam > 0.0)) {
        fit.status = TransitionStatus::failed;
        fit.note = "lambda_bar is not positive; no threshold available";
        return fit;
    }
    fit.sigma_c = std::sqrt(2.0 * series.env.D / lam);
    const double sp0 = std::sqrt(std::max(series.samples.front().sigma_pp, 0.0));
    if (fit.sigma_c > 0.0 && sp0 > fit.sigma_c)
        fit.predicted_tc = std::log(sp0 / fit.sigma_c) / lam;

    const SmoothedSeries sm = period_averaged_rate(series);
    const std::size_t spp = samples_per_period(series.samples, series.period);
    const double threshold = alpha * lam;

    // First window of one full period that stays at or above the threshold.
    std::size_t idx = sm.values.size();
    for (std::size_t i = 0; i + spp < sm.values.size(); ++i) {
        bool held = true;
        for (std::size_t j = i; j <= i + spp; ++j)
            if (sm.values[j] < threshold) {
                held = false;
                break;
            }
        if (held) {
            idx = i;
            break;
        }
    }
    if (idx == sm.values.size()) {
        fit.status = TransitionStatus::no_transition;
        fit.note = "period-averaged rate never held above alpha*lambda_bar";
        return fit;
    }

    fit.status = TransitionStatus::transition;
    fit.t_c = sm.times[idx];

    const double ceiling =
        std::log(series.grid_area / (2.0 * M_PI * series.cfg.hbar));
    double onset = std::numeric_limits<double>::infinity();
    for (const auto& s : series.samples)
        if (s.linear_entropy >= ceiling - kCeilingMargin) {
            onset = s.time;
            break;
        }
    if (fit.t_c >= onset)
        fit.note = "transition coincides with grid saturation";

    double acc = 0.0;
    std::size_t cnt = 0;
    for (std::size_t i = idx + spp; i < sm.values.size(); ++i) {
        if (sm.times[i] > onset) break;
        acc += sm.values[i];
        ++cnt;
    }
    if (cnt == 0) {
        // Plateau window ran off the data; fall back to the tail past t_c.
        for (std::size_t i = idx; i < sm.values.size() && sm.times[i] <= onset;
             ++i) {
            acc += sm.values[i];
            ++cnt;
        }
        fit.note = "plateau window truncated";
    }
    if (cnt > 0) fit.plateau_rate = acc / static_cast<double>(cnt);
    return fit;
}

double ensemble_lambda(const RunSetup& setup) {
    validate_setup(setup);
    const double T = setup.cfg.period();
    TrajectoryEnsemble ens =
        sample_ensemble(setup.initial, setup.ensemble_n, setup.seed, setup.cfg);
    LyapunovSeries ly =
        local_lyapunov(ens, setup.ensemble_periods * T,
                       T / static_cast<double>(setup.renorm_per_period));

    // lambda(t) relaxes towards its asymptote; average the second half.
    const double t_half = 0.5 * setup.ensemble_periods * T;
    double acc = 0.0;
    std::size_t cnt = 0;
    for (std::size_t i = 0; i < ly.times.size(); ++i)
        if (ly.times[i] >= t_half) {
            acc += ly.lambda_local[i];
            ++cnt;
        }
    if (cnt == 0)
        throw std::runtime_error("ensemble_lambda: empty averaging window");
    return acc / static_cast<double>(cnt);
}

EntropyTimeSeries run_entropy_series(const RunSetup& setup,
                                     const double* lambda_bar) {
    validate_setup(setup);
    const double T = setup.cfg.period();
    const PhaseSpaceGrid grid = build_grid(setup.x_min, setup.x_max,
                                           setup.p_min, setup.p_max,
                                           setup.n_x, setup.n_p);

    EntropyTimeSeries out;
    out.period = T;
    out.cfg = setup.cfg;
    out.env = setup.env;
    out.grid_area = grid.area();
    out.lambda_bar = lambda_bar ? *lambda_bar : ensemble_lambda(setup);

    WignerField state = gaussian_wigner(setup.initial, grid, setup.cfg, setup.env);
    out.samples.push_back(measure(state));
    const double dt = T / static_cast<double>(setup.steps_per_period);
    const std::size_t stride = setup.steps_per_period / setup.samples_per_period;
    evolve(state, setup.periods * T, dt, stride,
           [&out](const WignerField& w) { out.samples.push_back(measure(w)); });
    return out;
}

std::vector<TransitionFit> sweep_diffusion(const RunSetup& base,
                                           const std::vector<double>& D_values,
                                           std::size_t jobs) {
    if (D_values.empty())
        throw std::invalid_argument("sweep_diffusion: empty parameter list");
    validate_setup(base);

    // The classical flow does not feel D; one ensemble serves every point.
    const double lam = ensemble_lambda(base);

    std::vector<TransitionFit> fits(D_values.size());
    run_jobs(D_values.size(), jobs, [&](std::size_t i) {
        RunSetup s = base;
        s.env.D = D_values[i];
        try {
            const EntropyTimeSeries series = run_entropy_series(s, &lam);
            fits[i] = detect_transition(series, base.alpha);
        } catch (const std::exception& e) {
            fits[i].status = TransitionStatus::failed;
            fits[i].note = e.what();
            fits[i].alpha = base.alpha;
            fits[i].lambda_bar = lam;
        }
        fits[i].parameter = D_values[i];
    });
    return fits;
}

std::vector<TransitionFit> sweep_initial_entropy(
    const RunSetup& base, const std::vector<double>& H0_values,
    std::size_t jobs) {
    if (H0_values.empty())
        throw std::invalid_argument("sweep_initial_entropy: empty parameter list");
    validate_setup(base);
    if (base.initial.sigma_x <= 0.0 || base.initial.sigma_p <= 0.0)
        throw std::invalid_argument("sweep_initial_entropy: base widths unset");
    const double aspect = base.initial.sigma_p / base.initial.sigma_x;

    std::vector<TransitionFit> fits(H0_values.size());
    run_jobs(H0_values.size(), jobs, [&](std::size_t i) {
        RunSetup s = base;
        s.initial = GaussianSpec::from_entropy(base.initial.x0, base.initial.p0,
                                               H0_values[i], aspect,
                                               base.cfg.hbar);
        try {
            // The ensemble width tracks H0, so lambda_bar is re-measured.
            const double lam = ensemble_lambda(s);
            const EntropyTimeSeries series = run_entropy_series(s, &lam);
            fits[i] = detect_transition(series, base.alpha);
        } catch (const std::exception& e) {
            fits[i].status = TransitionStatus::failed;
            fits[i].note = e.what();
            fits[i].alpha = base.alpha;
        }
        fits[i].parameter = H0_values[i];
    });
    return fits;
}

LinearFit linear_fit(const std::vector<double>& xs,
                     const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("linear_fit: length mismatch");
    const std::size_t n = xs.size();
    if (n < 3) throw std::invalid_argument("linear_fit: need at least 3 points");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0)
        throw std::invalid_argument("linear_fit: degenerate abscissa");

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r = (syy > 0.0) ? sxy / std::sqrt(sxx * syy) : 1.0;
    return fit;
}

} // namespace wdw
