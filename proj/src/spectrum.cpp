// spectrum.cpp: FFTW-backed power spectra

#include "qedchain/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>

namespace qedchain {

namespace {

bool is_uniform(std::span<const double> t) {
    if (t.size() < 3) return true;
    const double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    for (std::size_t i = 1; i < t.size(); ++i)
        if (std::abs(t[i] - t[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h))) return false;
    return true;
}

std::vector<double> resample(std::span<const double> t, std::span<const double> v) {
    const std::size_t n = t.size();
    const double h = (t.back() - t.front()) / static_cast<double>(n - 1);
    std::vector<double> out(n);
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = t.front() + h * static_cast<double>(i);
        while (j + 2 < n && t[j + 1] < x) ++j;
        const double w = (x - t[j]) / (t[j + 1] - t[j]);
        out[i] = (1.0 - w) * v[j] + w * v[j + 1];
    }
    return out;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

// FFTW planning is not thread safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};

}  // namespace

std::vector<SpectralPeak> find_peaks(std::span<const double> f, std::span<const double> p, double noise_floor_factor,
                                     double relative_threshold) {
    std::vector<SpectralPeak> peaks;
    const std::size_t n = p.size();
    if (n == 0) return peaks;
    const double top = *std::max_element(p.begin(), p.end());
    if (!(top > 0.0)) return peaks;
    const double floor = std::max(noise_floor_factor * median(std::vector<double>(p.begin(), p.end())), relative_threshold * top);
    const double df = n > 1 ? f[1] - f[0] : 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        const double left = k > 0 ? p[k - 1] : -1.0;
        const double right = k + 1 < n ? p[k + 1] : -1.0;
        if (!(p[k] > left && p[k] >= right && p[k] > floor)) continue;
        SpectralPeak pk;
        pk.bin = k;
        pk.height = p[k];
        pk.frequency = f[k];
        if (k > 0 && k + 1 < n) {
            const double den = p[k - 1] - 2.0 * p[k] + p[k + 1];
            if (den < 0.0) pk.frequency += 0.5 * (p[k - 1] - p[k + 1]) / den * df;
        }
        // Half-maximum crossings by linear interpolation; a side that never crosses contributes its full extent.
        const double half = 0.5 * p[k];
        double lo = f[0], hi = f[n - 1];
        for (std::size_t i = k; i > 0; --i)
            if (p[i - 1] <= half) {
                lo = f[i - 1] + (half - p[i - 1]) / (p[i] - p[i - 1]) * df;
                break;
            }
        for (std::size_t i = k; i + 1 < n; ++i)
            if (p[i + 1] <= half) {
                hi = f[i] + (p[i] - half) / (p[i] - p[i + 1]) * df;
                break;
            }
        pk.width = hi - lo;
        peaks.push_back(pk);
    }
    std::stable_sort(peaks.begin(), peaks.end(), [](const auto& a, const auto& b) { return a.height > b.height; });
    return peaks;
}

SpectrumResult power_spectrum(std::span<const double> times, std::span<const double> values, const SpectrumOptions& opt) {
    if (times.size() != values.size()) throw std::invalid_argument("spectrum: times and values differ in length");
    const std::size_t n = times.size();
    if (n < 4) throw std::invalid_argument("spectrum: at least 4 samples are required");

    std::vector<double> x;
    if (is_uniform(times)) {
        x.assign(values.begin(), values.end());
    } else if (opt.resample_nonuniform) {
        x = resample(times, values);
    } else {
        throw NonUniformGrid("spectrum: time grid is not uniform");
    }
    const double dt = (times.back() - times.front()) / static_cast<double>(n - 1);
    if (opt.remove_mean) {
        const double m = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
        for (double& v : x) v -= m;
    }

    std::vector<double> w(n, 1.0);
    if (opt.window == Window::hann)
        for (std::size_t i = 0; i < n; ++i) w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n - 1));
    double w2 = 0.0, ms = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w2 += w[i] * w[i];
        x[i] *= w[i];
        ms += x[i] * x[i];
    }
    w2 /= static_cast<double>(n);
    ms /= static_cast<double>(n);

    const std::size_t nf = n / 2 + 1;
    std::vector<double> in(x);
    std::vector<fftw_complex> out(nf);
    std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out.data(), FFTW_ESTIMATE));
    }
    if (!plan) throw std::runtime_error("spectrum: FFTW plan creation failed");
    fftw_execute(plan.get());

    SpectrumResult r;
    r.bin_width = 2.0 * M_PI / (static_cast<double>(n) * dt);
    r.frequencies.resize(nf);
    r.power.resize(nf);
    const double norm = 1.0 / (static_cast<double>(n) * static_cast<double>(n) * w2);
    for (std::size_t k = 0; k < nf; ++k) {
        const double mag2 = out[k][0] * out[k][0] + out[k][1] * out[k][1];
        const bool unpaired = k == 0 || (n % 2 == 0 && k == n / 2);
        r.frequencies[k] = r.bin_width * static_cast<double>(k);
        r.power[k] = (unpaired ? 1.0 : 2.0) * mag2 * norm;
    }
    r.mean_square = ms / w2;
    const double total = std::accumulate(r.power.begin(), r.power.end(), 0.0);
    r.parseval_mismatch = r.mean_square > 0.0 ? std::abs(total - r.mean_square) / r.mean_square : std::abs(total);
    r.peaks = find_peaks(r.frequencies, r.power, opt.noise_floor_factor, opt.relative_threshold);
    return r;
}

SpectrumResult spectrum(const Trajectory& traj, const std::string& column, const SpectrumOptions& opt) {
    const auto t = traj.times();
    const auto v = traj.series(column);
    SpectrumResult r = power_spectrum(t, v, opt);
    r.observable = column;
    return r;
}

double spectral_flatness(std::span<const double> power) {
    if (power.size() < 2) return 0.0;
    const auto body = power.subspan(1);
    const double arith = std::accumulate(body.begin(), body.end(), 0.0) / static_cast<double>(body.size());
    if (!(arith > 0.0)) return 0.0;
    double log_sum = 0.0;
    for (double p : body) log_sum += std::log(std::max(p, 1e-300));
    return std::exp(log_sum / static_cast<double>(body.size())) / arith;
}

}  // namespace qedchain
