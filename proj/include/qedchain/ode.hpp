// ode.hpp: adaptive Dormand–Prince 5(4) integrator for complex state vectors.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>

namespace qedchain {

struct AdaptiveSettings {
    double rtol{1e-10};
    double atol{1e-12};
    double initial_step{0.0};  // 0: choose automatically
    double min_step{1e-14};
    double max_step{std::numeric_limits<double>::infinity()};
    std::size_t max_steps{50'000'000};
};

struct IntegrationStats {
    std::size_t accepted{0};
    std::size_t rejected{0};
};

class StepSizeUnderflow : public std::runtime_error {
public:
    StepSizeUnderflow(double t, double h)
        : std::runtime_error(message(t, h)), time_(t), step_(h) {}
    double time() const noexcept { return time_; }
    double step() const noexcept { return step_; }

private:
    static std::string message(double t, double h) {
        std::ostringstream os;
        os << "step size underflow at t = " << t << " (h = " << h << ")";
        return os.str();
    }
    double time_;
    double step_;
};

// Integrates dy/dt = rhs(t, y, dydt) from output_times.front() through every output time.
// observe(t, y) is called at each output time, including the first. Steps are clipped so that
// output times are hit exactly; the right-hand side is evaluated at the stage times.
template <class Rhs, class Observer>
IntegrationStats integrate_dopri5(Rhs&& rhs, Eigen::VectorXcd& y, std::span<const double> output_times,
                                  const AdaptiveSettings& s, Observer&& observe) {
    using V = Eigen::VectorXcd;
    IntegrationStats stats;
    if (output_times.empty()) return stats;

    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    const Eigen::Index n = y.size();
    V k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);

    double t = output_times.front();
    observe(t, static_cast<const V&>(y));
    rhs(t, y, k1);

    auto error_norm = [&](const V& y0, const V& y1, const V& e) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double sc = s.atol + s.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
            const double r = std::abs(e[i]) / sc;
            acc += r * r;
        }
        return std::sqrt(acc / static_cast<double>(std::max<Eigen::Index>(n, 1)));
    };

    double h = s.initial_step;
    if (!(h > 0.0)) {
        // Starting step from the size of y and f(y).
        double d0 = 0.0, d1 = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double sc = s.atol + s.rtol * std::abs(y[i]);
            d0 += std::norm(y[i]) / (sc * sc);
            d1 += std::norm(k1[i]) / (sc * sc);
        }
        d0 = std::sqrt(d0 / static_cast<double>(n));
        d1 = std::sqrt(d1 / static_cast<double>(n));
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        if (!std::isfinite(h) || !(h > 0.0)) h = 1e-6;  // degenerate tolerances overflow the scales
    }
    h = std::min(h, s.max_step);

    for (std::size_t idx = 1; idx < output_times.size(); ++idx) {
        const double target = output_times[idx];
        while (t < target) {
            if (stats.accepted + stats.rejected >= s.max_steps)
                throw std::runtime_error("integrate_dopri5: step budget exhausted");
            double step = h;
            bool clipped = false;
            if (t + step * 1.0000001 >= target) {
                step = target - t;
                clipped = true;
            }

            ytmp = y + step * a21 * k1;
            rhs(t + c2 * step, ytmp, k2);
            ytmp = y + step * (a31 * k1 + a32 * k2);
            rhs(t + c3 * step, ytmp, k3);
            ytmp = y + step * (a41 * k1 + a42 * k2 + a43 * k3);
            rhs(t + c4 * step, ytmp, k4);
            ytmp = y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
            rhs(t + c5 * step, ytmp, k5);
            ytmp = y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
            rhs(t + step, ytmp, k6);
            ynew = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            rhs(t + step, ynew, k7);
            err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            const double en = error_norm(y, ynew, err);
            const double factor =
                en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
            if (en <= 1.0) {
                t = clipped ? target : t + step;
                y.swap(ynew);
                k1.swap(k7);
                ++stats.accepted;
                // A clipped step says nothing about how large the next one may be.
                if (!clipped || step >= h) h = std::min(step * factor, s.max_step);
            } else {
                ++stats.rejected;
                h = step * (std::isfinite(factor) ? std::max(factor, 0.2) : 0.2);
                if (!(h >= s.min_step)) throw StepSizeUnderflow(t, h);
            }
        }
        observe(t, static_cast<const V&>(y));
    }
    return stats;
}

}  // namespace qedchain
