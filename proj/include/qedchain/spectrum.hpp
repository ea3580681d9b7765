// spectrum.hpp: windowed power spectra of recorded observables and peak extraction.

#pragma once

#include "qedchain/trajectory.hpp"

#include <span>
#include <string>
#include <vector>

namespace qedchain {

enum class Window { rectangular, hann };

struct SpectrumOptions {
    Window window{Window::hann};
    bool remove_mean{false};
    // Non-uniform input is refused unless this is set, in which case it is linearly resampled.
    bool resample_nonuniform{false};
    // A peak must exceed noise_floor_factor × median power and relative_threshold × the largest bin.
    double noise_floor_factor{10.0};
    double relative_threshold{1e-3};
};

struct SpectralPeak {
    double frequency{0.0};  // angular, parabolic refinement of the bin maximum
    double height{0.0};
    double width{0.0};      // full width at half maximum, angular
    std::size_t bin{0};
};

struct SpectrumResult {
    std::string observable;
    std::vector<double> frequencies;  // angular, 0 .. pi/dt
    std::vector<double> power;        // one-sided; sums to the window-corrected mean square
    std::vector<SpectralPeak> peaks;  // sorted by descending height
    double bin_width{0.0};
    double mean_square{0.0};
    // |sum(power) - mean_square| / mean_square
    double parseval_mismatch{0.0};
};

class NonUniformGrid : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

SpectrumResult power_spectrum(std::span<const double> times, std::span<const double> values, const SpectrumOptions& opt = {});
SpectrumResult spectrum(const Trajectory& traj, const std::string& column, const SpectrumOptions& opt = {});

// Peaks of an already computed one-sided spectrum.
std::vector<SpectralPeak> find_peaks(std::span<const double> frequencies, std::span<const double> power,
                                     double noise_floor_factor, double relative_threshold);

// Geometric over arithmetic mean of the non-DC bins; 0 for a line spectrum, 1 for white noise.
double spectral_flatness(std::span<const double> power);

}  // namespace qedchain
