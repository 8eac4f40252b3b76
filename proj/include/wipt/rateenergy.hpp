#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wipt/chanmodel.hpp"
#include "wipt/rectenna.hpp"
#include "wipt/strategies.hpp"

namespace wipt {

/// PC: multisine cancelled at the decoder. NC: multisine treated as noise.
/// NoWpt: OFDM only.
enum class RegionMode { pc, nc, no_wpt };

const char* to_string(RegionMode mode);
RegionMode region_mode_from_string(const std::string& name);

struct RateEnergyPoint {
    double rbar = 0.0;
    double rate = 0.0;
    double rate_per_n = 0.0;
    double zdc = 0.0;
    double rho = 0.0;
    double p_multisine = 0.0;
    double p_ofdm = 0.0;
    int iterations = 0;
    gp::SolveStatus status = gp::SolveStatus::failed;
    bool feasible = false;
};

struct HullPoint {
    double rate = 0.0;
    double zdc = 0.0;
};

struct RegionBoundary {
    RegionMode mode = RegionMode::pc;
    double max_rate = 0.0;                 // water-filling rate at rho = 0
    std::vector<RateEnergyPoint> points;   // feasible points sorted by rate, then failures
    std::vector<WiptSolution> solutions;   // one per grid point, in rbar order
    std::vector<HullPoint> hull;
};

struct SweepOptions {
    std::size_t grid_size = 20;
    std::vector<double> rbar;  // explicit targets; overrides the uniform grid
    WiptOptions wipt;
    int threads = 1;
};

/// Uniform grid {0, ..., r_max} with `count` points, endpoints included.
std::vector<double> rate_grid(double max_rate, std::size_t count);

/// Solves one WIPT problem per rate target. Failed points are kept with their
/// status; the sweep carries on.
RegionBoundary sweep_region(const ChannelFreqResponse& channel, const RectennaModel& model, double power,
                            double noise, RegionMode mode, const SweepOptions& options = {});

/// Upper concave envelope of the points together with the axis endpoints
/// (0, max zdc) and (max rate, 0). Sorted by rate.
std::vector<HullPoint> ts_hull(std::span<const HullPoint> points);

/// Piecewise-linear hull value at `rate`; zero beyond the last vertex.
double hull_value(std::span<const HullPoint> hull, double rate);

/// Feasible boundary points as hull inputs.
std::vector<HullPoint> achieved_points(const RegionBoundary& boundary);

// ---------------------------------------------------------------------------
// PAPR

/// PAPR of an in-phase, equal-amplitude multisine: 10 log10(2N) dB.
double papr_multisine_db(std::size_t tones);

/// Passband-equivalent PAPR samples (dB) of OFDM symbols with i.i.d.
/// CN(0, 1) inputs, sorted ascending.
struct OfdmPaprSamples {
    std::vector<double> papr_db;

    /// Fraction of samples strictly above `threshold_db`.
    double exceedance(double threshold_db) const;
    /// Smallest threshold whose exceedance does not exceed `probability`.
    double quantile(double probability) const;
};

OfdmPaprSamples papr_samples_ofdm(std::size_t tones, std::size_t trials, std::uint64_t seed,
                                  int oversampling = 4, int threads = 1);

struct CcdfPoint {
    double papr_db = 0.0;
    double exceedance = 0.0;
};

/// CCDF table on a uniform dB grid spanning the observed samples.
std::vector<CcdfPoint> papr_ccdf_ofdm(std::size_t tones, std::size_t trials, std::uint64_t seed,
                                      double step_db = 0.25, int oversampling = 4, int threads = 1);

}  // namespace wipt
