#include "wipt/rateenergy.hpp"

#include <algorithm>
#include <stdexcept>

#include "wipt/parallel.hpp"

namespace wipt {

const char* to_string(RegionMode mode) {
    switch (mode) {
        case RegionMode::pc: return "PC";
        case RegionMode::nc: return "NC";
        case RegionMode::no_wpt: return "NoWpt";
    }
    return "PC";
}

RegionMode region_mode_from_string(const std::string& name) {
    if (name == "PC" || name == "pc")
        return RegionMode::pc;
    if (name == "NC" || name == "nc")
        return RegionMode::nc;
    if (name == "NoWpt" || name == "no_wpt" || name == "nowpt")
        return RegionMode::no_wpt;
    throw std::invalid_argument("unknown region mode '" + name + "'");
}

std::vector<double> rate_grid(double max_rate, std::size_t count) {
    if (count < 2)
        throw std::invalid_argument("rate grid needs at least two points");
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = max_rate * static_cast<double>(i) / static_cast<double>(count - 1);
    grid.back() = max_rate;
    return grid;
}

RegionBoundary sweep_region(const ChannelFreqResponse& channel, const RectennaModel& model, double power,
                            double noise, RegionMode mode, const SweepOptions& options) {
    RegionBoundary out;
    out.mode = mode;
    out.max_rate = max_rate(channel, power, noise);
    const std::vector<double> targets =
        options.rbar.empty() ? rate_grid(out.max_rate, options.grid_size) : options.rbar;
    if (targets.size() < 2)
        throw std::invalid_argument("rate grid needs at least two points");

    WiptOptions wopt = options.wipt;
    WiptMode wmode = WiptMode::pc_joint;
    if (mode == RegionMode::nc)
        wmode = WiptMode::nc;
    if (mode == RegionMode::no_wpt)
        wopt.force_zero_multisine = true;

    out.solutions.resize(targets.size());
    parallel_for(targets.size(), options.threads, [&](std::size_t i) {
        try {
            out.solutions[i] = solve_wipt(wmode, channel, model, power, noise, targets[i], wopt);
        } catch (const std::exception& e) {
            WiptSolution failed;
            failed.mode = wmode;
            failed.design = WaveformDesign::zeros(channel.tones(), channel.antennas());
            failed.trace.status = gp::SolveStatus::failed;
            failed.message = e.what();
            out.solutions[i] = std::move(failed);
        }
    });

    const double tones = static_cast<double>(channel.tones());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const WiptSolution& s = out.solutions[i];
        RateEnergyPoint p;
        p.rbar = targets[i];
        p.rate = s.rate;
        p.rate_per_n = s.rate / tones;
        p.zdc = s.zdc;
        p.rho = s.design.rho;
        p.p_multisine = s.design.multisine_power();
        p.p_ofdm = s.design.ofdm_power();
        p.iterations = s.trace.iterations();
        p.status = s.status();
        p.feasible = s.feasible;
        out.points.push_back(p);
    }
    std::stable_sort(out.points.begin(), out.points.end(), [](const auto& a, const auto& b) {
        if (a.feasible != b.feasible)
            return a.feasible;
        return a.feasible ? a.rate < b.rate : a.rbar < b.rbar;
    });
    const auto hull_input = achieved_points(out);
    if (hull_input.size() >= 2)
        out.hull = ts_hull(hull_input);
    return out;
}

std::vector<HullPoint> achieved_points(const RegionBoundary& boundary) {
    std::vector<HullPoint> pts;
    for (const auto& p : boundary.points)
        if (p.feasible)
            pts.push_back({p.rate, p.zdc});
    return pts;
}

std::vector<HullPoint> ts_hull(std::span<const HullPoint> points) {
    if (points.size() < 2)
        throw std::invalid_argument("time-sharing hull needs at least two points");
    double top_z = 0.0;
    double top_r = 0.0;
    for (const auto& p : points) {
        top_z = std::max(top_z, p.zdc);
        top_r = std::max(top_r, p.rate);
    }
    std::vector<HullPoint> pts(points.begin(), points.end());
    pts.push_back({0.0, top_z});
    pts.push_back({top_r, 0.0});
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.rate < b.rate || (a.rate == b.rate && a.zdc > b.zdc);
    });

    // Monotone chain, upper part.
    std::vector<HullPoint> hull;
    for (const auto& p : pts) {
        if (!hull.empty() && hull.back().rate == p.rate)
            continue;
        while (hull.size() >= 2) {
            const HullPoint& a = hull[hull.size() - 2];
            const HullPoint& b = hull.back();
            const double cross = (b.rate - a.rate) * (p.zdc - a.zdc) - (b.zdc - a.zdc) * (p.rate - a.rate);
            if (cross >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    return hull;
}

double hull_value(std::span<const HullPoint> hull, double rate) {
    if (hull.empty())
        return 0.0;
    if (rate <= hull.front().rate)
        return hull.front().zdc;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        if (rate <= hull[i].rate) {
            const HullPoint& a = hull[i - 1];
            const HullPoint& b = hull[i];
            const double w = (rate - a.rate) / (b.rate - a.rate);
            return a.zdc + w * (b.zdc - a.zdc);
        }
    }
    return 0.0;
}

}  // namespace wipt
