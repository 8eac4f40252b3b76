#include "wipt/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

namespace wipt {

namespace {

using nlohmann::json;

std::ofstream open_output(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    if (ec)
        throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out)
        throw IoError("write to " + path.string() + " failed");
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

json channel_to_json(const ChannelFreqResponse& channel) {
    json entries = json::array();
    for (std::size_t n = 0; n < channel.tones(); ++n)
        for (std::size_t m = 0; m < channel.antennas(); ++m)
            entries.push_back({channel(n, m).real(), channel(n, m).imag()});
    return {{"N", channel.tones()}, {"M", channel.antennas()}, {"entries", entries}};
}

ChannelFreqResponse channel_from_json(const json& j) {
    try {
        const auto tones = j.at("N").get<std::size_t>();
        const auto antennas = j.at("M").get<std::size_t>();
        const json& entries = j.at("entries");
        if (tones < 1 || antennas < 1)
            throw IoError("channel JSON: N and M must be >= 1");
        if (entries.size() != tones * antennas)
            throw IoError("channel JSON: expected " + std::to_string(tones * antennas) + " entries, got " +
                          std::to_string(entries.size()));
        Eigen::MatrixXcd h(static_cast<Eigen::Index>(tones), static_cast<Eigen::Index>(antennas));
        for (std::size_t k = 0; k < entries.size(); ++k) {
            const json& e = entries[k];
            if (!e.is_array() || e.size() != 2)
                throw IoError("channel JSON: entry " + std::to_string(k) + " is not [re, im]");
            h(static_cast<Eigen::Index>(k / antennas), static_cast<Eigen::Index>(k % antennas)) = {
                e[0].get<double>(), e[1].get<double>()};
        }
        return ChannelFreqResponse(std::move(h));
    } catch (const json::exception& e) {
        throw IoError(std::string("channel JSON: ") + e.what());
    }
}

void save_channel(const std::filesystem::path& path, const ChannelFreqResponse& channel) {
    write_json(path, channel_to_json(channel));
}

ChannelFreqResponse load_channel(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    try {
        return channel_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw IoError("matrix JSON must be a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(j[static_cast<std::size_t>(r)].size()) != cols)
            throw IoError("matrix JSON rows differ in length");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].get<double>();
    }
    return m;
}

json solution_to_json(const WiptSolution& s, double rate_target) {
    const auto& d = s.design;
    json trace = {{"status", gp::to_string(s.trace.status)},
                  {"iterations", s.trace.iterations()},
                  {"non_decreasing", s.trace.non_decreasing()},
                  {"message", s.trace.message}};
    if (!s.trace.iterates.empty()) {
        trace["initial_objective"] = s.trace.iterates.front().objective;
        trace["final_objective"] = s.trace.iterates.back().objective;
    }
    return {{"mode", to_string(s.mode)},
            {"rbar", rate_target},
            {"feasible", s.feasible},
            {"rate", s.rate},
            {"zdc", s.zdc},
            {"rho", d.rho},
            {"rho_bar", s.rho_bar},
            {"multisine", {{"amplitude", matrix_to_json(d.multisine_amp)}, {"phase", matrix_to_json(d.multisine_phase)}}},
            {"ofdm", {{"amplitude", matrix_to_json(d.ofdm_amp)}, {"phase", matrix_to_json(d.ofdm_phase)}}},
            {"trace", trace},
            {"message", s.message}};
}

void write_json(const std::filesystem::path& path, const json& j) {
    auto out = open_output(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    auto out = open_output(path);
    out << text;
    finish(out, path);
}

void write_region_csv(const std::filesystem::path& path, const RegionBoundary& boundary) {
    auto out = open_output(path);
    out << "rbar,rate,rate_per_N,zdc_amps,rho,p_multisine,p_ofdm,iterations,status\n";
    for (const auto& p : boundary.points) {
        out << format_number(p.rbar) << ',' << format_number(p.rate) << ',' << format_number(p.rate_per_n) << ','
            << format_number(p.zdc) << ',' << format_number(p.rho) << ',' << format_number(p.p_multisine) << ','
            << format_number(p.p_ofdm) << ',' << p.iterations << ',' << gp::to_string(p.status) << '\n';
    }
    finish(out, path);
}

void write_hull_csv(const std::filesystem::path& path, const std::vector<HullPoint>& hull) {
    auto out = open_output(path);
    out << "rate,zdc_amps\n";
    for (const auto& p : hull)
        out << format_number(p.rate) << ',' << format_number(p.zdc) << '\n';
    finish(out, path);
}

void write_solutions_csv(const std::filesystem::path& path, const RegionBoundary& boundary) {
    auto out = open_output(path);
    out << "point,tone,antenna,s_multisine,phi_multisine,s_ofdm,phi_ofdm,rho\n";
    for (std::size_t i = 0; i < boundary.solutions.size(); ++i) {
        const auto& d = boundary.solutions[i].design;
        for (Eigen::Index n = 0; n < d.multisine_amp.rows(); ++n)
            for (Eigen::Index m = 0; m < d.multisine_amp.cols(); ++m)
                out << i << ',' << n << ',' << m << ',' << format_number(d.multisine_amp(n, m)) << ','
                    << format_number(d.multisine_phase(n, m)) << ',' << format_number(d.ofdm_amp(n, m)) << ','
                    << format_number(d.ofdm_phase(n, m)) << ',' << format_number(d.rho) << '\n';
    }
    finish(out, path);
}

void write_trace_csv(const std::filesystem::path& path, const gp::SolveTrace& trace) {
    auto out = open_output(path);
    out << "iteration,objective,step_norm,feasibility_residual,extrapolation\n";
    for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
        const auto& e = trace.iterates[i];
        out << i << ',' << format_number(e.objective) << ',' << format_number(e.step_norm) << ','
            << format_number(e.feasibility_residual) << ',' << format_number(e.extrapolation) << '\n';
    }
    finish(out, path);
}

void write_scaling_csv(const std::filesystem::path& path, const ScalingResult& result) {
    auto out = open_output(path);
    out << "N,mean_zdc,stderr,quad_term,quart_term,fit_class\n";
    const char* cls = to_string(result.fit.best);
    for (const auto& r : result.rows)
        out << r.tones << ',' << format_number(r.mean_zdc) << ',' << format_number(r.std_error) << ','
            << format_number(r.quad_term) << ',' << format_number(r.quart_term) << ',' << cls << '\n';
    finish(out, path);
}

void write_ccdf_csv(const std::filesystem::path& path, std::size_t tones, const std::vector<CcdfPoint>& ccdf) {
    auto out = open_output(path);
    out << "N,papr_db,exceedance\n";
    for (const auto& p : ccdf)
        out << tones << ',' << format_number(p.papr_db) << ',' << format_number(p.exceedance) << '\n';
    finish(out, path);
}

}  // namespace wipt
