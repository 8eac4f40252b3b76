#include "wipt/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "wipt/io.hpp"

namespace wipt {

using nlohmann::json;

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error("config field '" + field + "': " + message), field_(std::move(field)) {}

const char* to_string(ExperimentMode mode) {
    switch (mode) {
        case ExperimentMode::region: return "region";
        case ExperimentMode::scaling: return "scaling";
        case ExperimentMode::validate: return "validate";
        case ExperimentMode::papr: return "papr";
    }
    return "region";
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

namespace {

const char* to_string(ChannelSource s) {
    switch (s) {
        case ChannelSource::pdp: return "pdp";
        case ChannelSource::flat: return "flat";
        case ChannelSource::iid: return "iid";
        case ChannelSource::file: return "file";
    }
    return "pdp";
}

/// A JSON object together with its dotted path. Unknown keys are rejected.
class Section {
public:
    Section(const json& j, std::string path, std::set<std::string> allowed) : j_(j), path_(std::move(path)) {
        if (!j_.is_object())
            throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
        for (const auto& [key, _] : j_.items())
            if (!allowed.contains(key))
                throw ConfigError(field(key), "unknown field");
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    bool has(const std::string& key) const { return j_.contains(key); }

    const json& at(const std::string& key) const {
        if (!j_.contains(key))
            throw ConfigError(field(key), "missing");
        return j_.at(key);
    }

    template <typename T>
    T get(const std::string& key) const {
        try {
            return at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(field(key), "wrong type");
        }
    }

    template <typename T>
    T get_or(const std::string& key, T fallback) const {
        return has(key) ? get<T>(key) : fallback;
    }

    double positive(const std::string& key, double fallback) const {
        const double v = get_or(key, fallback);
        if (!(v > 0.0) || !std::isfinite(v))
            throw ConfigError(field(key), "must be positive and finite");
        return v;
    }

    std::size_t count(const std::string& key, std::size_t fallback, std::size_t min = 1) const {
        if (!has(key))
            return fallback;
        const json& v = at(key);
        if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min))
            throw ConfigError(field(key), "must be an integer >= " + std::to_string(min));
        return v.get<std::size_t>();
    }

    Section child(const std::string& key, std::set<std::string> allowed) const {
        return Section(at(key), field(key), std::move(allowed));
    }

private:
    const json& j_;
    std::string path_;
};

/// At most one of `keys` may be present; returns the one found, or "".
std::string exclusive(const Section& s, std::initializer_list<const char*> keys) {
    std::string found;
    for (const char* k : keys) {
        if (!s.has(k))
            continue;
        if (!found.empty())
            throw ConfigError(s.field(k), "mutually exclusive with '" + s.field(found) + "'");
        found = k;
    }
    return found;
}

std::vector<std::size_t> tone_list(const Section& s, const std::string& key) {
    const json& v = s.at(key);
    if (!v.is_array() || v.empty())
        throw ConfigError(s.field(key), "must be a non-empty array");
    std::vector<std::size_t> out;
    for (const auto& e : v) {
        if (!e.is_number_integer() || e.get<long long>() < 1)
            throw ConfigError(s.field(key), "entries must be integers >= 1");
        out.push_back(e.get<std::size_t>());
    }
    return out;
}

ChannelConfig parse_channel(const Section& s, std::uint64_t seed, const std::filesystem::path& base_dir) {
    ChannelConfig c;
    const auto source = s.get_or<std::string>("kind", "pdp");
    if (source == "pdp")
        c.source = ChannelSource::pdp;
    else if (source == "flat")
        c.source = ChannelSource::flat;
    else if (source == "iid")
        c.source = ChannelSource::iid;
    else if (source == "file")
        c.source = ChannelSource::file;
    else
        throw ConfigError(s.field("kind"), "expected pdp, flat, iid or file");

    c.seed = s.get_or<std::uint64_t>("seed", seed);
    if (c.source == ChannelSource::file) {
        c.file = s.get<std::string>("file");
        if (c.file.is_relative() && !base_dir.empty())
            c.file = base_dir / c.file;
        try {
            const ChannelFreqResponse h = load_channel(c.file);
            c.tones = h.tones();
            c.antennas = h.antennas();
        } catch (const IoError& e) {
            throw ConfigError(s.field("file"), e.what());
        }
        return c;
    }
    c.tones = s.count("tones", 0);
    if (!s.has("tones"))
        throw ConfigError(s.field("tones"), "missing");
    c.antennas = s.count("antennas", 1);

    if (s.has("pdp")) {
        const Section p = s.child("pdp", {"taps", "spacing_ns", "decay_ns"});
        c.taps = p.count("taps", c.taps);
        c.tap_spacing_s = p.positive("spacing_ns", c.tap_spacing_s * 1e9) * 1e-9;
        c.decay_s = p.positive("decay_ns", c.decay_s * 1e9) * 1e-9;
    }
    if (s.has("grid")) {
        const Section g = s.child("grid", {"base_hz", "bandwidth_hz"});
        c.base_hz = g.positive("base_hz", c.base_hz);
        c.bandwidth_hz = g.positive("bandwidth_hz", c.bandwidth_hz);
    }
    if (s.has("geometry")) {
        const Section g = s.child("geometry", {"spacing_m"});
        c.antenna_spacing_m = g.positive("spacing_m", 1.0);
    }
    return c;
}

RectennaModel parse_rectenna(const Section& s) {
    RectennaModel m;
    m.saturation_current = s.positive("saturation_current", m.saturation_current);
    m.ideality = s.positive("ideality", m.ideality);
    m.thermal_voltage = s.positive("thermal_voltage", m.thermal_voltage);
    m.antenna_resistance = s.positive("antenna_resistance", m.antenna_resistance);
    m.order = s.get_or<int>("order", m.order);
    if (m.order != 2 && m.order != 4)
        throw ConfigError(s.field("order"), "must be 2 or 4");
    return m;
}

RegionConfig parse_region(const Section& s) {
    RegionConfig r;
    if (s.has("modes")) {
        const json& modes = s.at("modes");
        if (!modes.is_array() || modes.empty())
            throw ConfigError(s.field("modes"), "must be a non-empty array");
        r.modes.clear();
        for (const auto& m : modes) {
            try {
                r.modes.push_back(region_mode_from_string(m.get<std::string>()));
            } catch (const std::exception&) {
                throw ConfigError(s.field("modes"), "entries must be PC, NC or NoWpt");
            }
        }
    }
    r.grid_size = s.count("grid_size", r.grid_size, 2);
    if (s.has("rbar")) {
        const json& v = s.at("rbar");
        if (!v.is_array() || v.size() < 2)
            throw ConfigError(s.field("rbar"), "must be an array of at least two rates");
        for (const auto& e : v) {
            if (!e.is_number() || e.get<double>() < 0.0)
                throw ConfigError(s.field("rbar"), "rates must be non-negative numbers");
            r.rbar.push_back(e.get<double>());
        }
    }
    r.tolerance = s.positive("tolerance", r.tolerance);
    r.max_iterations = static_cast<int>(s.count("max_iterations", static_cast<std::size_t>(r.max_iterations)));
    r.extrapolate = s.get_or<bool>("extrapolate", r.extrapolate);
    r.write_traces = s.get_or<bool>("write_traces", r.write_traces);
    return r;
}

ScalingConfig parse_scaling(const Section& s) {
    ScalingConfig c;
    try {
        c.spec.waveform = scaling_waveform_from_string(s.get<std::string>("waveform"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(s.field("waveform"), e.what());
    }
    try {
        c.spec.strategy = scaling_strategy_from_string(s.get<std::string>("strategy"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(s.field("strategy"), e.what());
    }
    try {
        c.spec.channel = channel_kind_from_string(s.get<std::string>("channel"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(s.field("channel"), e.what());
    }
    c.spec.tones = tone_list(s, "tones");
    c.spec.trials = s.count("trials", c.spec.trials);
    try {
        c.spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(s.field("tones"), e.what());
    }
    return c;
}

PaprConfig parse_papr(const Section& s) {
    PaprConfig p;
    p.tones = tone_list(s, "tones");
    p.trials = s.count("trials", p.trials);
    p.oversampling = static_cast<int>(s.count("oversampling", static_cast<std::size_t>(p.oversampling)));
    p.step_db = s.positive("step_db", p.step_db);
    return p;
}

}  // namespace

ExperimentConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
    const Section root(j, "",
                       {"mode", "seed", "threads", "output_dir", "power_w", "power_dbm", "noise_w", "noise_dbm",
                        "snr_db", "rectenna", "channel", "region", "scaling", "papr", "validate"});
    ExperimentConfig cfg;
    const auto mode = root.get<std::string>("mode");
    if (mode == "region")
        cfg.mode = ExperimentMode::region;
    else if (mode == "scaling")
        cfg.mode = ExperimentMode::scaling;
    else if (mode == "validate")
        cfg.mode = ExperimentMode::validate;
    else if (mode == "papr")
        cfg.mode = ExperimentMode::papr;
    else
        throw ConfigError("mode", "expected region, scaling, validate or papr");

    cfg.seed = root.get_or<std::uint64_t>("seed", cfg.seed);
    cfg.threads = static_cast<int>(root.count("threads", 1));
    cfg.output_dir = root.get_or<std::string>("output_dir", cfg.output_dir.string());

    const std::string power_key = exclusive(root, {"power_w", "power_dbm"});
    if (power_key == "power_w")
        cfg.power_w = root.positive("power_w", 1.0);
    else if (power_key == "power_dbm")
        cfg.power_w = dbm_to_watt(root.get<double>("power_dbm"));

    const std::string noise_key = exclusive(root, {"noise_w", "noise_dbm", "snr_db"});
    if (noise_key == "noise_w")
        cfg.noise_w = root.positive("noise_w", 1.0);
    else if (noise_key == "noise_dbm")
        cfg.noise_w = dbm_to_watt(root.get<double>("noise_dbm"));
    else if (noise_key == "snr_db")
        cfg.noise_w = cfg.power_w / std::pow(10.0, root.get<double>("snr_db") / 10.0);

    if (root.has("rectenna"))
        cfg.model = parse_rectenna(root.child("rectenna", {"saturation_current", "ideality", "thermal_voltage",
                                                           "antenna_resistance", "order"}));

    switch (cfg.mode) {
        case ExperimentMode::region:
            if (!cfg.noise_w)
                throw ConfigError("snr_db", "missing (or give noise_w / noise_dbm)");
            cfg.channel = parse_channel(
                root.child("channel", {"kind", "tones", "antennas", "seed", "pdp", "grid", "geometry", "file"}),
                cfg.seed, base_dir);
            if (root.has("region"))
                cfg.region = parse_region(root.child(
                    "region", {"modes", "grid_size", "rbar", "tolerance", "max_iterations", "extrapolate",
                               "write_traces"}));
            break;
        case ExperimentMode::scaling:
            cfg.scaling = parse_scaling(root.child("scaling", {"waveform", "strategy", "channel", "tones", "trials"}));
            break;
        case ExperimentMode::papr:
            cfg.papr = parse_papr(root.child("papr", {"tones", "trials", "oversampling", "step_db"}));
            break;
        case ExperimentMode::validate:
            if (root.has("validate")) {
                const Section v = root.child("validate", {"instances", "symbol_draws"});
                cfg.validate.instances = v.count("instances", cfg.validate.instances);
                cfg.validate.symbol_draws =
                    static_cast<int>(v.count("symbol_draws", static_cast<std::size_t>(cfg.validate.symbol_draws)));
            }
            break;
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(j, path.parent_path());
}

json config_to_json(const ExperimentConfig& cfg) {
    json j = {{"mode", to_string(cfg.mode)},
              {"seed", cfg.seed},
              {"threads", cfg.threads},
              {"output_dir", cfg.output_dir.string()},
              {"power_w", cfg.power_w},
              {"rectenna",
               {{"saturation_current", cfg.model.saturation_current},
                {"ideality", cfg.model.ideality},
                {"thermal_voltage", cfg.model.thermal_voltage},
                {"antenna_resistance", cfg.model.antenna_resistance},
                {"order", cfg.model.order}}}};
    if (cfg.noise_w)
        j["noise_w"] = *cfg.noise_w;
    switch (cfg.mode) {
        case ExperimentMode::region: {
            const auto& c = cfg.channel;
            json ch = {{"kind", to_string(c.source)}, {"tones", c.tones}, {"antennas", c.antennas}, {"seed", c.seed}};
            if (c.source == ChannelSource::pdp) {
                ch["pdp"] = {{"taps", c.taps}, {"spacing_ns", c.tap_spacing_s * 1e9}, {"decay_ns", c.decay_s * 1e9}};
                ch["grid"] = {{"base_hz", c.base_hz}, {"bandwidth_hz", c.bandwidth_hz}};
                if (c.antenna_spacing_m > 0.0)
                    ch["geometry"] = {{"spacing_m", c.antenna_spacing_m}};
            }
            if (c.source == ChannelSource::file)
                ch["file"] = c.file.string();
            j["channel"] = ch;
            json modes = json::array();
            for (auto m : cfg.region.modes)
                modes.push_back(to_string(m));
            j["region"] = {{"modes", modes},
                           {"grid_size", cfg.region.grid_size},
                           {"tolerance", cfg.region.tolerance},
                           {"max_iterations", cfg.region.max_iterations},
                           {"extrapolate", cfg.region.extrapolate},
                           {"write_traces", cfg.region.write_traces}};
            if (!cfg.region.rbar.empty())
                j["region"]["rbar"] = cfg.region.rbar;
            break;
        }
        case ExperimentMode::scaling: {
            const auto& s = cfg.scaling.spec;
            j["scaling"] = {{"waveform", to_string(s.waveform)},
                            {"strategy", to_string(s.strategy)},
                            {"channel", to_string(s.channel)},
                            {"tones", s.tones},
                            {"trials", s.trials}};
            break;
        }
        case ExperimentMode::papr:
            j["papr"] = {{"tones", cfg.papr.tones},
                         {"trials", cfg.papr.trials},
                         {"oversampling", cfg.papr.oversampling},
                         {"step_db", cfg.papr.step_db}};
            break;
        case ExperimentMode::validate:
            j["validate"] = {{"instances", cfg.validate.instances}, {"symbol_draws", cfg.validate.symbol_draws}};
            break;
    }
    return j;
}

ChannelFreqResponse build_channel(const ChannelConfig& c) {
    switch (c.source) {
        case ChannelSource::flat: return flat_channel(c.tones, c.antennas);
        case ChannelSource::iid: return iid_rayleigh_channel(c.tones, c.antennas, c.seed);
        case ChannelSource::file: return load_channel(c.file);
        case ChannelSource::pdp: break;
    }
    const auto pdp = PowerDelayProfile::exponential(c.taps, c.tap_spacing_s, c.decay_s);
    const auto grid = ToneGrid::from_bandwidth(c.tones, c.base_hz, c.bandwidth_hz);
    const ArrayGeometry geom = c.antennas == 1 ? ArrayGeometry::single()
                               : c.antenna_spacing_m > 0.0
                                   ? ArrayGeometry::ula(c.antennas, c.antenna_spacing_m)
                                   : ArrayGeometry::half_wavelength(c.antennas, c.base_hz);
    return frequency_response(sample_taps(pdp, c.seed), grid, geom);
}

}  // namespace wipt
