#include "afcfo/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace afcfo {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& key, const std::string& detail) {
    throw ConfigError(ConfigError::Kind::invalid_value, key + ": " + detail);
}

std::string render(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) invalid(where.empty() ? "<root>" : where, "expected an object");
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
        if (!keys.contains(key)) {
            const std::string full = where.empty() ? key : where + "." + key;
            throw ConfigError(ConfigError::Kind::unknown_key, "unknown key '" + full + "'");
        }
    }
}

template <typename T>
T get(const json& obj, const std::string& where, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        invalid(where.empty() ? key : where + "." + key, "wrong type (" + obj.at(key).dump() + ")");
    }
}

PowerDelayProfile parse_profile(const json& j, const std::string& where) {
    reject_unknown(j, where, {"type", "power", "taps", "decay", "tap_powers"});
    const auto type = get<std::string>(j, where, "type", "flat");
    const double power = get<double>(j, where, "power", 1.0);
    if (!(power >= 0.0) || !std::isfinite(power)) invalid(where + ".power", "must be finite and >= 0, got " + render(power));
    if (type == "flat") return PowerDelayProfile::flat(power);
    if (type == "uniform") {
        const long taps = get<long>(j, where, "taps", 4);
        if (taps < 1) invalid(where + ".taps", "must be >= 1, got " + std::to_string(taps));
        return PowerDelayProfile::uniform(taps, power);
    }
    if (type == "exponential") {
        const long taps = get<long>(j, where, "taps", 4);
        const double decay = get<double>(j, where, "decay", 1.0);
        if (taps < 1) invalid(where + ".taps", "must be >= 1, got " + std::to_string(taps));
        if (!(decay > 0.0)) invalid(where + ".decay", "must be > 0, got " + render(decay));
        return PowerDelayProfile::exponential(taps, power, decay);
    }
    if (type == "custom") {
        PowerDelayProfile p{get<std::vector<double>>(j, where, "tap_powers", {})};
        if (p.tap_powers.empty()) invalid(where + ".tap_powers", "needs at least one tap");
        return p;
    }
    invalid(where + ".type", "unknown profile type '" + type + "' (flat, uniform, exponential, custom)");
}

json profile_json(const PowerDelayProfile& p) {
    return json{{"type", "custom"}, {"tap_powers", p.tap_powers}};
}

SweepAxis parse_axis(const std::string& s) {
    if (s == "eps1") return SweepAxis::eps1;
    if (s == "eps2") return SweepAxis::eps2;
    if (s == "both_equal") return SweepAxis::both_equal;
    invalid("sweep.axis", "unknown axis '" + s + "' (eps1, eps2, both_equal)");
}

void check_offset(const std::string& key, double eps) {
    if (!std::isfinite(eps) || std::abs(eps) >= 0.5) {
        invalid(key, "value " + render(eps) + " violates the fractional CFO bound |eps| < 0.5");
    }
}

void check_noise(const std::string& key, double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) invalid(key, "noise variance must be finite and >= 0, got " + render(v));
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Shipped presets. Flat: every hop single tap. Selective: four equal-power
// taps per hop, which with N_g = 16 satisfies N_g >= L2 + L3. Both keep equal
// noise variances and sigma_H3^2 = 4 sigma_H1^2.
constexpr std::string_view kFig3Flat = R"({
  "name": "fig3_flat",
  "ofdm": {"N": 64, "cp_length": 16, "constellation": "qpsk", "sigma_x_sq": 1.0},
  "channels": {
    "direct": {"type": "flat", "power": 1.0},
    "hop1": {"type": "flat", "power": 1.0},
    "hop2": {"type": "flat", "power": 4.0}
  },
  "noise": {"z1": 0.1, "z2": 0.1, "z3": 0.1},
  "noise_scales": [1.0, 0.1],
  "sweep": {"axis": ["eps1", "eps2"], "grid": [0.0, 0.1, 0.2, 0.3, 0.4]},
  "gain": {"mode": "upa", "P": 2.0},
  "trials": 2000,
  "seed": 20101,
  "mode": "both"
})";

constexpr std::string_view kFig4Selective = R"({
  "name": "fig4_selective",
  "ofdm": {"N": 64, "cp_length": 16, "constellation": "qpsk", "sigma_x_sq": 1.0},
  "channels": {
    "direct": {"type": "uniform", "taps": 4, "power": 1.0},
    "hop1": {"type": "uniform", "taps": 4, "power": 1.0},
    "hop2": {"type": "uniform", "taps": 4, "power": 4.0}
  },
  "noise": {"z1": 0.1, "z2": 0.1, "z3": 0.1},
  "noise_scales": [1.0, 0.1],
  "sweep": {"axis": ["eps1", "eps2"], "grid": [0.0, 0.1, 0.2, 0.3, 0.4]},
  "gain": {"mode": "upa", "P": 2.0},
  "trials": 2000,
  "seed": 20101,
  "mode": "both"
})";

constexpr std::string_view kTwoRelay = R"({
  "name": "two_relay_flat",
  "ofdm": {"N": 64, "cp_length": 16, "constellation": "qpsk", "sigma_x_sq": 1.0},
  "channels": {"direct": {"type": "flat", "power": 1.0}},
  "noise": {"z1": 0.1},
  "relays": [
    {"hop1": {"type": "flat", "power": 1.0}, "hop2": {"type": "flat", "power": 4.0},
     "noise_relay": 0.1, "noise_dest": 0.1},
    {"hop1": {"type": "flat", "power": 1.0}, "hop2": {"type": "flat", "power": 2.0},
     "noise_relay": 0.1, "noise_dest": 0.1}
  ],
  "noise_scales": [1.0],
  "sweep": {"axis": ["eps1", "eps2"], "grid": [0.0, 0.1, 0.2, 0.3, 0.4]},
  "gain": {"mode": "upa", "P": 2.0},
  "trials": 2000,
  "seed": 20101,
  "mode": "both"
})";

}  // namespace

std::string_view to_string(SweepAxis a) noexcept {
    switch (a) {
        case SweepAxis::eps1: return "eps1";
        case SweepAxis::eps2: return "eps2";
        case SweepAxis::both_equal: return "both_equal";
    }
    return "?";
}

std::string_view to_string(RunMode m) noexcept {
    switch (m) {
        case RunMode::analytical: return "analytical";
        case RunMode::simulate: return "simulate";
        case RunMode::both: return "both";
    }
    return "?";
}

RunMode parse_run_mode(std::string_view name) {
    if (name == "analytical") return RunMode::analytical;
    if (name == "simulate") return RunMode::simulate;
    if (name == "both") return RunMode::both;
    invalid("mode", "unknown mode '" + std::string(name) + "' (analytical, simulate, both)");
}

void ExperimentConfig::validate() const {
    try {
        ofdm.validate();
    } catch (const std::invalid_argument& e) {
        invalid("ofdm", e.what());
    }
    if (direct.tap_powers.empty()) invalid("channels.direct", "needs at least one tap");
    if (ofdm.cp_length < direct.delay_spread()) {
        invalid("channels.direct", "ISI condition N_g >= L1 violated: N_g = " + std::to_string(ofdm.cp_length) +
                                       ", L1 = " + std::to_string(direct.delay_spread()));
    }
    check_noise("noise.z1", noise_direct);
    if (relays.empty() && !multi_relay) invalid("relays", "single-relay topology needs one relay");
    for (std::size_t i = 0; i < relays.size(); ++i) {
        const RelayConfig& r = relays[i];
        const std::string key = multi_relay ? "relays[" + std::to_string(i) + "]" : "channels";
        if (r.hop1.tap_powers.empty() || r.hop2.tap_powers.empty()) invalid(key, "hops need at least one tap");
        const long needed = r.hop1.delay_spread() + r.hop2.delay_spread();
        if (ofdm.cp_length < needed) {
            invalid(key, "ISI condition N_g >= L2 + L3 violated: N_g = " + std::to_string(ofdm.cp_length) +
                             ", L2 + L3 = " + std::to_string(needed));
        }
        check_noise(multi_relay ? key + ".noise_relay" : "noise.z2", r.noise_relay);
        check_noise(multi_relay ? key + ".noise_dest" : "noise.z3", r.noise_dest);
        if (gain.mode == GainMode::upa_asymptotic && !(r.hop1.total_power() > 0.0)) {
            invalid(key, "asymptotic UPA needs a source-to-relay channel power > 0");
        }
    }
    if (noise_scales.empty()) invalid("noise_scales", "needs at least one entry");
    for (std::size_t i = 0; i < noise_scales.size(); ++i) {
        const double s = noise_scales[i];
        if (!(s >= 0.0) || !std::isfinite(s)) {
            invalid("noise_scales[" + std::to_string(i) + "]", "must be finite and >= 0, got " + render(s));
        }
    }
    if (sweep.axes.empty()) invalid("sweep.axis", "needs at least one axis");
    if (sweep.grid.empty()) invalid("sweep.grid", "needs at least one point");
    for (std::size_t i = 0; i < sweep.grid.size(); ++i) {
        check_offset("sweep.grid[" + std::to_string(i) + "]", sweep.grid[i]);
    }
    check_offset("sweep.fixed_eps1", sweep.fixed_eps1);
    check_offset("sweep.fixed_eps2", sweep.fixed_eps2);
    switch (gain.mode) {
        case GainMode::fixed:
            if (!(gain.rho > 0.0)) invalid("gain.rho", "must be > 0, got " + render(gain.rho));
            break;
        case GainMode::general:
            if (!(gain.source_power > 0.0)) invalid("gain.P_S", "must be > 0, got " + render(gain.source_power));
            if (!(gain.relay_power > 0.0)) invalid("gain.P_R", "must be > 0, got " + render(gain.relay_power));
            break;
        case GainMode::upa:
            if (!(gain.total_power > 0.0)) invalid("gain.P", "must be > 0, got " + render(gain.total_power));
            break;
        case GainMode::upa_asymptotic: break;
    }
    if (trials < 1) invalid("trials", "must be >= 1, got " + std::to_string(trials));
}

ExperimentConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(ConfigError::Kind::parse, std::string("parse error: ") + e.what());
    }
    reject_unknown(root, "", {"name", "ofdm", "channels", "noise", "relays", "noise_scales", "sweep", "gain",
                              "trials", "seed", "mode", "workers", "sensitivity"});

    ExperimentConfig cfg;
    cfg.name = get<std::string>(root, "", "name", cfg.name);

    if (root.contains("ofdm")) {
        const json& o = root["ofdm"];
        reject_unknown(o, "ofdm", {"N", "cp_length", "constellation", "sigma_x_sq"});
        cfg.ofdm.N = get<long>(o, "ofdm", "N", cfg.ofdm.N);
        cfg.ofdm.cp_length = get<long>(o, "ofdm", "cp_length", cfg.ofdm.cp_length);
        cfg.ofdm.sigma_x_sq = get<double>(o, "ofdm", "sigma_x_sq", cfg.ofdm.sigma_x_sq);
        try {
            cfg.ofdm.constellation =
                parse_constellation(get<std::string>(o, "ofdm", "constellation", "qpsk"));
        } catch (const std::invalid_argument& e) {
            invalid("ofdm.constellation", e.what());
        }
    }

    cfg.multi_relay = root.contains("relays");
    const json channels = root.value("channels", json::object());
    const json noise = root.value("noise", json::object());
    if (cfg.multi_relay) {
        reject_unknown(channels, "channels", {"direct"});
        reject_unknown(noise, "noise", {"z1"});
    } else {
        reject_unknown(channels, "channels", {"direct", "hop1", "hop2"});
        reject_unknown(noise, "noise", {"z1", "z2", "z3"});
    }
    if (channels.contains("direct")) cfg.direct = parse_profile(channels["direct"], "channels.direct");
    cfg.noise_direct = get<double>(noise, "noise", "z1", cfg.noise_direct);

    if (cfg.multi_relay) {
        const json& list = root["relays"];
        if (!list.is_array()) invalid("relays", "expected an array");
        cfg.relays.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string where = "relays[" + std::to_string(i) + "]";
            const json& r = list[i];
            reject_unknown(r, where, {"hop1", "hop2", "noise_relay", "noise_dest"});
            RelayConfig rc;
            rc.hop1 = r.contains("hop1") ? parse_profile(r["hop1"], where + ".hop1") : PowerDelayProfile::flat(1.0);
            rc.hop2 = r.contains("hop2") ? parse_profile(r["hop2"], where + ".hop2") : PowerDelayProfile::flat(1.0);
            rc.noise_relay = get<double>(r, where, "noise_relay", rc.noise_relay);
            rc.noise_dest = get<double>(r, where, "noise_dest", rc.noise_dest);
            cfg.relays.push_back(std::move(rc));
        }
    } else {
        RelayConfig& rc = cfg.relays.front();
        if (channels.contains("hop1")) rc.hop1 = parse_profile(channels["hop1"], "channels.hop1");
        if (channels.contains("hop2")) rc.hop2 = parse_profile(channels["hop2"], "channels.hop2");
        rc.noise_relay = get<double>(noise, "noise", "z2", rc.noise_relay);
        rc.noise_dest = get<double>(noise, "noise", "z3", rc.noise_dest);
    }

    cfg.noise_scales = get<std::vector<double>>(root, "", "noise_scales", cfg.noise_scales);

    if (root.contains("sweep")) {
        const json& s = root["sweep"];
        reject_unknown(s, "sweep", {"axis", "grid", "fixed_eps1", "fixed_eps2"});
        if (s.contains("axis")) {
            cfg.sweep.axes.clear();
            if (s["axis"].is_string()) {
                cfg.sweep.axes.push_back(parse_axis(s["axis"].get<std::string>()));
            } else {
                for (const auto& a : get<std::vector<std::string>>(s, "sweep", "axis", {})) {
                    cfg.sweep.axes.push_back(parse_axis(a));
                }
            }
        }
        cfg.sweep.grid = get<std::vector<double>>(s, "sweep", "grid", cfg.sweep.grid);
        cfg.sweep.fixed_eps1 = get<double>(s, "sweep", "fixed_eps1", cfg.sweep.fixed_eps1);
        cfg.sweep.fixed_eps2 = get<double>(s, "sweep", "fixed_eps2", cfg.sweep.fixed_eps2);
    }

    if (root.contains("gain")) {
        const json& g = root["gain"];
        reject_unknown(g, "gain", {"mode", "rho", "P", "P_S", "P_R"});
        try {
            cfg.gain.mode = parse_gain_mode(get<std::string>(g, "gain", "mode", "upa"));
        } catch (const std::invalid_argument& e) {
            invalid("gain.mode", e.what());
        }
        cfg.gain.rho = get<double>(g, "gain", "rho", cfg.gain.rho);
        cfg.gain.total_power = get<double>(g, "gain", "P", cfg.gain.total_power);
        cfg.gain.source_power = get<double>(g, "gain", "P_S", cfg.gain.source_power);
        cfg.gain.relay_power = get<double>(g, "gain", "P_R", cfg.gain.relay_power);
    }

    cfg.trials = get<long>(root, "", "trials", cfg.trials);
    cfg.master_seed = get<std::uint64_t>(root, "", "seed", cfg.master_seed);
    cfg.mode = parse_run_mode(get<std::string>(root, "", "mode", "both"));
    cfg.workers = get<unsigned>(root, "", "workers", cfg.workers);
    const auto variant = get<std::string>(root, "", "sensitivity", "chain_rule");
    if (variant == "chain_rule") {
        cfg.sensitivity = SensitivityVariant::chain_rule;
    } else if (variant == "paper_literal") {
        cfg.sensitivity = SensitivityVariant::paper_literal;
    } else {
        invalid("sensitivity", "unknown variant '" + variant + "' (chain_rule, paper_literal)");
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(ConfigError::Kind::io, "cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string to_json(const ExperimentConfig& cfg) {
    json j;
    j["name"] = cfg.name;
    j["ofdm"] = {{"N", cfg.ofdm.N},
                 {"cp_length", cfg.ofdm.cp_length},
                 {"constellation", std::string(to_string(cfg.ofdm.constellation))},
                 {"sigma_x_sq", cfg.ofdm.sigma_x_sq}};
    if (cfg.multi_relay) {
        j["channels"] = {{"direct", profile_json(cfg.direct)}};
        j["noise"] = {{"z1", cfg.noise_direct}};
        json list = json::array();
        for (const RelayConfig& r : cfg.relays) {
            list.push_back({{"hop1", profile_json(r.hop1)},
                            {"hop2", profile_json(r.hop2)},
                            {"noise_relay", r.noise_relay},
                            {"noise_dest", r.noise_dest}});
        }
        j["relays"] = list;
    } else {
        const RelayConfig& r = cfg.relays.front();
        j["channels"] = {{"direct", profile_json(cfg.direct)},
                         {"hop1", profile_json(r.hop1)},
                         {"hop2", profile_json(r.hop2)}};
        j["noise"] = {{"z1", cfg.noise_direct}, {"z2", r.noise_relay}, {"z3", r.noise_dest}};
    }
    j["noise_scales"] = cfg.noise_scales;
    json axes = json::array();
    for (SweepAxis a : cfg.sweep.axes) axes.push_back(std::string(to_string(a)));
    j["sweep"] = {{"axis", axes},
                  {"grid", cfg.sweep.grid},
                  {"fixed_eps1", cfg.sweep.fixed_eps1},
                  {"fixed_eps2", cfg.sweep.fixed_eps2}};
    j["gain"] = {{"mode", std::string(to_string(cfg.gain.mode))},
                 {"rho", cfg.gain.rho},
                 {"P", cfg.gain.total_power},
                 {"P_S", cfg.gain.source_power},
                 {"P_R", cfg.gain.relay_power}};
    j["trials"] = cfg.trials;
    j["seed"] = cfg.master_seed;
    j["mode"] = std::string(to_string(cfg.mode));
    j["workers"] = cfg.workers;
    j["sensitivity"] = std::string(to_string(cfg.sensitivity));
    return j.dump(2);
}

std::string config_digest(const ExperimentConfig& cfg) {
    // Worker count does not affect results, so it is left out of the digest.
    ExperimentConfig canonical = cfg;
    canonical.workers = 0;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_json(canonical))));
    return buf;
}

const std::vector<Preset>& presets() {
    static const std::vector<Preset> list{
        {"fig3_flat", "single relay, flat Rayleigh fading on every hop", kFig3Flat},
        {"fig4_selective", "single relay, 4-tap uniform Rayleigh profile on every hop", kFig4Selective},
        {"two_relay_flat", "direct link plus two flat-fading relay branches", kTwoRelay},
    };
    return list;
}

ExperimentConfig load_preset(std::string_view name) {
    for (const Preset& p : presets()) {
        if (p.name == name) return parse_config(p.json);
    }
    throw ConfigError(ConfigError::Kind::io, "no config file or preset named '" + std::string(name) + "'");
}

ExperimentConfig resolve_config(const std::string& path_or_preset) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(path_or_preset, ec)) return load_config(path_or_preset);
    return load_preset(path_or_preset);
}

}  // namespace afcfo
