#include "leoacq/scenario.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace leoacq {

namespace {

// Key table in canonical dump order.
constexpr const char* kKeys[] = {
    "distance_km",    "loss_tx",       "loss_rx",        "split_ratio",
    "aperture_dr_cm", "responsivity_a_w", "noise_na",    "snr_db",
    "power_pt_mw",    "sigma_urad",    "vib_freq_hz",    "omega_urad",
    "pitch_d_urad",   "fou_u_mrad",    "speed_v_mrad_s", "reset_s",
    "p_v",            "kappa_mrad",
};

double* field_of(Scenario& sc, const std::string& key) {
    static const std::map<std::string, double Scenario::*> table = {
        {"distance_km", &Scenario::distance_km},
        {"loss_tx", &Scenario::loss_tx},
        {"loss_rx", &Scenario::loss_rx},
        {"split_ratio", &Scenario::split_ratio},
        {"aperture_dr_cm", &Scenario::aperture_dr_cm},
        {"responsivity_a_w", &Scenario::responsivity_a_w},
        {"noise_na", &Scenario::noise_na},
        {"snr_db", &Scenario::snr_db},
        {"power_pt_mw", &Scenario::power_pt_mw},
        {"sigma_urad", &Scenario::sigma_urad},
        {"vib_freq_hz", &Scenario::vib_freq_hz},
        {"omega_urad", &Scenario::omega_urad},
        {"pitch_d_urad", &Scenario::pitch_d_urad},
        {"fou_u_mrad", &Scenario::fou_u_mrad},
        {"speed_v_mrad_s", &Scenario::speed_v_mrad_s},
        {"reset_s", &Scenario::reset_s},
        {"p_v", &Scenario::p_v},
        {"kappa_mrad", &Scenario::kappa_mrad},
        {"gamma", &Scenario::gamma},
        {"alpha", &Scenario::alpha},
        {"beta", &Scenario::beta},
    };
    auto it = table.find(key);
    return it == table.end() ? nullptr : &(sc.*(it->second));
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, int line, const std::string& key) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ScenarioError(line, key, "scenario line " + std::to_string(line) +
                                           ": key '" + key + "' has non-numeric value '" +
                                           text + "'");
    return v;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

Scenario parse_scenario(std::istream& in) {
    Scenario sc{};
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    bool have_triple[3] = {false, false, false};
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ScenarioError(lineno, "", "scenario line " + std::to_string(lineno) +
                                                ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ScenarioError(lineno, key, "scenario line " + std::to_string(lineno) +
                                                 ": empty key or value");
        if (!seen.insert(key).second)
            throw ScenarioError(lineno, key, "scenario line " + std::to_string(lineno) +
                                                 ": duplicate key '" + key + "'");
        if (key == "turb") {
            if (value.size() != 5 || value.compare(0, 4, "turb") != 0 ||
                value[4] < '1' || value[4] > '5')
                throw ScenarioError(lineno, key,
                                    "scenario line " + std::to_string(lineno) +
                                        ": turb must be one of turb1..turb5, got '" +
                                        value + "'");
            sc.turb_preset = value[4] - '0';
            continue;
        }
        double* slot = field_of(sc, key);
        if (!slot)
            throw ScenarioError(lineno, key, "scenario line " + std::to_string(lineno) +
                                                 ": unknown key '" + key + "'");
        *slot = parse_number(value, lineno, key);
        if (key == "gamma") have_triple[0] = true;
        if (key == "alpha") have_triple[1] = true;
        if (key == "beta") have_triple[2] = true;
    }
    for (const char* key : kKeys)
        if (!seen.count(key))
            throw ScenarioError(0, key, "scenario: missing required key '" +
                                            std::string(key) + "'");
    const bool any_triple = have_triple[0] || have_triple[1] || have_triple[2];
    const bool all_triple = have_triple[0] && have_triple[1] && have_triple[2];
    if (sc.turb_preset && any_triple)
        throw ScenarioError(0, "turb",
                            "scenario: give either 'turb = turbN' or an explicit "
                            "gamma/alpha/beta triple, not both");
    if (!sc.turb_preset && !all_triple)
        throw ScenarioError(0, "turb",
                            "scenario: turbulence missing; set 'turb = turbN' or all of "
                            "gamma, alpha, beta");
    if (sc.turb_preset) {
        const TurbulenceParams t = turbulence_preset(*sc.turb_preset);
        sc.gamma = t.gamma;
        sc.alpha = t.alpha;
        sc.beta = t.beta;
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ScenarioError(0, "", "cannot open scenario file '" + path + "'");
    return parse_scenario(in);
}

std::string dump_scenario(const Scenario& sc) {
    Scenario copy = sc;
    std::ostringstream out;
    for (const char* key : kKeys)
        out << key << " = " << format_double(*field_of(copy, key)) << "\n";
    if (sc.turb_preset) {
        out << "turb = turb" << *sc.turb_preset << "\n";
    } else {
        out << "gamma = " << format_double(sc.gamma) << "\n";
        out << "alpha = " << format_double(sc.alpha) << "\n";
        out << "beta = " << format_double(sc.beta) << "\n";
    }
    return out.str();
}

LinkParams Scenario::link() const {
    return LinkParams{
        distance_km * 1e3,  loss_tx,          loss_rx,
        split_ratio,        aperture_dr_cm * 1e-2, responsivity_a_w,
        noise_na * 1e-9,    snr_db,           power_pt_mw * 1e-3,
    };
}

TurbulenceParams Scenario::turbulence() const { return {gamma, alpha, beta}; }

VibrationParams Scenario::vibration() const { return {sigma_urad * 1e-6, vib_freq_hz}; }

ScanParams Scenario::scan() const {
    return ScanParams{
        omega_urad * 1e-6,     pitch_d_urad * 1e-6, fou_u_mrad * 1e-3,
        speed_v_mrad_s * 1e-3, reset_s,             p_v,
        kappa_mrad * 1e-3,
    };
}

}  // namespace leoacq
