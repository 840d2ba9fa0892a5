#include "spinphase/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace spinphase {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, int line) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError("line " + std::to_string(line) + ": not a number: '" + s + "'");
    return v;
}

Complex parse_amplitude(const std::string& pair, int line) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos)
        throw ConfigError("line " + std::to_string(line) +
                          ": amplitude must be a re,im pair: '" + pair + "'");
    return Complex(parse_double(trim(pair.substr(0, comma)), line),
                   parse_double(trim(pair.substr(comma + 1)), line));
}

const char* initial_state_name(InitialStateKind k) {
    switch (k) {
    case InitialStateKind::Ket00: return "ket00";
    case InitialStateKind::Ket01: return "ket01";
    case InitialStateKind::Ket10: return "ket10";
    case InitialStateKind::Ket11: return "ket11";
    case InitialStateKind::Singlet: return "singlet";
    case InitialStateKind::Custom: return "custom";
    }
    return "?";
}

const char* propagator_name(PropagatorKind k) {
    switch (k) {
    case PropagatorKind::Analytic: return "analytic";
    case PropagatorKind::Expm: return "expm";
    case PropagatorKind::Rk4: return "rk4";
    }
    return "?";
}

} // namespace

ScenarioConfig parse_config_text(const std::string& text) {
    ScenarioConfig c;
    bool have_amplitudes = false;

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string stripped = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        if (key == "B") c.params.B = parse_double(value, line);
        else if (key == "theta") c.params.theta = parse_double(value, line);
        else if (key == "omega") c.params.omega = parse_double(value, line);
        else if (key == "J") c.params.J = parse_double(value, line);
        else if (key == "t_final") c.t_final = parse_double(value, line);
        else if (key == "steps") c.steps = static_cast<int>(parse_double(value, line));
        else if (key == "initial_state") {
            if (value == "ket00") c.initial_state = InitialStateKind::Ket00;
            else if (value == "ket01") c.initial_state = InitialStateKind::Ket01;
            else if (value == "ket10") c.initial_state = InitialStateKind::Ket10;
            else if (value == "ket11") c.initial_state = InitialStateKind::Ket11;
            else if (value == "singlet") c.initial_state = InitialStateKind::Singlet;
            else if (value == "custom") c.initial_state = InitialStateKind::Custom;
            else
                throw ConfigError("line " + std::to_string(line) + ": unknown initial_state '" +
                                  value + "'");
        } else if (key == "amplitudes") {
            std::istringstream pairs(value);
            std::string pair;
            int n = 0;
            while (pairs >> pair) {
                if (n >= 4)
                    throw ConfigError("line " + std::to_string(line) +
                                      ": expected exactly 4 amplitudes");
                c.amplitudes[n++] = parse_amplitude(pair, line);
            }
            if (n != 4)
                throw ConfigError("line " + std::to_string(line) +
                                  ": expected exactly 4 amplitudes");
            have_amplitudes = true;
        } else if (key == "propagator") {
            if (value == "analytic") c.propagator = PropagatorKind::Analytic;
            else if (value == "expm") c.propagator = PropagatorKind::Expm;
            else if (value == "rk4") c.propagator = PropagatorKind::Rk4;
            else
                throw ConfigError("line " + std::to_string(line) + ": unknown propagator '" +
                                  value + "'");
        } else if (key == "degeneracy_policy") {
            if (value == "error") c.degeneracy_policy = DegeneracyPolicy::Error;
            else if (value == "skip") c.degeneracy_policy = DegeneracyPolicy::Skip;
            else
                throw ConfigError("line " + std::to_string(line) +
                                  ": degeneracy_policy must be error or skip");
        } else if (key.rfind("tol.", 0) == 0) {
            c.tolerances[key.substr(4)] = parse_double(value, line);
        } else {
            throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
    }

    validate(c.params);
    if (!(c.t_final > 0.0)) throw ConfigError("t_final must be > 0");
    if (c.steps < 16) throw ConfigError("steps must be >= 16");
    if (c.initial_state == InitialStateKind::Custom) {
        if (!have_amplitudes)
            throw ConfigError("initial_state = custom requires an amplitudes entry");
        double norm2 = 0.0;
        for (const Complex& z : c.amplitudes) norm2 += std::norm(z);
        const double norm = std::sqrt(norm2);
        if (std::fabs(norm - 1.0) > 1e-6)
            throw ConfigError("custom amplitudes have norm " + fmt17(norm) +
                              ", more than 1e-6 away from 1");
        // Renormalize, but leave rounding-level deviations untouched so that
        // parse -> serialize -> parse is the identity.
        if (std::fabs(norm - 1.0) > 1e-14)
            for (Complex& z : c.amplitudes) z /= norm;
    }
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string serialize_config(const ScenarioConfig& c) {
    std::ostringstream os;
    os << "B = " << fmt17(c.params.B) << "\n";
    os << "theta = " << fmt17(c.params.theta) << "\n";
    os << "omega = " << fmt17(c.params.omega) << "\n";
    os << "J = " << fmt17(c.params.J) << "\n";
    os << "initial_state = " << initial_state_name(c.initial_state) << "\n";
    if (c.initial_state == InitialStateKind::Custom) {
        os << "amplitudes =";
        for (const Complex& z : c.amplitudes)
            os << " " << fmt17(z.real()) << "," << fmt17(z.imag());
        os << "\n";
    }
    os << "t_final = " << fmt17(c.t_final) << "\n";
    os << "steps = " << c.steps << "\n";
    os << "propagator = " << propagator_name(c.propagator) << "\n";
    os << "degeneracy_policy = "
       << (c.degeneracy_policy == DegeneracyPolicy::Error ? "error" : "skip") << "\n";
    for (const auto& [name, value] : c.tolerances)
        os << "tol." << name << " = " << fmt17(value) << "\n";
    return os.str();
}

PureState4 initial_state(const ScenarioConfig& c) {
    switch (c.initial_state) {
    case InitialStateKind::Ket00: return ket00();
    case InitialStateKind::Ket01: return ket01();
    case InitialStateKind::Ket10: return ket10();
    case InitialStateKind::Ket11: return ket11();
    case InitialStateKind::Singlet: return singlet();
    case InitialStateKind::Custom: return PureState4{c.amplitudes};
    }
    throw ConfigError("invalid initial state");
}

double tolerance(const ScenarioConfig& c, const std::string& name) {
    const auto it = c.tolerances.find(name);
    if (it == c.tolerances.end()) throw ConfigError("unknown tolerance name: " + name);
    return it->second;
}

void apply_tolerance_override(ScenarioConfig& c, const std::string& name_value) {
    const auto eq = name_value.find('=');
    if (eq == std::string::npos)
        throw ConfigError("tolerance override must look like name=value: " + name_value);
    const std::string name = trim(name_value.substr(0, eq));
    const std::string value = trim(name_value.substr(eq + 1));
    if (name.empty()) throw ConfigError("tolerance override has an empty name");
    c.tolerances[name] = parse_double(value, 0);
}

} // namespace spinphase
