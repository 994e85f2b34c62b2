#include "sfd/config.hpp"

#include <fstream>
#include <sstream>

#include "sfd/numfmt.hpp"

namespace sfd {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
    }
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for " + key + ": '" + v + "'");
    }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string entry = trim(line);
        if (entry.empty()) continue;

        const auto eq = entry.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(entry.substr(0, eq));
        const std::string value = trim(entry.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        }

        if (key == "alpha") {
            c.alpha = parse_double(key, value);
        } else if (key == "n_cells") {
            c.n_cells = parse_int(key, value);
        } else if (key == "tau") {
            c.tau = parse_double(key, value);
        } else if (key == "t_end") {
            c.t_end = parse_double(key, value);
        } else if (key == "scheme") {
            c.scheme = parse_scheme(value);
        } else if (key == "newton_tol") {
            c.newton_tol = parse_double(key, value);
        } else if (key == "newton_max_iter") {
            c.newton_max_iter = parse_int(key, value);
        } else if (key == "initial") {
            c.initial = value;
        } else if (key == "snapshot_every") {
            c.snapshot_every = parse_int(key, value);
        } else if (key == "particles") {
            c.particles = parse_int(key, value);
        } else if (key == "assembler") {
            c.assembler = parse_assembler(value);
        } else if (key == "fit_window_start") {
            c.fit_window_start = parse_double(key, value);
        } else if (key == "fit_window_end") {
            c.fit_window_end = parse_double(key, value);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    return c;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::string render_config(const RunConfig& c) {
    std::ostringstream out;
    out << "alpha = " << format_full(c.alpha) << "\n";
    out << "n_cells = " << c.n_cells << "\n";
    out << "tau = " << format_full(c.tau) << "\n";
    out << "t_end = " << format_full(c.t_end) << "\n";
    out << "scheme = " << to_string(c.scheme) << "\n";
    out << "newton_tol = " << format_full(c.newton_tol) << "\n";
    out << "newton_max_iter = " << c.newton_max_iter << "\n";
    out << "initial = " << c.initial << "\n";
    out << "snapshot_every = " << c.snapshot_every << "\n";
    out << "particles = " << c.particles << "\n";
    out << "assembler = " << to_string(c.assembler) << "\n";
    if (c.fit_window_start) out << "fit_window_start = " << format_full(*c.fit_window_start) << "\n";
    if (c.fit_window_end) out << "fit_window_end = " << format_full(*c.fit_window_end) << "\n";
    return out.str();
}

}  // namespace sfd
