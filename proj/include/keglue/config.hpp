#pragma once

#include <fstream>
#include <map>
#include <sstream>

#include "keglue/params.hpp"

namespace keglue {

/// key=value configuration with optional [section] headers; later entries
/// override earlier ones, '#' and ';' start comments.
struct Config {
    std::map<std::string, std::string> kv;

    static std::string trim(const std::string& s) {
        const auto a = s.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) return "";
        const auto b = s.find_last_not_of(" \t\r\n");
        return s.substr(a, b - a + 1);
    }

    static Config parse(std::istream& in) {
        Config c;
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto cut = line.find_first_of("#;");
            if (cut != std::string::npos) line = line.substr(0, cut);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ConfigParseError("line " + std::to_string(lineno) +
                                           ": unterminated section header");
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigParseError("line " + std::to_string(lineno) +
                                       ": expected key=value, got '" + line + "'");
            std::string key = trim(line.substr(0, eq));
            const std::string val = trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigParseError("line " + std::to_string(lineno) + ": empty key");
            if (!section.empty()) key = section + "." + key;
            c.kv[key] = val;
        }
        return c;
    }

    static Config parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigParseError("cannot open config file: " + path);
        return parse(in);
    }

    bool has(const std::string& key) const { return kv.count(key) > 0; }

    std::string get(const std::string& key, const std::string& fallback) const {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(it->second, &pos);
        } catch (const std::exception&) {
            throw ConfigParseError("key '" + key + "': not a number: '" + it->second + "'");
        }
        if (pos != it->second.size())
            throw ConfigParseError("key '" + key + "': trailing junk in '" + it->second + "'");
        return v;
    }

    int get_int(const std::string& key, int fallback) const {
        const double v = get_double(key, double(fallback));
        if (v != std::floor(v))
            throw ConfigParseError("key '" + key + "': expected an integer");
        return int(v);
    }

    GluingParams gluing(const std::string& section = "gluing") const {
        GluingParams gp;
        gp.delta = get_double(section + ".delta", gp.delta);
        gp.beta = get_double(section + ".beta", gp.beta);
        gp.gamma = get_double(section + ".gamma", gp.gamma);
        gp.c2 = get_double(section + ".c2", gp.c2);
        for (int i = 0; i < 3; ++i) {
            const std::string re = section + ".ph" + std::to_string(i + 1) + "_re";
            const std::string im = section + ".ph" + std::to_string(i + 1) + "_im";
            gp.ph_coeffs[i] = cplx(get_double(re, 0.0), get_double(im, 0.0));
        }
        gp.validate();
        return gp;
    }
};

}  // namespace keglue
