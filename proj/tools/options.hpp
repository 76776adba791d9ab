#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "r2dpca/errors.hpp"

namespace r2dpca::cli {

// Flat key=value options merged from a config file and --key overrides;
// command-line values win. Boolean flags take no argument.
class Options {
public:
    static const std::set<std::string>& flag_keys() {
        static const std::set<std::string> flags = {"exhaustive", "eval-on-train"};
        return flags;
    }

    static Options parse(int argc, char** argv, int first) {
        Options cli;
        for (int i = first; i < argc; ++i) {
            std::string arg = argv[i];
            if (arg.rfind("--", 0) != 0)
                throw InvalidParameter("expected --key, got '" + arg + "'");
            std::string key = arg.substr(2);
            if (key.empty())
                throw InvalidParameter("empty option name");
            const std::size_t eq = key.find('=');
            if (eq != std::string::npos) {
                cli.values_[key.substr(0, eq)] = key.substr(eq + 1);
            } else if (flag_keys().count(key)) {
                cli.values_[key] = "true";
            } else {
                if (i + 1 >= argc)
                    throw InvalidParameter("option --" + key + " needs a value");
                cli.values_[key] = argv[++i];
            }
        }
        if (cli.has("config")) {
            Options merged = from_file(cli.get_string("config"));
            for (const auto& [k, v] : cli.values_)
                merged.values_[k] = v;
            return merged;
        }
        return cli;
    }

    static Options from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw InvalidParameter("cannot open config file " + path);
        Options opts;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string record = trim(line);
            if (record.empty() || record[0] == '#')
                continue;
            const std::size_t eq = record.find('=');
            if (eq == std::string::npos)
                throw InvalidParameter("config " + path + ":" + std::to_string(lineno) +
                                       ": expected key = value");
            const std::string key = trim(record.substr(0, eq));
            const std::string value = trim(record.substr(eq + 1));
            if (key.empty())
                throw InvalidParameter("config " + path + ":" + std::to_string(lineno) +
                                       ": empty key");
            opts.values_[key] = value;
        }
        return opts;
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback = "") const {
        auto it = values_.find(key);
        return (it == values_.end()) ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        if (it == values_.end())
            return fallback;
        return to_double(key, it->second);
    }

    // accepts "inf" for the p parameter
    double get_extended(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        if (it == values_.end())
            return fallback;
        if (it->second == "inf" || it->second == "Inf" || it->second == "infinity")
            return std::numeric_limits<double>::infinity();
        return to_double(key, it->second);
    }

    int get_int(const std::string& key, int fallback) const {
        auto it = values_.find(key);
        if (it == values_.end())
            return fallback;
        try {
            std::size_t pos = 0;
            const int v = std::stoi(it->second, &pos);
            if (pos != it->second.size())
                throw std::invalid_argument("trailing");
            return v;
        } catch (const std::logic_error&) {
            throw InvalidParameter("option " + key + ": expected integer, got '" +
                                   it->second + "'");
        }
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const {
        auto it = values_.find(key);
        if (it == values_.end())
            return fallback;
        try {
            return std::stoull(it->second);
        } catch (const std::logic_error&) {
            throw InvalidParameter("option " + key + ": expected unsigned integer, got '" +
                                   it->second + "'");
        }
    }

    bool get_flag(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end())
            return false;
        return it->second == "true" || it->second == "1" || it->second == "yes";
    }

    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    void reject(const std::string& key, const std::string& why) const {
        if (has(key))
            throw InvalidParameter("option " + key + " " + why);
    }

private:
    static std::string trim(const std::string& s) {
        const std::size_t b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos)
            return {};
        const std::size_t e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    static double to_double(const std::string& key, const std::string& text) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(text, &pos);
            if (pos != text.size())
                throw std::invalid_argument("trailing");
            return v;
        } catch (const std::logic_error&) {
            throw InvalidParameter("option " + key + ": expected number, got '" + text + "'");
        }
    }

    std::map<std::string, std::string> values_;
};

} // namespace r2dpca::cli
