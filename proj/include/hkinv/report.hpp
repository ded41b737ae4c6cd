#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "hkinv/rational.hpp"

namespace hkinv {

// Key/value result sheet with deterministic ordering.  TSV and JSON carry the
// identical key/value set; --approx adds a display-only decimal column.
struct Report {
    std::map<std::string, std::string> values;
    std::map<std::string, double> approx;

    void put(const std::string& key, const std::string& value) { values[key] = value; }
    void put(const std::string& key, const Rational& value) {
        values[key] = value.to_string();
        approx[key] = value.to_double();
    }
    void put(const std::string& key, bool value) { values[key] = value ? "true" : "false"; }
    void put(const std::string& key, long long value) { values[key] = std::to_string(value); }

    std::string to_tsv(bool with_approx = false) const {
        std::string out;
        for (const auto& [k, v] : values) {
            out += k + "\t" + v;
            if (with_approx) {
                auto it = approx.find(k);
                if (it != approx.end()) out += "\t" + std::to_string(it->second);
            }
            out += "\n";
        }
        return out;
    }

    std::string to_json(bool with_approx = false) const {
        nlohmann::json j;
        for (const auto& [k, v] : values) j[k] = v;
        if (with_approx) {
            nlohmann::json a;
            for (const auto& [k, v] : approx) a[k] = v;
            j["_approx"] = a;
        }
        return j.dump(2);
    }
};

}  // namespace hkinv
