// A deliberately small JSON-schema checker covering the subset the shipped
// schemas use: type, enum, pattern, required, properties, items, prefixItems,
// minimum. Enough to pin the output contracts without a third validator
// implementation in the build.
#pragma once

#include <fstream>
#include <regex>
#include <string>

#include "json.hpp"

namespace schema_check {

using Json = nlohmann::json;

inline Json load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schema " + path);
    Json j;
    in >> j;
    return j;
}

inline bool type_matches(const std::string& type, const Json& value) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "integer") return value.is_number_integer();
    if (type == "number") return value.is_number();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    return false;
}

inline void validate(const Json& schema, const Json& value, const std::string& where = "$") {
    auto fail = [&](const std::string& why) {
        throw std::runtime_error("schema violation at " + where + ": " + why);
    };

    if (schema.contains("type")) {
        const Json& t = schema["type"];
        bool ok = false;
        if (t.is_string()) ok = type_matches(t.get<std::string>(), value);
        else
            for (const auto& alt : t) ok = ok || type_matches(alt.get<std::string>(), value);
        if (!ok) fail("type mismatch, got " + value.dump().substr(0, 60));
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& alt : schema["enum"]) ok = ok || alt == value;
        if (!ok) fail("value not in enum: " + value.dump());
    }
    if (schema.contains("pattern") && value.is_string()) {
        std::regex re(schema["pattern"].get<std::string>());
        if (!std::regex_search(value.get<std::string>(), re))
            fail("pattern mismatch: " + value.get<std::string>());
    }
    if (schema.contains("minimum") && value.is_number_integer()) {
        if (value.get<long long>() < schema["minimum"].get<long long>())
            fail("below minimum: " + value.dump());
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    fail("missing required key " + key.get<std::string>());
        if (schema.contains("properties"))
            for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
                if (value.contains(it.key()))
                    validate(it.value(), value[it.key()], where + "." + it.key());
    }
    if (value.is_array()) {
        if (schema.contains("items"))
            for (std::size_t i = 0; i < value.size(); ++i)
                validate(schema["items"], value[i], where + "[" + std::to_string(i) + "]");
        if (schema.contains("prefixItems")) {
            const Json& prefix = schema["prefixItems"];
            for (std::size_t i = 0; i < prefix.size() && i < value.size(); ++i)
                validate(prefix[i], value[i], where + "[" + std::to_string(i) + "]");
        }
    }
}

inline void validate_file(const std::string& schema_path, const Json& value) {
    validate(load(schema_path), value);
}

}  // namespace schema_check
