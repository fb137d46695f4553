#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace qparity {

/// Minimal structural JSON-schema checker covering the subset the envelope
/// schema uses: "type", "properties", "required", "items", "enum",
/// "additionalProperties" (boolean). Returns a list of violations, empty on
/// success.
inline void schema_validate_rec(const nlohmann::json& schema, const nlohmann::json& value,
                                const std::string& path, std::vector<std::string>& errors) {
    using nlohmann::json;
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& candidate : schema["enum"]) ok = ok || candidate == value;
        if (!ok) errors.push_back(path + ": value not in enum");
    }
    if (schema.contains("type")) {
        const std::string t = schema["type"].get<std::string>();
        const bool ok = (t == "object" && value.is_object()) ||
                        (t == "array" && value.is_array()) ||
                        (t == "string" && value.is_string()) ||
                        (t == "number" && value.is_number()) ||
                        (t == "integer" && value.is_number_integer()) ||
                        (t == "boolean" && value.is_boolean()) || (t == "null" && value.is_null());
        if (!ok) {
            errors.push_back(path + ": expected type " + t);
            return;
        }
    }
    if (value.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema["required"]) {
                if (!value.contains(key.get<std::string>())) {
                    errors.push_back(path + ": missing required key " + key.get<std::string>());
                }
            }
        }
        const json props = schema.value("properties", json::object());
        for (auto it = value.begin(); it != value.end(); ++it) {
            if (props.contains(it.key())) {
                schema_validate_rec(props[it.key()], it.value(), path + "/" + it.key(), errors);
            } else if (schema.value("additionalProperties", json(true)) == json(false)) {
                errors.push_back(path + ": unexpected key " + it.key());
            }
        }
    }
    if (value.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < value.size(); ++i) {
            schema_validate_rec(schema["items"], value[i], path + "[" + std::to_string(i) + "]",
                                errors);
        }
    }
}

inline std::vector<std::string> schema_validate(const nlohmann::json& schema,
                                                const nlohmann::json& value) {
    std::vector<std::string> errors;
    schema_validate_rec(schema, value, "$", errors);
    return errors;
}

}  // namespace qparity
