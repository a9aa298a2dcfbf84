#pragma once

// Strict reading helpers for the shared JSON document conventions: unknown
// keys are rejected and type mismatches surface as ParseError with a path.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

#include "json.hpp"
#include "ontolearn/error.hpp"

namespace ontolearn::detail {

using json = nlohmann::json;

class JsonObject {
public:
    JsonObject(const json& value, std::string path) : value_(value), path_(std::move(path)) {
        if (!value_.is_object()) fail("expected an object");
    }

    // Rejects any key not in `allowed`.
    void allow_only(std::initializer_list<std::string_view> allowed) const {
        for (const auto& item : value_.items()) {
            bool known = false;
            for (auto k : allowed) known = known || item.key() == k;
            if (!known) fail("unknown key '" + item.key() + "'");
        }
    }

    bool has(std::string_view key) const { return value_.contains(std::string(key)); }

    const json& at(std::string_view key) const {
        auto it = value_.find(std::string(key));
        if (it == value_.end()) fail("missing key '" + std::string(key) + "'");
        return *it;
    }

    std::string child_path(std::string_view key) const { return path_ + "." + std::string(key); }

    std::string string(std::string_view key) const {
        const auto& v = at(key);
        if (!v.is_string()) fail_at(key, "expected a string");
        return v.get<std::string>();
    }

    std::string string_or(std::string_view key, std::string fallback) const {
        return has(key) ? string(key) : std::move(fallback);
    }

    bool boolean(std::string_view key) const {
        const auto& v = at(key);
        if (!v.is_boolean()) fail_at(key, "expected a boolean");
        return v.get<bool>();
    }

    std::int64_t integer(std::string_view key) const {
        const auto& v = at(key);
        if (!v.is_number_integer()) fail_at(key, "expected an integer");
        return v.get<std::int64_t>();
    }

    double number(std::string_view key) const {
        const auto& v = at(key);
        if (!v.is_number()) fail_at(key, "expected a number");
        return v.get<double>();
    }

    const json& array(std::string_view key) const {
        const auto& v = at(key);
        if (!v.is_array()) fail_at(key, "expected an array");
        return v;
    }

    // Missing key reads as an empty array.
    const json& array_or_empty(std::string_view key) const {
        static const json empty = json::array();
        return has(key) ? array(key) : empty;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::ParseError, path_ + ": " + what);
    }

    [[noreturn]] void fail_at(std::string_view key, const std::string& what) const {
        throw Error(ErrorKind::ParseError, child_path(key) + ": " + what);
    }

    const json& raw() const { return value_; }
    const std::string& path() const { return path_; }

private:
    const json& value_;
    std::string path_;
};

inline std::string index_path(const std::string& base, std::size_t i) {
    return base + "[" + std::to_string(i) + "]";
}

json parse_document(std::string_view text, const std::string& origin);
json read_document(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace ontolearn::detail
