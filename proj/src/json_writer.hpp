#ifndef QGRAV_JSON_WRITER_HPP
#define QGRAV_JSON_WRITER_HPP

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qgrav {

// Minimal ordered JSON value. Object keys keep insertion order and doubles
// are rendered with 17 significant digits, so identical inputs serialize to
// identical bytes.
class Json {
public:
    Json() : value_(nullptr) {}
    Json(std::nullptr_t) : value_(nullptr) {}
    Json(bool b) : value_(b) {}
    Json(double d) : value_(d) {}
    Json(long long i) : value_(i) {}
    Json(int i) : value_(static_cast<long long>(i)) {}
    Json(const char* s) : value_(std::string(s)) {}
    Json(std::string s) : value_(std::move(s)) {}

    static Json object() {
        Json j;
        j.value_ = Object{};
        return j;
    }
    static Json array() {
        Json j;
        j.value_ = Array{};
        return j;
    }

    Json& set(const std::string& key, Json v) {
        std::get<Object>(value_).emplace_back(key, std::move(v));
        return *this;
    }
    Json& push(Json v) {
        std::get<Array>(value_).push_back(std::move(v));
        return *this;
    }

    std::string dump(int indent = 2) const {
        std::string out;
        write(out, indent, 0);
        out.push_back('\n');
        return out;
    }

    static std::string format_double(double d) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", d);
        return buf;
    }

private:
    using Object = std::vector<std::pair<std::string, Json>>;
    using Array = std::vector<Json>;
    std::variant<std::nullptr_t, bool, double, long long, std::string, Object, Array> value_;

    static void escape(std::string& out, const std::string& s) {
        out.push_back('"');
        for (char ch : s) {
            switch (ch) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(ch) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                        out += buf;
                    } else {
                        out.push_back(ch);
                    }
            }
        }
        out.push_back('"');
    }

    void write(std::string& out, int indent, int depth) const {
        const std::string pad(static_cast<size_t>(indent) * depth, ' ');
        const std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
        if (std::holds_alternative<std::nullptr_t>(value_)) {
            out += "null";
        } else if (auto* b = std::get_if<bool>(&value_)) {
            out += *b ? "true" : "false";
        } else if (auto* d = std::get_if<double>(&value_)) {
            out += format_double(*d);
        } else if (auto* i = std::get_if<long long>(&value_)) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%lld", *i);
            out += buf;
        } else if (auto* s = std::get_if<std::string>(&value_)) {
            escape(out, *s);
        } else if (auto* o = std::get_if<Object>(&value_)) {
            if (o->empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            for (size_t k = 0; k < o->size(); ++k) {
                out += pad_in;
                escape(out, (*o)[k].first);
                out += ": ";
                (*o)[k].second.write(out, indent, depth + 1);
                if (k + 1 < o->size()) out.push_back(',');
                out.push_back('\n');
            }
            out += pad + "}";
        } else if (auto* a = std::get_if<Array>(&value_)) {
            if (a->empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (size_t k = 0; k < a->size(); ++k) {
                out += pad_in;
                (*a)[k].write(out, indent, depth + 1);
                if (k + 1 < a->size()) out.push_back(',');
                out.push_back('\n');
            }
            out += pad + "]";
        }
    }
};

} // namespace qgrav

#endif
