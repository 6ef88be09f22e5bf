#ifndef QGRAV_CLI_EMIT_HPP
#define QGRAV_CLI_EMIT_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qgravcli {

// Ordered JSON emitter for the report files. Doubles are printed with 17
// significant digits and keys keep insertion order, so equal inputs give
// byte-identical files. `raw` splices pre-serialized JSON (used for the
// metrology reports coming out of the library).
class JsonDoc {
public:
    JsonDoc() : value_(nullptr) {}
    JsonDoc(std::nullptr_t) : value_(nullptr) {}
    JsonDoc(bool b) : value_(b) {}
    JsonDoc(double d) : value_(d) {}
    JsonDoc(int i) : value_(static_cast<long long>(i)) {}
    JsonDoc(long long i) : value_(i) {}
    JsonDoc(const char* s) : value_(std::string(s)) {}
    JsonDoc(std::string s) : value_(std::move(s)) {}

    static JsonDoc object() {
        JsonDoc j;
        j.value_ = Object{};
        return j;
    }
    static JsonDoc array() {
        JsonDoc j;
        j.value_ = Array{};
        return j;
    }
    static JsonDoc raw(std::string json) {
        JsonDoc j;
        j.value_ = Raw{std::move(json)};
        return j;
    }

    JsonDoc& set(const std::string& key, JsonDoc v) {
        std::get<Object>(value_).emplace_back(key, std::move(v));
        return *this;
    }
    JsonDoc& push(JsonDoc v) {
        std::get<Array>(value_).push_back(std::move(v));
        return *this;
    }

    std::string dump() const {
        std::string out;
        write(out, 0);
        out.push_back('\n');
        return out;
    }

private:
    struct Raw {
        std::string json;
    };
    using Object = std::vector<std::pair<std::string, JsonDoc>>;
    using Array = std::vector<JsonDoc>;
    std::variant<std::nullptr_t, bool, double, long long, std::string, Raw, Object, Array>
        value_;

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

    void write(std::string& out, int depth) const {
        const std::string pad(2 * static_cast<size_t>(depth), ' ');
        const std::string pad_in(2 * static_cast<size_t>(depth + 1), ' ');
        if (std::holds_alternative<std::nullptr_t>(value_)) {
            out += "null";
        } else if (auto* b = std::get_if<bool>(&value_)) {
            out += *b ? "true" : "false";
        } else if (auto* d = std::get_if<double>(&value_)) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", *d);
            out += buf;
        } else if (auto* i = std::get_if<long long>(&value_)) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%lld", *i);
            out += buf;
        } else if (auto* s = std::get_if<std::string>(&value_)) {
            escape(out, *s);
        } else if (auto* r = std::get_if<Raw>(&value_)) {
            // indent the spliced document to the current depth
            for (size_t k = 0; k < r->json.size(); ++k) {
                const char ch = r->json[k];
                if (ch == '\n' && k + 1 < r->json.size()) {
                    out.push_back('\n');
                    out += pad;
                } else if (ch == '\n') {
                    // drop the trailing newline of the spliced doc
                } else {
                    out.push_back(ch);
                }
            }
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
                (*o)[k].second.write(out, depth + 1);
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
                (*a)[k].write(out, depth + 1);
                if (k + 1 < a->size()) out.push_back(',');
                out.push_back('\n');
            }
            out += pad + "]";
        }
    }
};

// CSV with 9-significant-digit floats, '.' decimal, comma separation.
class CsvWriter {
public:
    explicit CsvWriter(std::string header) { rows_ = std::move(header) + "\n"; }

    CsvWriter& begin_row() {
        first_in_row_ = true;
        return *this;
    }
    CsvWriter& col(double v) {
        sep();
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.9g", v);
        rows_ += buf;
        return *this;
    }
    CsvWriter& col(long long v) {
        sep();
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%lld", v);
        rows_ += buf;
        return *this;
    }
    CsvWriter& col(int v) { return col(static_cast<long long>(v)); }
    CsvWriter& col(const std::string& v) {
        sep();
        rows_ += v;
        return *this;
    }
    CsvWriter& end_row() {
        rows_ += "\n";
        return *this;
    }

    const std::string& str() const { return rows_; }

private:
    void sep() {
        if (!first_in_row_) rows_ += ",";
        first_in_row_ = false;
    }
    std::string rows_;
    bool first_in_row_ = true;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

} // namespace qgravcli

#endif
