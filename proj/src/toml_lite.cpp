#include "peerbench/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

#include "peerbench/errors.hpp"

namespace peerbench::toml {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

// Removes a trailing comment that is not inside a string.
std::string_view strip_comment(std::string_view line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == '"') in_string = !in_string;
        if (c == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

Scalar parse_scalar(std::string_view raw, int line_no) {
    raw = trim(raw);
    if (raw.empty()) {
        throw SchemaError("policy line " + std::to_string(line_no) + ": empty value");
    }
    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"') {
            throw SchemaError("policy line " + std::to_string(line_no) +
                              ": unterminated string");
        }
        std::string out;
        for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
            if (raw[i] == '\\' && i + 2 < raw.size()) {
                ++i;
                switch (raw[i]) {
                    case 'n': out.push_back('\n'); break;
                    case 't': out.push_back('\t'); break;
                    case '"': out.push_back('"'); break;
                    case '\\': out.push_back('\\'); break;
                    default:
                        throw SchemaError("policy line " + std::to_string(line_no) +
                                          ": unsupported escape");
                }
            } else {
                out.push_back(raw[i]);
            }
        }
        return out;
    }
    if (raw == "true") return true;
    if (raw == "false") return false;
    const std::string text(raw);
    if (raw.find('.') != std::string_view::npos ||
        raw.find('e') != std::string_view::npos ||
        raw.find('E') != std::string_view::npos) {
        try {
            return std::stod(text);
        } catch (const std::exception&) {
            throw SchemaError("policy line " + std::to_string(line_no) +
                              ": invalid float: " + text);
        }
    }
    std::int64_t value = 0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end) {
        throw SchemaError("policy line " + std::to_string(line_no) +
                          ": invalid value: " + text);
    }
    return value;
}

Value parse_value(std::string_view raw, int line_no) {
    raw = trim(raw);
    Value v;
    if (!raw.empty() && raw.front() == '[') {
        if (raw.back() != ']') {
            throw SchemaError("policy line " + std::to_string(line_no) +
                              ": unterminated array");
        }
        v.is_array = true;
        std::string_view inner = trim(raw.substr(1, raw.size() - 2));
        while (!inner.empty()) {
            std::size_t cut = inner.size();
            bool in_string = false;
            for (std::size_t i = 0; i < inner.size(); ++i) {
                if (inner[i] == '"') in_string = !in_string;
                if (inner[i] == ',' && !in_string) {
                    cut = i;
                    break;
                }
            }
            v.array.push_back(parse_scalar(inner.substr(0, cut), line_no));
            inner = cut == inner.size() ? std::string_view{} : trim(inner.substr(cut + 1));
        }
        return v;
    }
    v.scalar = parse_scalar(raw, line_no);
    return v;
}

}  // namespace

Document parse(const std::string& text) {
    Document doc;
    Table* current = &doc.root;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line(text.data() + pos,
                              (nl == std::string::npos ? text.size() : nl) - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            const bool is_list = line.size() >= 4 && line[1] == '[';
            const auto close = line.find(is_list ? "]]" : "]");
            if (close == std::string_view::npos) {
                throw SchemaError("policy line " + std::to_string(line_no) +
                                  ": malformed table header");
            }
            const std::string name(
                trim(line.substr(is_list ? 2 : 1, close - (is_list ? 2 : 1))));
            if (name.empty()) {
                throw SchemaError("policy line " + std::to_string(line_no) +
                                  ": empty table name");
            }
            if (is_list) {
                doc.lists[name].emplace_back();
                current = &doc.lists[name].back();
            } else {
                current = &doc.tables[name];
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw SchemaError("policy line " + std::to_string(line_no) +
                              ": expected key = value");
        }
        const std::string key(trim(line.substr(0, eq)));
        if (key.empty()) {
            throw SchemaError("policy line " + std::to_string(line_no) + ": empty key");
        }
        current->values[key] = parse_value(line.substr(eq + 1), line_no);
    }
    return doc;
}

std::string Table::get_string(const std::string& key) const {
    const auto& v = values.at(key);
    if (v.is_array || !std::holds_alternative<std::string>(v.scalar)) {
        throw SchemaError("policy key is not a string: " + key);
    }
    return std::get<std::string>(v.scalar);
}

std::int64_t Table::get_int(const std::string& key) const {
    const auto& v = values.at(key);
    if (v.is_array || !std::holds_alternative<std::int64_t>(v.scalar)) {
        throw SchemaError("policy key is not an integer: " + key);
    }
    return std::get<std::int64_t>(v.scalar);
}

double Table::get_double(const std::string& key) const {
    const auto& v = values.at(key);
    if (v.is_array) {
        throw SchemaError("policy key is not a number: " + key);
    }
    if (std::holds_alternative<double>(v.scalar)) return std::get<double>(v.scalar);
    if (std::holds_alternative<std::int64_t>(v.scalar)) {
        return static_cast<double>(std::get<std::int64_t>(v.scalar));
    }
    throw SchemaError("policy key is not a number: " + key);
}

bool Table::get_bool(const std::string& key) const {
    const auto& v = values.at(key);
    if (v.is_array || !std::holds_alternative<bool>(v.scalar)) {
        throw SchemaError("policy key is not a boolean: " + key);
    }
    return std::get<bool>(v.scalar);
}

std::vector<std::int64_t> Table::get_int_array(const std::string& key) const {
    const auto& v = values.at(key);
    if (!v.is_array) {
        throw SchemaError("policy key is not an array: " + key);
    }
    std::vector<std::int64_t> out;
    for (const auto& s : v.array) {
        if (!std::holds_alternative<std::int64_t>(s)) {
            throw SchemaError("policy array has a non-integer element: " + key);
        }
        out.push_back(std::get<std::int64_t>(s));
    }
    return out;
}

}  // namespace peerbench::toml
