#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace peerbench::toml {

// Minimal TOML subset: comments, [table] / [[array-of-tables]] headers, and
// key = value lines where value is a basic string, integer, float, boolean,
// or a flat array of those. Enough for policy files; not a general parser.
using Scalar = std::variant<std::string, std::int64_t, double, bool>;

struct Value {
    Scalar scalar;
    std::vector<Scalar> array;
    bool is_array = false;
};

struct Table {
    std::map<std::string, Value> values;

    bool has(const std::string& key) const { return values.count(key) != 0; }
    std::string get_string(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
    double get_double(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::vector<std::int64_t> get_int_array(const std::string& key) const;
};

struct Document {
    Table root;
    std::map<std::string, Table> tables;            // [name]
    std::map<std::string, std::vector<Table>> lists;  // [[name]]
};

Document parse(const std::string& text);

}  // namespace peerbench::toml
