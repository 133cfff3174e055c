#include "remknap/io.hpp"

#include "remknap/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace remknap {

namespace {

using nlohmann::json;

std::string csv_field(std::istringstream& line, const char* what) {
    std::string field;
    if (!std::getline(line, field, ',')) {
        throw ParseError(std::string("missing CSV field: ") + what);
    }
    return field;
}

double parse_number(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) {
            throw ParseError(std::string("trailing characters in ") + what);
        }
        return value;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad number in CSV field ") + what + ": '" + text + "'");
    }
}

} // namespace

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void write_instances(std::ostream& out, const std::vector<Instance>& instances) {
    for (const Instance& instance : instances) {
        out << "{\"name\": " << json(instance.name).dump()
            << ", \"capacity\": " << format_double(instance.capacity)
            << ", \"sizes\": [";
        for (std::size_t i = 0; i < instance.sizes.size(); ++i) {
            out << (i ? ", " : "") << format_double(instance.sizes[i]);
        }
        out << "]}\n";
    }
}

std::vector<Instance> read_instances(std::istream& in) {
    std::vector<Instance> instances;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') {
            continue;
        }
        json parsed;
        try {
            parsed = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!parsed.is_object() || !parsed.contains("name") ||
            !parsed.contains("capacity") || !parsed.contains("sizes") ||
            !parsed["name"].is_string() || !parsed["capacity"].is_number() ||
            !parsed["sizes"].is_array()) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected {name, capacity, sizes}");
        }
        Instance instance;
        instance.name = parsed["name"].get<std::string>();
        instance.capacity = parsed["capacity"].get<double>();
        for (const json& size : parsed["sizes"]) {
            if (!size.is_number()) {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": sizes must be numbers");
            }
            instance.sizes.push_back(size.get<double>());
        }
        validate_instance(instance);
        instances.push_back(std::move(instance));
    }
    return instances;
}

void write_instances_file(const std::string& path, const std::vector<Instance>& instances) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot open '" + path + "' for writing");
    }
    write_instances(out, instances);
}

std::vector<Instance> read_instances_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    return read_instances(in);
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows,
                       std::optional<std::size_t> advice_bits_max) {
    out << "instance,n,algorithm,epsilon,advice_bits,alg_gain,opt_gain,ratio";
    if (advice_bits_max) {
        out << ",advice_bits_max";
    }
    out << "\n";
    for (const ResultRow& row : rows) {
        out << row.instance << ',' << row.n << ',' << row.algorithm << ','
            << (row.epsilon ? format_double(*row.epsilon) : std::string()) << ','
            << row.advice_bits << ',' << format_double(row.alg_gain) << ','
            << format_double(row.opt_gain) << ',' << format_double(row.ratio);
        if (advice_bits_max) {
            out << ',' << *advice_bits_max;
        }
        out << "\n";
    }
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
    std::vector<ResultRow> rows;
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty CSV: missing header");
    }
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        ResultRow row;
        row.instance = csv_field(fields, "instance");
        row.n = static_cast<std::size_t>(parse_number(csv_field(fields, "n"), "n"));
        row.algorithm = csv_field(fields, "algorithm");
        const std::string eps = csv_field(fields, "epsilon");
        if (!eps.empty()) {
            row.epsilon = parse_number(eps, "epsilon");
        }
        row.advice_bits = static_cast<std::size_t>(
            parse_number(csv_field(fields, "advice_bits"), "advice_bits"));
        row.alg_gain = parse_number(csv_field(fields, "alg_gain"), "alg_gain");
        row.opt_gain = parse_number(csv_field(fields, "opt_gain"), "opt_gain");
        row.ratio = parse_number(csv_field(fields, "ratio"), "ratio");
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace remknap
