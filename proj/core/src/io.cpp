#include "ncrl/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ncrl/errors.hpp"

namespace ncrl {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (const Complex& z : m.entries())
        entries.push_back(nlohmann::json::array({z.real(), z.imag()}));
    return nlohmann::json{{"dim", m.dim()}, {"entries", entries}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw SchemaError("matrix: expected an object with 'dim' and 'entries'");
    if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 1)
        throw SchemaError("matrix: 'dim' must be a positive integer");
    const int dim = j["dim"].get<int>();
    const nlohmann::json& entries = j["entries"];
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(dim) * dim)
        throw SchemaError("matrix: 'entries' must hold dim^2 [re, im] pairs (dim " +
                          std::to_string(dim) + ")");
    std::vector<Complex> values;
    values.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const nlohmann::json& e = entries[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw SchemaError("matrix: entry " + std::to_string(i) + " is not an [re, im] pair");
        values.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return ComplexMatrix(dim, std::move(values));
}

nlohmann::json frame_to_json(const MeasurementFrame& frame) {
    nlohmann::json measurements = nlohmann::json::array();
    for (const auto& meas : frame.measurements()) {
        nlohmann::json row = nlohmann::json::array();
        for (const MinimalProjection& p : meas) row.push_back(matrix_to_json(p.matrix()));
        measurements.push_back(row);
    }
    return nlohmann::json{{"n", frame.n()}, {"k", frame.k()}, {"measurements", measurements}};
}

MeasurementFrame frame_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("k") || !j.contains("measurements"))
        throw SchemaError("frame: expected an object with 'n', 'k' and 'measurements'");
    if (!j["n"].is_number_integer() || !j["k"].is_number_integer())
        throw SchemaError("frame: 'n' and 'k' must be integers");
    const int n = j["n"].get<int>();
    const int k = j["k"].get<int>();
    const nlohmann::json& measurements = j["measurements"];
    if (!measurements.is_array() || static_cast<int>(measurements.size()) != k)
        throw SchemaError("frame: 'measurements' must hold k = " + std::to_string(k) + " entries");

    std::vector<std::vector<MinimalProjection>> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const nlohmann::json& row = measurements[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw SchemaError("frame: measurement " + std::to_string(i) + " must hold n = " +
                              std::to_string(n) + " projections");
        std::vector<MinimalProjection> projections;
        projections.reserve(static_cast<std::size_t>(n));
        for (int l = 0; l < n; ++l) {
            ComplexMatrix m = matrix_from_json(row[static_cast<std::size_t>(l)]);
            if (m.dim() != n)
                throw SchemaError("frame: measurement " + std::to_string(i) + " projection " +
                                  std::to_string(l) + " has dim " + std::to_string(m.dim()) +
                                  ", frame has n = " + std::to_string(n));
            try {
                projections.emplace_back(std::move(m));
            } catch (const InvariantViolationError& err) {
                throw SchemaError("frame: measurement " + std::to_string(i) + " projection " +
                                  std::to_string(l) + ": " + err.what());
            }
        }
        out.push_back(std::move(projections));
    }
    try {
        return MeasurementFrame(std::move(out));
    } catch (const InvariantViolationError& err) {
        throw SchemaError(std::string("frame: ") + err.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SchemaError("cannot write file: " + path);
    out << content;
    if (!out) throw SchemaError("write failed: " + path);
}

MeasurementFrame load_frame(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& err) {
        throw SchemaError("frame " + path + ": " + err.what());
    }
    return frame_from_json(j);
}

void save_frame(const MeasurementFrame& frame, const std::string& path) {
    write_text_file(path, frame_to_json(frame).dump(2) + "\n");
}

ProbabilityTable table_from_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                std::size_t consumed = 0;
                const double value = std::stod(cell, &consumed);
                while (consumed < cell.size() &&
                       (cell[consumed] == ' ' || cell[consumed] == '\t'))
                    ++consumed;
                if (consumed != cell.size()) throw std::invalid_argument("trailing junk");
                row.push_back(value);
            } catch (const std::exception&) {
                throw SchemaError("table line " + std::to_string(line_number) +
                                  ": cannot parse '" + cell + "' as a number");
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw SchemaError("table: no rows");
    try {
        return ProbabilityTable(std::move(rows));
    } catch (const std::invalid_argument& err) {
        throw SchemaError(std::string("table: ") + err.what());
    }
}

std::string format_sig12(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string table_to_csv(const ProbabilityTable& table) {
    std::string out;
    for (const auto& row : table.rows()) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            out += format_sig12(row[j]);
        }
        out += '\n';
    }
    return out;
}

ProbabilityTable load_table(const std::string& path) {
    try {
        return table_from_csv(read_text_file(path));
    } catch (const SchemaError& err) {
        throw SchemaError(path + ": " + err.what());
    }
}

void save_table(const ProbabilityTable& table, const std::string& path) {
    write_text_file(path, table_to_csv(table));
}

std::string scan_to_csv(const RegionScanResult& result) {
    std::string out = "p,phi,s_norm,is_density\n";
    for (const RegionScanPoint& point : result.points) {
        out += format_sig12(point.p);
        out += ',';
        out += format_sig12(point.phi);
        out += ',';
        out += format_sig12(point.s_norm);
        out += ',';
        out += point.is_density ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::uint64_t content_hash(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace ncrl
