#pragma once

#include <string>

#include <json.hpp>

#include "ncrl/bloch_case1.hpp"
#include "ncrl/complex_matrix.hpp"
#include "ncrl/tomo_case2.hpp"

namespace ncrl {

/// {"dim": n, "entries": [[re, im], ...]} row-major.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// {"n":., "k":., "measurements": [[matrix,...],...]}.
nlohmann::json frame_to_json(const MeasurementFrame& frame);
MeasurementFrame frame_from_json(const nlohmann::json& j);

MeasurementFrame load_frame(const std::string& path);
void save_frame(const MeasurementFrame& frame, const std::string& path);

/// CSV, one row per measurement, n comma-separated probabilities per row.
ProbabilityTable load_table(const std::string& path);
void save_table(const ProbabilityTable& table, const std::string& path);
ProbabilityTable table_from_csv(const std::string& text);
std::string table_to_csv(const ProbabilityTable& table);

/// Header p,phi,s_norm,is_density; floats with 12 significant digits.
std::string scan_to_csv(const RegionScanResult& result);

std::string format_sig12(double x);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// FNV-1a, for embedding input digests in reports.
std::uint64_t content_hash(const std::string& text);

} // namespace ncrl
