#pragma once

// CSV and JSON renderings of scan rows. Floats carry 17 significant digits,
// so parsing a report back gives bit-identical values.

#include <string>
#include <string_view>
#include <vector>

#include "korosum/scan.hpp"

namespace korosum {

/// Fixed column order of the CSV header.
const std::vector<std::string>& report_columns();

std::string render_csv(const std::vector<ScanRow>& rows);
std::string render_json(const std::vector<ScanRow>& rows);
std::string render_report(const std::vector<ScanRow>& rows, const std::string& format);

std::vector<ScanRow> parse_csv(std::string_view text);
std::vector<ScanRow> parse_json_rows(std::string_view text);

/// Writes bytes to path; IoError on failure.
void write_file(const std::string& path, const std::string& bytes);

}  // namespace korosum
