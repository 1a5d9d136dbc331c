#pragma once

// RFC-4180 CSV ingestion.

#include <string>
#include <vector>

#include "regdepth/core.hpp"

namespace regdepth {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Parses quoted fields, doubled quotes, CRLF or LF line ends and a leading
/// UTF-8 BOM. Every record must have as many fields as the header.
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

/// Numeric matrix of the listed columns; empty or non-numeric cells throw parse.
Matrix numeric_columns(const CsvTable& table, const std::vector<std::size_t>& columns);

/// The response column becomes y, all other columns form X in header order,
/// with a column of ones prepended when `intercept` is set.
Dataset load_dataset(const std::string& path, const std::string& response, bool intercept);
Dataset dataset_from_table(const CsvTable& table, const std::string& response, bool intercept);

/// Every column is a coordinate.
Matrix load_points(const std::string& path);

}  // namespace regdepth
