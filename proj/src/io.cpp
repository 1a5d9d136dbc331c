#include "regdepth/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace regdepth {

namespace {

std::string where(std::size_t line) { return "line " + std::to_string(line); }

double parse_number(const std::string& cell, std::size_t line, const std::string& column) {
  std::size_t a = 0, b = cell.size();
  while (a < b && (cell[a] == ' ' || cell[a] == '\t')) ++a;
  while (b > a && (cell[b - 1] == ' ' || cell[b - 1] == '\t')) --b;
  if (a == b) throw Error(ErrorCode::parse, where(line) + ": empty value in column '" + column + "'");
  const char* first = cell.data() + a;
  const char* last = cell.data() + b;
  if (*first == '+') ++first;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw Error(ErrorCode::parse, where(line) + ": '" + cell + "' in column '" + column + "' is not a finite number");
  }
  return v;
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> record_line;
  std::vector<std::string> fields;
  std::string field;
  std::size_t i = 0, line = 1, start_line = 1;
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) i = 3;
  bool quoted = false, was_quoted = false, any = false;

  auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
    was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    // blank lines carry no fields and are skipped
    if (!(fields.size() == 1 && fields[0].empty())) {
      records.push_back(std::move(fields));
      record_line.push_back(start_line);
    }
    fields.clear();
    any = false;
  };

  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (!any) {
      start_line = line;
      any = true;
    }
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty() || was_quoted) throw Error(ErrorCode::parse, where(line) + ": stray quote inside field");
      quoted = was_quoted = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      continue;
    } else if (c == '\n') {
      end_record();
      ++line;
    } else {
      if (was_quoted) throw Error(ErrorCode::parse, where(line) + ": characters after closing quote");
      field.push_back(c);
    }
  }
  if (quoted) throw Error(ErrorCode::parse, where(start_line) + ": unterminated quoted field");
  if (any) end_record();

  if (records.empty()) throw Error(ErrorCode::parse, "missing header row");
  CsvTable table;
  table.header = std::move(records[0]);
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      throw Error(ErrorCode::parse, where(record_line[r]) + ": expected " + std::to_string(table.header.size()) +
                                        " fields, found " + std::to_string(records[r].size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::io, "read error on '" + path + "'");
  return parse_csv(buf.str());
}

Matrix numeric_columns(const CsvTable& table, const std::vector<std::size_t>& columns) {
  Matrix m(static_cast<Index>(table.rows.size()), static_cast<Index>(columns.size()));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          parse_number(table.rows[r][columns[c]], r + 2, table.header[columns[c]]);
    }
  }
  return m;
}

Dataset dataset_from_table(const CsvTable& table, const std::string& response, bool intercept) {
  std::size_t y_col = table.header.size();
  std::vector<std::size_t> x_cols;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (table.header[c] == response) {
      if (y_col != table.header.size()) throw Error(ErrorCode::parse, "response column '" + response + "' is not unique");
      y_col = c;
    } else {
      x_cols.push_back(c);
    }
  }
  if (y_col == table.header.size()) throw Error(ErrorCode::parse, "no column named '" + response + "'");
  if (table.rows.empty()) throw Error(ErrorCode::parse, "no data rows");
  const Vector y = numeric_columns(table, {y_col}).col(0);
  const Matrix Xraw = numeric_columns(table, x_cols);
  Matrix X(Xraw.rows(), Xraw.cols() + (intercept ? 1 : 0));
  if (intercept) {
    X.col(0).setOnes();
    X.rightCols(Xraw.cols()) = Xraw;
  } else {
    X = Xraw;
  }
  return Dataset::create(std::move(X), y, intercept);
}

Dataset load_dataset(const std::string& path, const std::string& response, bool intercept) {
  return dataset_from_table(read_csv(path), response, intercept);
}

Matrix load_points(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.rows.empty()) throw Error(ErrorCode::parse, "no data rows");
  std::vector<std::size_t> cols(table.header.size());
  for (std::size_t c = 0; c < cols.size(); ++c) cols[c] = c;
  return numeric_columns(table, cols);
}

}  // namespace regdepth
