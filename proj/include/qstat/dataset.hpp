#pragma once

// Rectangular numeric tables and their CSV / JSON serialization.

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qstat/errors.hpp"

namespace qstat {

struct Column {
  std::string name;
  bool nullable = false;
};

class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<Column> columns) : columns_(std::move(columns)) {}
  Dataset(std::initializer_list<const char*> names) {
    for (const char* n : names) columns_.push_back({n, false});
  }

  void add_row(std::vector<double> row) {
    if (row.size() != columns_.size()) {
      throw invalid_argument_error("Dataset: row has " + std::to_string(row.size()) + " fields, expected " +
                                   std::to_string(columns_.size()));
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (std::isnan(row[j]) && !columns_[j].nullable) {
        throw invalid_argument_error("Dataset: NaN in non-nullable column " + columns_[j].name);
      }
    }
    rows_.push_back(std::move(row));
  }

  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::map<std::string, std::string>& meta() { return meta_; }
  const std::map<std::string, std::string>& meta() const { return meta_; }

  std::size_t column_index(const std::string& name) const {
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      if (columns_[j].name == name) return j;
    }
    throw invalid_argument_error("Dataset: no column " + name);
  }

 private:
  std::vector<Column> columns_;
  std::vector<std::vector<double>> rows_;
  std::map<std::string, std::string> meta_;
};

enum class Format { csv, json };

/// 12 significant digits.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format_number(v));
}

inline void emit_csv(const Dataset& d, std::ostream& os) {
  const auto& cols = d.columns();
  for (std::size_t j = 0; j < cols.size(); ++j) os << (j ? "," : "") << cols[j].name;
  os << '\n';
  for (const auto& row : d.rows()) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_number(row[j]);
    os << '\n';
  }
}

inline nlohmann::json to_json(const Dataset& d) {
  nlohmann::json j;
  j["columns"] = nlohmann::json::array();
  for (const auto& c : d.columns()) j["columns"].push_back(c.name);
  j["rows"] = nlohmann::json::array();
  for (const auto& row : d.rows()) {
    auto r = nlohmann::json::array();
    for (double v : row) {
      if (std::isnan(v)) {
        r.push_back(nullptr);
      } else {
        r.push_back(round12(v));
      }
    }
    j["rows"].push_back(std::move(r));
  }
  if (!d.meta().empty()) j["meta"] = d.meta();
  return j;
}

/// Inverse of to_json; null fields become NaN in nullable columns.
inline Dataset dataset_from_json(const nlohmann::json& j) {
  std::vector<Column> cols;
  for (const auto& c : j.at("columns")) cols.push_back({c.get<std::string>(), false});
  for (const auto& row : j.at("rows")) {
    for (std::size_t k = 0; k < row.size() && k < cols.size(); ++k) {
      if (row[k].is_null()) cols[k].nullable = true;
    }
  }
  Dataset d(std::move(cols));
  for (const auto& row : j.at("rows")) {
    std::vector<double> r;
    for (const auto& v : row) r.push_back(v.is_null() ? std::nan("") : v.get<double>());
    d.add_row(std::move(r));
  }
  if (j.contains("meta")) d.meta() = j.at("meta").get<std::map<std::string, std::string>>();
  return d;
}

inline void emit(const Dataset& d, Format f, std::ostream& os) {
  if (f == Format::csv) {
    emit_csv(d, os);
  } else {
    os << to_json(d).dump() << '\n';
  }
  if (!os) throw io_error("emit: write failed");
}

}  // namespace qstat
