#pragma once

// CSV tables and minimal SVG line plots.

#include <string>
#include <vector>

namespace tgqsl::cli {

/// %.12g; "nan" for missing values.
std::string format_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<double> row);
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::vector<double> column(std::size_t k) const;

  /// "# <comment>", header, rows.
  std::string render(const std::string& comment) const;
  void write(const std::string& path, const std::string& comment) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series);
void write_svg(const std::string& path, const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace tgqsl::cli
