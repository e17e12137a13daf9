#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "tgqsl/error.hpp"

namespace tgqsl::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

void CsvTable::add_row(std::vector<double> row) {
  require(row.size() == columns_.size(), ErrorKind::invalid_argument, "CSV row width does not match header");
  rows_.push_back(std::move(row));
}

std::vector<double> CsvTable::column(std::size_t k) const {
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.at(k));
  return out;
}

std::string CsvTable::render(const std::string& comment) const {
  std::string s = "# " + comment + "\n";
  for (std::size_t k = 0; k < columns_.size(); ++k) s += (k ? "," : "") + columns_[k];
  s += '\n';
  for (const auto& r : rows_) {
    for (std::size_t k = 0; k < r.size(); ++k) s += (k ? "," : "") + format_number(r[k]);
    s += '\n';
  }
  return s;
}

void CsvTable::write(const std::string& path, const std::string& comment) const {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::invalid_argument, "cannot write " + path);
  out << render(comment);
}

namespace {

constexpr double kWidth = 640, kHeight = 420, kLeft = 70, kRight = 150, kTop = 40, kBottom = 55;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

struct Axis {
  double lo = 0, hi = 1;
  bool log = false;
  double map(double v, double a, double b) const {
    const double t = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
    return a + t * (b - a);
  }
  double tick_value(double t) const { return log ? std::pow(10.0, t) : t; }
};

Axis make_axis(const std::vector<Series>& series, bool y, bool log) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& s : series)
    for (double v : y ? s.y : s.x) {
      if (!std::isfinite(v) || (log && v <= 0)) continue;
      const double w = log ? std::log10(v) : v;
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
  if (!std::isfinite(lo)) lo = 0, hi = 1;
  if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
  const double pad = 0.04 * (hi - lo);
  return {lo - (log ? 0 : pad), hi + (log ? 0 : pad), log};
}

}  // namespace

std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series) {
  const Axis ax = make_axis(series, false, spec.log_x);
  const Axis ay = make_axis(series, true, spec.log_y);
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(spec.title)
    << "</text>\n";
  o << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double tx = ax.lo + (ax.hi - ax.lo) * k / 4.0, ty = ay.lo + (ay.hi - ay.lo) * k / 4.0;
    const double px = x0 + (x1 - x0) * k / 4.0, py = y0 + (y1 - y0) * k / 4.0;
    char bx[32], by[32];
    std::snprintf(bx, sizeof bx, "%.3g", ax.tick_value(tx));
    std::snprintf(by, sizeof by, "%.3g", ay.tick_value(ty));
    o << "<line x1=\"" << px << "\" y1=\"" << y0 << "\" x2=\"" << px << "\" y2=\"" << y0 + 5 << "\" stroke=\"black\"/>";
    o << "<text x=\"" << px << "\" y=\"" << y0 + 18 << "\" text-anchor=\"middle\">" << bx << "</text>\n";
    o << "<line x1=\"" << x0 - 5 << "\" y1=\"" << py << "\" x2=\"" << x0 << "\" y2=\"" << py << "\" stroke=\"black\"/>";
    o << "<text x=\"" << x0 - 8 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">" << by << "</text>\n";
  }
  o << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
    << escape(spec.x_label) << "</text>\n";
  o << "<text transform=\"translate(16," << (y0 + y1) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape(spec.y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& sr = series[s];
    const char* color = kColors[s % std::size(kColors)];
    std::ostringstream path;
    bool pen = false;
    for (std::size_t k = 0; k < sr.x.size() && k < sr.y.size(); ++k) {
      const double x = sr.x[k], y = sr.y[k];
      if (!std::isfinite(x) || !std::isfinite(y) || (ax.log && x <= 0) || (ay.log && y <= 0)) {
        pen = false;
        continue;
      }
      const double px = ax.map(x, x0, x1), py = ay.map(y, y0, y1);
      path << (pen ? " L" : " M") << px << ' ' << py;
      pen = true;
      if (sr.markers) o << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    o << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    const double ly = y1 + 16 + 18 * s;
    o << "<line x1=\"" << x1 + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << x1 + 30 << "\" y2=\"" << ly - 4
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
    o << "<text x=\"" << x1 + 35 << "\" y=\"" << ly << "\">" << escape(sr.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_svg(const std::string& path, const PlotSpec& spec, const std::vector<Series>& series) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::invalid_argument, "cannot write " + path);
  out << render_svg(spec, series);
}

}  // namespace tgqsl::cli
