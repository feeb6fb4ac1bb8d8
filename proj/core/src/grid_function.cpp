#include "fbmjump/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fbmjump/errors.hpp"

namespace fbmjump {

GridFunction::GridFunction(double t0, double t1, std::vector<double> values)
    : t0_(t0), t1_(t1), values_(std::move(values)) {
  if (values_.size() < 2) throw invalid_input("GridFunction needs at least 2 points");
  if (!(t1 > t0)) throw invalid_input("GridFunction needs t1 > t0");
  h_ = (t1_ - t0_) / static_cast<double>(values_.size() - 1);
}

GridFunction GridFunction::zeros(double t0, double t1, std::size_t n) {
  return GridFunction(t0, t1, std::vector<double>(n, 0.0));
}

double GridFunction::eval(double t) const {
  if (t <= t0_) return values_.front();
  if (t >= t1_) return values_.back();
  const auto j = static_cast<std::size_t>(std::floor((t - t0_) / h_));
  return values_[std::min(j, values_.size() - 1)];
}

GridFunction GridFunction::reversed() const {
  std::vector<double> v(values_.rbegin(), values_.rend());
  return GridFunction(t0_, t1_, std::move(v));
}

bool GridFunction::same_grid(const GridFunction& other) const {
  return size() == other.size() && t0_ == other.t0_ && t1_ == other.t1_;
}

void GridFunction::validate() const {
  for (double v : values_)
    if (!std::isfinite(v)) throw invalid_input("GridFunction holds a non-finite value");
}

FracOrder::FracOrder(double a) : alpha(a) {
  if (!(a > 0.0) || a > 1.0) throw domain_error("fractional order must lie in (0,1]");
}

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_csv(const GridFunction& f, const std::string& path, const std::string& meta) {
  std::ofstream out(path);
  if (!out) throw invalid_input("cannot open for writing: " + path);
  if (!meta.empty()) out << "# " << meta << "\n";
  out << "time,value\n";
  for (std::size_t j = 0; j < f.size(); ++j)
    out << format_full(f.time(j)) << "," << format_full(f[j]) << "\n";
}

GridFunction read_csv_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open for reading: " + path);
  std::string line;
  std::vector<double> t, v;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("time", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw invalid_input("malformed CSV line: " + line);
    t.push_back(std::stod(line.substr(0, comma)));
    v.push_back(std::stod(line.substr(comma + 1)));
  }
  if (t.size() < 2) throw invalid_input("CSV holds fewer than 2 samples: " + path);
  return GridFunction(t.front(), t.back(), std::move(v));
}

} // namespace fbmjump
