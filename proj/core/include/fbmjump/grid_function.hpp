#pragma once
#include <cstddef>
#include <string>
#include <vector>

namespace fbmjump {

// Real-valued function sampled on a uniform time grid over [t0, t1].
// Evaluation between grid points uses the left (cadlag) value.
class GridFunction {
public:
  GridFunction() = default;
  GridFunction(double t0, double t1, std::vector<double> values);
  static GridFunction zeros(double t0, double t1, std::size_t n);

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  std::size_t size() const { return values_.size(); }
  double spacing() const { return h_; }
  double time(std::size_t j) const { return t0_ + h_ * static_cast<double>(j); }

  double operator[](std::size_t j) const { return values_[j]; }
  double& operator[](std::size_t j) { return values_[j]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  // cadlag evaluation: value at the last grid point <= t
  double eval(double t) const;

  GridFunction reversed() const;
  bool same_grid(const GridFunction& other) const;

  // checks finiteness of every value; throws invalid_input otherwise
  void validate() const;

private:
  double t0_ = 0.0, t1_ = 1.0, h_ = 1.0;
  std::vector<double> values_;
};

// Fractional order in (0,1]; 1 is admitted (plain cumulative integral).
struct FracOrder {
  explicit FracOrder(double a);
  double alpha;
};

// Two-column CSV (time,value); `meta` becomes a single '#'-prefixed header line.
void write_csv(const GridFunction& f, const std::string& path, const std::string& meta = "");
GridFunction read_csv_grid(const std::string& path);

// 17-significant-digit decimal formatting, for byte-stable output files.
std::string format_full(double x);

} // namespace fbmjump
