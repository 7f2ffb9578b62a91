#pragma once

#include <span>
#include <vector>

namespace convexchain {

// Taylor jet c_0 + c_1 t + ... + c_R t^R around t = 0. Products and
// elementary functions discard every term of degree above R.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int order);
  TruncatedSeries(int order, double constant);

  // The jet of t itself.
  static TruncatedSeries variable(int order);
  // The jet of e^t.
  static TruncatedSeries exp_variable(int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  double operator[](int j) const { return coeffs_[static_cast<size_t>(j)]; }
  double& operator[](int j) { return coeffs_[static_cast<size_t>(j)]; }
  std::span<const double> coeffs() const { return coeffs_; }

  // r! times the r-th coefficient.
  double derivative(int r) const;

  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);
  TruncatedSeries& operator*=(const TruncatedSeries& other);
  TruncatedSeries& operator/=(const TruncatedSeries& other);
  TruncatedSeries& operator+=(double s);
  TruncatedSeries& operator-=(double s);
  TruncatedSeries& operator*=(double s);
  TruncatedSeries& operator/=(double s);

  TruncatedSeries operator-() const;

 private:
  std::vector<double> coeffs_;
};

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator/(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator+(TruncatedSeries a, double s);
TruncatedSeries operator+(double s, TruncatedSeries a);
TruncatedSeries operator-(TruncatedSeries a, double s);
TruncatedSeries operator-(double s, const TruncatedSeries& a);
TruncatedSeries operator*(TruncatedSeries a, double s);
TruncatedSeries operator*(double s, TruncatedSeries a);
TruncatedSeries operator/(TruncatedSeries a, double s);

TruncatedSeries exp(const TruncatedSeries& a);
// Requires a[0] > 0.
TruncatedSeries log(const TruncatedSeries& a);
// Requires a[0] > 0.
TruncatedSeries sqrt(const TruncatedSeries& a);

bool isfinite(const TruncatedSeries& a);

}  // namespace convexchain
