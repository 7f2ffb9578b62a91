#include "convexchain/jet.hpp"

#include <cmath>
#include <stdexcept>

namespace convexchain {

namespace {

void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.order() != b.order()) {
    throw std::invalid_argument("TruncatedSeries: mismatched orders");
  }
}

}  // namespace

TruncatedSeries::TruncatedSeries(int order) : TruncatedSeries(order, 0.0) {}

TruncatedSeries::TruncatedSeries(int order, double constant) {
  if (order < 0) throw std::invalid_argument("TruncatedSeries: negative order");
  coeffs_.assign(static_cast<size_t>(order) + 1, 0.0);
  coeffs_[0] = constant;
}

TruncatedSeries TruncatedSeries::variable(int order) {
  TruncatedSeries t(order);
  if (order >= 1) t[1] = 1.0;
  return t;
}

TruncatedSeries TruncatedSeries::exp_variable(int order) {
  TruncatedSeries e(order);
  double c = 1.0;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) c /= j;
    e[j] = c;
  }
  return e;
}

double TruncatedSeries::derivative(int r) const {
  double f = 1.0;
  for (int j = 2; j <= r; ++j) f *= j;
  return f * (*this)[r];
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  require_same_order(*this, other);
  for (size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) {
  require_same_order(*this, other);
  for (size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const TruncatedSeries& other) {
  *this = *this * other;
  return *this;
}

TruncatedSeries& TruncatedSeries::operator/=(const TruncatedSeries& other) {
  require_same_order(*this, other);
  const int R = order();
  const double b0 = other[0];
  if (b0 == 0.0) throw std::domain_error("TruncatedSeries: division by a jet with zero constant term");
  std::vector<double> q(coeffs_.size());
  for (int k = 0; k <= R; ++k) {
    double s = coeffs_[static_cast<size_t>(k)];
    for (int j = 1; j <= k; ++j) s -= other[j] * q[static_cast<size_t>(k - j)];
    q[static_cast<size_t>(k)] = s / b0;
  }
  coeffs_ = std::move(q);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator+=(double s) {
  coeffs_[0] += s;
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(double s) {
  coeffs_[0] -= s;
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

TruncatedSeries& TruncatedSeries::operator/=(double s) {
  for (double& c : coeffs_) c /= s;
  return *this;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r(*this);
  r *= -1.0;
  return r;
}

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
TruncatedSeries operator/(TruncatedSeries a, const TruncatedSeries& b) { return a /= b; }
TruncatedSeries operator+(TruncatedSeries a, double s) { return a += s; }
TruncatedSeries operator+(double s, TruncatedSeries a) { return a += s; }
TruncatedSeries operator-(TruncatedSeries a, double s) { return a -= s; }
TruncatedSeries operator-(double s, const TruncatedSeries& a) { return (-a) += s; }
TruncatedSeries operator*(TruncatedSeries a, double s) { return a *= s; }
TruncatedSeries operator*(double s, TruncatedSeries a) { return a *= s; }
TruncatedSeries operator/(TruncatedSeries a, double s) { return a /= s; }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b);
  const int R = a.order();
  TruncatedSeries c(R);
  for (int i = 0; i <= R; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (int j = 0; i + j <= R; ++j) c[i + j] += ai * b[j];
  }
  return c;
}

// b = exp(a):  k b_k = sum_{j=1}^{k} j a_j b_{k-j}
TruncatedSeries exp(const TruncatedSeries& a) {
  const int R = a.order();
  TruncatedSeries b(R);
  b[0] = std::exp(a[0]);
  for (int k = 1; k <= R; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * a[j] * b[k - j];
    b[k] = s / k;
  }
  return b;
}

// b = log(a):  a_0 k b_k = k a_k - sum_{j=1}^{k-1} j b_j a_{k-j}
TruncatedSeries log(const TruncatedSeries& a) {
  if (!(a[0] > 0.0)) throw std::domain_error("log of a jet with non-positive constant term");
  const int R = a.order();
  TruncatedSeries b(R);
  b[0] = std::log(a[0]);
  for (int k = 1; k <= R; ++k) {
    double s = k * a[k];
    for (int j = 1; j < k; ++j) s -= j * b[j] * a[k - j];
    b[k] = s / (k * a[0]);
  }
  return b;
}

// b = sqrt(a):  2 b_0 b_k = a_k - sum_{j=1}^{k-1} b_j b_{k-j}
TruncatedSeries sqrt(const TruncatedSeries& a) {
  if (!(a[0] > 0.0)) throw std::domain_error("sqrt of a jet with non-positive constant term");
  const int R = a.order();
  TruncatedSeries b(R);
  b[0] = std::sqrt(a[0]);
  for (int k = 1; k <= R; ++k) {
    double s = a[k];
    for (int j = 1; j < k; ++j) s -= b[j] * b[k - j];
    b[k] = s / (2.0 * b[0]);
  }
  return b;
}

bool isfinite(const TruncatedSeries& a) {
  for (double c : a.coeffs()) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

}  // namespace convexchain
