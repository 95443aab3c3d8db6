#include "fisph/accel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace fisph {

RieszAccumulator::RieszAccumulator(std::int64_t c_max) { reset(c_max); }

void RieszAccumulator::reset(std::int64_t c_max) {
  c_max_ = c_max;
  for (int j = 0; j < kLevels; ++j) X_[j] = double(c_max) / double(1 << j);
  for (auto& row : R_) row.fill(0.0);
  raw_ = raw_half_ = raw_quarter_ = 0.0;
}

void RieszAccumulator::add(std::int64_t c, double a) {
  if (c > c_max_) return;
  raw_ += a;
  if (2 * c <= c_max_) raw_half_ += a;
  if (4 * c <= c_max_) raw_quarter_ += a;
  const double cd = double(c);
  for (int j = 0; j < kLevels; ++j) {
    if (cd > X_[j]) break;
    const double w = 1.0 - cd / X_[j];
    const double w2 = w * w;
    R_[0][j] += a * w2;
    R_[1][j] += a * w2 * w;
    R_[2][j] += a * w2 * w2;
  }
}

void RieszAccumulator::merge(const RieszAccumulator& o) {
  raw_ += o.raw_;
  raw_half_ += o.raw_half_;
  raw_quarter_ += o.raw_quarter_;
  for (int k = 0; k < kOrders; ++k)
    for (int j = 0; j < kLevels; ++j) R_[k][j] += o.R_[k][j];
}

namespace {

double fit_constant(const std::array<double, RieszAccumulator::kLevels>& X,
                    const std::array<double, RieszAccumulator::kLevels>& R, int npts, int ncols) {
  Eigen::MatrixXd A(npts, ncols);
  Eigen::VectorXd b(npts);
  for (int i = 0; i < npts; ++i) {
    const double t = X[i] / X[0];
    const double u = 1.0 / t, l = std::log(t);
    const double cols[5] = {1.0, u, u * u, l * u, l * u * u};
    for (int k = 0; k < ncols; ++k) A(i, k) = cols[k];
    b(i) = R[i];
  }
  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  return x(0);
}

}  // namespace

AccelResult RieszAccumulator::finish() const {
  AccelResult res;
  res.raw = raw_;
  res.raw_error = std::max(std::fabs(raw_ - raw_half_), std::fabs(raw_half_ - raw_quarter_));
  if (X_[kLevels - 1] < 4.0) {
    res.value = res.raw;
    res.error = res.raw_error;
    return res;
  }
  std::vector<double> est;
  for (int k = 0; k < kOrders; ++k) {
    est.push_back(fit_constant(X_, R_[k], 5, 5));
    est.push_back(fit_constant(X_, R_[k], 6, 5));
    est.push_back(fit_constant(X_, R_[k], 6, 4));
  }
  std::sort(est.begin(), est.end());
  const double med = est[est.size() / 2];
  double spread = 0.0;
  for (double e : est) spread = std::max(spread, std::fabs(e - med));
  res.fitted = med;
  res.fitted_error = spread;
  if (res.fitted_error < res.raw_error) {
    res.value = res.fitted;
    res.error = res.fitted_error;
    res.extrapolated = true;
  } else {
    res.value = res.raw;
    res.error = res.raw_error;
  }
  return res;
}

AccelResult accelerate(const std::vector<std::int64_t>& cs, const std::vector<double>& terms, std::int64_t c_max) {
  RieszAccumulator acc(c_max);
  for (std::size_t i = 0; i < cs.size() && i < terms.size(); ++i) acc.add(cs[i], terms[i]);
  return acc.finish();
}

}  // namespace fisph
