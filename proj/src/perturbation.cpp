#include "melnikov/perturbation.hpp"

#include <string>

#include "melnikov/errors.hpp"

namespace melnikov {

const char* channel_name(Channel c) {
  switch (c) {
    case Channel::APlus: return "a+";
    case Channel::AMinus: return "a-";
    case Channel::BPlus: return "b+";
    case Channel::BMinus: return "b-";
  }
  return "?";
}

double PolynomialField::operator()(double x, double y) const {
  // Horner in y inside Horner in x.
  double acc = 0.0;
  for (Eigen::Index i = coeffs_.rows() - 1; i >= 0; --i) {
    double inner = 0.0;
    for (Eigen::Index j = coeffs_.cols() - 1; j >= 0; --j) inner = inner * y + coeffs_(i, j);
    acc = acc * x + inner;
  }
  return acc;
}

PiecewisePerturbation::PiecewisePerturbation(int degree) : degree_(degree) {
  if (degree < 0) throw DomainError("perturbation degree must be nonnegative");
}

void PiecewisePerturbation::set(Channel channel, int i, int j, const Rational& value) {
  if (i < 0 || j < 0 || i + j > degree_)
    throw DomainError("coefficient index (" + std::to_string(i) + "," + std::to_string(j) +
                      ") outside degree " + std::to_string(degree_));
  auto& map = coeffs_[static_cast<int>(channel)];
  if (value == 0)
    map.erase({i, j});
  else
    map[{i, j}] = value;
}

Rational PiecewisePerturbation::get(Channel channel, int i, int j) const {
  const auto& map = coeffs_[static_cast<int>(channel)];
  const auto it = map.find({i, j});
  return it == map.end() ? Rational(0) : it->second;
}

bool PiecewisePerturbation::is_zero() const {
  for (const auto& map : coeffs_)
    if (!map.empty()) return false;
  return true;
}

PiecewisePerturbation& PiecewisePerturbation::operator+=(const PiecewisePerturbation& o) {
  if (o.degree_ > degree_) degree_ = o.degree_;
  for (Channel c : kAllChannels)
    for (const auto& [idx, v] : o.coefficients(c)) set(c, idx.first, idx.second, get(c, idx.first, idx.second) + v);
  return *this;
}

PiecewisePerturbation& PiecewisePerturbation::operator*=(const Rational& s) {
  if (s == 0) {
    for (auto& map : coeffs_) map.clear();
    return *this;
  }
  for (auto& map : coeffs_)
    for (auto& [idx, v] : map) v *= s;
  return *this;
}

bool operator==(const PiecewisePerturbation& a, const PiecewisePerturbation& b) {
  return a.coeffs_ == b.coeffs_;
}

PolynomialField PiecewisePerturbation::field(Channel channel) const {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(degree_ + 1, degree_ + 1);
  for (const auto& [idx, v] : coefficients(channel)) c(idx.first, idx.second) = to_double(v);
  return PolynomialField(std::move(c));
}

PiecewisePerturbation PiecewisePerturbation::mirrored() const {
  PiecewisePerturbation out(degree_);
  const auto copy = [&](Channel from, Channel to) {
    for (const auto& [idx, v] : coefficients(from)) out.set(to, idx.second, idx.first, -v);
  };
  copy(Channel::BMinus, Channel::APlus);
  copy(Channel::AMinus, Channel::BPlus);
  copy(Channel::BPlus, Channel::AMinus);
  copy(Channel::APlus, Channel::BMinus);
  return out;
}

PiecewisePerturbation unit_perturbation(int degree, Channel channel, int i, int j) {
  PiecewisePerturbation p(degree);
  p.set(channel, i, j, 1);
  return p;
}

}  // namespace melnikov
