#include "qapeda/qap.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qapeda/qap_kernels.hpp"

namespace qapeda {

QapInstance::QapInstance(std::string name, std::size_t n,
                         std::vector<std::int64_t> distance, std::vector<std::int64_t> flow)
    : name_(std::move(name)), n_(n), distance_(std::move(distance)), flow_(std::move(flow)) {
  if (n_ < 2) throw std::invalid_argument("QapInstance: n must be >= 2");
  if (distance_.size() != n_ * n_ || flow_.size() != n_ * n_)
    throw std::invalid_argument("QapInstance: matrices must be n x n");
  std::int64_t max_entry = 0;
  for (std::int64_t v : distance_) {
    if (v < 0) throw std::invalid_argument("QapInstance: negative distance entry");
    max_entry = std::max(max_entry, v);
  }
  for (std::int64_t v : flow_) {
    if (v < 0) throw std::invalid_argument("QapInstance: negative flow entry");
    max_entry = std::max(max_entry, v);
  }

  fits32_ = max_entry <= std::numeric_limits<std::int32_t>::max();
  if (fits32_) {
    distance32_.resize(n_ * n_);
    flow32_.resize(n_ * n_);
    distance32_t_.resize(n_ * n_);
    flow32_t_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        auto d = static_cast<std::int32_t>(distance_[i * n_ + j]);
        auto h = static_cast<std::int32_t>(flow_[i * n_ + j]);
        distance32_[i * n_ + j] = d;
        flow32_[i * n_ + j] = h;
        distance32_t_[j * n_ + i] = d;
        flow32_t_[j * n_ + i] = h;
      }
    }
  }
}

QapInstance parse_qaplib(const std::string& text, std::string name) {
  std::vector<std::int64_t> values;
  std::size_t i = 0;
  const char* data = text.data();
  const char* end = data + text.size();
  while (data + i < end) {
    if (std::isspace(static_cast<unsigned char>(data[i]))) {
      ++i;
      continue;
    }
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(data + i, end, v);
    if (ec != std::errc{} || (ptr < end && !std::isspace(static_cast<unsigned char>(*ptr))))
      throw std::invalid_argument("parse_qaplib: non-integer token in " + name);
    if (v < 0) throw std::invalid_argument("parse_qaplib: negative entry in " + name);
    values.push_back(v);
    i = static_cast<std::size_t>(ptr - data);
  }

  if (values.empty()) throw std::invalid_argument("parse_qaplib: empty input " + name);
  const auto n = static_cast<std::size_t>(values[0]);
  if (values[0] < 2) throw std::invalid_argument("parse_qaplib: n must be >= 2 in " + name);
  if (values.size() != 1 + 2 * n * n)
    throw std::invalid_argument("parse_qaplib: expected 1 + 2n^2 tokens in " + name);

  std::vector<std::int64_t> distance(values.begin() + 1, values.begin() + 1 + n * n);
  std::vector<std::int64_t> flow(values.begin() + 1 + n * n, values.end());
  return QapInstance(std::move(name), n, std::move(distance), std::move(flow));
}

std::string serialize_qaplib(const QapInstance& inst) {
  std::ostringstream out;
  const std::size_t n = inst.n();
  out << n << "\n\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << inst.distance(i, j);
    out << "\n";
  }
  out << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << inst.flow(i, j);
    out << "\n";
  }
  return out.str();
}

Objective evaluate(const QapInstance& inst, const Permutation& sigma) {
  if (sigma.size() != inst.n())
    throw std::invalid_argument("evaluate: permutation size does not match instance");
  return kernels::evaluate(inst, sigma.data());
}

Objective delta_swap(const QapInstance& inst, const Permutation& sigma, Objective f,
                     std::size_t i1, std::size_t i2) {
  if (sigma.size() != inst.n())
    throw std::invalid_argument("delta_swap: permutation size does not match instance");
  if (i1 == i2) throw std::invalid_argument("delta_swap: positions must differ");
  if (i1 >= inst.n() || i2 >= inst.n())
    throw std::invalid_argument("delta_swap: position out of range");
  return f + kernels::swap_delta(inst, sigma.data(), i1, i2);
}

double ardp(Objective best_known, const std::vector<Objective>& objectives) {
  if (best_known <= 0) throw std::invalid_argument("ardp: best_known must be positive");
  if (objectives.empty()) throw std::invalid_argument("ardp: no objectives");
  double sum = 0;
  for (Objective v : objectives) sum += static_cast<double>(v);
  double mean = sum / static_cast<double>(objectives.size());
  double best = static_cast<double>(best_known);
  return 100.0 * std::abs(best - mean) / best;
}

}  // namespace qapeda
