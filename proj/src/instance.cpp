#include "fm/instance.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fm {

Instance::Instance(int machines, std::vector<Rational> sorted_times)
    : m_(machines), p_(std::move(sorted_times)) {
  if (m_ < 1) throw std::invalid_argument("machine count must be >= 1");
  if (p_.empty() || p_.size() % static_cast<std::size_t>(m_) != 0)
    throw std::invalid_argument("job count must be a positive multiple of m");
  k_ = static_cast<int>(p_.size()) / m_;
  for (std::size_t j = 0; j < p_.size(); ++j) {
    if (p_[j] < 0) throw std::invalid_argument("negative processing time");
    if (j + 1 < p_.size() && p_[j] < p_[j + 1])
      throw std::invalid_argument("processing times must be nonincreasing");
  }
}

Instance Instance::from_raw(std::vector<Rational> raw, int machines) {
  if (machines < 1) throw std::invalid_argument("machine count must be >= 1");
  if (raw.empty()) throw std::invalid_argument("empty job list");
  for (const auto& t : raw)
    if (t < 0) throw std::invalid_argument("negative processing time");
  std::stable_sort(raw.begin(), raw.end(),
                   [](const Rational& a, const Rational& b) { return a > b; });
  while (raw.size() % static_cast<std::size_t>(machines) != 0)
    raw.emplace_back(0);
  return Instance(machines, std::move(raw));
}

const Rational& Instance::lambda(int r) const { return tau(1, r); }

const Rational& Instance::mu(int r) const { return tau(m_, r); }

const Rational& Instance::tau(int i, int r) const {
  if (r < 1 || r > k_ || i < 1 || i > m_)
    throw std::out_of_range("tau(i, r) out of range");
  return p_[static_cast<std::size_t>(r - 1) * m_ + (i - 1)];
}

std::vector<Rational> Instance::rank_values(int r) const {
  if (r < 1 || r > k_) throw std::out_of_range("rank out of range");
  auto first = p_.begin() + static_cast<std::ptrdiff_t>(r - 1) * m_;
  return std::vector<Rational>(first, first + m_);
}

Rational Instance::total() const {
  Rational sum = 0;
  for (const auto& t : p_) sum += t;
  return sum;
}

bool Instance::all_zero() const {
  return std::all_of(p_.begin(), p_.end(),
                     [](const Rational& t) { return t == 0; });
}

bool Instance::satisfies_property2() const {
  for (int r = 1; r < k_; ++r)
    if (mu(r) != lambda(r + 1)) return false;
  return mu(k_) == 0;
}

Instance Instance::property2_normalized() const {
  // One bottom-up pass reaches the fixed point: the shift for rank k is
  // mu(k), and for r < k it is mu(r) minus the already-shifted lambda(r+1).
  std::vector<Rational> shift(static_cast<std::size_t>(k_));
  shift[k_ - 1] = mu(k_);
  for (int r = k_ - 1; r >= 1; --r)
    shift[r - 1] = mu(r) - (lambda(r + 1) - shift[r]);
  std::vector<Rational> q(p_.size());
  for (int r = 1; r <= k_; ++r)
    for (int i = 0; i < m_; ++i) {
      std::size_t j = static_cast<std::size_t>(r - 1) * m_ + i;
      q[j] = p_[j] - shift[r - 1];
    }
  return Instance(m_, std::move(q));
}

Instance Instance::with_zero_rank_appended() const {
  std::vector<Rational> q = p_;
  q.insert(q.end(), static_cast<std::size_t>(m_), Rational(0));
  return Instance(m_, std::move(q));
}

Instance Instance::scaled(const Rational& factor) const {
  if (factor <= 0) throw std::invalid_argument("scale factor must be positive");
  std::vector<Rational> q = p_;
  for (auto& t : q) t *= factor;
  return Instance(m_, std::move(q));
}

nlohmann::json Instance::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : p_) arr.push_back(format_rational(t));
  return nlohmann::json{{"m", m_}, {"p", arr}};
}

Instance Instance::from_json(const nlohmann::json& j) {
  if (!j.contains("m") || !j.contains("p"))
    throw std::invalid_argument("instance JSON needs \"m\" and \"p\"");
  int machines = j.at("m").get<int>();
  std::vector<Rational> raw;
  for (const auto& entry : j.at("p")) {
    if (entry.is_string())
      raw.push_back(parse_rational(entry.get<std::string>()));
    else if (entry.is_number_integer())
      raw.emplace_back(entry.get<long long>());
    else
      throw std::invalid_argument("processing times must be ints or \"a/b\"");
  }
  return from_raw(std::move(raw), machines);
}

}  // namespace fm
