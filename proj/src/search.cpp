#include "fm/search.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <thread>

#include "fm/algorithms.hpp"
#include "fm/caseanalysis.hpp"

namespace fm {

Instance tight_family(int m) {
  if (m < 2) throw std::invalid_argument("need m >= 2");
  std::vector<Rational> p;
  for (int j = 1; j <= 3 * m; ++j) {
    if (j < m)
      p.emplace_back(0);
    else if (j == m)
      p.emplace_back(m);
    else if (j <= 2 * m)
      p.emplace_back(j - 1);
    else
      p.emplace_back(j - 2);
  }
  return Instance::from_raw(std::move(p), m);
}

Instance ld0_family(int m) {
  if (m < 2) throw std::invalid_argument("need m >= 2");
  std::vector<Rational> p;
  for (int i = 1; i <= 3 * m; ++i) {
    if (i <= m - 1)
      p.emplace_back(2);
    else if (i <= 2 * m + 1)
      p.emplace_back(1);
    else
      p.emplace_back(0);
  }
  return Instance::from_raw(std::move(p), m);
}

namespace {

// Nonincreasing integer sequences of length m*k with v[r*m - 1] ==
// v[r*m] for r < k (tight rank boundaries) and v[m*k - 1] == 0.
void emit(std::vector<Integer>& v, std::size_t pos, const Integer& hi, int m,
          int k, std::vector<Instance>& out) {
  const std::size_t n = static_cast<std::size_t>(m) * k;
  if (pos == n) {
    std::vector<Rational> p(v.begin(), v.end());
    out.emplace_back(m, std::move(p));
    return;
  }
  if (pos == n - 1) {
    if (hi >= 0) {
      v[pos] = 0;
      emit(v, pos + 1, Integer(0), m, k, out);
    }
    return;
  }
  bool tied = pos > 0 && pos % static_cast<std::size_t>(m) == 0;
  if (tied) {
    v[pos] = v[pos - 1];
    emit(v, pos + 1, v[pos], m, k, out);
    return;
  }
  for (Integer x = hi; x >= 0; --x) {
    v[pos] = x;
    emit(v, pos + 1, x, m, k, out);
  }
}

}  // namespace

std::vector<Instance> enumerate_instances(int m, int k, const Integer& lmax) {
  if (m < 1 || k < 1 || lmax < 0)
    throw std::invalid_argument("need m >= 1, k >= 1, lmax >= 0");
  std::vector<Instance> out;
  std::vector<Integer> v(static_cast<std::size_t>(m) * k);
  emit(v, 0, lmax, m, k, out);
  return out;
}

std::string to_string(HuntStatus s) {
  switch (s) {
    case HuntStatus::OK: return "OK";
    case HuntStatus::VIOLATION: return "VIOLATION";
    case HuntStatus::UNRESOLVED: return "UNRESOLVED";
    case HuntStatus::FILTERED: return "FILTERED";
  }
  return "?";
}

HuntReport hunt(int m, int k, const Integer& lmax, const Rational& bound,
                bool filter_kk1, int jobs, std::uint64_t budget) {
  HuntReport rep;
  rep.m = m;
  rep.k = k;
  rep.lmax = lmax;
  rep.bound = bound;
  rep.filter_kk1 = filter_kk1;
  if (m >= 4) {
    auto open = remaining_cases(m);
    rep.evidence_only = open.count(k) > 0;
  }

  std::vector<Instance> instances = enumerate_instances(m, k, lmax);
  rep.rows.reserve(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i)
    rep.rows.push_back(
        {i, std::move(instances[i]), {}, {}, {}, HuntStatus::OK});

  Rational kk1 = k >= 2 ? Rational(k) / Rational(k - 1) : Rational(0);
  auto process = [&](HuntRow& row) {
    try {
      RatioResult r = makespan_ratio(row.instance, budget);
      row.t_ld_worst = r.t_ld_worst;
      row.t_opt = r.t_opt;
      row.ratio = r.ratio;
      if (row.ratio > bound)
        row.status = HuntStatus::VIOLATION;
      else if (filter_kk1 && k >= 2 && row.ratio >= kk1)
        row.status = HuntStatus::FILTERED;
      else
        row.status = HuntStatus::OK;
    } catch (const OracleBudgetExceeded&) {
      row.status = HuntStatus::UNRESOLVED;
    }
  };
  if (jobs <= 1) {
    for (auto& row : rep.rows) process(row);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&, w]() {
        for (std::size_t i = w; i < rep.rows.size();
             i += static_cast<std::size_t>(jobs))
          process(rep.rows[i]);
      });
    for (auto& t : pool) t.join();
  }

  bool have_max = false;
  for (const auto& row : rep.rows) {
    switch (row.status) {
      case HuntStatus::UNRESOLVED:
        rep.unresolved = true;
        continue;
      case HuntStatus::VIOLATION:
        rep.violation = true;
        break;
      case HuntStatus::FILTERED:
        ++rep.checked;
        continue;
      case HuntStatus::OK:
        break;
    }
    ++rep.checked;
    if (!have_max || row.ratio > rep.max_ratio) {
      have_max = true;
      rep.max_ratio = row.ratio;
      rep.argmax.clear();
    }
    if (row.ratio == rep.max_ratio) rep.argmax.push_back(row.index);
  }
  return rep;
}

void HuntReport::write_csv(std::ostream& os) const {
  if (evidence_only)
    os << "# evidence only: exhaustive up to lambda_1 <= " << lmax
       << "; this parameter range is not settled by bounded enumeration\n";
  os << "instance-id,m,k,p,t_LD_worst,t_opt,ratio_num,ratio_den,status\n";
  for (const auto& row : rows) {
    os << row.index << ',' << m << ',' << k << ',';
    const auto& p = row.instance.times();
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j) os << ';';
      os << format_rational(p[j]);
    }
    os << ',';
    if (row.status == HuntStatus::UNRESOLVED) {
      os << ",,,,";
    } else {
      os << format_rational(row.t_ld_worst) << ','
         << format_rational(row.t_opt) << ','
         << numerator(row.ratio) << ',' << denominator(row.ratio) << ',';
    }
    os << to_string(row.status) << '\n';
  }
}

}  // namespace fm
