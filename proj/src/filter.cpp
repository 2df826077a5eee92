#include "arcsqp/filter.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace arcsqp {

Filter::Filter(double h_max, double gamma_h, double gamma_l)
    : h_max_(h_max), gamma_h_(gamma_h), gamma_l_(gamma_l) {
  if (!(h_max > 0.0)) throw ConfigError("Filter: h_max must be positive");
  if (!(gamma_h > 0.0 && gamma_h < 1.0)) {
    throw ConfigError("Filter: gamma_h must lie in (0,1)");
  }
  if (!(gamma_l > 0.0 && gamma_l < 1.0)) {
    throw ConfigError("Filter: gamma_l must lie in (0,1)");
  }
}

bool Filter::acceptable(double h, double l) const {
  if (!std::isfinite(h) || !std::isfinite(l)) {
    throw EvaluationError('c', "Filter: non-finite (h, l) query");
  }
  if (h >= h_max_) return false;
  for (const FilterEntry& e : entries_) {
    if (h > (1.0 - gamma_h_) * e.h && l > e.l - gamma_l_ * e.h) return false;
  }
  return true;
}

bool Filter::margins_hold(double h, double l) const {
  for (const FilterEntry& e : entries_) {
    const bool h_improves = h <= (1.0 - gamma_h_) * e.h;
    const bool l_improves = l <= e.l - gamma_l_ * e.h;
    if (!h_improves && !l_improves) return false;
  }
  return true;
}

void Filter::add(double h, double l) {
  if (!std::isfinite(h) || !std::isfinite(l) || h < 0.0) {
    throw EvaluationError('c', "Filter: invalid entry");
  }
  if (h >= h_max_) return;
  // Entry j is redundant when its prohibited corner lies inside the new
  // one: (1-gamma_h) h_j >= (1-gamma_h) h and l_j - gamma_l h_j >= l - gamma_l h.
  const auto dominated = [&](const FilterEntry& e) {
    return e.h >= h && e.l - gamma_l_ * e.h >= l - gamma_l_ * h;
  };
  entries_.erase(std::remove_if(entries_.begin(), entries_.end(), dominated),
                 entries_.end());
  entries_.push_back({h, l});
}

double Filter::min_entry_h() const {
  double m = h_max_;
  for (const FilterEntry& e : entries_) m = std::min(m, e.h);
  return m;
}

std::string Filter::to_csv() const {
  std::string out = "h,l\n";
  char buf[64];
  for (const FilterEntry& e : entries_) {
    auto r1 = std::to_chars(buf, buf + sizeof buf, e.h);
    out.append(buf, r1.ptr);
    out.push_back(',');
    auto r2 = std::to_chars(buf, buf + sizeof buf, e.l);
    out.append(buf, r2.ptr);
    out.push_back('\n');
  }
  return out;
}

}  // namespace arcsqp
