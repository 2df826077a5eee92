#pragma once

#include <string>
#include <vector>

#include "arcsqp/types.hpp"

namespace arcsqp {

/// One prohibited (constraint violation, Lagrangian value) pair.
struct FilterEntry {
  double h = 0.0;
  double l = 0.0;
};

/// Prohibited region of the (h, l) plane. A point is in the region iff
/// h >= h_max, or some stored entry (h_j, l_j) dominates it with margins:
/// h > (1 - gamma_h) h_j AND l > l_j - gamma_l h_j. A filter belongs to
/// exactly one solve.
class Filter {
 public:
  /// Throws ConfigError unless h_max > 0 and the margins lie in (0, 1).
  Filter(double h_max, double gamma_h, double gamma_l);

  /// True iff (h, l) is NOT in the prohibited region.
  /// Throws EvaluationError on non-finite input.
  bool acceptable(double h, double l) const;

  bool in_region(double h, double l) const { return !acceptable(h, l); }

  /// True iff the margin condition holds against every stored entry:
  /// h <= (1 - gamma_h) h_j OR l <= l_j - gamma_l h_j for all j.
  bool margins_hold(double h, double l) const;

  /// Appends (h, l) and prunes entries whose prohibited corner is covered
  /// by the new one. The region only ever grows. Entries at h >= h_max are
  /// not stored; that band is prohibited permanently anyway.
  void add(double h, double l);

  const std::vector<FilterEntry>& entries() const { return entries_; }
  double h_max() const { return h_max_; }
  double gamma_h() const { return gamma_h_; }
  double gamma_l() const { return gamma_l_; }

  /// Smallest stored h; h_max when the filter is empty.
  double min_entry_h() const;

  /// "h,l" header plus one row per entry.
  std::string to_csv() const;

 private:
  std::vector<FilterEntry> entries_;
  double h_max_;
  double gamma_h_;
  double gamma_l_;
};

}  // namespace arcsqp
