#pragma once

// Pivot sweeps over sorted projected carriers, shared by the exact simple
// regression depth and the Bai-He form.

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "regdepth/core.hpp"

namespace regdepth::detail {

struct Group {
  double at = 0.0;
  Index pos = 0;   // residual sign +1
  Index neg = 0;   // residual sign -1
  Index zero = 0;  // residual within tolerance of 0
  Index size() const { return pos + neg + zero; }
};

inline std::vector<Group> group_by_position(const Vector& z, const std::vector<int>& sign) {
  std::vector<Index> order(static_cast<std::size_t>(z.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return z(a) < z(b); });
  std::vector<Group> groups;
  for (Index i : order) {
    if (groups.empty() || groups.back().at != z(i)) groups.push_back(Group{z(i)});
    Group& g = groups.back();
    const int s = sign[static_cast<std::size_t>(i)];
    (s > 0 ? g.pos : s < 0 ? g.neg : g.zero) += 1;
  }
  return groups;
}

// Closed counts #{r (v2 (z - v1)) >= 0}, minimized over v2 in {+1,-1} and v1
// over the sentinels, every group position and every gap between groups.
inline Index closed_sweep_min(const std::vector<Group>& g) {
  Index tot_up = 0, tot_dn = 0;  // r >= 0 / r <= 0
  for (const Group& x : g) {
    tot_up += x.pos + x.zero;
    tot_dn += x.neg + x.zero;
  }
  Index best = std::min(tot_up, tot_dn);  // sentinels
  Index below_up = 0, below_dn = 0;       // groups strictly left of pivot
  for (const Group& x : g) {
    const Index above_up = tot_up - below_up - (x.pos + x.zero);
    const Index above_dn = tot_dn - below_dn - (x.neg + x.zero);
    // pivot at the group: its members count in both orientations
    best = std::min(best, above_up + below_dn + x.size());
    best = std::min(best, above_dn + below_up + x.size());
    below_up += x.pos + x.zero;
    below_dn += x.neg + x.zero;
    // pivot in the gap right of the group
    best = std::min(best, (tot_up - below_up) + below_dn);
    best = std::min(best, (tot_dn - below_dn) + below_up);
  }
  return best;
}

// Strict counts min(#{r (z - v) > 0}, #{r (z - v) < 0}) minimized over v.
inline Index strict_sweep_min(const std::vector<Group>& g) {
  Index tot_p = 0, tot_n = 0;
  for (const Group& x : g) {
    tot_p += x.pos;
    tot_n += x.neg;
  }
  Index best = std::min(tot_p, tot_n);
  Index below_p = 0, below_n = 0;
  for (const Group& x : g) {
    const Index above_p = tot_p - below_p - x.pos;
    const Index above_n = tot_n - below_n - x.neg;
    best = std::min(best, std::min(above_p + below_n, above_n + below_p));
    below_p += x.pos;
    below_n += x.neg;
    best = std::min(best, std::min((tot_p - below_p) + below_n, (tot_n - below_n) + below_p));
  }
  return best;
}

}  // namespace regdepth::detail
