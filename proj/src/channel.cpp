#include "uavnoma/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace uavnoma {

double PowerAllocation::total() const {
  return std::accumulate(watts.begin(), watts.end(), 0.0);
}

bool DecodingOrder::is_valid() const {
  for (std::size_t i = 0; i < m_; ++i) {
    if (at(i, i) != 0) return false;
    for (std::size_t j = 0; j < m_; ++j) {
      const int a = at(i, j);
      if (a != 0 && a != 1) return false;
      if (i != j && a + at(j, i) != 1) return false;
    }
  }
  return true;
}

std::vector<double> squared_distances(const Scenario& s, const UavPosition& pos) {
  const double h2 = s.altitude_h * s.altitude_h;
  std::vector<double> d2;
  d2.reserve(s.size());
  for (const auto& u : s.users) {
    const double dx = pos.x - u.x;
    const double dy = pos.y - u.y;
    d2.push_back(h2 + dx * dx + dy * dy);
  }
  return d2;
}

ChannelGains gains(const Scenario& s, const UavPosition& pos) {
  ChannelGains g;
  for (double d : squared_distances(s, pos)) g.values.push_back(s.gamma0 / d);
  return g;
}

DecodingOrder decoding_order_from_distances(std::span<const double> d2) {
  DecodingOrder order(d2.size());
  for (std::size_t i = 0; i < d2.size(); ++i) {
    for (std::size_t j = 0; j < d2.size(); ++j) {
      if (i == j) continue;
      const bool stronger = d2[i] < d2[j] || (d2[i] == d2[j] && i < j);
      order.set(i, j, stronger ? 1 : 0);
    }
  }
  return order;
}

DecodingOrder decoding_order(const Scenario& s, const UavPosition& pos) {
  const auto d2 = squared_distances(s, pos);
  return decoding_order_from_distances(d2);
}

std::vector<std::size_t> ascending_gain_order(const ChannelGains& g) {
  std::vector<std::size_t> idx(g.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // equal gains: the lower index is the stronger user, as in decoding_order
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return g[a] < g[b] || (g[a] == g[b] && a > b);
  });
  return idx;
}

std::vector<double> user_rates(const ChannelGains& g, const DecodingOrder& order,
                               const PowerAllocation& p) {
  const std::size_t m = g.size();
  std::vector<double> rates(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double interference = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i && order.at(i, j) == 1) interference += g[j] * p[j];
    }
    rates[i] = std::log2(1.0 + p[i] * g[i] / (1.0 + interference));
  }
  return rates;
}

double sum_rate(const ChannelGains& g, const PowerAllocation& p) {
  double received = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) received += p[i] * g[i];
  return std::log2(1.0 + received);
}

}  // namespace uavnoma
