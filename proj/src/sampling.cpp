#include "cechx/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace cechx {

Vec sample_in_cell(const Cell& c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec x(static_cast<size_t>(c.dim));
  for (int i = 0; i < c.dim; ++i) x[static_cast<size_t>(i)] = c.lo(i) + u(rng) * c.side();
  return x;
}

Ball sample_ball_meeting(std::span<const Cell> cells, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec> samples;
  samples.reserve(cells.size());
  for (const Cell& c : cells) {
    if (u(rng) < 0.3) {
      auto corners = c.corners();
      std::uniform_int_distribution<size_t> pick(0, corners.size() - 1);
      samples.push_back(corners[pick(rng)]);
    } else {
      samples.push_back(sample_in_cell(c, rng));
    }
  }
  Ball ball = meb_of_coords(samples).ball;
  if (u(rng) < 0.5) return ball;

  std::normal_distribution<double> g(0.0, 1.0);
  Vec dir(ball.center.size());
  double norm = 0.0;
  for (double& x : dir) {
    x = g(rng);
    norm += x * x;
  }
  norm = std::sqrt(norm);
  const double shift = u(rng) * 2.0 * std::max(ball.radius, 1e-12);
  for (size_t i = 0; i < dir.size(); ++i) ball.center[i] += shift * dir[i] / norm;
  double r = 0.0;
  for (const Vec& s : samples) r = std::max(r, distance(ball.center, s));
  ball.radius = r;
  return ball;
}

}  // namespace cechx
