#pragma once

#include <random>
#include <span>

#include "cechx/cell.hpp"
#include "cechx/geometry.hpp"

namespace cechx {

// Random ball containing at least one point of every cell: one sample per
// cell (interior point or corner), their meb, then optionally a random
// off-center enlargement that still contains all samples.
Ball sample_ball_meeting(std::span<const Cell> cells, std::mt19937_64& rng);

// Uniform point of the half-open box.
Vec sample_in_cell(const Cell& c, std::mt19937_64& rng);

}  // namespace cechx
