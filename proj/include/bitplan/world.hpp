// SPDX-License-Identifier: BSD-3-Clause
//
// Obstacle models and straight-line collision checking.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bitplan/space.hpp"

namespace bitplan {

struct CircleObstacle {
    State center;
    double radius = 0.0;
};

struct BoxObstacle {
    State min;
    State max;
};

using Obstacle = std::variant<CircleObstacle, BoxObstacle>;

/// 2-D occupancy grid. Cell (col, row) covers
/// [origin + col*mpc, origin + (col+1)*mpc) x [origin + row*mpc, origin + (row+1)*mpc);
/// row 0 is the lowest y.
class OccupancyGrid {
public:
    OccupancyGrid(std::size_t width, std::size_t height, double meters_per_cell, State origin,
                  std::vector<bool> occupancy);

    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] std::size_t height() const noexcept { return height_; }
    [[nodiscard]] double meters_per_cell() const noexcept { return meters_per_cell_; }
    [[nodiscard]] const State& origin() const noexcept { return origin_; }
    [[nodiscard]] const std::vector<bool>& occupancy() const noexcept { return occupancy_; }

    [[nodiscard]] bool blocked(std::size_t col, std::size_t row) const {
        return occupancy_[row * width_ + col];
    }
    /// Half-open extent of the grid in world coordinates.
    [[nodiscard]] Bounds extent() const;
    /// Cell containing x, or nullopt when x is outside the grid.
    [[nodiscard]] std::optional<std::pair<std::size_t, std::size_t>> cell_of(const State& x) const;
    [[nodiscard]] std::optional<std::pair<std::size_t, std::size_t>> cell_of(
        std::span<const double> x) const;

private:
    std::size_t width_;
    std::size_t height_;
    double meters_per_cell_;
    State origin_;
    std::vector<bool> occupancy_;
};

class GridLoadError : public std::runtime_error {
public:
    GridLoadError(const std::string& field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(field) {}
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

inline constexpr double kDefaultChecksPerMeter = 4.0;

/// Immutable obstacle model. Either a list of geometric obstacles or a single
/// occupancy grid; points on an obstacle boundary are blocked.
class World {
public:
    World(Bounds bounds, std::vector<Obstacle> obstacles,
          double checks_per_meter = kDefaultChecksPerMeter);
    explicit World(OccupancyGrid grid, double checks_per_meter = kDefaultChecksPerMeter);

    [[nodiscard]] const Bounds& bounds() const noexcept { return bounds_; }
    [[nodiscard]] const std::vector<Obstacle>& obstacles() const noexcept { return obstacles_; }
    [[nodiscard]] const std::optional<OccupancyGrid>& grid() const noexcept { return grid_; }
    [[nodiscard]] double checks_per_meter() const noexcept { return checks_per_meter_; }

    [[nodiscard]] bool is_free(const State& x) const;
    [[nodiscard]] bool is_free(std::span<const double> x) const;

    /// Number of points checked along a segment of the given length:
    /// ceil(length * checks_per_meter) + 1, endpoints included.
    [[nodiscard]] std::size_t check_count(double length) const;

    /// Checks `points` (>= 1) evenly spaced points from x to y inclusive.
    /// The endpoints are ordered canonically so the result is symmetric.
    [[nodiscard]] bool segment_free(const State& x, const State& y, std::size_t points) const;

    /// c_hat(x, y) if the straight segment is collision free, else infinity.
    [[nodiscard]] Cost true_cost(const State& x, const State& y) const;

private:
    Bounds bounds_;
    std::vector<Obstacle> obstacles_;
    std::optional<OccupancyGrid> grid_;
    double checks_per_meter_;
};

/// Reads an ASCII (P2) or binary (P5) PGM with maxval 255. Cells with gray
/// value <= threshold are blocked. The first image row becomes grid row 0.
[[nodiscard]] OccupancyGrid load_occupancy_grid(const std::filesystem::path& path,
                                                double meters_per_cell, const State& origin,
                                                int threshold);

/// Writes blocked cells as 0 and free cells as 255, P5 unless `ascii`.
void save_occupancy_grid(const OccupancyGrid& grid, const std::filesystem::path& path,
                         bool ascii = false);

}  // namespace bitplan
