// SPDX-License-Identifier: BSD-3-Clause

#include "bitplan/world.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace bitplan {

namespace {

bool inside(const CircleObstacle& c, std::span<const double> x) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - c.center[i];
        sum += d * d;
    }
    return std::sqrt(sum) <= c.radius;
}

bool inside(const BoxObstacle& b, std::span<const double> x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < b.min[i] || x[i] > b.max[i]) return false;
    }
    return true;
}

void validate_obstacle(const Obstacle& obstacle, std::size_t d) {
    if (const auto* c = std::get_if<CircleObstacle>(&obstacle)) {
        if (c->center.dimension() != d) throw std::invalid_argument("circle: dimension mismatch");
        if (!(c->radius > 0.0)) throw std::invalid_argument("circle: radius must be positive");
    } else {
        const auto& b = std::get<BoxObstacle>(obstacle);
        if (b.min.dimension() != d || b.max.dimension() != d)
            throw std::invalid_argument("rect: dimension mismatch");
        for (std::size_t i = 0; i < d; ++i) {
            if (!(b.min[i] < b.max[i]))
                throw std::invalid_argument("rect: min must be below max in every axis");
        }
    }
}

}  // namespace

OccupancyGrid::OccupancyGrid(std::size_t width, std::size_t height, double meters_per_cell,
                             State origin, std::vector<bool> occupancy)
    : width_(width),
      height_(height),
      meters_per_cell_(meters_per_cell),
      origin_(std::move(origin)),
      occupancy_(std::move(occupancy)) {
    if (width_ == 0 || height_ == 0) throw GridLoadError("size", "grid must be non-empty");
    if (!(meters_per_cell_ > 0.0) || !std::isfinite(meters_per_cell_))
        throw GridLoadError("meters_per_cell", "must be positive");
    if (origin_.dimension() != 2) throw GridLoadError("origin", "must be two-dimensional");
    if (occupancy_.size() != width_ * height_)
        throw GridLoadError("size", "occupancy length does not equal width*height");
}

Bounds OccupancyGrid::extent() const {
    return Bounds{origin_, State{origin_[0] + static_cast<double>(width_) * meters_per_cell_,
                                 origin_[1] + static_cast<double>(height_) * meters_per_cell_}};
}

std::optional<std::pair<std::size_t, std::size_t>> OccupancyGrid::cell_of(const State& x) const {
    return cell_of(x.coords());
}

std::optional<std::pair<std::size_t, std::size_t>> OccupancyGrid::cell_of(
    std::span<const double> x) const {
    if (x.size() != 2) return std::nullopt;
    const double fx = std::floor((x[0] - origin_[0]) / meters_per_cell_);
    const double fy = std::floor((x[1] - origin_[1]) / meters_per_cell_);
    if (fx < 0.0 || fy < 0.0 || fx >= static_cast<double>(width_) ||
        fy >= static_cast<double>(height_))
        return std::nullopt;
    return std::pair{static_cast<std::size_t>(fx), static_cast<std::size_t>(fy)};
}

World::World(Bounds bounds, std::vector<Obstacle> obstacles, double checks_per_meter)
    : bounds_(std::move(bounds)), obstacles_(std::move(obstacles)), checks_per_meter_(checks_per_meter) {
    if (!(checks_per_meter_ > 0.0)) throw std::invalid_argument("checks_per_meter: must be positive");
    const std::size_t d = bounds_.dimension();
    if (d < 2 || bounds_.max.dimension() != d) throw std::invalid_argument("bounds: bad dimension");
    for (const auto& o : obstacles_) validate_obstacle(o, d);
}

World::World(OccupancyGrid grid, double checks_per_meter)
    : bounds_(grid.extent()), grid_(std::move(grid)), checks_per_meter_(checks_per_meter) {
    if (!(checks_per_meter_ > 0.0)) throw std::invalid_argument("checks_per_meter: must be positive");
}

bool World::is_free(const State& x) const {
    if (x.dimension() != bounds_.dimension()) return false;
    return is_free(x.coords());
}

bool World::is_free(std::span<const double> x) const {
    if (grid_) {
        const auto cell = grid_->cell_of(x);
        return cell && !grid_->blocked(cell->first, cell->second);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < bounds_.min[i] || x[i] > bounds_.max[i]) return false;
    }
    for (const auto& o : obstacles_) {
        if (std::visit([&](const auto& shape) { return inside(shape, x); }, o)) return false;
    }
    return true;
}

std::size_t World::check_count(double length) const {
    return static_cast<std::size_t>(std::ceil(length * checks_per_meter_)) + 1;
}

bool World::segment_free(const State& x, const State& y, std::size_t points) const {
    const State& a = std::min(x, y);
    const State& b = std::max(x, y);
    if (points <= 1) return is_free(a) && is_free(b);
    const std::size_t d = a.dimension();
    std::vector<double> p(d);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(points - 1);
        for (std::size_t k = 0; k < d; ++k) p[k] = a[k] + (b[k] - a[k]) * t;
        if (!is_free(std::span<const double>(p))) return false;
    }
    return true;
}

Cost World::true_cost(const State& x, const State& y) const {
    const Cost length = c_hat(x, y);
    return segment_free(x, y, check_count(length)) ? length : kInfiniteCost;
}

namespace {

class PgmReader {
public:
    explicit PgmReader(std::string data) : data_(std::move(data)) {}

    void skip_space_and_comments() {
        while (pos_ < data_.size()) {
            const char c = data_[pos_];
            if (c == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string token() {
        skip_space_and_comments();
        const std::size_t start = pos_;
        while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_]))) ++pos_;
        return data_.substr(start, pos_ - start);
    }

    long number(const std::string& field) {
        const std::string tok = token();
        if (tok.empty()) throw GridLoadError(field, "unexpected end of file");
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(tok, &used);
        } catch (const std::exception&) {
            throw GridLoadError(field, "not an integer: '" + tok + "'");
        }
        if (used != tok.size()) throw GridLoadError(field, "not an integer: '" + tok + "'");
        return value;
    }

    // Binary rasters start after exactly one whitespace byte following maxval.
    std::string_view raw_after_header() {
        if (pos_ < data_.size()) ++pos_;
        return std::string_view(data_).substr(pos_);
    }

private:
    std::string data_;
    std::size_t pos_ = 0;
};

}  // namespace

OccupancyGrid load_occupancy_grid(const std::filesystem::path& path, double meters_per_cell,
                                  const State& origin, int threshold) {
    if (!(meters_per_cell > 0.0)) throw GridLoadError("meters_per_cell", "must be positive");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GridLoadError("path", "cannot open '" + path.string() + "'");
    PgmReader reader(std::string(std::istreambuf_iterator<char>(in), {}));

    const std::string magic = reader.token();
    if (magic != "P2" && magic != "P5") throw GridLoadError("magic", "expected P2 or P5, got '" + magic + "'");
    const long width = reader.number("width");
    const long height = reader.number("height");
    const long maxval = reader.number("maxval");
    if (width <= 0) throw GridLoadError("width", "must be positive");
    if (height <= 0) throw GridLoadError("height", "must be positive");
    if (maxval != 255) throw GridLoadError("maxval", "must be 255");

    const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<bool> occupancy(count);
    if (magic == "P2") {
        for (std::size_t i = 0; i < count; ++i) {
            const std::string tok = reader.token();
            if (tok.empty())
                throw GridLoadError("pixels", "expected " + std::to_string(count) + " values, got " +
                                                  std::to_string(i));
            long v = 0;
            try {
                v = std::stol(tok);
            } catch (const std::exception&) {
                throw GridLoadError("pixels", "not an integer: '" + tok + "'");
            }
            if (v < 0 || v > maxval) throw GridLoadError("pixels", "value out of range: " + tok);
            occupancy[i] = v <= threshold;
        }
        if (!reader.token().empty()) throw GridLoadError("pixels", "more values than width*height");
    } else {
        const std::string_view raw = reader.raw_after_header();
        if (raw.size() != count)
            throw GridLoadError("pixels", "expected " + std::to_string(count) + " bytes, got " +
                                              std::to_string(raw.size()));
        for (std::size_t i = 0; i < count; ++i)
            occupancy[i] = static_cast<int>(static_cast<unsigned char>(raw[i])) <= threshold;
    }
    return OccupancyGrid(static_cast<std::size_t>(width), static_cast<std::size_t>(height),
                         meters_per_cell, origin, std::move(occupancy));
}

void save_occupancy_grid(const OccupancyGrid& grid, const std::filesystem::path& path, bool ascii) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << (ascii ? "P2" : "P5") << '\n' << grid.width() << ' ' << grid.height() << "\n255\n";
    const auto& occ = grid.occupancy();
    for (std::size_t i = 0; i < occ.size(); ++i) {
        if (ascii) {
            out << (occ[i] ? "0" : "255") << ((i + 1) % grid.width() == 0 ? '\n' : ' ');
        } else {
            out.put(occ[i] ? static_cast<char>(0) : static_cast<char>(255));
        }
    }
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace bitplan
