#pragma once

#include "geocover/geometry.hpp"
#include "geocover/point_mask.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace geocover {

// Incidences between a fixed planar point set and every family curve through
// at least d of its points. Curve ids follow canonical curve order.
class CurveTable {
public:
    CurveTable(std::vector<Point> pts, const FamilySpec& family);

    int size() const { return static_cast<int>(points_.size()); }
    const FamilySpec& family() const { return family_; }
    const std::vector<Point>& points() const { return points_; }
    int curve_count() const { return static_cast<int>(curves_.size()); }
    const Curve& curve(int id) const { return curves_[id]; }
    const PointMask& mask(int id) const { return masks_[id]; }

    // curve through an ascending d-tuple of point ids, or -1
    int curve_of(const std::vector<int>& tuple) const;
    // coverability of an ascending tuple of size <= d
    bool coverable(const std::vector<int>& tuple) const;
    // a family curve through the given points (canonical completion below d points)
    Curve completion(const std::vector<int>& ids) const;

private:
    std::uint32_t key(const std::vector<int>& t) const;

    FamilySpec family_;
    std::vector<Point> points_;
    std::vector<Curve> curves_;
    std::vector<PointMask> masks_;
    std::unordered_map<std::uint32_t, int> tuple_curve_;
};

// Lines and planes spanned by a fixed point set in R^3.
class PlaneTable {
public:
    explicit PlaneTable(std::vector<Point> pts);

    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<Point>& points() const { return points_; }

    int line_count() const { return static_cast<int>(lines_.size()); }
    const Flat& line(int id) const { return lines_[id]; }
    const PointMask& line_mask(int id) const { return line_masks_[id]; }
    int line_of(int p, int q) const { return line_of_pair_[p * size() + q]; }
    // a plane through the line holding no table point off the line
    const Plane3& fallback_plane(int line) const { return fallback_[line]; }

    int plane_count() const { return static_cast<int>(planes_.size()); }
    const Plane3& plane(int id) const { return planes_[id]; }
    const PointMask& plane_mask(int id) const { return plane_masks_[id]; }
    // plane through a line and a point off it
    int plane_of(int line, int p) const;
    // lines spanned by table points that lie in the plane
    const std::vector<int>& lines_in(int plane) const { return plane_lines_[plane]; }

private:
    std::vector<Point> points_;
    std::vector<Flat> lines_;
    std::vector<PointMask> line_masks_;
    std::vector<int> line_of_pair_;
    std::vector<Plane3> fallback_;
    std::vector<Plane3> planes_;
    std::vector<PointMask> plane_masks_;
    std::unordered_map<std::int64_t, int> line_point_plane_;
    std::vector<std::vector<int>> plane_lines_;
};

} // namespace geocover
