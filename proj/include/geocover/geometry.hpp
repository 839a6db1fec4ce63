#pragma once

#include "geocover/rational.hpp"

#include <array>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace geocover {

enum class FamilyKind { line2, circle2, vparabola2, plane3 };

struct FamilySpec {
    FamilyKind kind = FamilyKind::line2;
    int d = 2;
    int s = 1;
};

// plane3 uses s = k+1 (the kernel's intersection bound), so it needs k
FamilySpec family_spec(FamilyKind kind, int k = 0);
std::string_view family_name(FamilyKind kind);
FamilyKind parse_family(std::string_view name);
int ambient_dimension(FamilyKind kind);

class Point {
public:
    Point() = default;
    explicit Point(std::vector<Rational> coords);
    Point(std::initializer_list<Rational> coords);

    int dim() const { return static_cast<int>(coords_.size()); }
    const Rational& operator[](int i) const { return coords_[i]; }
    const std::vector<Rational>& coords() const { return coords_; }
    std::string to_string() const;

    friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    friend bool operator<(const Point& a, const Point& b);

private:
    std::vector<Rational> coords_;
};

using Vec3 = std::array<Rational, 3>;

class Curve {
public:
    static Curve line(Rational a, Rational b, Rational c);
    static Curve circle(Rational cx, Rational cy, Rational r2);
    static Curve vparabola(Rational a, Rational b, Rational c);

    FamilyKind kind() const { return kind_; }
    const std::array<Rational, 3>& coefficients() const { return coef_; }
    // zero exactly on the curve
    Rational evaluate(const Point& p) const;
    std::string to_string() const;

    friend bool operator==(const Curve& a, const Curve& b)
    {
        return a.kind_ == b.kind_ && a.coef_ == b.coef_;
    }
    friend bool operator!=(const Curve& a, const Curve& b) { return !(a == b); }
    friend bool operator<(const Curve& a, const Curve& b);

private:
    Curve(FamilyKind kind, std::array<Rational, 3> coef) : kind_(kind), coef_(std::move(coef)) {}

    FamilyKind kind_;
    std::array<Rational, 3> coef_;
};

// ax + by + cz + e = 0, first nonzero of (a,b,c) scaled to 1
class Plane3 {
public:
    Plane3(Rational a, Rational b, Rational c, Rational e);

    const std::array<Rational, 4>& coefficients() const { return coef_; }
    Vec3 normal() const { return {coef_[0], coef_[1], coef_[2]}; }
    Rational evaluate(const Point& p) const;
    std::string to_string() const;

    friend bool operator==(const Plane3& a, const Plane3& b) { return a.coef_ == b.coef_; }
    friend bool operator!=(const Plane3& a, const Plane3& b) { return !(a == b); }
    friend bool operator<(const Plane3& a, const Plane3& b);

private:
    std::array<Rational, 4> coef_;
};

// Affine subspace of R^3. The basis is kept in reduced row echelon form and the
// base point has zeros in the pivot columns, which makes the representation unique.
// j == 3 is the whole space.
class Flat {
public:
    static Flat point(const Point& p);
    static Flat full_space();
    static Flat from_plane(const Plane3& h);
    Flat(const Vec3& base, std::vector<Vec3> directions);

    int j() const { return static_cast<int>(basis_.size()); }
    bool is_full() const { return j() == 3; }
    const Vec3& base() const { return base_; }
    const std::vector<Vec3>& basis() const { return basis_; }
    Point base_point() const;

    bool contains(const Point& p) const;
    bool contains(const Flat& inner) const;
    std::string to_string() const;

    friend bool operator==(const Flat& a, const Flat& b)
    {
        return a.base_ == b.base_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Flat& a, const Flat& b) { return !(a == b); }
    friend bool operator<(const Flat& a, const Flat& b);

private:
    Flat() = default;
    bool in_span(Vec3 v) const;

    Vec3 base_;
    std::vector<Vec3> basis_;
};

struct CurveIntersection {
    std::vector<Point> points;  // rational intersection points
    int irrational = 0;         // intersection points with irrational coordinates
    int cardinality() const { return static_cast<int>(points.size()) + irrational; }
};

std::vector<Curve> curve_through(const FamilySpec& family, const std::vector<Point>& pts);
bool curve_covers(const Curve& c, const Point& p);
CurveIntersection curves_intersect(const Curve& c1, const Curve& c2);

int richness(const Curve& c, const std::vector<Point>& pts);
int richness(const Plane3& h, const std::vector<Point>& pts);

// every family curve through at least d points of pts, sorted canonically
std::vector<Curve> enumerate_candidates(const std::vector<Point>& pts, const FamilySpec& family);
// every plane through 3 affinely independent points of pts, sorted canonically
std::vector<Plane3> enumerate_plane_candidates(const std::vector<Point>& pts);

Flat line_through(const Point& p, const Point& q);
Plane3 plane_through(const Point& p, const Point& q, const Point& r);
Plane3 plane_through_line_point(const Flat& line, const Point& p);
Plane3 plane_of(const Flat& f);
// canonical plane through a flat of dimension <= 2
Plane3 plane_containing(const Flat& f);

Flat affine_hull(const std::vector<Flat>& objs);
Flat affine_hull(const std::vector<Point>& pts);

bool flat_contains(const Plane3& outer, const Point& p);
bool flat_contains(const Plane3& outer, const Flat& inner);
bool flat_contains(const Flat& outer, const Point& p);
bool flat_contains(const Flat& outer, const Flat& inner);

struct CollinearResult {
    int count = 0;
    std::optional<Flat> line;
};
CollinearResult max_collinear(const std::vector<Point>& pts);

// throws InvalidInput on repeated points or mixed dimensions
void require_distinct(const std::vector<Point>& pts, int dim);

} // namespace geocover
