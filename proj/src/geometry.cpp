#include "geocover/geometry.hpp"

#include "geocover/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace geocover {

FamilySpec family_spec(FamilyKind kind, int k)
{
    switch (kind) {
    case FamilyKind::line2:
        return {kind, 2, 1};
    case FamilyKind::circle2:
    case FamilyKind::vparabola2:
        return {kind, 3, 2};
    case FamilyKind::plane3:
        return {kind, 3, k + 1};
    }
    throw InvalidInput("unknown family");
}

std::string_view family_name(FamilyKind kind)
{
    switch (kind) {
    case FamilyKind::line2: return "line2";
    case FamilyKind::circle2: return "circle2";
    case FamilyKind::vparabola2: return "vparabola2";
    case FamilyKind::plane3: return "plane3";
    }
    return "?";
}

FamilyKind parse_family(std::string_view name)
{
    for (auto k : {FamilyKind::line2, FamilyKind::circle2, FamilyKind::vparabola2, FamilyKind::plane3})
        if (family_name(k) == name)
            return k;
    throw InvalidInput("unknown family '" + std::string(name) + "'");
}

int ambient_dimension(FamilyKind kind)
{
    return kind == FamilyKind::plane3 ? 3 : 2;
}

// ---------------------------------------------------------------- Point

Point::Point(std::vector<Rational> coords) : coords_(std::move(coords))
{
    for (auto& c : coords_)
        c.canonicalize();
}

Point::Point(std::initializer_list<Rational> coords) : Point(std::vector<Rational>(coords)) {}

bool operator<(const Point& a, const Point& b)
{
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                        b.coords_.end());
}

std::string Point::to_string() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i)
            out += ",";
        out += format_rational(coords_[i]);
    }
    return out + ")";
}

void require_distinct(const std::vector<Point>& pts, int dim)
{
    for (const auto& p : pts)
        if (p.dim() != dim)
            throw InvalidInput("point " + p.to_string() + " has wrong dimension");
    std::vector<Point> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end())
        throw InvalidInput("duplicate point " + dup->to_string());
}

// ---------------------------------------------------------------- helpers

namespace {

template <std::size_t N>
bool lex_less(const std::array<Rational, N>& a, const std::array<Rational, N>& b)
{
    for (std::size_t i = 0; i < N; ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0)
            return c < 0;
    }
    return false;
}

Vec3 to_vec(const Point& p)
{
    if (p.dim() != 3)
        throw InvalidInput("expected a point in R^3, got " + p.to_string());
    return {p[0], p[1], p[2]};
}

Vec3 sub(const Vec3& a, const Vec3& b)
{
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

Rational dot(const Vec3& a, const Vec3& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool is_zero(const Vec3& v)
{
    return sgn(v[0]) == 0 && sgn(v[1]) == 0 && sgn(v[2]) == 0;
}

int pivot_of(const Vec3& v)
{
    for (int c = 0; c < 3; ++c)
        if (sgn(v[c]) != 0)
            return c;
    return -1;
}

// rows are assumed to be in reduced echelon form already
void reduce_by(Vec3& v, const std::vector<Vec3>& rows)
{
    for (const auto& row : rows) {
        int pc = pivot_of(row);
        if (sgn(v[pc]) == 0)
            continue;
        Rational f = v[pc];
        for (int c = 0; c < 3; ++c)
            v[c] -= f * row[c];
    }
}

std::vector<Vec3> rref(std::vector<Vec3> rows)
{
    std::vector<Vec3> out;
    for (auto v : rows) {
        reduce_by(v, out);
        int pc = pivot_of(v);
        if (pc < 0)
            continue;
        Rational inv = 1 / v[pc];
        for (auto& x : v)
            x *= inv;
        for (auto& row : out) {
            if (sgn(row[pc]) == 0)
                continue;
            Rational f = row[pc];
            for (int c = 0; c < 3; ++c)
                row[c] -= f * v[c];
        }
        out.push_back(v);
    }
    std::sort(out.begin(), out.end(),
              [](const Vec3& a, const Vec3& b) { return pivot_of(a) < pivot_of(b); });
    return out;
}

Rational sq(const Rational& x)
{
    return x * x;
}

} // namespace

// ---------------------------------------------------------------- Curve

Curve Curve::line(Rational a, Rational b, Rational c)
{
    Rational lead = sgn(a) != 0 ? a : b;
    if (sgn(lead) == 0)
        throw InvalidInput("degenerate line coefficients");
    return Curve(FamilyKind::line2, {a / lead, b / lead, c / lead});
}

Curve Curve::circle(Rational cx, Rational cy, Rational r2)
{
    if (sgn(r2) <= 0)
        throw InvalidInput("circle needs a positive squared radius");
    cx.canonicalize();
    cy.canonicalize();
    r2.canonicalize();
    return Curve(FamilyKind::circle2, {cx, cy, r2});
}

Curve Curve::vparabola(Rational a, Rational b, Rational c)
{
    if (sgn(a) == 0)
        throw InvalidInput("vertical parabola needs a nonzero leading coefficient");
    a.canonicalize();
    b.canonicalize();
    c.canonicalize();
    return Curve(FamilyKind::vparabola2, {a, b, c});
}

Rational Curve::evaluate(const Point& p) const
{
    if (p.dim() != 2)
        throw InvalidInput("curve evaluated at a non-planar point");
    const Rational& x = p[0];
    const Rational& y = p[1];
    switch (kind_) {
    case FamilyKind::line2:
        return coef_[0] * x + coef_[1] * y + coef_[2];
    case FamilyKind::circle2:
        return sq(x - coef_[0]) + sq(y - coef_[1]) - coef_[2];
    case FamilyKind::vparabola2:
        return coef_[0] * x * x + coef_[1] * x + coef_[2] - y;
    case FamilyKind::plane3:
        break;
    }
    throw InternalError("curve of plane kind");
}

bool operator<(const Curve& a, const Curve& b)
{
    if (a.kind_ != b.kind_)
        return a.kind_ < b.kind_;
    return lex_less(a.coef_, b.coef_);
}

std::string Curve::to_string() const
{
    std::ostringstream os;
    os << family_name(kind_) << "(" << format_rational(coef_[0]) << "," << format_rational(coef_[1])
       << "," << format_rational(coef_[2]) << ")";
    return os.str();
}

// ---------------------------------------------------------------- Plane3

Plane3::Plane3(Rational a, Rational b, Rational c, Rational e)
{
    Rational lead = sgn(a) != 0 ? a : (sgn(b) != 0 ? b : c);
    if (sgn(lead) == 0)
        throw InvalidInput("degenerate plane coefficients");
    coef_ = {a / lead, b / lead, c / lead, e / lead};
}

Rational Plane3::evaluate(const Point& p) const
{
    if (p.dim() != 3)
        throw InvalidInput("plane evaluated at a non-spatial point");
    return coef_[0] * p[0] + coef_[1] * p[1] + coef_[2] * p[2] + coef_[3];
}

bool operator<(const Plane3& a, const Plane3& b)
{
    return lex_less(a.coef_, b.coef_);
}

std::string Plane3::to_string() const
{
    std::ostringstream os;
    os << "plane3(" << format_rational(coef_[0]) << "," << format_rational(coef_[1]) << ","
       << format_rational(coef_[2]) << "," << format_rational(coef_[3]) << ")";
    return os.str();
}

// ---------------------------------------------------------------- Flat

Flat::Flat(const Vec3& base, std::vector<Vec3> directions)
{
    basis_ = rref(std::move(directions));
    base_ = base;
    reduce_by(base_, basis_);
}

Flat Flat::point(const Point& p)
{
    return Flat(to_vec(p), {});
}

Flat Flat::full_space()
{
    return Flat(Vec3{0, 0, 0}, {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}});
}

Flat Flat::from_plane(const Plane3& h)
{
    const auto& co = h.coefficients();
    int i = 0;
    while (sgn(co[i]) == 0)
        ++i;
    Vec3 base{0, 0, 0};
    base[i] = -co[3] / co[i];
    std::vector<Vec3> dirs;
    for (int c = 0; c < 3; ++c) {
        if (c == i)
            continue;
        Vec3 v{0, 0, 0};
        v[c] = 1;
        v[i] = -co[c] / co[i];
        dirs.push_back(v);
    }
    return Flat(base, std::move(dirs));
}

Point Flat::base_point() const
{
    return Point{base_[0], base_[1], base_[2]};
}

bool Flat::in_span(Vec3 v) const
{
    reduce_by(v, basis_);
    return is_zero(v);
}

bool Flat::contains(const Point& p) const
{
    return in_span(sub(to_vec(p), base_));
}

bool Flat::contains(const Flat& inner) const
{
    if (!in_span(sub(inner.base_, base_)))
        return false;
    for (const auto& v : inner.basis_)
        if (!in_span(v))
            return false;
    return true;
}

bool operator<(const Flat& a, const Flat& b)
{
    if (a.j() != b.j())
        return a.j() < b.j();
    if (a.base_ != b.base_)
        return lex_less(a.base_, b.base_);
    for (int i = 0; i < a.j(); ++i)
        if (a.basis_[i] != b.basis_[i])
            return lex_less(a.basis_[i], b.basis_[i]);
    return false;
}

std::string Flat::to_string() const
{
    std::ostringstream os;
    os << "flat" << j() << "[" << Point{base_[0], base_[1], base_[2]}.to_string();
    for (const auto& v : basis_)
        os << "+" << Point{v[0], v[1], v[2]}.to_string();
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------- curve predicates

namespace {

Curve line_through_2d(const Point& p, const Point& q)
{
    // (y_q - y_p) x - (x_q - x_p) y + (x_q - x_p) y_p - (y_q - y_p) x_p = 0
    Rational a = q[1] - p[1];
    Rational b = p[0] - q[0];
    Rational c = -(a * p[0] + b * p[1]);
    return Curve::line(a, b, c);
}

std::optional<Curve> circumcircle(const Point& p1, const Point& p2, const Point& p3)
{
    Rational ax = p2[0] - p1[0], ay = p2[1] - p1[1];
    Rational bx = p3[0] - p1[0], by = p3[1] - p1[1];
    Rational det = 2 * (ax * by - ay * bx);
    if (sgn(det) == 0)
        return std::nullopt;
    Rational a2 = ax * ax + ay * ay;
    Rational b2 = bx * bx + by * by;
    // center relative to p1
    Rational ux = (by * a2 - ay * b2) / det;
    Rational uy = (ax * b2 - bx * a2) / det;
    return Curve::circle(p1[0] + ux, p1[1] + uy, ux * ux + uy * uy);
}

std::optional<Curve> parabola_through3(const Point& p1, const Point& p2, const Point& p3)
{
    if (p1[0] == p2[0] || p1[0] == p3[0] || p2[0] == p3[0])
        return std::nullopt;
    Rational s12 = (p2[1] - p1[1]) / (p2[0] - p1[0]);
    Rational s13 = (p3[1] - p1[1]) / (p3[0] - p1[0]);
    Rational a = (s13 - s12) / (p3[0] - p2[0]);
    if (sgn(a) == 0)
        return std::nullopt;
    Rational b = s12 - a * (p1[0] + p2[0]);
    Rational c = p1[1] - a * p1[0] * p1[0] - b * p1[0];
    return Curve::vparabola(a, b, c);
}

std::vector<Curve> through_prefix(const FamilySpec& family, const std::vector<Point>& pts)
{
    std::vector<Curve> out;
    switch (family.kind) {
    case FamilyKind::line2:
        if (pts.size() == 1)
            out.push_back(Curve::line(0, 1, -pts[0][1]));
        else
            out.push_back(line_through_2d(pts[0], pts[1]));
        break;
    case FamilyKind::circle2:
        if (pts.size() == 1) {
            out.push_back(Curve::circle(pts[0][0] + 1, pts[0][1], 1));
        } else if (pts.size() == 2) {
            Rational cx = (pts[0][0] + pts[1][0]) / 2;
            Rational cy = (pts[0][1] + pts[1][1]) / 2;
            out.push_back(Curve::circle(cx, cy, sq(pts[0][0] - cx) + sq(pts[0][1] - cy)));
        } else if (auto c = circumcircle(pts[0], pts[1], pts[2])) {
            out.push_back(*c);
        }
        break;
    case FamilyKind::vparabola2:
        if (pts.size() == 1) {
            out.push_back(Curve::vparabola(1, 0, pts[0][1] - pts[0][0] * pts[0][0]));
        } else if (pts.size() == 2) {
            if (pts[0][0] == pts[1][0])
                break;
            Rational r0 = pts[0][1] - pts[0][0] * pts[0][0];
            Rational r1 = pts[1][1] - pts[1][0] * pts[1][0];
            Rational b = (r1 - r0) / (pts[1][0] - pts[0][0]);
            out.push_back(Curve::vparabola(1, b, r0 - b * pts[0][0]));
        } else if (auto c = parabola_through3(pts[0], pts[1], pts[2])) {
            out.push_back(*c);
        }
        break;
    case FamilyKind::plane3:
        throw InvalidInput("curve_through called with the plane family");
    }
    return out;
}

} // namespace

std::vector<Curve> curve_through(const FamilySpec& family, const std::vector<Point>& pts)
{
    if (family.kind == FamilyKind::plane3)
        throw InvalidInput("curve_through called with the plane family");
    require_distinct(pts, 2);
    if (pts.empty())
        throw InvalidInput("curve_through needs at least one point");
    std::size_t head = std::min<std::size_t>(pts.size(), family.d);
    std::vector<Point> prefix(pts.begin(), pts.begin() + head);
    std::vector<Curve> out;
    for (auto& c : through_prefix(family, prefix)) {
        bool all = std::all_of(pts.begin() + head, pts.end(),
                               [&](const Point& p) { return curve_covers(c, p); });
        if (all)
            out.push_back(c);
    }
    return out;
}

bool curve_covers(const Curve& c, const Point& p)
{
    return sgn(c.evaluate(p)) == 0;
}

namespace {

// roots of A t^2 + B t + C = 0 with A != 0
struct QuadraticRoots {
    std::vector<Rational> rational;
    int irrational = 0;
};

QuadraticRoots solve_quadratic(const Rational& A, const Rational& B, const Rational& C)
{
    QuadraticRoots out;
    Rational disc = B * B - 4 * A * C;
    int sg = sgn(disc);
    if (sg < 0)
        return out;
    if (sg == 0) {
        out.rational.push_back(-B / (2 * A));
        return out;
    }
    if (auto root = rational_sqrt(disc)) {
        out.rational.push_back((-B - *root) / (2 * A));
        out.rational.push_back((-B + *root) / (2 * A));
    } else {
        out.irrational = 2;
    }
    return out;
}

CurveIntersection intersect_lines(const Curve& l1, const Curve& l2)
{
    const auto& u = l1.coefficients();
    const auto& v = l2.coefficients();
    CurveIntersection out;
    Rational det = u[0] * v[1] - v[0] * u[1];
    if (sgn(det) == 0)
        return out;
    out.points.push_back(Point{(u[1] * v[2] - v[1] * u[2]) / det, (v[0] * u[2] - u[0] * v[2]) / det});
    return out;
}

// line a x + b y + c = 0 against circle (cx, cy, r2)
CurveIntersection intersect_line_circle(const Rational& a, const Rational& b, const Rational& c,
                                        const Curve& circle)
{
    const auto& k = circle.coefficients();
    Rational px, py;
    if (sgn(a) != 0) {
        px = -c / a;
        py = 0;
    } else {
        px = 0;
        py = -c / b;
    }
    // p(t) = (px + b t, py - a t)
    Rational dx = px - k[0], dy = py - k[1];
    Rational A = a * a + b * b;
    Rational B = 2 * (b * dx - a * dy);
    Rational C = dx * dx + dy * dy - k[2];
    auto roots = solve_quadratic(A, B, C);
    CurveIntersection out;
    out.irrational = roots.irrational;
    for (const auto& t : roots.rational)
        out.points.push_back(Point{px + b * t, py - a * t});
    return out;
}

CurveIntersection intersect_circles(const Curve& c1, const Curve& c2)
{
    const auto& u = c1.coefficients();
    const auto& v = c2.coefficients();
    if (u[0] == v[0] && u[1] == v[1])
        return {};
    Rational a = 2 * (v[0] - u[0]);
    Rational b = 2 * (v[1] - u[1]);
    Rational c = (u[0] * u[0] + u[1] * u[1] - u[2]) - (v[0] * v[0] + v[1] * v[1] - v[2]);
    return intersect_line_circle(a, b, c, c1);
}

CurveIntersection intersect_parabolas(const Curve& c1, const Curve& c2)
{
    const auto& u = c1.coefficients();
    const auto& v = c2.coefficients();
    Rational A = u[0] - v[0], B = u[1] - v[1], C = u[2] - v[2];
    CurveIntersection out;
    auto at = [&](const Rational& x) { return Point{x, u[0] * x * x + u[1] * x + u[2]}; };
    if (sgn(A) == 0) {
        if (sgn(B) != 0)
            out.points.push_back(at(-C / B));
        return out;
    }
    auto roots = solve_quadratic(A, B, C);
    out.irrational = roots.irrational;
    for (const auto& x : roots.rational)
        out.points.push_back(at(x));
    return out;
}

} // namespace

CurveIntersection curves_intersect(const Curve& c1, const Curve& c2)
{
    if (c1.kind() != c2.kind())
        throw InvalidInput("curves_intersect needs curves of one family");
    if (c1 == c2)
        throw InvalidInput("curves_intersect called on identical curves");
    switch (c1.kind()) {
    case FamilyKind::line2: return intersect_lines(c1, c2);
    case FamilyKind::circle2: return intersect_circles(c1, c2);
    case FamilyKind::vparabola2: return intersect_parabolas(c1, c2);
    case FamilyKind::plane3: break;
    }
    throw InternalError("plane kind curve");
}

int richness(const Curve& c, const std::vector<Point>& pts)
{
    return static_cast<int>(
        std::count_if(pts.begin(), pts.end(), [&](const Point& p) { return curve_covers(c, p); }));
}

int richness(const Plane3& h, const std::vector<Point>& pts)
{
    return static_cast<int>(
        std::count_if(pts.begin(), pts.end(), [&](const Point& p) { return flat_contains(h, p); }));
}

std::vector<Curve> enumerate_candidates(const std::vector<Point>& pts, const FamilySpec& family)
{
    if (family.kind == FamilyKind::plane3)
        throw InvalidInput("use enumerate_plane_candidates for planes");
    require_distinct(pts, 2);
    std::set<Curve> found;
    int n = static_cast<int>(pts.size());
    if (family.d == 2) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                found.insert(line_through_2d(pts[i], pts[j]));
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int l = j + 1; l < n; ++l)
                    for (auto& c : through_prefix(family, {pts[i], pts[j], pts[l]}))
                        found.insert(c);
    }
    return {found.begin(), found.end()};
}

std::vector<Plane3> enumerate_plane_candidates(const std::vector<Point>& pts)
{
    require_distinct(pts, 3);
    std::set<Plane3> found;
    int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int l = j + 1; l < n; ++l) {
                Vec3 a = to_vec(pts[i]);
                Vec3 nrm = cross(sub(to_vec(pts[j]), a), sub(to_vec(pts[l]), a));
                if (is_zero(nrm))
                    continue;
                found.insert(Plane3(nrm[0], nrm[1], nrm[2], -dot(nrm, a)));
            }
    return {found.begin(), found.end()};
}

// ---------------------------------------------------------------- flats

Flat line_through(const Point& p, const Point& q)
{
    if (p == q)
        throw InvalidInput("line_through needs two distinct points");
    Vec3 a = to_vec(p);
    return Flat(a, {sub(to_vec(q), a)});
}

Plane3 plane_through(const Point& p, const Point& q, const Point& r)
{
    Vec3 a = to_vec(p);
    Vec3 nrm = cross(sub(to_vec(q), a), sub(to_vec(r), a));
    if (is_zero(nrm))
        throw InvalidInput("plane_through: points are collinear");
    return Plane3(nrm[0], nrm[1], nrm[2], -dot(nrm, a));
}

Plane3 plane_through_line_point(const Flat& line, const Point& p)
{
    if (line.j() != 1)
        throw InvalidInput("plane_through_line_point needs a line");
    Vec3 nrm = cross(line.basis()[0], sub(to_vec(p), line.base()));
    if (is_zero(nrm))
        throw InvalidInput("plane_through_line_point: point lies on the line");
    return Plane3(nrm[0], nrm[1], nrm[2], -dot(nrm, line.base()));
}

Plane3 plane_of(const Flat& f)
{
    if (f.j() != 2)
        throw InvalidInput("plane_of needs a 2-flat");
    Vec3 nrm = cross(f.basis()[0], f.basis()[1]);
    return Plane3(nrm[0], nrm[1], nrm[2], -dot(nrm, f.base()));
}

Plane3 plane_containing(const Flat& f)
{
    if (f.is_full())
        throw InvalidInput("no plane contains the whole space");
    std::vector<Vec3> dirs = f.basis();
    for (int axis = 2; axis >= 0 && dirs.size() < 2; --axis) {
        Vec3 e{0, 0, 0};
        e[axis] = 1;
        auto trial = dirs;
        trial.push_back(e);
        if (rref(trial).size() == trial.size())
            dirs = trial;
    }
    return plane_of(Flat(f.base(), dirs));
}

Flat affine_hull(const std::vector<Flat>& objs)
{
    if (objs.empty())
        throw InvalidInput("affine_hull of an empty list");
    const Vec3& base = objs.front().base();
    std::vector<Vec3> dirs;
    for (const auto& f : objs) {
        Vec3 off = sub(f.base(), base);
        if (!is_zero(off))
            dirs.push_back(off);
        for (const auto& v : f.basis())
            dirs.push_back(v);
    }
    return Flat(base, std::move(dirs));
}

Flat affine_hull(const std::vector<Point>& pts)
{
    std::vector<Flat> flats;
    flats.reserve(pts.size());
    for (const auto& p : pts)
        flats.push_back(Flat::point(p));
    return affine_hull(flats);
}

bool flat_contains(const Plane3& outer, const Point& p)
{
    return sgn(outer.evaluate(p)) == 0;
}

bool flat_contains(const Plane3& outer, const Flat& inner)
{
    if (inner.is_full())
        return false;
    if (sgn(outer.evaluate(inner.base_point())) != 0)
        return false;
    Vec3 nrm = outer.normal();
    for (const auto& v : inner.basis())
        if (sgn(dot(nrm, v)) != 0)
            return false;
    return true;
}

bool flat_contains(const Flat& outer, const Point& p)
{
    return outer.contains(p);
}

bool flat_contains(const Flat& outer, const Flat& inner)
{
    return outer.contains(inner);
}

CollinearResult max_collinear(const std::vector<Point>& pts)
{
    CollinearResult best;
    int n = static_cast<int>(pts.size());
    if (n <= 1) {
        best.count = n;
        return best;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Flat line = line_through(pts[i], pts[j]);
            int count = 0;
            for (const auto& p : pts)
                count += line.contains(p);
            if (count > best.count) {
                best.count = count;
                best.line = line;
            }
        }
    return best;
}

} // namespace geocover
