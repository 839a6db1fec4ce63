#include "geocover/generate.hpp"

#include "geocover/errors.hpp"

#include <random>
#include <set>

namespace geocover {

namespace {

// Draws are reduced by hand so that files do not depend on the standard
// library's distribution algorithms.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    long between(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    long nonzero(long bound)
    {
        long v = between(1, bound);
        return between(0, 1) ? v : -v;
    }

private:
    std::mt19937_64 rng_;
};

class PointSink {
public:
    PointSink(Instance& inst) : inst_(inst) {}

    bool add(Point p)
    {
        if (!seen_.insert(p).second)
            return false;
        inst_.points.push_back(std::move(p));
        return true;
    }
    int size() const { return static_cast<int>(inst_.points.size()); }

private:
    Instance& inst_;
    std::set<Point> seen_;
};

constexpr int kMaxTries = 10000;

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw InvalidInput("invalid generator parameters: " + what);
}

Point random_point(Draw& rng, int dim, int range)
{
    std::vector<Rational> c;
    for (int i = 0; i < dim; ++i)
        c.emplace_back(rng.between(-range, range));
    return Point(std::move(c));
}

void add_noise(Draw& rng, PointSink& sink, int dim, int count, int range)
{
    for (int added = 0, tries = 0; added < count; ++tries) {
        require(tries < kMaxTries, "range too small for the noise points");
        added += sink.add(random_point(rng, dim, range));
    }
}

// one random point on a planted object, parameterized by an integer t
class Planted {
public:
    Planted(Draw& rng, FamilyKind family, int range) : family_(family)
    {
        for (auto& v : base_)
            v = rng.between(-range, range);
        for (auto& v : u_)
            v = rng.between(-3, 3);
        for (auto& v : w_)
            v = rng.between(-3, 3);
        if (family_ == FamilyKind::line2 && u_[0] == 0 && u_[1] == 0)
            u_[0] = 1;
        if (family_ == FamilyKind::circle2)
            radius_ = rng.between(1, range);
        if (family_ == FamilyKind::vparabola2)
            u_[0] = rng.nonzero(2);
        if (family_ == FamilyKind::plane3)
            while (u_[1] * w_[2] - u_[2] * w_[1] == 0 && u_[2] * w_[0] - u_[0] * w_[2] == 0 &&
                   u_[0] * w_[1] - u_[1] * w_[0] == 0) {
                u_ = {rng.between(-3, 3), rng.between(-3, 3), rng.between(-3, 3)};
                w_ = {rng.between(-3, 3), rng.between(-3, 3), rng.between(-3, 3)};
            }
    }

    Point sample(Draw& rng, int range) const
    {
        switch (family_) {
        case FamilyKind::line2: {
            long t = rng.between(-range, range);
            return Point{Rational(base_[0] + t * u_[0]), Rational(base_[1] + t * u_[1])};
        }
        case FamilyKind::circle2: {
            // rational points of the circle via the tangent half-angle map
            Rational t(rng.between(-range, range), rng.between(1, 4));
            t.canonicalize();
            Rational den = 1 + t * t;
            Rational x = base_[0] + radius_ * (1 - t * t) / den;
            Rational y = base_[1] + radius_ * 2 * t / den;
            return Point{x, y};
        }
        case FamilyKind::vparabola2: {
            long x = rng.between(-range, range);
            return Point{Rational(x), Rational(u_[0] * x * x + u_[1] * x + base_[1])};
        }
        case FamilyKind::plane3: {
            long s = rng.between(-range, range), t = rng.between(-range, range);
            return Point{Rational(base_[0] + s * u_[0] + t * w_[0]), Rational(base_[1] + s * u_[1] + t * w_[1]),
                         Rational(base_[2] + s * u_[2] + t * w_[2])};
        }
        }
        throw InternalError("unknown family");
    }

private:
    FamilyKind family_;
    std::array<long, 3> base_{}, u_{}, w_{};
    long radius_ = 1;
};

void grid(const GenParams& g, Instance& inst)
{
    require(g.n >= 1 && g.n <= 16, "grid side must be in 1..16");
    PointSink sink(inst);
    if (inst.dimension() == 2) {
        for (int x = 0; x < g.n; ++x)
            for (int y = 0; y < g.n; ++y)
                sink.add(Point{Rational(x), Rational(y)});
    } else {
        for (int x = 0; x < g.n; ++x)
            for (int y = 0; y < g.n; ++y)
                for (int z = 0; z < g.n; ++z)
                    sink.add(Point{Rational(x), Rational(y), Rational(z)});
    }
    inst.k = g.n;
}

void on_curves(GenParams g, Draw& rng, Instance& inst)
{
    if (g.m == 0)
        g.m = 4;
    require(g.k >= 1 && g.m >= 1 && g.noise >= 0, "on-curves needs k >= 1, m >= 1, noise >= 0");
    PointSink sink(inst);
    for (int c = 0; c < g.k; ++c) {
        Planted obj(rng, g.family, g.range);
        for (int added = 0, tries = 0; added < g.m; ++tries) {
            require(tries < kMaxTries, "range too small for m points per object");
            added += sink.add(obj.sample(rng, g.range));
        }
    }
    add_noise(rng, sink, inst.dimension(), g.noise, g.range);
    inst.k = g.k + g.noise;
    inst.metadata["planted_bound"] = g.k + g.noise;
}

void uniform(const GenParams& g, Draw& rng, Instance& inst)
{
    require(g.n >= 0 && g.k >= 0, "uniform-random needs n >= 0, k >= 0");
    PointSink sink(inst);
    add_noise(rng, sink, inst.dimension(), g.n, g.range);
    inst.k = g.k;
}

// k planes, each holding m points on one line plus a few ghost points off it
void degenerate_plane(GenParams g, Draw& rng, Instance& inst)
{
    if (g.m == 0)
        g.m = 9;
    require(inst.dimension() == 3, "degenerate-plane is an R^3 model");
    require(g.k >= 1 && g.m >= 2 && g.ghosts >= 1, "degenerate-plane needs k >= 1, m >= 2, ghosts >= 1");
    PointSink sink(inst);
    for (int c = 0; c < g.k; ++c) {
        std::array<long, 3> base, u, w;
        do {
            for (int i = 0; i < 3; ++i) {
                base[i] = rng.between(-g.range, g.range);
                u[i] = rng.between(-2, 2);
                w[i] = rng.between(-2, 2);
            }
        } while (u[1] * w[2] - u[2] * w[1] == 0 && u[2] * w[0] - u[0] * w[2] == 0 &&
                 u[0] * w[1] - u[1] * w[0] == 0);
        auto at = [&](long s, long t) {
            return Point{Rational(base[0] + s * u[0] + t * w[0]), Rational(base[1] + s * u[1] + t * w[1]),
                         Rational(base[2] + s * u[2] + t * w[2])};
        };
        for (int added = 0, tries = 0; added < g.m; ++tries) {
            require(tries < kMaxTries, "range too small for the line points");
            added += sink.add(at(rng.between(-g.range, g.range), 0));
        }
        for (int added = 0, tries = 0; added < g.ghosts; ++tries) {
            require(tries < kMaxTries, "range too small for the ghost points");
            added += sink.add(at(rng.between(-g.range, g.range), rng.nonzero(3)));
        }
    }
    add_noise(rng, sink, 3, g.noise, g.range);
    inst.k = g.k + g.noise;
    inst.metadata["planted_bound"] = g.k + g.noise;
}

} // namespace

Instance generate(const GenParams& g)
{
    require(g.range >= 1, "range must be positive");
    Instance inst;
    inst.family = g.family;
    inst.metadata["model"] = g.model;
    inst.metadata["seed"] = g.seed;
    Draw rng(g.seed);
    if (g.model == "grid")
        grid(g, inst);
    else if (g.model == "on-curves")
        on_curves(g, rng, inst);
    else if (g.model == "uniform-random")
        uniform(g, rng, inst);
    else if (g.model == "degenerate-plane")
        degenerate_plane(g, rng, inst);
    else
        throw InvalidInput("unknown model '" + g.model + "'");
    return inst;
}

} // namespace geocover
