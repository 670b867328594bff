#include "lgpr/curve.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "lgpr/eikonal.hpp"

namespace lgpr {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Eigen::Vector2d ParametricCurve::d2(double xi) const {
    if (second)
        return second(xi);
    const double e = 1e-5 * period;
    return (tangent(xi + e) - tangent(xi - e)) / (2 * e);
}

namespace curves {

ParametricCurve circle(double radius) {
    ParametricCurve c;
    c.point = [radius](double t) { return Eigen::Vector2d(radius * std::cos(t), radius * std::sin(t)); };
    c.tangent = [radius](double t) { return Eigen::Vector2d(-radius * std::sin(t), radius * std::cos(t)); };
    c.second = [radius](double t) { return Eigen::Vector2d(-radius * std::cos(t), -radius * std::sin(t)); };
    c.period = 2 * kPi;
    c.name = "circle";
    return c;
}

ParametricCurve circle_arclength(double radius) {
    ParametricCurve c;
    c.point = [radius](double s) { return Eigen::Vector2d(radius * std::cos(s / radius), radius * std::sin(s / radius)); };
    c.tangent = [radius](double s) { return Eigen::Vector2d(-std::sin(s / radius), std::cos(s / radius)); };
    c.second = [radius](double s) {
        return Eigen::Vector2d(-std::cos(s / radius) / radius, -std::sin(s / radius) / radius);
    };
    c.period = 2 * kPi * radius;
    c.name = "circle-arclength";
    return c;
}

ParametricCurve trefoil() {
    ParametricCurve c;
    c.point = [](double t) {
        const double r = 1 + 0.25 * std::cos(3 * t);
        return Eigen::Vector2d(r * std::cos(t), r * std::sin(t));
    };
    c.tangent = [](double t) {
        const double r = 1 + 0.25 * std::cos(3 * t);
        const double dr = -0.75 * std::sin(3 * t);
        return Eigen::Vector2d(dr * std::cos(t) - r * std::sin(t), dr * std::sin(t) + r * std::cos(t));
    };
    c.second = [](double t) {
        const double r = 1 + 0.25 * std::cos(3 * t);
        const double dr = -0.75 * std::sin(3 * t);
        const double ddr = -2.25 * std::cos(3 * t);
        return Eigen::Vector2d((ddr - r) * std::cos(t) - 2 * dr * std::sin(t),
                               (ddr - r) * std::sin(t) + 2 * dr * std::cos(t));
    };
    c.period = 2 * kPi;
    c.name = "trefoil";
    return c;
}

ParametricCurve ellipse21() {
    ParametricCurve c;
    c.point = [](double t) { return Eigen::Vector2d(2 * std::cos(t), std::sin(t)); };
    c.tangent = [](double t) { return Eigen::Vector2d(-2 * std::sin(t), std::cos(t)); };
    c.second = [](double t) { return Eigen::Vector2d(-2 * std::cos(t), -std::sin(t)); };
    c.period = 2 * kPi;
    c.name = "ellipse21";
    return c;
}

namespace {

// Real trigonometric series over one period; coefficients by direct DFT.
struct TrigSeries {
    double omega = 1.0;
    double a0 = 0.0;
    std::vector<double> a, b;  // harmonics 1..K

    TrigSeries(const std::vector<double>& v, double period) : omega(2 * kPi / period) {
        const int m = static_cast<int>(v.size());
        const int K = m / 2;
        a.assign(K, 0.0);
        b.assign(K, 0.0);
        for (double s : v)
            a0 += s;
        a0 /= m;
        for (int k = 1; k <= K; ++k) {
            double ca = 0, sb = 0;
            for (int n = 0; n < m; ++n) {
                const double t = 2 * kPi * k * n / m;
                ca += v[n] * std::cos(t);
                sb += v[n] * std::sin(t);
            }
            // The Nyquist mode of an even sample count is shared by +-K.
            const double w = (2 * k == m) ? 1.0 / m : 2.0 / m;
            a[k - 1] = w * ca;
            b[k - 1] = (2 * k == m) ? 0.0 : w * sb;
        }
    }

    // derivative order 0, 1, 2
    double eval(double t, int order) const {
        double sum = order == 0 ? a0 : 0.0;
        const double th = omega * t;
        const double c1 = std::cos(th), s1 = std::sin(th);
        double ck = c1, sk = s1;
        for (std::size_t k = 1; k <= a.size(); ++k) {
            const double w = omega * static_cast<double>(k);
            if (order == 0)
                sum += a[k - 1] * ck + b[k - 1] * sk;
            else if (order == 1)
                sum += w * (-a[k - 1] * sk + b[k - 1] * ck);
            else
                sum += -w * w * (a[k - 1] * ck + b[k - 1] * sk);
            const double cn = ck * c1 - sk * s1;
            sk = sk * c1 + ck * s1;
            ck = cn;
        }
        return sum;
    }
};

} // namespace

ParametricCurve from_samples(const std::vector<double>& x, const std::vector<double>& y, double period) {
    if (x.size() != y.size() || x.size() < 8)
        throw GeometryError("curve samples: need at least 8 matching samples");
    auto sx = std::make_shared<TrigSeries>(x, period);
    auto sy = std::make_shared<TrigSeries>(y, period);
    ParametricCurve c;
    c.point = [sx, sy](double t) { return Eigen::Vector2d(sx->eval(t, 0), sy->eval(t, 0)); };
    c.tangent = [sx, sy](double t) { return Eigen::Vector2d(sx->eval(t, 1), sy->eval(t, 1)); };
    c.second = [sx, sy](double t) { return Eigen::Vector2d(sx->eval(t, 2), sy->eval(t, 2)); };
    c.period = period;
    c.name = "sampled";
    return c;
}

ParametricCurve by_name(const std::string& name) {
    if (name == "circle")
        return circle(1.0);
    if (name == "trefoil")
        return trefoil();
    if (name == "ellipse21")
        return ellipse21();
    throw ConfigError("unknown curve preset '" + name + "'");
}

} // namespace curves

ParametricCurve read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open curve file " + path);
    std::string line;
    if (!std::getline(in, line))
        throw IoError("empty curve file " + path);
    std::vector<double> xi, x, y;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double a, b, c;
        if (!(ss >> a >> b >> c))
            throw IoError("malformed curve row: " + line);
        xi.push_back(a);
        x.push_back(b);
        y.push_back(c);
    }
    if (xi.size() < 8)
        throw GeometryError("curve file needs at least 8 samples");
    const double step = (xi.back() - xi.front()) / static_cast<double>(xi.size() - 1);
    for (std::size_t k = 1; k < xi.size(); ++k)
        if (std::abs((xi[k] - xi[k - 1]) - step) > 1e-9 * std::max(1.0, std::abs(step)))
            throw GeometryError("curve file: xi samples are not uniform");
    const double period = step * static_cast<double>(xi.size());
    ParametricCurve c = curves::from_samples(x, y, period);
    // Shift so the series parameter matches the file's xi.
    const double xi0 = xi.front();
    if (xi0 != 0.0) {
        auto p = c.point, t = c.tangent, s = c.second;
        c.point = [p, xi0](double u) { return p(u - xi0); };
        c.tangent = [t, xi0](double u) { return t(u - xi0); };
        c.second = [s, xi0](double u) { return s(u - xi0); };
    }
    return c;
}

CurveProjector::CurveProjector(ParametricCurve curve, int samples) : curve_(std::move(curve)) {
    if (samples < 16)
        throw GeometryError("CurveProjector: too few samples");
    spacing_ = curve_.period / samples;
    xi_.resize(samples);
    px_.resize(samples);
    py_.resize(samples);
    for (int k = 0; k < samples; ++k) {
        xi_[k] = k * spacing_;
        const Eigen::Vector2d p = curve_.point(xi_[k]);
        px_[k] = p.x();
        py_[k] = p.y();
        if (!(curve_.tangent(xi_[k]).norm() > 0.0))
            throw GeometryError("CurveProjector: degenerate tangent on the curve");
    }
}

Projection CurveProjector::project(const Eigen::Vector2d& x, double tol) const {
    const int m = static_cast<int>(xi_.size());
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (int k = 0; k < m; ++k) {
        const double dx = px_[k] - x.x(), dy = py_[k] - x.y();
        const double d2 = dx * dx + dy * dy;
        if (d2 < bd) {
            bd = d2;
            best = k;
        }
    }
    auto F = [&](double t) { return (curve_.point(t) - x).dot(curve_.tangent(t)); };
    auto dF = [&](double t) {
        const Eigen::Vector2d tg = curve_.tangent(t);
        return tg.squaredNorm() + (curve_.point(t) - x).dot(curve_.d2(t));
    };

    double lo = xi_[best] - spacing_, hi = xi_[best] + spacing_;
    double flo = F(lo), fhi = F(hi);
    for (int widen = 0; widen < 3 && !(flo <= 0 && fhi >= 0); ++widen) {
        lo -= spacing_;
        hi += spacing_;
        flo = F(lo);
        fhi = F(hi);
    }
    if (!(flo <= 0 && fhi >= 0))
        throw GeometryError("CurveProjector: could not bracket the nearest point");

    double t = xi_[best];
    if (!(t > lo && t < hi))
        t = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double ft = F(t);
        if (ft == 0.0)
            break;
        if (ft < 0)
            lo = t;
        else
            hi = t;
        const double d = dF(t);
        double tn = d > 0 ? t - ft / d : 0.5 * (lo + hi);
        if (!(tn > lo && tn < hi))
            tn = 0.5 * (lo + hi);
        const bool done = std::abs(tn - t) <= 1e-15 * std::max(1.0, std::abs(t));
        t = tn;
        if (done || hi - lo <= 1e-15 * std::max(1.0, std::abs(t)))
            break;
    }
    Projection pr;
    pr.xi = std::fmod(t, curve_.period);
    if (pr.xi < 0)
        pr.xi += curve_.period;
    pr.point = curve_.point(t);
    pr.distance = (x - pr.point).norm();
    const double resid = std::abs(F(t)) / curve_.tangent(t).norm();
    if (!(resid <= tol))
        throw GeometryError("CurveProjector: orthogonality residual " + std::to_string(resid) + " above tolerance");
    return pr;
}

double side_of(const ParametricCurve& c, const Eigen::Vector2d& x, const Projection& proj) {
    const Eigen::Vector2d r = x - proj.point;
    const Eigen::Vector2d t = c.tangent(proj.xi);
    const double cross = r.x() * t.y() - r.y() * t.x();
    return cross < 0 ? 1.0 : (cross > 0 ? -1.0 : 0.0);
}

namespace {

// +1 for counter-clockwise samples (shoelace area).
double orientation(const CurveProjector& pj, int samples) {
    const ParametricCurve& c = pj.curve();
    double area = 0;
    for (int k = 0; k < samples; ++k) {
        const Eigen::Vector2d a = c.point(c.period * k / samples);
        const Eigen::Vector2d b = c.point(c.period * (k + 1) / samples);
        area += a.x() * b.y() - b.x() * a.y();
    }
    return area >= 0 ? 1.0 : -1.0;
}

} // namespace

ScalarField signed_distance(const ParametricCurve& curve, const Grid2D& grid) {
    CurveProjector pj(curve);
    const double orient = orientation(pj, 1024);
    ScalarField d(grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const Eigen::Vector2d x(grid.x(i), grid.y(j));
            Projection pr;
            try {
                pr = pj.project(x, 1e-8 * grid.h);
            } catch (const GeometryError& e) {
                throw GeometryError(std::string(e.what()) + " at node (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
            }
            d(i, j) = orient * side_of(curve, x, pr) * pr.distance;
        }
    return d;
}

CurveInit init_from_curve(const ParametricCurve& curve, const Grid2D& grid, double band_half_width) {
    if (!(band_half_width >= 2 * grid.h))
        throw GeometryError("init_from_curve: band half width must be at least 2h");
    CurveProjector pj(curve);
    const double orient = orientation(pj, 1024);

    CurveInit out;
    out.phi_sd = ScalarField(grid);
    out.chi = ScalarField(grid, 0.0);
    out.in_band = NodeMask(grid, false);
    out.sign = ScalarField(grid, 0.0);

    // Candidate nodes: within the band radius (plus one sample spacing) of a sample.
    NodeMask candidate(grid, false);
    const int samples = 4096;
    const double reach = band_half_width + curve.period / samples * 2;
    for (int k = 0; k < samples; ++k) {
        const Eigen::Vector2d p = curve.point(curve.period * k / samples);
        const int ilo = std::max(0, static_cast<int>(std::floor((p.x() - reach - grid.x0) / grid.h)));
        const int ihi = std::min(grid.nx - 1, static_cast<int>(std::ceil((p.x() + reach - grid.x0) / grid.h)));
        const int jlo = std::max(0, static_cast<int>(std::floor((p.y() - reach - grid.y0) / grid.h)));
        const int jhi = std::min(grid.ny - 1, static_cast<int>(std::ceil((p.y() + reach - grid.y0) / grid.h)));
        if (ilo > ihi || jlo > jhi)
            throw GeometryError("init_from_curve: curve leaves the grid");
        for (int j = jlo; j <= jhi; ++j)
            for (int i = ilo; i <= ihi; ++i)
                if ((Eigen::Vector2d(grid.x(i), grid.y(j)) - p).norm() <= reach)
                    candidate(i, j) = true;
    }

    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            if (!candidate(i, j))
                continue;
            const Eigen::Vector2d x(grid.x(i), grid.y(j));
            Projection pr;
            try {
                pr = pj.project(x, 1e-10 * grid.h);
            } catch (const GeometryError& e) {
                throw GeometryError(std::string(e.what()) + " at node (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
            }
            if (pr.distance >= band_half_width)
                continue;
            out.in_band(i, j) = true;
            out.sign(i, j) = orient * side_of(curve, x, pr);
            out.phi_sd(i, j) = out.sign(i, j) * pr.distance;
            out.chi(i, j) = curve.tangent(pr.xi).norm();
        }
    for (int j = 0; j < grid.ny; ++j)
        if (out.in_band(0, j) || out.in_band(grid.nx - 1, j))
            throw GeometryError("init_from_curve: band touches the grid boundary");
    for (int i = 0; i < grid.nx; ++i)
        if (out.in_band(i, 0) || out.in_band(i, grid.ny - 1))
            throw GeometryError("init_from_curve: band touches the grid boundary");

    // Sign outside the band: breadth-first flood fill from the band.
    std::deque<std::size_t> queue;
    NodeMask signed_node = out.in_band;
    for (std::size_t p = 0; p < grid.size(); ++p)
        if (out.in_band[p]) {
            if (out.sign[p] == 0.0)
                out.sign[p] = 1.0;  // node exactly on the curve; its own value stays 0
            queue.push_back(p);
        }
    while (!queue.empty()) {
        const std::size_t p = queue.front();
        queue.pop_front();
        const int i = static_cast<int>(p % grid.nx), j = static_cast<int>(p / grid.nx);
        const int nb[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
        for (const auto& n : nb) {
            if (!grid.contains(n[0], n[1]))
                continue;
            const std::size_t q = grid.index(n[0], n[1]);
            if (signed_node[q])
                continue;
            signed_node[q] = true;
            out.sign[q] = out.sign[p];
            queue.push_back(q);
        }
    }

    // Distance outside the band: fast sweeping with unit cost from the band values.
    EikonalProblem pb;
    pb.g = ScalarField(grid, 1.0);
    pb.frozen = out.in_band;
    pb.frozen_values = ScalarField(grid, 0.0);
    for (std::size_t p = 0; p < grid.size(); ++p)
        if (out.in_band[p])
            pb.frozen_values[p] = std::abs(out.phi_sd[p]);
    pb.sign = out.sign;
    const EikonalResult fsm = solve_eikonal(pb);
    for (std::size_t p = 0; p < grid.size(); ++p)
        if (!out.in_band[p])
            out.phi_sd[p] = fsm.u[p];
    return out;
}

} // namespace lgpr
