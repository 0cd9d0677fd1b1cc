#include "llab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "llab/special.hpp"

namespace llab {

namespace {

// 5x5 Gauss-Legendre rule on a rectangle.
complexd gl5_cell(const std::function<complexd(double, double)>& f,
                  double ax, double bx, double ay, double by) {
    const auto& [x, w] = gauss_legendre(5);
    complexd sum{0.0, 0.0};
    double hx = 0.5 * (bx - ax), cx = 0.5 * (ax + bx);
    double hy = 0.5 * (by - ay), cy = 0.5 * (ay + by);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            sum += w[i] * w[j] * f(cx + hx * x[i], cy + hy * x[j]);
    return sum * (hx * hy);
}

struct Cell {
    double ax, bx, ay, by;
    complexd coarse;
    complexd fine;
    double err;
    int depth;
};

Cell make_cell(const std::function<complexd(double, double)>& f,
               double ax, double bx, double ay, double by, int depth) {
    Cell c{ax, bx, ay, by, {}, {}, 0.0, depth};
    c.coarse = gl5_cell(f, ax, bx, ay, by);
    double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
    c.fine = gl5_cell(f, ax, mx, ay, my) + gl5_cell(f, mx, bx, ay, my) +
             gl5_cell(f, ax, mx, my, by) + gl5_cell(f, mx, bx, my, by);
    c.err = std::abs(c.fine - c.coarse);
    return c;
}

}  // namespace

QuadResult adaptive_quad_2d(const std::function<complexd(double, double)>& f,
                            double ax, double bx, double ay, double by,
                            double abs_tol, int max_depth) {
    auto cmp = [](const Cell& a, const Cell& b) { return a.err < b.err; };
    std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> heap(cmp);
    heap.push(make_cell(f, ax, bx, ay, by, 0));
    double total_err = heap.top().err;
    complexd total = heap.top().fine;

    // refine the worst cell until the error budget is met
    for (int it = 0; it < 200000 && total_err > abs_tol; ++it) {
        Cell c = heap.top();
        heap.pop();
        if (c.depth >= max_depth) {
            // nothing left to do for this cell; put it back and stop
            heap.push(c);
            break;
        }
        total -= c.fine;
        total_err -= c.err;
        double mx = 0.5 * (c.ax + c.bx), my = 0.5 * (c.ay + c.by);
        for (const auto& sub : {Cell{c.ax, mx, c.ay, my}, Cell{mx, c.bx, c.ay, my},
                                Cell{c.ax, mx, my, c.by}, Cell{mx, c.bx, my, c.by}}) {
            Cell s = make_cell(f, sub.ax, sub.bx, sub.ay, sub.by, c.depth + 1);
            total += s.fine;
            total_err += s.err;
            heap.push(s);
        }
    }
    return {total, total_err, total_err <= abs_tol * 1.0001};
}

namespace {

void append_affine(std::vector<QuadNode>& nodes, double scale, Vec2 shift) {
    for (auto& n : nodes) {
        n.p = scale * n.p + shift;
        n.w *= scale * scale;
    }
}

std::vector<QuadNode> disk_nodes(const Disk& d, int order) {
    int nr = std::max(24, order);
    int nth = std::max(64, 6 * order);
    std::vector<double> rx, rw;
    gauss_legendre_on(nr, 0.0, d.radius, rx, rw);
    std::vector<QuadNode> nodes;
    nodes.reserve(static_cast<size_t>(nr) * nth);
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < nth; ++j) {
            double th = 2.0 * M_PI * j / nth;
            nodes.push_back({{d.center.x + rx[i] * std::cos(th), d.center.y + rx[i] * std::sin(th)},
                             rw[i] * rx[i] * (2.0 * M_PI / nth)});
        }
    }
    return nodes;
}

bool axis_aligned_rectangle(const Polygon& poly, Vec2& lo, Vec2& hi) {
    if (poly.vertices.size() != 4) return false;
    lo = {1e300, 1e300};
    hi = {-1e300, -1e300};
    for (auto& v : poly.vertices) {
        lo.x = std::min(lo.x, v.x);
        lo.y = std::min(lo.y, v.y);
        hi.x = std::max(hi.x, v.x);
        hi.y = std::max(hi.y, v.y);
    }
    for (auto& v : poly.vertices) {
        bool on_x = std::fabs(v.x - lo.x) < 1e-14 || std::fabs(v.x - hi.x) < 1e-14;
        bool on_y = std::fabs(v.y - lo.y) < 1e-14 || std::fabs(v.y - hi.y) < 1e-14;
        if (!(on_x && on_y)) return false;
    }
    return true;
}

std::vector<QuadNode> rect_nodes(Vec2 lo, Vec2 hi, int order) {
    int n = std::max(32, 2 * order);
    std::vector<double> xs, xw, ys, yw;
    gauss_legendre_on(n, lo.x, hi.x, xs, xw);
    gauss_legendre_on(n, lo.y, hi.y, ys, yw);
    std::vector<QuadNode> nodes;
    nodes.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) nodes.push_back({{xs[i], ys[j]}, xw[i] * yw[j]});
    return nodes;
}

// Duffy-type tensor rule on the triangle (a,b,c).
void triangle_nodes(Vec2 a, Vec2 b, Vec2 c, int n, std::vector<QuadNode>& out) {
    const auto& [x, w] = gauss_legendre(n);
    double area2 = std::fabs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
    for (int i = 0; i < n; ++i) {
        double u = 0.5 * (x[i] + 1.0);
        for (int j = 0; j < n; ++j) {
            double v = 0.5 * (x[j] + 1.0);
            double l1 = u, l2 = v * (1.0 - u);
            Vec2 p{a.x + l1 * (b.x - a.x) + l2 * (c.x - a.x),
                   a.y + l1 * (b.y - a.y) + l2 * (c.y - a.y)};
            out.push_back({p, 0.25 * w[i] * w[j] * (1.0 - u) * area2});
        }
    }
}

std::vector<QuadNode> polygon_nodes(const Polygon& poly, int order) {
    Vec2 lo, hi;
    if (axis_aligned_rectangle(poly, lo, hi)) return rect_nodes(lo, hi, order);
    Vec2 centroid{0.0, 0.0};
    for (auto& v : poly.vertices) centroid = centroid + v;
    centroid = (1.0 / poly.vertices.size()) * centroid;
    std::vector<QuadNode> nodes;
    int n = std::max(32, 2 * order);
    for (size_t i = 0; i < poly.vertices.size(); ++i)
        triangle_nodes(centroid, poly.vertices[i], poly.vertices[(i + 1) % poly.vertices.size()], n,
                       nodes);
    return nodes;
}

}  // namespace

std::vector<QuadNode> region_quad_nodes(const PlanarSet& set, int order) {
    return std::visit(
        [&](const auto& v) -> std::vector<QuadNode> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return disk_nodes(v, order);
            } else if constexpr (std::is_same_v<T, Polygon>) {
                return polygon_nodes(v, order);
            } else if constexpr (std::is_same_v<T, UnionSet>) {
                // members must be disjoint for indicator integrals to add up
                for (size_t i = 0; i < v.members.size(); ++i) {
                    Vec2 lo1, hi1, lo2, hi2;
                    v.members[i]->bounding_box(lo1, hi1);
                    for (size_t j = i + 1; j < v.members.size(); ++j) {
                        v.members[j]->bounding_box(lo2, hi2);
                        bool sep = hi1.x <= lo2.x || hi2.x <= lo1.x || hi1.y <= lo2.y || hi2.y <= lo1.y;
                        if (!sep)
                            throw std::invalid_argument(
                                "region_quad_nodes: union members must be disjoint");
                    }
                }
                std::vector<QuadNode> nodes;
                for (auto& m : v.members) {
                    auto sub = region_quad_nodes(*m, order);
                    nodes.insert(nodes.end(), sub.begin(), sub.end());
                }
                return nodes;
            } else if constexpr (std::is_same_v<T, AffineSet>) {
                auto nodes = region_quad_nodes(*v.base, order);
                append_affine(nodes, v.scale, v.shift);
                return nodes;
            } else {
                throw std::invalid_argument("region_quad_nodes: set has no interior");
            }
        },
        set.shape);
}

}  // namespace llab
