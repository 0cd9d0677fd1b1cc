#include "llab/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace llab {

double discrete_diameter(const std::vector<Vec2>& points) {
    const size_t n = points.size();
    if (n < 2) throw std::invalid_argument("discrete_diameter: need at least 2 points");
    double log_sum = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            double d = dist(points[i], points[j]);
            if (d < 1e-14) throw std::invalid_argument("discrete_diameter: degenerate configuration");
            log_sum += std::log(d);
        }
    return std::exp(2.0 * log_sum / (static_cast<double>(n) * (n - 1)));
}

namespace {

struct ParamPoint {
    int curve = 0;
    double t = 0.0;
};

class FeketeProblem {
  public:
    FeketeProblem(const PlanarSet& set, int n)
        : curves_(boundary_curves(set)), n_(n) {
        if (curves_.empty()) throw std::invalid_argument("fekete_points: set has no boundary");
        Vec2 lo, hi;
        set.bounding_box(lo, hi);
        diam_ = std::max(1e-12, dist(lo, hi));
        total_measure_ = 0.0;
        for (const auto& c : curves_) total_measure_ += c.period;
    }

    Vec2 eval(const ParamPoint& p) const { return curves_[p.curve].eval(p.t); }

    ParamPoint random_point(Rng& rng) const {
        double s = rng.uniform() * total_measure_;
        for (size_t c = 0; c < curves_.size(); ++c) {
            if (s < curves_[c].period || c + 1 == curves_.size())
                return {static_cast<int>(c), std::min(s, curves_[c].period)};
            s -= curves_[c].period;
        }
        return {0, 0.0};
    }

    ParamPoint project(ParamPoint p) const {
        const auto& c = curves_[p.curve];
        if (c.closed) {
            p.t -= std::floor(p.t / c.period) * c.period;
        } else {
            p.t = std::clamp(p.t, 0.0, c.period);
        }
        return p;
    }

    // one-sided finite-difference tangent (curves may have corners)
    Vec2 tangent(const ParamPoint& p) const {
        const auto& c = curves_[p.curve];
        double h = c.period * 1e-7;
        ParamPoint pa = project({p.curve, p.t + h});
        ParamPoint pb = project({p.curve, p.t - h});
        Vec2 d = eval(pa) - eval(pb);
        double len = std::max(pa.t - pb.t, 1e-300);
        return (1.0 / len) * d;
    }

    double local_energy(const std::vector<Vec2>& pts, size_t skip, Vec2 candidate) const {
        double e = 0.0;
        for (size_t j = 0; j < pts.size(); ++j) {
            if (j == skip) continue;
            double d2 = (candidate - pts[j]).norm2();
            if (d2 < 1e-28) return -1e300;
            e += 0.5 * std::log(d2);
        }
        return e;
    }

    double total_energy(const std::vector<Vec2>& pts) const {
        double e = 0.0;
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j) {
                double d2 = (pts[i] - pts[j]).norm2();
                if (d2 < 1e-28) return -1e300;
                e += 0.5 * std::log(d2);
            }
        return e;
    }

    double diameter() const { return diam_; }
    int n() const { return n_; }
    const std::vector<BoundaryCurve>& curves() const { return curves_; }

  private:
    std::vector<BoundaryCurve> curves_;
    int n_;
    double diam_ = 1.0;
    double total_measure_ = 0.0;
};

struct StartOutcome {
    std::vector<Vec2> points;
    double energy = -1e300;
    bool converged = false;
};

StartOutcome run_start(const FeketeProblem& prob, const FeketeConfig& cfg, std::uint64_t seed) {
    const int n = prob.n();
    Rng rng(seed);
    std::vector<ParamPoint> params(n);
    std::vector<Vec2> pts(n);
    for (int i = 0; i < n; ++i) {
        params[i] = prob.random_point(rng);
        pts[i] = prob.eval(params[i]);
    }
    std::vector<double> step(n, 0.05);

    bool converged = false;
    int quiet_sweeps = 0;
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        double max_move = 0.0;
        for (int i = 0; i < n; ++i) {
            Vec2 xi = pts[i];
            Vec2 tang = prob.tangent(params[i]);
            double g = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Vec2 d = xi - pts[j];
                double d2 = std::max(d.norm2(), 1e-28);
                g += d.dot(tang) / d2;
            }
            double e0 = prob.local_energy(pts, i, xi);
            double h = step[i];
            bool improved = false;
            for (int bt = 0; bt < 40; ++bt) {
                ParamPoint cand = prob.project({params[i].curve, params[i].t + h * g});
                Vec2 xc = prob.eval(cand);
                if (prob.local_energy(pts, i, xc) > e0) {
                    max_move = std::max(max_move, dist(xc, xi));
                    params[i] = cand;
                    pts[i] = xc;
                    step[i] = std::min(h * 2.0, 1.0);
                    improved = true;
                    break;
                }
                h *= 0.5;
            }
            if (!improved) step[i] = std::max(step[i] * 0.5, 1e-14);
        }

        if (cfg.reseat_every > 0 && sweep % cfg.reseat_every == cfg.reseat_every - 1 &&
            prob.curves().size() > 1) {
            // propose random relocations (lets points change union components)
            for (int i = 0; i < n; ++i) {
                double e0 = prob.local_energy(pts, i, pts[i]);
                for (int c = 0; c < cfg.reseat_candidates; ++c) {
                    ParamPoint cand = prob.random_point(rng);
                    Vec2 xc = prob.eval(cand);
                    double e = prob.local_energy(pts, i, xc);
                    if (e > e0) {
                        e0 = e;
                        params[i] = cand;
                        pts[i] = xc;
                        max_move = std::max(max_move, 1.0);
                    }
                }
            }
        }

        if (max_move < cfg.move_tol * prob.diameter()) {
            if (++quiet_sweeps >= 2) {
                converged = true;
                break;
            }
        } else {
            quiet_sweeps = 0;
        }
    }
    return {pts, prob.total_energy(pts), converged};
}

}  // namespace

FeketeResult fekete_points(const PlanarSet& set, int n, const FeketeConfig& cfg) {
    if (n < 2) throw std::invalid_argument("fekete_points: need n >= 2");
    FeketeProblem prob(set, n);
    StartOutcome best;
    bool have = false;
    for (int s = 0; s < std::max(1, cfg.starts); ++s) {
        StartOutcome out = run_start(prob, cfg, cfg.seed * 1000003ull + static_cast<std::uint64_t>(s));
        if (!have || out.energy > best.energy) {  // ties keep the lowest start index
            best = std::move(out);
            have = true;
        }
    }
    return {best.points, best.energy, best.converged};
}

CapacityEstimate capacity(const PlanarSet& set, const std::vector<int>& n_schedule,
                          const FeketeConfig& cfg) {
    if (n_schedule.size() < 2) throw std::invalid_argument("capacity: schedule needs >= 2 sizes");
    for (size_t i = 0; i < n_schedule.size(); ++i) {
        if (n_schedule[i] < 8) throw std::invalid_argument("capacity: schedule entries must be >= 8");
        if (i > 0 && n_schedule[i] <= n_schedule[i - 1])
            throw std::invalid_argument("capacity: schedule must be increasing");
    }
    CapacityEstimate est;
    for (int n : n_schedule) {
        FeketeResult fr = fekete_points(set, n, cfg);
        est.optimizer_warning = est.optimizer_warning || !fr.converged;
        est.diameters.emplace_back(n, discrete_diameter(fr.points));
    }
    est.n_points = n_schedule.back();
    for (size_t i = 1; i < est.diameters.size(); ++i)
        if (est.diameters[i].second > est.diameters[i - 1].second + 1e-9) est.monotone = false;

    // least squares for d_n = cap + (cap c)/n
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(est.diameters.size());
    for (auto& [n, d] : est.diameters) {
        double x = 1.0 / n;
        sx += x;
        sy += d;
        sxx += x * x;
        sxy += x * d;
    }
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    est.value = (sy - slope * sx) / m;
    double ss = 0.0;
    for (auto& [n, d] : est.diameters) {
        double r = d - (est.value + slope / n);
        ss += r * r;
    }
    est.residual = std::sqrt(ss / m) / std::max(est.value, 1e-300);
    est.extrapolated = est.residual < 2e-3 && !est.optimizer_warning;
    return est;
}

std::string capacity_estimate_to_json(const CapacityEstimate& est) {
    nlohmann::json j;
    j["value"] = est.value;
    j["n_points"] = est.n_points;
    nlohmann::json table = nlohmann::json::array();
    for (auto& [n, d] : est.diameters) table.push_back({n, d});
    j["diameters"] = table;
    j["extrapolated"] = est.extrapolated;
    j["residual"] = est.residual;
    j["optimizer_warning"] = est.optimizer_warning;
    j["monotone"] = est.monotone;
    return j.dump();
}

namespace {

std::vector<Vec2> ccw_vertices(const Polygon& poly) {
    std::vector<Vec2> v = poly.vertices;
    double area2 = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % v.size()];
        area2 += a.x * b.y - b.x * a.y;
    }
    if (area2 < 0.0) std::reverse(v.begin(), v.end());
    return v;
}

bool is_convex(const std::vector<Vec2>& v) {
    for (size_t i = 0; i < v.size(); ++i) {
        Vec2 a = v[(i + 1) % v.size()] - v[i];
        Vec2 b = v[(i + 2) % v.size()] - v[(i + 1) % v.size()];
        if (a.x * b.y - a.y * b.x < -1e-12) return false;
    }
    return true;
}

std::optional<std::vector<Vec2>> inward_offset_polygon(const std::vector<Vec2>& v, double delta) {
    const size_t n = v.size();
    std::vector<Vec2> out(n);
    for (size_t i = 0; i < n; ++i) {
        // intersection of the two adjacent inward-shifted edge lines
        Vec2 p0 = v[(i + n - 1) % n], p1 = v[i], p2 = v[(i + 1) % n];
        Vec2 d0 = p1 - p0, d1 = p2 - p1;
        double l0 = d0.norm(), l1 = d1.norm();
        if (l0 < 1e-14 || l1 < 1e-14) return std::nullopt;
        d0 = (1.0 / l0) * d0;
        d1 = (1.0 / l1) * d1;
        Vec2 n0{-d0.y, d0.x}, n1{-d1.y, d1.x};  // left normals (inward for ccw)
        Vec2 a0 = p0 + delta * n0;
        Vec2 a1 = p1 + delta * n1;
        double det2 = d0.x * d1.y - d0.y * d1.x;
        if (std::fabs(det2) < 1e-12) {  // nearly parallel edges: keep shifted point
            out[i] = p1 + delta * n0;
            continue;
        }
        // solve a0 + s d0 = a1 + u d1
        double rx = a1.x - a0.x, ry = a1.y - a0.y;
        double s = (rx * d1.y - ry * d1.x) / det2;
        out[i] = a0 + s * d0;
    }
    if (!is_convex(out)) return std::nullopt;
    // offset polygon must stay inside the original
    double area2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
        area2 += out[i].x * out[(i + 1) % n].y - out[(i + 1) % n].x * out[i].y;
    }
    if (area2 <= 1e-12) return std::nullopt;
    return out;
}

}  // namespace

std::vector<PlanarSet> curve_schedule(const PlanarSet& region, const std::vector<double>& offsets,
                                      std::vector<std::string>* notices) {
    if (!region.is_region())
        throw std::invalid_argument("curve_schedule: input must be a region variant");
    for (size_t i = 0; i < offsets.size(); ++i) {
        if (offsets[i] <= 0.0) throw std::invalid_argument("curve_schedule: offsets must be positive");
        if (i > 0 && offsets[i] >= offsets[i - 1])
            throw std::invalid_argument("curve_schedule: offsets must be decreasing");
    }
    std::vector<PlanarSet> out;
    auto note = [&](const std::string& s) {
        if (notices) notices->push_back(s);
    };
    if (const auto* d = std::get_if<Disk>(&region.shape)) {
        for (double off : offsets) {
            double r = d->radius - off;
            if (r <= 1e-9) {
                note("offset " + std::to_string(off) + " collapses the disk; skipped");
                continue;
            }
            Vec2 c = d->center;
            out.push_back(PlanarSet::curve(
                [c, r](double t) {
                    double a = 2.0 * M_PI * t;
                    return Vec2{c.x + r * std::cos(a), c.y + r * std::sin(a)};
                },
                256));
        }
        return out;
    }
    if (const auto* poly = std::get_if<Polygon>(&region.shape)) {
        auto v = ccw_vertices(*poly);
        if (!is_convex(v))
            throw std::invalid_argument("curve_schedule: only convex polygons are supported");
        for (double off : offsets) {
            auto shrunk = inward_offset_polygon(v, off);
            if (!shrunk) {
                note("offset " + std::to_string(off) + " collapses the polygon; skipped");
                continue;
            }
            out.push_back(PlanarSet::curve_from_points(*shrunk));
        }
        return out;
    }
    throw std::invalid_argument("curve_schedule: unsupported region variant");
}

PlanarSet outer_thickening(const PlanarSet& set, double delta) {
    if (delta <= 0.0) throw std::invalid_argument("outer_thickening: delta must be positive");
    return std::visit(
        [&](const auto& v) -> PlanarSet {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return PlanarSet::disk(v.center, v.radius + delta);  // exact Minkowski sum
            } else if constexpr (std::is_same_v<T, Polygon>) {
                auto verts = ccw_vertices(v);
                if (!is_convex(verts))
                    throw std::invalid_argument("outer_thickening: only convex polygons supported");
                const size_t n = verts.size();
                std::vector<Vec2> out;
                const double hstep = M_PI / 16.0;
                for (size_t i = 0; i < n; ++i) {
                    Vec2 p0 = verts[(i + n - 1) % n], p1 = verts[i], p2 = verts[(i + 1) % n];
                    Vec2 d0 = p1 - p0, d1 = p2 - p1;
                    d0 = (1.0 / d0.norm()) * d0;
                    d1 = (1.0 / d1.norm()) * d1;
                    Vec2 n0{d0.y, -d0.x}, n1{d1.y, -d1.x};  // outward (right) normals for ccw
                    double a0 = std::atan2(n0.y, n0.x), a1 = std::atan2(n1.y, n1.x);
                    while (a1 < a0) a1 += 2.0 * M_PI;
                    int m = std::max(1, static_cast<int>(std::ceil((a1 - a0) / hstep)));
                    double step = (a1 - a0) / m;
                    double rr = delta / std::cos(0.5 * step);  // circumscribed radius
                    for (int j = 0; j <= m; ++j) {
                        double a = a0 + j * step;
                        out.push_back({p1.x + rr * std::cos(a), p1.y + rr * std::sin(a)});
                    }
                }
                return PlanarSet::polygon(out);
            } else if constexpr (std::is_same_v<T, Segment>) {
                Vec2 d = v.b - v.a;
                d = (1.0 / d.norm()) * d;
                double base = std::atan2(d.y, d.x);
                std::vector<Vec2> out;
                const int m = 16;
                double step = M_PI / m;
                double rr = delta / std::cos(0.5 * step);
                for (int j = 0; j <= m; ++j) {  // cap around b
                    double a = base - 0.5 * M_PI + j * step;
                    out.push_back({v.b.x + rr * std::cos(a), v.b.y + rr * std::sin(a)});
                }
                for (int j = 0; j <= m; ++j) {  // cap around a
                    double a = base + 0.5 * M_PI + j * step;
                    out.push_back({v.a.x + rr * std::cos(a), v.a.y + rr * std::sin(a)});
                }
                return PlanarSet::polygon(out);
            } else if constexpr (std::is_same_v<T, UnionSet>) {
                std::vector<PlanarSet> members;
                for (auto& msub : v.members) members.push_back(outer_thickening(*msub, delta));
                return PlanarSet::union_of(std::move(members));
            } else if constexpr (std::is_same_v<T, AffineSet>) {
                return PlanarSet::affine(outer_thickening(*v.base, delta / std::fabs(v.scale)),
                                         v.scale, v.shift);
            } else {
                throw std::invalid_argument("outer_thickening: unsupported variant");
            }
        },
        set.shape);
}

}  // namespace llab
