#include "llab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace llab {

using nlohmann::json;

PlanarSet PlanarSet::disk(Vec2 c, double r) {
    if (r <= 0.0) throw std::invalid_argument("disk: radius must be positive");
    return PlanarSet{Disk{c, r}};
}

PlanarSet PlanarSet::polygon(std::vector<Vec2> v) {
    if (v.size() < 3) throw std::invalid_argument("polygon: need at least 3 vertices");
    double area2 = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % v.size()];
        area2 += a.x * b.y - b.x * a.y;
    }
    if (std::fabs(area2) < 1e-14) throw std::invalid_argument("polygon: vertices are collinear");
    return PlanarSet{Polygon{std::move(v)}};
}

PlanarSet PlanarSet::rectangle(Vec2 lo, Vec2 hi) {
    return polygon({{lo.x, lo.y}, {hi.x, lo.y}, {hi.x, hi.y}, {lo.x, hi.y}});
}

PlanarSet PlanarSet::segment(Vec2 a, Vec2 b) {
    if (dist(a, b) < 1e-14) throw std::invalid_argument("segment: endpoints coincide");
    return PlanarSet{Segment{a, b}};
}

PlanarSet PlanarSet::curve(std::function<Vec2(double)> map, int samples) {
    if (samples < 8) throw std::invalid_argument("curve: need >= 8 samples");
    // validate pairwise-distinct samples and simplicity at the declared resolution
    std::vector<Vec2> pts(samples);
    for (int i = 0; i < samples; ++i) pts[i] = map(static_cast<double>(i) / samples);
    for (int i = 0; i < samples; ++i)
        for (int j = i + 1; j < samples; ++j)
            if (dist(pts[i], pts[j]) < 1e-12)
                throw std::invalid_argument("curve: coincident samples");
    auto seg_intersect = [](Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
        auto cross = [](Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; };
        Vec2 r = p2 - p1, s = q2 - q1;
        double rxs = cross(r, s);
        if (std::fabs(rxs) < 1e-300) return false;
        double t = cross(q1 - p1, s) / rxs;
        double u = cross(q1 - p1, r) / rxs;
        const double eps = 1e-12;
        return t > eps && t < 1 - eps && u > eps && u < 1 - eps;
    };
    for (int i = 0; i < samples; ++i) {
        for (int j = i + 2; j < samples; ++j) {
            if (i == 0 && j == samples - 1) continue;  // adjacent around the seam
            if (seg_intersect(pts[i], pts[(i + 1) % samples], pts[j], pts[(j + 1) % samples]))
                throw std::invalid_argument("curve: self-intersection at sample resolution");
        }
    }
    return PlanarSet{JordanCurve{std::move(map), samples}};
}

PlanarSet PlanarSet::curve_from_points(std::vector<Vec2> pts) {
    if (pts.size() < 3) throw std::invalid_argument("curve: need >= 3 points");
    auto shared = std::make_shared<std::vector<Vec2>>(std::move(pts));
    int n = static_cast<int>(shared->size());
    auto map = [shared, n](double t) {
        t -= std::floor(t);
        double s = t * n;
        int i = std::min(static_cast<int>(s), n - 1);
        double f = s - i;
        const Vec2& a = (*shared)[i];
        const Vec2& b = (*shared)[(i + 1) % n];
        return Vec2{a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
    };
    return curve(map, std::max(64, 2 * n));
}

PlanarSet PlanarSet::union_of(std::vector<PlanarSet> members) {
    if (members.empty()) throw std::invalid_argument("union: empty");
    UnionSet u;
    for (auto& m : members) u.members.push_back(std::make_shared<PlanarSet>(std::move(m)));
    return PlanarSet{std::move(u)};
}

PlanarSet PlanarSet::affine(PlanarSet base, double scale, Vec2 shift) {
    if (scale == 0.0) throw std::invalid_argument("affine: scale must be nonzero");
    return PlanarSet{AffineSet{std::make_shared<PlanarSet>(std::move(base)), scale, shift}};
}

namespace {

void bbox_impl(const PlanarSet& s, Vec2& lo, Vec2& hi) {
    auto update = [&](Vec2 p) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    };
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Disk>) {
                update({v.center.x - v.radius, v.center.y - v.radius});
                update({v.center.x + v.radius, v.center.y + v.radius});
            } else if constexpr (std::is_same_v<T, Polygon>) {
                for (auto& p : v.vertices) update(p);
            } else if constexpr (std::is_same_v<T, Segment>) {
                update(v.a);
                update(v.b);
            } else if constexpr (std::is_same_v<T, JordanCurve>) {
                for (int i = 0; i < v.samples; ++i) update(v.map(static_cast<double>(i) / v.samples));
            } else if constexpr (std::is_same_v<T, UnionSet>) {
                for (auto& m : v.members) bbox_impl(*m, lo, hi);
            } else if constexpr (std::is_same_v<T, AffineSet>) {
                Vec2 blo{1e300, 1e300}, bhi{-1e300, -1e300};
                bbox_impl(*v.base, blo, bhi);
                for (Vec2 c : {Vec2{blo.x, blo.y}, Vec2{blo.x, bhi.y}, Vec2{bhi.x, blo.y}, Vec2{bhi.x, bhi.y}})
                    update(v.scale * c + v.shift);
            }
        },
        s.shape);
}

}  // namespace

void PlanarSet::bounding_box(Vec2& lo, Vec2& hi) const {
    lo = {1e300, 1e300};
    hi = {-1e300, -1e300};
    bbox_impl(*this, lo, hi);
}

bool PlanarSet::is_region() const {
    return std::visit(
        [](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Disk> || std::is_same_v<T, Polygon>) return true;
            else if constexpr (std::is_same_v<T, UnionSet>) {
                for (auto& m : v.members)
                    if (!m->is_region()) return false;
                return true;
            } else if constexpr (std::is_same_v<T, AffineSet>) return v.base->is_region();
            else return false;
        },
        shape);
}

bool PlanarSet::contains(const Vec2& p) const {
    return std::visit(
        [&](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return dist(p, v.center) <= v.radius;
            } else if constexpr (std::is_same_v<T, Polygon>) {
                bool in = false;
                size_t n = v.vertices.size();
                for (size_t i = 0, j = n - 1; i < n; j = i++) {
                    const Vec2& a = v.vertices[i];
                    const Vec2& b = v.vertices[j];
                    if ((a.y > p.y) != (b.y > p.y) &&
                        p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x)
                        in = !in;
                }
                return in;
            } else if constexpr (std::is_same_v<T, UnionSet>) {
                for (auto& m : v.members)
                    if (m->contains(p)) return true;
                return false;
            } else if constexpr (std::is_same_v<T, AffineSet>) {
                Vec2 q = (1.0 / v.scale) * (p - v.shift);
                return v.base->contains(q);
            } else {
                return false;  // curves/segments have no interior
            }
        },
        shape);
}

std::string PlanarSet::describe() const {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            std::ostringstream os;
            if constexpr (std::is_same_v<T, Disk>) {
                os << "disk(c=(" << v.center.x << "," << v.center.y << "),r=" << v.radius << ")";
            } else if constexpr (std::is_same_v<T, Polygon>) {
                os << "polygon(" << v.vertices.size() << " vertices)";
            } else if constexpr (std::is_same_v<T, Segment>) {
                os << "segment";
            } else if constexpr (std::is_same_v<T, JordanCurve>) {
                os << "curve(" << v.samples << " samples)";
            } else if constexpr (std::is_same_v<T, UnionSet>) {
                os << "union(" << v.members.size() << ")";
            } else if constexpr (std::is_same_v<T, AffineSet>) {
                os << "affine(scale=" << v.scale << ")";
            }
            return os.str();
        },
        shape);
}

// ---------------------------------------------------------------------------

std::vector<BoundaryCurve> boundary_curves(const PlanarSet& set) {
    std::vector<BoundaryCurve> out;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Disk>) {
                Vec2 c = v.center;
                double r = v.radius;
                out.push_back({[c, r](double t) {
                                   double a = 2.0 * M_PI * t;
                                   return Vec2{c.x + r * std::cos(a), c.y + r * std::sin(a)};
                               },
                               1.0, true});
            } else if constexpr (std::is_same_v<T, Polygon>) {
                auto verts = std::make_shared<std::vector<Vec2>>(v.vertices);
                auto cum = std::make_shared<std::vector<double>>();
                double L = 0.0;
                cum->push_back(0.0);
                for (size_t i = 0; i < verts->size(); ++i) {
                    L += dist((*verts)[i], (*verts)[(i + 1) % verts->size()]);
                    cum->push_back(L);
                }
                out.push_back({[verts, cum, L](double t) {
                                   double s = t - std::floor(t / L) * L;
                                   size_t i = std::upper_bound(cum->begin(), cum->end(), s) - cum->begin();
                                   i = std::min(i, cum->size() - 1) - 1;
                                   double f = (s - (*cum)[i]) / ((*cum)[i + 1] - (*cum)[i]);
                                   const Vec2& a = (*verts)[i];
                                   const Vec2& b = (*verts)[(i + 1) % verts->size()];
                                   return Vec2{a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
                               },
                               L, true});
            } else if constexpr (std::is_same_v<T, Segment>) {
                Vec2 a = v.a, b = v.b;
                double L = dist(a, b);
                out.push_back({[a, b, L](double t) {
                                   double f = std::clamp(t / L, 0.0, 1.0);
                                   return Vec2{a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
                               },
                               L, false});
            } else if constexpr (std::is_same_v<T, JordanCurve>) {
                out.push_back({v.map, 1.0, true});
            } else if constexpr (std::is_same_v<T, UnionSet>) {
                for (auto& m : v.members) {
                    auto sub = boundary_curves(*m);
                    out.insert(out.end(), sub.begin(), sub.end());
                }
            } else if constexpr (std::is_same_v<T, AffineSet>) {
                auto sub = boundary_curves(*v.base);
                for (auto& c : sub) {
                    auto base_eval = c.eval;
                    double sc = v.scale;
                    Vec2 sh = v.shift;
                    out.push_back({[base_eval, sc, sh](double t) { return sc * base_eval(t) + sh; },
                                   c.period, c.closed});
                }
            }
        },
        set.shape);
    return out;
}

double boundary_measure(const PlanarSet& set) {
    double total = 0.0;
    for (const auto& c : boundary_curves(set)) total += c.period;
    return total;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

json set_to_json_impl(const PlanarSet& s) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            json j;
            if constexpr (std::is_same_v<T, Disk>) {
                j["type"] = "disk";
                j["center"] = {v.center.x, v.center.y};
                j["radius"] = v.radius;
            } else if constexpr (std::is_same_v<T, Polygon>) {
                j["type"] = "polygon";
                json verts = json::array();
                for (auto& p : v.vertices) verts.push_back({p.x, p.y});
                j["vertices"] = verts;
            } else if constexpr (std::is_same_v<T, Segment>) {
                j["type"] = "segment";
                j["endpoints"] = {{v.a.x, v.a.y}, {v.b.x, v.b.y}};
            } else if constexpr (std::is_same_v<T, JordanCurve>) {
                j["type"] = "curve";
                json pts = json::array();
                for (int i = 0; i < v.samples; ++i) {
                    Vec2 p = v.map(static_cast<double>(i) / v.samples);
                    pts.push_back({p.x, p.y});
                }
                j["points"] = pts;
            } else if constexpr (std::is_same_v<T, UnionSet>) {
                j["type"] = "union";
                json arr = json::array();
                for (auto& m : v.members) arr.push_back(set_to_json_impl(*m));
                j["sets"] = arr;
            } else if constexpr (std::is_same_v<T, AffineSet>) {
                j["type"] = "affine";
                j["base"] = set_to_json_impl(*v.base);
                j["scale"] = v.scale;
                j["shift"] = {v.shift.x, v.shift.y};
            }
            return j;
        },
        s.shape);
}

Vec2 vec2_of(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [x,y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

PlanarSet set_from_json_impl(const json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "disk") return PlanarSet::disk(vec2_of(j.at("center")), j.at("radius").get<double>());
    if (type == "polygon") {
        std::vector<Vec2> verts;
        for (auto& p : j.at("vertices")) verts.push_back(vec2_of(p));
        return PlanarSet::polygon(std::move(verts));
    }
    if (type == "segment") {
        auto& e = j.at("endpoints");
        return PlanarSet::segment(vec2_of(e.at(0)), vec2_of(e.at(1)));
    }
    if (type == "curve") {
        std::vector<Vec2> pts;
        for (auto& p : j.at("points")) pts.push_back(vec2_of(p));
        return PlanarSet::curve_from_points(std::move(pts));
    }
    if (type == "union") {
        std::vector<PlanarSet> members;
        for (auto& m : j.at("sets")) members.push_back(set_from_json_impl(m));
        return PlanarSet::union_of(std::move(members));
    }
    if (type == "affine") {
        return PlanarSet::affine(set_from_json_impl(j.at("base")), j.at("scale").get<double>(),
                                 vec2_of(j.at("shift")));
    }
    throw std::invalid_argument("unknown planar set type: " + type);
}

}  // namespace

std::string planar_set_to_json(const PlanarSet& set) { return set_to_json_impl(set).dump(); }

PlanarSet planar_set_from_json(const std::string& text) {
    return set_from_json_impl(json::parse(text));
}

// ---------------------------------------------------------------------------
// Domain3D
// ---------------------------------------------------------------------------

Domain3D Domain3D::ball(Vec3 c, double r) {
    if (r <= 0.0) throw std::invalid_argument("ball: radius must be positive");
    Domain3D d;
    d.inside = [c, r](const Vec3& p) {
        double dx = p.x - c.x, dy = p.y - c.y, dz = p.z - c.z;
        return dx * dx + dy * dy + dz * dz < r * r;
    };
    d.box_lo = {c.x - r, c.y - r, c.z - r};
    d.box_hi = {c.x + r, c.y + r, c.z + r};
    d.smooth_boundary = true;
    d.descriptor = "ball";
    return d;
}

Domain3D Domain3D::box(Vec3 lo, Vec3 hi) {
    if (!(lo.x < hi.x && lo.y < hi.y && lo.z < hi.z))
        throw std::invalid_argument("box: lo must be strictly below hi");
    Domain3D d;
    d.inside = [lo, hi](const Vec3& p) {
        return p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y && p.z > lo.z && p.z < hi.z;
    };
    d.box_lo = lo;
    d.box_hi = hi;
    d.smooth_boundary = false;
    d.descriptor = "box";
    return d;
}

Domain3D Domain3D::torus(Vec3 c, double major, double minor) {
    if (!(major > 0.0 && minor > 0.0 && minor < major))
        throw std::invalid_argument("torus: need 0 < minor < major");
    Domain3D d;
    d.inside = [c, major, minor](const Vec3& p) {
        double rho = std::hypot(p.x - c.x, p.y - c.y);
        double dr = rho - major, dz = p.z - c.z;
        return dr * dr + dz * dz < minor * minor;
    };
    d.box_lo = {c.x - major - minor, c.y - major - minor, c.z - minor};
    d.box_hi = {c.x + major + minor, c.y + major + minor, c.z + minor};
    d.smooth_boundary = true;
    d.descriptor = "torus";
    return d;
}

Domain3D domain3d_from_json(const std::string& text) {
    json j = json::parse(text);
    std::string type = j.at("type").get<std::string>();
    auto vec3_of = [](const json& a) {
        return Vec3{a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>()};
    };
    if (type == "ball") return Domain3D::ball(vec3_of(j.at("center")), j.at("radius").get<double>());
    if (type == "box") return Domain3D::box(vec3_of(j.at("min")), vec3_of(j.at("max")));
    if (type == "torus")
        return Domain3D::torus(vec3_of(j.at("center")), j.at("major_radius").get<double>(),
                               j.at("minor_radius").get<double>());
    throw std::invalid_argument("unknown 3D domain type: " + type);
}

PlanarSet project_transverse(const Domain3D& dom) {
    if (dom.descriptor == "ball") {
        double r = 0.5 * (dom.box_hi.x - dom.box_lo.x);
        return PlanarSet::disk({0.5 * (dom.box_lo.x + dom.box_hi.x), 0.5 * (dom.box_lo.y + dom.box_hi.y)}, r);
    }
    if (dom.descriptor == "box") {
        return PlanarSet::rectangle({dom.box_lo.x, dom.box_lo.y}, {dom.box_hi.x, dom.box_hi.y});
    }
    if (dom.descriptor == "torus") {
        // projection is an annulus; its closure has the capacity of the outer circle
        double r = 0.5 * (dom.box_hi.x - dom.box_lo.x);
        return PlanarSet::disk({0.5 * (dom.box_lo.x + dom.box_hi.x), 0.5 * (dom.box_lo.y + dom.box_hi.y)}, r);
    }
    // generic fallback: bounding rectangle of the projection
    return PlanarSet::rectangle({dom.box_lo.x, dom.box_lo.y}, {dom.box_hi.x, dom.box_hi.y});
}

}  // namespace llab
