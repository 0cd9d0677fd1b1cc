#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "llab/common.hpp"

namespace llab {

// ---------------------------------------------------------------------------
// Planar compact sets
// ---------------------------------------------------------------------------

struct Disk {
    Vec2 center;
    double radius = 1.0;
};

struct Polygon {
    std::vector<Vec2> vertices;  // ordered, >= 3, non-collinear
};

struct Segment {
    Vec2 a, b;
};

// Closed curve given by a periodic map [0,1) -> R^2; `samples` is the declared
// resolution at which simplicity is validated and at which the curve is
// serialized.
struct JordanCurve {
    std::function<Vec2(double)> map;
    int samples = 256;
};

struct PlanarSet;

struct UnionSet {
    std::vector<std::shared_ptr<PlanarSet>> members;
};

struct AffineSet {
    std::shared_ptr<PlanarSet> base;
    double scale = 1.0;  // != 0
    Vec2 shift;
};

struct PlanarSet {
    std::variant<Disk, Polygon, Segment, JordanCurve, UnionSet, AffineSet> shape;

    static PlanarSet disk(Vec2 c, double r);
    static PlanarSet polygon(std::vector<Vec2> vertices);
    static PlanarSet rectangle(Vec2 lo, Vec2 hi);
    static PlanarSet segment(Vec2 a, Vec2 b);
    static PlanarSet curve(std::function<Vec2(double)> map, int samples);
    static PlanarSet curve_from_points(std::vector<Vec2> pts);  // closed polyline
    static PlanarSet union_of(std::vector<PlanarSet> members);
    static PlanarSet affine(PlanarSet base, double scale, Vec2 shift);

    // Axis-aligned bounding box.
    void bounding_box(Vec2& lo, Vec2& hi) const;

    // True for variants with 2D interior (disk, polygon, union/affine of those).
    bool is_region() const;

    // Inside test for region variants (points on the boundary may go either way).
    bool contains(const Vec2& p) const;

    std::string describe() const;
};

// One boundary component parametrized by t in [0, period); for open arcs
// (segments) `closed` is false and t lives in [0, period].
struct BoundaryCurve {
    std::function<Vec2(double)> eval;
    double period = 1.0;
    bool closed = true;
};

// Boundary components of the set; Fekete optimization lives on these.
// Region variants expose only the outer boundary (the equilibrium measure
// charges nothing inside).
std::vector<BoundaryCurve> boundary_curves(const PlanarSet& set);

// Total parameter measure, used to allocate points across union members.
double boundary_measure(const PlanarSet& set);

// JSON (de)serialization.  Schema:
//   {"type":"disk","center":[0,0],"radius":1.0}
//   {"type":"polygon","vertices":[[x,y],...]}
//   {"type":"segment","endpoints":[[x,y],[x,y]]}
//   {"type":"curve","points":[[x,y],...]}          closed polyline
//   {"type":"union","sets":[...]}
//   {"type":"affine","base":{...},"scale":s,"shift":[x,y]}
std::string planar_set_to_json(const PlanarSet& set);
PlanarSet planar_set_from_json(const std::string& text);

// ---------------------------------------------------------------------------
// Bounded 3D obstacles (field axis = x3)
// ---------------------------------------------------------------------------

struct Domain3D {
    std::function<bool(const Vec3&)> inside;
    Vec3 box_lo, box_hi;
    bool smooth_boundary = true;
    std::string descriptor;

    static Domain3D ball(Vec3 center, double radius);
    static Domain3D box(Vec3 lo, Vec3 hi);
    // Torus around the field axis through `center`: circle of radius `major`
    // in the transverse plane, tube radius `minor`.
    static Domain3D torus(Vec3 center, double major, double minor);
};

Domain3D domain3d_from_json(const std::string& text);

// Transverse projection of the obstacle as a PlanarSet (capacity of the
// closure matches the outer boundary used here).
PlanarSet project_transverse(const Domain3D& dom);

}  // namespace llab
