#include "humansynth/geometry.hpp"

#include <algorithm>
#include <limits>

namespace humansynth::geom {

double fov_from_focal(double focal_length_mm, double sensor_size_mm) {
    if (focal_length_mm <= 0 || sensor_size_mm <= 0)
        throw std::invalid_argument("fov_from_focal: inputs must be positive");
    return rad_to_deg(2.0 * std::atan(sensor_size_mm / (2.0 * focal_length_mm)));
}

double focal_from_fov(double fov_degrees, double sensor_size_mm) {
    if (fov_degrees <= 0 || fov_degrees >= 180 || sensor_size_mm <= 0)
        throw std::invalid_argument("focal_from_fov: fov must be in (0,180), sensor positive");
    return sensor_size_mm / (2.0 * std::tan(deg_to_rad(fov_degrees) / 2.0));
}

std::optional<Projection> project(const Vec3& world, const CameraModel& cam) {
    Vec3 local = cam.rotation.inverse().rotate(world - cam.position);
    if (local.z <= cam.near_plane) return std::nullopt;
    double f = cam.focal_px();
    Projection p;
    p.u = cam.image_width * 0.5 + local.x / local.z * f;
    p.v = cam.image_height * 0.5 - local.y / local.z * f;
    p.depth = local.z;
    return p;
}

Vec3 unproject(double u, double v, double depth, const CameraModel& cam) {
    double f = cam.focal_px();
    Vec3 local{(u - cam.image_width * 0.5) * depth / f,
               -(v - cam.image_height * 0.5) * depth / f, depth};
    return cam.rotation.rotate(local) + cam.position;
}

namespace {

constexpr double kEps = 1e-12;

// Quadratic root helper: smallest root > tmin, or nullopt.
std::optional<double> smallest_positive_root(double a, double b, double c, double tmin) {
    double disc = b * b - 4 * a * c;
    if (disc < 0) return std::nullopt;
    double sq = std::sqrt(disc);
    double t0 = (-b - sq) / (2 * a);
    double t1 = (-b + sq) / (2 * a);
    if (t0 > t1) std::swap(t0, t1);
    if (t0 > tmin) return t0;
    if (t1 > tmin) return t1;
    return std::nullopt;
}

std::optional<double> ray_sphere(const Vec3& o, const Vec3& d, double r) {
    return smallest_positive_root(d.dot(d), 2 * o.dot(d), o.dot(o) - r * r, kEps);
}

std::optional<double> ray_box(const Vec3& o, const Vec3& d, const std::array<double, 3>& he) {
    double tmin = -std::numeric_limits<double>::infinity();
    double tmax = std::numeric_limits<double>::infinity();
    const double oa[3] = {o.x, o.y, o.z};
    const double da[3] = {d.x, d.y, d.z};
    for (int i = 0; i < 3; ++i) {
        if (std::abs(da[i]) < kEps) {
            if (std::abs(oa[i]) > he[i]) return std::nullopt;
            continue;
        }
        double t0 = (-he[i] - oa[i]) / da[i];
        double t1 = (he[i] - oa[i]) / da[i];
        if (t0 > t1) std::swap(t0, t1);
        tmin = std::max(tmin, t0);
        tmax = std::min(tmax, t1);
        if (tmin > tmax) return std::nullopt;
    }
    if (tmax < kEps) return std::nullopt;
    return tmin > kEps ? tmin : tmax;
}

// Infinite cylinder about local Y, then clamp to |y| <= hh; caps as disks.
std::optional<double> ray_cylinder(const Vec3& o, const Vec3& d, double r, double hh) {
    std::optional<double> best;
    auto consider = [&](double t) {
        if (t > kEps && (!best || t < *best)) best = t;
    };
    double a = d.x * d.x + d.z * d.z;
    if (a > kEps) {
        auto t = smallest_positive_root(a, 2 * (o.x * d.x + o.z * d.z),
                                        o.x * o.x + o.z * o.z - r * r, kEps);
        if (t) {
            double y = o.y + *t * d.y;
            if (std::abs(y) <= hh) consider(*t);
            // the near root may clip the cap zone while the far one re-enters
            double disc = std::sqrt(std::max(0.0, 4 * (o.x * d.x + o.z * d.z) * (o.x * d.x + o.z * d.z) -
                                                      4 * a * (o.x * o.x + o.z * o.z - r * r)));
            double tfar = (-2 * (o.x * d.x + o.z * d.z) + disc) / (2 * a);
            double yf = o.y + tfar * d.y;
            if (tfar > kEps && std::abs(yf) <= hh) consider(tfar);
        }
    }
    if (std::abs(d.y) > kEps) {
        for (double cap : {hh, -hh}) {
            double t = (cap - o.y) / d.y;
            if (t > kEps) {
                double x = o.x + t * d.x, z = o.z + t * d.z;
                if (x * x + z * z <= r * r) consider(t);
            }
        }
    }
    return best;
}

std::optional<double> ray_capsule(const Vec3& o, const Vec3& d, double r, double hh) {
    std::optional<double> best;
    auto consider = [&](std::optional<double> t) {
        if (t && *t > kEps && (!best || *t < *best)) best = *t;
    };
    // cylindrical side
    double a = d.x * d.x + d.z * d.z;
    if (a > kEps) {
        double b = 2 * (o.x * d.x + o.z * d.z);
        double c = o.x * o.x + o.z * o.z - r * r;
        double disc = b * b - 4 * a * c;
        if (disc >= 0) {
            double sq = std::sqrt(disc);
            for (double t : {(-b - sq) / (2 * a), (-b + sq) / (2 * a)}) {
                if (t > kEps && std::abs(o.y + t * d.y) <= hh) consider(t);
            }
        }
    }
    // hemispherical ends
    for (double cy : {hh, -hh}) {
        Vec3 oc = o - Vec3{0, cy, 0};
        auto t = ray_sphere(oc, d, r);
        if (t) {
            double y = o.y + *t * d.y;
            if ((cy > 0 && y >= hh) || (cy < 0 && y <= -hh)) consider(t);
            // far root of the sphere may be the valid one
            double b = 2 * oc.dot(d);
            double disc = b * b - 4 * d.dot(d) * (oc.dot(oc) - r * r);
            if (disc >= 0) {
                double tf = (-b + std::sqrt(disc)) / (2 * d.dot(d));
                double yf = o.y + tf * d.y;
                if (tf > kEps && ((cy > 0 && yf >= hh) || (cy < 0 && yf <= -hh))) consider(tf);
            }
        }
    }
    return best;
}

std::optional<double> ray_quad(const Vec3& o, const Vec3& d, double hw, double hh) {
    if (std::abs(d.z) < kEps) return std::nullopt;
    double t = -o.z / d.z;
    if (t <= kEps) return std::nullopt;
    double x = o.x + t * d.x, y = o.y + t * d.y;
    if (std::abs(x) <= hw && std::abs(y) <= hh) return t;
    return std::nullopt;
}

}  // namespace

std::optional<double> ray_intersect(const Primitive& prim, const Transform& xf,
                                    const Vec3& origin, const Vec3& dir) {
    // Solve in local space; the local ray parameter is not a world
    // distance under anisotropic scale, so map the hit point back.
    Vec3 lo = xf.apply_inverse(origin);
    Vec3 ld = xf.apply_inverse_dir(dir);
    std::optional<double> t;
    switch (prim.kind) {
        case PrimitiveKind::Sphere:
            t = ray_sphere(lo, ld, prim.dimensions[0]);
            break;
        case PrimitiveKind::Box:
            t = ray_box(lo, ld, prim.dimensions);
            break;
        case PrimitiveKind::Cylinder:
            t = ray_cylinder(lo, ld, prim.dimensions[0], prim.dimensions[1]);
            break;
        case PrimitiveKind::Capsule:
            t = ray_capsule(lo, ld, prim.dimensions[0], prim.dimensions[1]);
            break;
        case PrimitiveKind::Quad:
            t = ray_quad(lo, ld, prim.dimensions[0], prim.dimensions[1]);
            break;
    }
    if (!t) return std::nullopt;
    Vec3 world_hit = xf.apply(lo + *t * ld);
    return (world_hit - origin).norm();
}

}  // namespace humansynth::geom
