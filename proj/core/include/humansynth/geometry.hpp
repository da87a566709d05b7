#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

// Conventions, pinned once and tested: right-handed world, Y up,
// camera looks along +Z in its local frame, +X maps to increasing u,
// +Y maps to decreasing v (image row 0 at the top).

namespace humansynth::geom {

constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double d) { return d * kPi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / kPi; }

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    double norm2() const { return dot(*this); }
    Vec3 normalized() const {
        double n = norm();
        return n > 0.0 ? *this / n : Vec3{0, 0, 0};
    }
    Vec3 cwise_mul(const Vec3& o) const { return {x * o.x, y * o.y, z * o.z}; }
    Vec3 cwise_div(const Vec3& o) const { return {x / o.x, y / o.y, z / o.z}; }
    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Unit quaternion. Renormalized after every composition so the norm
/// stays within 1e-9 of 1.
struct Rotation {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    Rotation() = default;
    Rotation(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    static Rotation identity() { return {}; }

    static Rotation axis_angle(const Vec3& axis, double radians) {
        Vec3 a = axis.normalized();
        double h = radians * 0.5;
        double s = std::sin(h);
        return Rotation{std::cos(h), a.x * s, a.y * s, a.z * s}.normalized();
    }

    /// Intrinsic Y (yaw), then X (pitch), then Z (roll).
    static Rotation from_euler_yxz(double yaw, double pitch, double roll) {
        return (axis_angle({0, 1, 0}, yaw) * axis_angle({1, 0, 0}, pitch)) *
               axis_angle({0, 0, 1}, roll);
    }

    Rotation normalized() const {
        double n = std::sqrt(w * w + x * x + y * y + z * z);
        if (n <= 0.0) return identity();
        return {w / n, x / n, y / n, z / n};
    }

    Rotation operator*(const Rotation& o) const {
        Rotation r{w * o.w - x * o.x - y * o.y - z * o.z,
                   w * o.x + x * o.w + y * o.z - z * o.y,
                   w * o.y - x * o.z + y * o.w + z * o.x,
                   w * o.z + x * o.y - y * o.x + z * o.w};
        return r.normalized();
    }

    Rotation inverse() const { return {w, -x, -y, -z}; }

    Vec3 rotate(const Vec3& v) const {
        // q v q^-1 expanded
        Vec3 u{x, y, z};
        Vec3 t = 2.0 * u.cross(v);
        return v + w * t + u.cross(t);
    }

    /// Yaw about Y extracted with the YXZ convention; pitch and roll
    /// are the residual X/Z components.
    void to_euler_yxz(double& yaw, double& pitch, double& roll) const {
        // rotate basis vectors and read angles back
        Vec3 f = rotate({0, 0, 1});
        yaw = std::atan2(f.x, f.z);
        pitch = std::atan2(-f.y, std::sqrt(f.x * f.x + f.z * f.z));
        Rotation unyawed = (axis_angle({1, 0, 0}, pitch).inverse() *
                            axis_angle({0, 1, 0}, yaw).inverse()) * *this;
        Vec3 r = unyawed.rotate({1, 0, 0});
        roll = std::atan2(r.y, r.x);
    }
};

struct Transform {
    Vec3 translation{0, 0, 0};
    Rotation rotation{};
    Vec3 scale{1, 1, 1};

    static Transform identity() { return {}; }

    Vec3 apply(const Vec3& p) const {
        return rotation.rotate(p.cwise_mul(scale)) + translation;
    }

    Vec3 apply_inverse(const Vec3& p) const {
        return rotation.inverse().rotate(p - translation).cwise_div(scale);
    }

    /// Direction transform (no translation, no normalization).
    Vec3 apply_dir(const Vec3& d) const { return rotation.rotate(d.cwise_mul(scale)); }
    Vec3 apply_inverse_dir(const Vec3& d) const {
        return rotation.inverse().rotate(d).cwise_div(scale);
    }

    Transform compose(const Transform& child) const {
        // only valid for uniform or axis-aligned scale interaction; the
        // pipeline composes rigid parents with scaled leaves only
        Transform out;
        out.translation = apply(child.translation);
        out.rotation = rotation * child.rotation;
        out.scale = scale.cwise_mul(child.scale);
        return out;
    }
};

struct CameraModel {
    Vec3 position{0, 0, 0};
    Rotation rotation{};
    double focal_length = 18.0;  // mm
    double sensor_size = 36.0;   // mm, square sensor
    int image_width = 640;
    int image_height = 640;
    double near_plane = 0.01;  // m

    bool valid() const {
        return focal_length > 0 && sensor_size > 0 && image_width >= 1 &&
               image_height >= 1 && near_plane > 0;
    }
    /// Focal length expressed in pixels (square pixels, width-referenced).
    double focal_px() const {
        return focal_length / sensor_size * static_cast<double>(image_width);
    }
};

enum class PrimitiveKind { Box, Sphere, Cylinder, Capsule, Quad };

/// Unit-ish primitives in local space, sized by `dimensions`:
///   Box:      half-extents (x, y, z)
///   Sphere:   radius
///   Cylinder: radius, half-height (axis = local Y)
///   Capsule:  radius, cylinder half-height (axis = local Y)
///   Quad:     half-width, half-height (plane z = 0, normal +Z)
struct Primitive {
    PrimitiveKind kind = PrimitiveKind::Box;
    std::array<double, 3> dimensions{1.0, 1.0, 1.0};

    static Primitive box(double hx, double hy, double hz) {
        return {PrimitiveKind::Box, {hx, hy, hz}};
    }
    static Primitive sphere(double r) { return {PrimitiveKind::Sphere, {r, 0, 0}}; }
    static Primitive cylinder(double r, double hh) {
        return {PrimitiveKind::Cylinder, {r, hh, 0}};
    }
    static Primitive capsule(double r, double hh) {
        return {PrimitiveKind::Capsule, {r, hh, 0}};
    }
    static Primitive quad(double hw, double hh) {
        return {PrimitiveKind::Quad, {hw, hh, 0}};
    }
};

/// Field of view (degrees) of a square sensor behind a thin lens.
double fov_from_focal(double focal_length_mm, double sensor_size_mm);
double focal_from_fov(double fov_degrees, double sensor_size_mm);

struct Projection {
    double u = 0.0, v = 0.0;
    double depth = 0.0;  // distance along the camera forward axis, m
};

/// Pinhole projection. Returns nullopt when the point is at or behind
/// the near plane (callers treat it as invisible, not an error).
std::optional<Projection> project(const Vec3& world, const CameraModel& cam);

/// Inverse of project for a pixel position and camera-space depth.
Vec3 unproject(double u, double v, double depth, const CameraModel& cam);

/// Nearest positive ray-primitive intersection distance in world units.
/// `dir` must be unit length. Miss returns nullopt.
std::optional<double> ray_intersect(const Primitive& prim, const Transform& xf,
                                    const Vec3& origin, const Vec3& dir);

}  // namespace humansynth::geom
