#include <doctest.h>

#include <array>
#include <cmath>

#include "humansynth/geometry.hpp"
#include "humansynth/rng.hpp"

using namespace humansynth;
using geom::CameraModel;
using geom::Primitive;
using geom::Rotation;
using geom::Transform;
using geom::Vec3;

namespace {

// plain 4x4 row-major projective pipeline used as an independent oracle
struct Mat4 {
    std::array<double, 16> m{};

    static Mat4 identity() {
        Mat4 out;
        for (int i = 0; i < 4; ++i) out.m[i * 4 + i] = 1.0;
        return out;
    }
    Mat4 operator*(const Mat4& o) const {
        Mat4 out;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                double s = 0;
                for (int k = 0; k < 4; ++k) s += m[r * 4 + k] * o.m[k * 4 + c];
                out.m[r * 4 + c] = s;
            }
        return out;
    }
    std::array<double, 4> apply(const std::array<double, 4>& v) const {
        std::array<double, 4> out{};
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) out[r] += m[r * 4 + c] * v[c];
        return out;
    }
    static Mat4 from_rotation(const Rotation& q) {
        Mat4 out = identity();
        Vec3 cols[3] = {q.rotate({1, 0, 0}), q.rotate({0, 1, 0}), q.rotate({0, 0, 1})};
        for (int c = 0; c < 3; ++c) {
            out.m[0 * 4 + c] = (&cols[c].x)[0];
            out.m[1 * 4 + c] = (&cols[c].x)[1];
            out.m[2 * 4 + c] = (&cols[c].x)[2];
        }
        return out;
    }
    static Mat4 translation(const Vec3& t) {
        Mat4 out = identity();
        out.m[3] = t.x;
        out.m[7] = t.y;
        out.m[11] = t.z;
        return out;
    }
};

Vec3 random_unit(rng::RngStream& s) {
    for (;;) {
        Vec3 v{s.uniform({-1, 1}), s.uniform({-1, 1}), s.uniform({-1, 1})};
        double n = v.norm();
        if (n > 1e-3 && n <= 1.0) return v / n;
    }
}

Rotation random_rotation(rng::RngStream& s) {
    return Rotation::axis_angle(random_unit(s), s.uniform({-geom::kPi, geom::kPi}));
}

}  // namespace

TEST_CASE("field of view from focal length") {
    CHECK(geom::fov_from_focal(18.0, 36.0) == doctest::Approx(90.0).epsilon(1e-12));
    // 36 mm lens on the 36 mm sensor: 2*atan(1/2)
    CHECK(geom::fov_from_focal(36.0, 36.0) ==
          doctest::Approx(geom::rad_to_deg(2.0 * std::atan(0.5))).epsilon(1e-12));
    CHECK(geom::fov_from_focal(36.0, 36.0) == doctest::Approx(53.130102354156).epsilon(1e-9));

    // round trip and monotonicity: longer lens, narrower view
    for (double f : {10.0, 18.0, 27.5, 36.0, 60.0, 135.0}) {
        double fov = geom::fov_from_focal(f, 36.0);
        CHECK(geom::focal_from_fov(fov, 36.0) == doctest::Approx(f).epsilon(1e-12));
    }
    double prev = 1e9;
    for (double f = 10.0; f <= 100.0; f += 2.5) {
        double fov = geom::fov_from_focal(f, 36.0);
        CHECK(fov < prev);
        prev = fov;
    }
    CHECK_THROWS_AS(geom::fov_from_focal(0.0, 36.0), std::invalid_argument);
    CHECK_THROWS_AS(geom::fov_from_focal(18.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(geom::focal_from_fov(180.0, 36.0), std::invalid_argument);
}

TEST_CASE("projection of axis points") {
    CameraModel cam;  // 18/36 lens, 640x640 -> focal_px = 320
    CHECK(cam.focal_px() == doctest::Approx(320.0));

    auto center = geom::project({0, 0, 5}, cam);
    REQUIRE(center.has_value());
    CHECK(center->u == doctest::Approx(320.0).epsilon(1e-12));
    CHECK(center->v == doctest::Approx(320.0).epsilon(1e-12));
    CHECK(center->depth == doctest::Approx(5.0));

    // +X goes right, +Y goes up (decreasing v)
    auto right = geom::project({1, 0, 2}, cam);
    REQUIRE(right.has_value());
    CHECK(right->u == doctest::Approx(320.0 + 160.0).epsilon(1e-12));
    auto up = geom::project({0, 1, 2}, cam);
    REQUIRE(up.has_value());
    CHECK(up->v == doctest::Approx(320.0 - 160.0).epsilon(1e-12));

    CHECK_FALSE(geom::project({0, 0, 0.005}, cam).has_value());
    CHECK_FALSE(geom::project({0, 0, -3}, cam).has_value());
}

TEST_CASE("projection agrees with a homogeneous matrix pipeline") {
    rng::RngStream s(101, 0, "matrix_oracle");
    for (int trial = 0; trial < 500; ++trial) {
        CameraModel cam;
        cam.position = {s.uniform({-4, 4}), s.uniform({-4, 4}), s.uniform({-4, 4})};
        cam.rotation = random_rotation(s);
        cam.focal_length = s.uniform({18, 60});
        cam.image_width = 640;
        cam.image_height = 480;

        // world -> camera as an inverse rigid matrix
        Mat4 view = Mat4::from_rotation(cam.rotation.inverse()) *
                    Mat4::translation(-cam.position);
        Vec3 p{s.uniform({-8, 8}), s.uniform({-8, 8}), s.uniform({-8, 8})};
        auto local = view.apply({p.x, p.y, p.z, 1.0});

        auto proj = geom::project(p, cam);
        if (local[2] <= cam.near_plane) {
            CHECK_FALSE(proj.has_value());
            continue;
        }
        REQUIRE(proj.has_value());
        double f = cam.focal_px();
        double u = cam.image_width * 0.5 + local[0] / local[2] * f;
        double v = cam.image_height * 0.5 - local[1] / local[2] * f;
        CHECK(proj->u == doctest::Approx(u).epsilon(1e-9));
        CHECK(proj->v == doctest::Approx(v).epsilon(1e-9));
        CHECK(proj->depth == doctest::Approx(local[2]).epsilon(1e-9));
    }
}

TEST_CASE("unproject inverts project") {
    rng::RngStream s(102, 0, "unproject");
    for (int trial = 0; trial < 500; ++trial) {
        CameraModel cam;
        cam.position = {s.uniform({-4, 4}), s.uniform({-4, 4}), s.uniform({-4, 4})};
        cam.rotation = random_rotation(s);
        cam.focal_length = s.uniform({18, 60});
        Vec3 p{s.uniform({-6, 6}), s.uniform({-6, 6}), s.uniform({-6, 6})};
        auto proj = geom::project(p, cam);
        if (!proj) continue;
        Vec3 back = geom::unproject(proj->u, proj->v, proj->depth, cam);
        CHECK((back - p).norm() < 1e-6);
    }
}

TEST_CASE("rotation composition stays unit and associative") {
    rng::RngStream s(103, 0, "rotations");
    for (int trial = 0; trial < 200; ++trial) {
        Rotation a = random_rotation(s), b = random_rotation(s), c = random_rotation(s);
        Rotation ab_c = (a * b) * c;
        Rotation a_bc = a * (b * c);
        double n = std::sqrt(ab_c.w * ab_c.w + ab_c.x * ab_c.x + ab_c.y * ab_c.y +
                             ab_c.z * ab_c.z);
        CHECK(n == doctest::Approx(1.0).epsilon(1e-9));
        Vec3 v = random_unit(s);
        CHECK((ab_c.rotate(v) - a_bc.rotate(v)).norm() < 1e-9);
        // inverse undoes
        CHECK((a.inverse().rotate(a.rotate(v)) - v).norm() < 1e-9);
    }
}

TEST_CASE("euler yaw/pitch/roll round trip") {
    rng::RngStream s(104, 0, "euler");
    for (int trial = 0; trial < 300; ++trial) {
        double yaw = s.uniform({-3, 3});
        double pitch = s.uniform({-1.4, 1.4});
        double roll = s.uniform({-3, 3});
        Rotation r = Rotation::from_euler_yxz(yaw, pitch, roll);
        double y2, p2, r2;
        r.to_euler_yxz(y2, p2, r2);
        Rotation back = Rotation::from_euler_yxz(y2, p2, r2);
        Vec3 v = random_unit(s);
        CHECK((r.rotate(v) - back.rotate(v)).norm() < 1e-9);
    }
}

TEST_CASE("transform inverse and composition") {
    rng::RngStream s(105, 0, "transforms");
    for (int trial = 0; trial < 200; ++trial) {
        Transform t;
        t.translation = {s.uniform({-5, 5}), s.uniform({-5, 5}), s.uniform({-5, 5})};
        t.rotation = random_rotation(s);
        double u = s.uniform({0.2, 3.0});
        t.scale = {u, u, u};
        Vec3 p{s.uniform({-2, 2}), s.uniform({-2, 2}), s.uniform({-2, 2})};
        CHECK((t.apply_inverse(t.apply(p)) - p).norm() < 1e-9);

        // rigid parent composed with a scaled child
        Transform parent;
        parent.translation = {s.uniform({-5, 5}), s.uniform({-5, 5}), s.uniform({-5, 5})};
        parent.rotation = random_rotation(s);
        Transform combined = parent.compose(t);
        CHECK((combined.apply(p) - parent.apply(t.apply(p))).norm() < 1e-9);
    }
}

TEST_CASE("ray intersections with hand-computed distances") {
    Vec3 origin{0, 0, -2};
    Vec3 dir{0, 0, 1};

    Transform at_origin;
    auto sphere = geom::ray_intersect(Primitive::sphere(1.0), at_origin, origin, dir);
    REQUIRE(sphere.has_value());
    CHECK(*sphere == doctest::Approx(1.0).epsilon(1e-12));

    auto box = geom::ray_intersect(Primitive::box(0.5, 0.5, 0.5), at_origin, origin, dir);
    REQUIRE(box.has_value());
    CHECK(*box == doctest::Approx(1.5).epsilon(1e-12));

    // capsule seen from the side: first contact at distance d - r
    auto capsule = geom::ray_intersect(Primitive::capsule(0.3, 0.5), at_origin,
                                       Vec3{2, 0, 0}, Vec3{-1, 0, 0});
    REQUIRE(capsule.has_value());
    CHECK(*capsule == doctest::Approx(1.7).epsilon(1e-12));

    // capsule end cap along the axis: hh + r above the center
    auto cap_end = geom::ray_intersect(Primitive::capsule(0.3, 0.5), at_origin,
                                       Vec3{0, 3, 0}, Vec3{0, -1, 0});
    REQUIRE(cap_end.has_value());
    CHECK(*cap_end == doctest::Approx(3.0 - 0.8).epsilon(1e-12));

    auto cyl = geom::ray_intersect(Primitive::cylinder(0.4, 0.6), at_origin,
                                   Vec3{-3, 0.1, 0}, Vec3{1, 0, 0});
    REQUIRE(cyl.has_value());
    CHECK(*cyl == doctest::Approx(3.0 - 0.4).epsilon(1e-12));

    auto quad = geom::ray_intersect(Primitive::quad(1.0, 1.0), at_origin, origin, dir);
    REQUIRE(quad.has_value());
    CHECK(*quad == doctest::Approx(2.0).epsilon(1e-12));
    // outside the quad bounds: miss
    CHECK_FALSE(geom::ray_intersect(Primitive::quad(1.0, 1.0), at_origin,
                                    Vec3{1.5, 0, -2}, dir)
                    .has_value());

    // misses
    CHECK_FALSE(geom::ray_intersect(Primitive::sphere(1.0), at_origin, Vec3{0, 5, -2}, dir)
                    .has_value());
    CHECK_FALSE(
        geom::ray_intersect(Primitive::sphere(1.0), at_origin, origin, Vec3{0, 0, -1})
            .has_value());
}

TEST_CASE("translated and scaled sphere intersection") {
    Transform xf;
    xf.translation = {10, 0, 0};
    xf.scale = {2, 2, 2};
    auto t = geom::ray_intersect(Primitive::sphere(1.0), xf, Vec3{0, 0, 0}, Vec3{1, 0, 0});
    REQUIRE(t.has_value());
    CHECK(*t == doctest::Approx(8.0).epsilon(1e-12));

    // anisotropic scale turns the sphere into an ellipsoid
    Transform squash;
    squash.translation = {0, 0, 5};
    squash.scale = {1, 1, 0.5};
    auto tz = geom::ray_intersect(Primitive::sphere(1.0), squash, Vec3{0, 0, 0},
                                  Vec3{0, 0, 1});
    REQUIRE(tz.has_value());
    CHECK(*tz == doctest::Approx(4.5).epsilon(1e-12));
}

TEST_CASE("ray hit points lie on the primitive surface") {
    rng::RngStream s(106, 0, "surface_property");
    const Primitive prims[] = {Primitive::sphere(0.7), Primitive::box(0.5, 0.8, 0.3),
                               Primitive::cylinder(0.4, 0.6), Primitive::capsule(0.3, 0.5),
                               Primitive::quad(0.9, 0.6)};
    int hits = 0;
    for (int trial = 0; trial < 4000; ++trial) {
        const Primitive& prim = prims[trial % 5];
        Transform xf;
        xf.translation = {s.uniform({-1, 1}), s.uniform({-1, 1}), s.uniform({-1, 1})};
        xf.rotation = random_rotation(s);
        double u = s.uniform({0.5, 2.0});
        xf.scale = {u, u, u};

        Vec3 origin = random_unit(s) * 6.0;
        Vec3 dir = (xf.translation + random_unit(s) * 0.3 - origin).normalized();
        auto t = geom::ray_intersect(prim, xf, origin, dir);
        if (!t) continue;
        ++hits;
        Vec3 p = xf.apply_inverse(origin + dir * *t);  // local-space hit
        const auto& d = prim.dimensions;
        double surface_err = 0;
        switch (prim.kind) {
            case geom::PrimitiveKind::Sphere:
                surface_err = std::abs(p.norm() - d[0]);
                break;
            case geom::PrimitiveKind::Box: {
                double m = std::max({std::abs(p.x) / d[0], std::abs(p.y) / d[1],
                                     std::abs(p.z) / d[2]});
                surface_err = std::abs(m - 1.0);
                CHECK(std::abs(p.x) <= d[0] * (1 + 1e-9));
                CHECK(std::abs(p.y) <= d[1] * (1 + 1e-9));
                CHECK(std::abs(p.z) <= d[2] * (1 + 1e-9));
                break;
            }
            case geom::PrimitiveKind::Cylinder: {
                double radial = std::hypot(p.x, p.z);
                if (std::abs(p.y) < d[1] - 1e-9)
                    surface_err = std::abs(radial - d[0]);
                else
                    surface_err = std::min(std::abs(radial - d[0]),
                                           std::abs(std::abs(p.y) - d[1]));
                CHECK(std::abs(p.y) <= d[1] + 1e-9);
                break;
            }
            case geom::PrimitiveKind::Capsule: {
                double cy = std::clamp(p.y, -d[1], d[1]);
                double seg_dist = std::sqrt(p.x * p.x + (p.y - cy) * (p.y - cy) + p.z * p.z);
                surface_err = std::abs(seg_dist - d[0]);
                break;
            }
            case geom::PrimitiveKind::Quad:
                surface_err = std::abs(p.z);
                CHECK(std::abs(p.x) <= d[0] + 1e-9);
                CHECK(std::abs(p.y) <= d[1] + 1e-9);
                break;
        }
        CHECK(surface_err < 1e-7);
    }
    CHECK(hits > 1000);  // the aimed rays must actually exercise the surfaces
}
