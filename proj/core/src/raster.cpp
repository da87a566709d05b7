#include "humansynth/raster.hpp"

#include <algorithm>
#include <cmath>

namespace humansynth::label {

using geom::Primitive;
using geom::PrimitiveKind;
using geom::Rotation;
using geom::Transform;
using geom::Vec3;

FrameBuffers::FrameBuffers(int w, int h, bool with_rgb)
    : width(w),
      height(h),
      depth(static_cast<std::size_t>(w) * h, std::numeric_limits<float>::infinity()),
      instance_id(static_cast<std::size_t>(w) * h, 0),
      semantic_id(static_cast<std::size_t>(w) * h, 0) {
    if (with_rgb) rgb.assign(static_cast<std::size_t>(w) * h * 3, 0.0f);
}

namespace {

void emit_quad(std::vector<Triangle>& out, const Vec3& a, const Vec3& b, const Vec3& c,
               const Vec3& d) {
    out.push_back({a, b, c});
    out.push_back({a, c, d});
}

// lat-long sphere centered at `center`
void tessellate_sphere(std::vector<Triangle>& out, const Vec3& center, double r,
                       int slices, int stacks, double lat0 = -geom::kPi / 2,
                       double lat1 = geom::kPi / 2) {
    auto pt = [&](int i, int j) {
        double lat = lat0 + (lat1 - lat0) * j / stacks;
        double lon = 2.0 * geom::kPi * i / slices;
        return center + Vec3{r * std::cos(lat) * std::cos(lon), r * std::sin(lat),
                             r * std::cos(lat) * std::sin(lon)};
    };
    for (int j = 0; j < stacks; ++j)
        for (int i = 0; i < slices; ++i) {
            Vec3 p00 = pt(i, j), p10 = pt(i + 1, j), p11 = pt(i + 1, j + 1), p01 = pt(i, j + 1);
            out.push_back({p00, p10, p11});
            out.push_back({p00, p11, p01});
        }
}

void tessellate_side(std::vector<Triangle>& out, double r, double y0, double y1,
                     int slices) {
    for (int i = 0; i < slices; ++i) {
        double a0 = 2.0 * geom::kPi * i / slices;
        double a1 = 2.0 * geom::kPi * (i + 1) / slices;
        Vec3 b0{r * std::cos(a0), y0, r * std::sin(a0)};
        Vec3 b1{r * std::cos(a1), y0, r * std::sin(a1)};
        Vec3 t0{r * std::cos(a0), y1, r * std::sin(a0)};
        Vec3 t1{r * std::cos(a1), y1, r * std::sin(a1)};
        emit_quad(out, b0, b1, t1, t0);
    }
}

std::vector<Triangle> tessellate_local(const Primitive& prim, const TessellationSpec& spec) {
    std::vector<Triangle> out;
    switch (prim.kind) {
        case PrimitiveKind::Box: {
            double hx = prim.dimensions[0], hy = prim.dimensions[1], hz = prim.dimensions[2];
            Vec3 v[8];
            for (int i = 0; i < 8; ++i)
                v[i] = {(i & 1) ? hx : -hx, (i & 2) ? hy : -hy, (i & 4) ? hz : -hz};
            emit_quad(out, v[0], v[1], v[3], v[2]);  // -z
            emit_quad(out, v[4], v[6], v[7], v[5]);  // +z
            emit_quad(out, v[0], v[2], v[6], v[4]);  // -x
            emit_quad(out, v[1], v[5], v[7], v[3]);  // +x
            emit_quad(out, v[0], v[4], v[5], v[1]);  // -y
            emit_quad(out, v[2], v[3], v[7], v[6]);  // +y
            break;
        }
        case PrimitiveKind::Sphere:
            tessellate_sphere(out, {0, 0, 0}, prim.dimensions[0], spec.sphere_slices,
                              spec.sphere_stacks);
            break;
        case PrimitiveKind::Cylinder: {
            double r = prim.dimensions[0], hh = prim.dimensions[1];
            tessellate_side(out, r, -hh, hh, spec.cylinder_slices);
            for (int i = 0; i < spec.cylinder_slices; ++i) {
                double a0 = 2.0 * geom::kPi * i / spec.cylinder_slices;
                double a1 = 2.0 * geom::kPi * (i + 1) / spec.cylinder_slices;
                Vec3 c0{r * std::cos(a0), hh, r * std::sin(a0)};
                Vec3 c1{r * std::cos(a1), hh, r * std::sin(a1)};
                out.push_back({{0, hh, 0}, c0, c1});
                Vec3 d0{r * std::cos(a0), -hh, r * std::sin(a0)};
                Vec3 d1{r * std::cos(a1), -hh, r * std::sin(a1)};
                out.push_back({{0, -hh, 0}, d1, d0});
            }
            break;
        }
        case PrimitiveKind::Capsule: {
            double r = prim.dimensions[0], hh = prim.dimensions[1];
            tessellate_side(out, r, -hh, hh, spec.capsule_slices);
            tessellate_sphere(out, {0, hh, 0}, r, spec.capsule_slices,
                              spec.capsule_stacks / 2, 0, geom::kPi / 2);
            tessellate_sphere(out, {0, -hh, 0}, r, spec.capsule_slices,
                              spec.capsule_stacks / 2, -geom::kPi / 2, 0);
            break;
        }
        case PrimitiveKind::Quad: {
            double hw = prim.dimensions[0], hh = prim.dimensions[1];
            emit_quad(out, {-hw, -hh, 0}, {hw, -hh, 0}, {hw, hh, 0}, {-hw, hh, 0});
            break;
        }
    }
    return out;
}

}  // namespace

std::vector<Triangle> tessellate(const Primitive& prim, const Transform& xf,
                                 const TessellationSpec& spec) {
    std::vector<Triangle> tris = tessellate_local(prim, spec);
    for (Triangle& t : tris) {
        t.a = xf.apply(t.a);
        t.b = xf.apply(t.b);
        t.c = xf.apply(t.c);
    }
    return tris;
}

std::vector<ShadedTriangleList> scene_triangles(const scene::SceneSpec& spec,
                                                const scene::SceneContext& ctx,
                                                const TessellationSpec& tess) {
    std::vector<ShadedTriangleList> batches;

    ShadedTriangleList wall;
    wall.triangles = tessellate(spec.wall.primitive, spec.wall.transform, tess);
    wall.instance = 0;
    wall.semantic = 0;
    wall.texture_id = spec.wall.texture_id;
    wall.hue_offset = spec.wall.hue_offset;
    batches.push_back(std::move(wall));

    for (const scene::SceneHuman& h : spec.humans) {
        ShadedTriangleList batch;
        batch.instance = h.instance_id;
        batch.semantic = 1;
        batch.texture_id = h.texture_id;
        batch.hue_offset = h.hue_offset;
        const human::HumanAsset& asset = ctx.assets[h.asset_index];
        for (const human::BodyCapsule& cap :
             human::body_primitives(asset, h.pose, h.transform)) {
            auto tris = tessellate(cap.primitive, cap.transform, tess);
            batch.triangles.insert(batch.triangles.end(), tris.begin(), tris.end());
        }
        batches.push_back(std::move(batch));
    }
    for (const scene::SceneObject& o : spec.objects) {
        ShadedTriangleList batch;
        batch.instance = o.instance_id;
        batch.semantic = 2;
        batch.texture_id = o.texture_id;
        batch.hue_offset = o.hue_offset;
        batch.triangles = tessellate(o.primitive, o.transform, tess);
        batches.push_back(std::move(batch));
    }
    return batches;
}

namespace {

struct CamVertex {
    Vec3 p;  // camera space
};

Vec3 hue_to_rgb(double hue_degrees, double sat, double val) {
    double h = std::fmod(std::fmod(hue_degrees, 360.0) + 360.0, 360.0) / 60.0;
    double c = val * sat;
    double x = c * (1.0 - std::abs(std::fmod(h, 2.0) - 1.0));
    double m = val - c;
    double r = 0, g = 0, b = 0;
    if (h < 1) { r = c; g = x; }
    else if (h < 2) { r = x; g = c; }
    else if (h < 3) { g = c; b = x; }
    else if (h < 4) { g = x; b = c; }
    else if (h < 5) { r = x; b = c; }
    else { r = c; b = x; }
    return {r + m, g + m, b + m};
}

double lambert(const Vec3& normal, const Vec3& point, const scene::SceneSpec& spec) {
    double light = 0.15;  // ambient floor
    for (const scene::Light& l : spec.lights) {
        if (!l.enabled || l.intensity <= 0) continue;
        double mono = (l.color[0] + l.color[1] + l.color[2]) / 3.0;
        if (l.kind == scene::Light::Kind::Directional) {
            light += l.intensity * mono * std::abs(normal.dot(-l.direction));
        } else {
            Vec3 d = l.position - point;
            double dist2 = d.norm2();
            if (dist2 < 1e-6) continue;
            double atten = 1.0 / (1.0 + 0.05 * dist2);
            light += l.intensity * mono * atten * std::abs(normal.dot(d / std::sqrt(dist2)));
        }
    }
    return std::min(light, 1.6);
}

}  // namespace

FrameBuffers rasterize_triangles(const std::vector<ShadedTriangleList>& batches,
                                 const scene::SceneSpec& spec, bool shade) {
    const geom::CameraModel& cam = spec.camera;
    FrameBuffers fb(cam.image_width, cam.image_height, shade);
    const double f = cam.focal_px();
    const double cx = cam.image_width * 0.5;
    const double cy = cam.image_height * 0.5;
    const Rotation cam_inv = cam.rotation.inverse();
    const double znear = cam.near_plane;

    auto to_cam = [&](const Vec3& w) { return cam_inv.rotate(w - cam.position); };

    std::size_t tri_counter = 0;
    for (const ShadedTriangleList& batch : batches) {
        for (const Triangle& tri : batch.triangles) {
            ++tri_counter;
            Vec3 c0 = to_cam(tri.a), c1 = to_cam(tri.b), c2 = to_cam(tri.c);

            // near-plane clip: keep the part with z > znear
            Vec3 poly[4];
            int n = 0;
            const Vec3 in[3] = {c0, c1, c2};
            for (int i = 0; i < 3; ++i) {
                const Vec3& a = in[i];
                const Vec3& b = in[(i + 1) % 3];
                bool ain = a.z > znear, bin = b.z > znear;
                if (ain) poly[n++] = a;
                if (ain != bin) {
                    double t = (znear - a.z) / (b.z - a.z);
                    poly[n++] = a + t * (b - a);
                }
            }
            if (n < 3) continue;

            // shade once per source triangle (flat)
            float col[3] = {0, 0, 0};
            if (shade) {
                Vec3 normal = (tri.b - tri.a).cross(tri.c - tri.a);
                double nn = normal.norm();
                if (nn > 1e-15) normal = normal / nn;
                Vec3 centroid = (tri.a + tri.b + tri.c) / 3.0;
                double light = lambert(normal, centroid, spec);
                // procedural texture: hashed per-triangle shade steps
                std::uint64_t hash =
                    (tri_counter * 0x9E3779B97F4A7C15ull) ^
                    (static_cast<std::uint64_t>(batch.texture_id) << 32);
                double texture = 0.75 + 0.25 * ((hash >> 7) % 256) / 255.0;
                double base_hue = batch.texture_id * 45.0 + batch.hue_offset;
                Vec3 rgbv = hue_to_rgb(base_hue, 0.55, 0.85) * light * texture;
                col[0] = static_cast<float>(rgbv.x);
                col[1] = static_cast<float>(rgbv.y);
                col[2] = static_cast<float>(rgbv.z);
            }

            // fan triangulation of the clipped polygon
            for (int k = 2; k < n; ++k) {
                const Vec3 v0 = poly[0], v1 = poly[k - 1], v2 = poly[k];
                double u0 = cx + v0.x / v0.z * f, s0 = cy - v0.y / v0.z * f;
                double u1 = cx + v1.x / v1.z * f, s1 = cy - v1.y / v1.z * f;
                double u2 = cx + v2.x / v2.z * f, s2 = cy - v2.y / v2.z * f;

                double area = (u1 - u0) * (s2 - s0) - (u2 - u0) * (s1 - s0);
                if (std::abs(area) < 1e-12) continue;

                int minx = std::max(0, static_cast<int>(std::floor(std::min({u0, u1, u2}) - 0.5)));
                int maxx = std::min(fb.width - 1,
                                    static_cast<int>(std::ceil(std::max({u0, u1, u2}) + 0.5)));
                int miny = std::max(0, static_cast<int>(std::floor(std::min({s0, s1, s2}) - 0.5)));
                int maxy = std::min(fb.height - 1,
                                    static_cast<int>(std::ceil(std::max({s0, s1, s2}) + 0.5)));
                if (minx > maxx || miny > maxy) continue;

                double iz0 = 1.0 / v0.z, iz1 = 1.0 / v1.z, iz2 = 1.0 / v2.z;
                double inv_area = 1.0 / area;
                for (int y = miny; y <= maxy; ++y) {
                    double py = y + 0.5;
                    for (int x = minx; x <= maxx; ++x) {
                        double px = x + 0.5;
                        double w0 = ((u1 - px) * (s2 - py) - (u2 - px) * (s1 - py)) * inv_area;
                        double w1 = ((u2 - px) * (s0 - py) - (u0 - px) * (s2 - py)) * inv_area;
                        double w2 = 1.0 - w0 - w1;
                        if (w0 < 0 || w1 < 0 || w2 < 0) continue;
                        double iz = w0 * iz0 + w1 * iz1 + w2 * iz2;
                        float z = static_cast<float>(1.0 / iz);
                        std::size_t idx = fb.index(x, y);
                        if (z < fb.depth[idx]) {
                            fb.depth[idx] = z;
                            fb.instance_id[idx] = batch.instance;
                            fb.semantic_id[idx] = batch.semantic;
                            if (shade) {
                                fb.rgb[idx * 3] = col[0];
                                fb.rgb[idx * 3 + 1] = col[1];
                                fb.rgb[idx * 3 + 2] = col[2];
                            }
                        }
                    }
                }
            }
        }
    }
    return fb;
}

FrameBuffers rasterize(const scene::SceneSpec& spec, const scene::SceneContext& ctx,
                       bool shade, const TessellationSpec& tess) {
    return rasterize_triangles(scene_triangles(spec, ctx, tess), spec, shade);
}

void post_process(FrameBuffers& fb, const scene::PostParams& p) {
    if (fb.rgb.empty() || p.neutral()) return;
    const double gain = std::exp2(p.exposure);
    const double wb_r = 1.0 + p.white_balance_temp;
    const double wb_b = 1.0 - p.white_balance_temp;
    const double cx = fb.width * 0.5, cy = fb.height * 0.5;
    const double half_diag2 = cx * cx + cy * cy;
    for (int y = 0; y < fb.height; ++y) {
        for (int x = 0; x < fb.width; ++x) {
            std::size_t i = fb.index(x, y) * 3;
            double r = fb.rgb[i] * gain * wb_r;
            double g = fb.rgb[i + 1] * gain;
            double b = fb.rgb[i + 2] * gain * wb_b;
            r = (r - 0.5) * p.contrast + 0.5;
            g = (g - 0.5) * p.contrast + 0.5;
            b = (b - 0.5) * p.contrast + 0.5;
            double luma = 0.299 * r + 0.587 * g + 0.114 * b;
            r = luma + (r - luma) * p.saturation;
            g = luma + (g - luma) * p.saturation;
            b = luma + (b - luma) * p.saturation;
            double dx = (x + 0.5 - cx), dy = (y + 0.5 - cy);
            double falloff = 1.0 - p.vignette_strength * (dx * dx + dy * dy) / half_diag2;
            r *= falloff;
            g *= falloff;
            b *= falloff;
            fb.rgb[i] = static_cast<float>(std::clamp(r, 0.0, 1.0));
            fb.rgb[i + 1] = static_cast<float>(std::clamp(g, 0.0, 1.0));
            fb.rgb[i + 2] = static_cast<float>(std::clamp(b, 0.0, 1.0));
        }
    }
}

}  // namespace humansynth::label
