#include "humansynth/annotate.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace humansynth::label {

using geom::CameraModel;
using geom::Vec3;

KeypointLabel classify_keypoint(const Vec3& kp_world, int kp_instance,
                                const FrameBuffers& fb, const CameraModel& cam,
                                double self_occlusion_distance,
                                bool self_occlusion_enabled) {
    auto proj = geom::project(kp_world, cam);
    if (!proj) return {0, 0, 0};
    int px = static_cast<int>(std::floor(proj->u));
    int py = static_cast<int>(std::floor(proj->v));
    if (px < 0 || px >= fb.width || py < 0 || py >= fb.height) return {0, 0, 0};

    KeypointLabel out{proj->u, proj->v, 2};
    std::size_t idx = fb.index(px, py);
    float surface = fb.depth[idx];
    if (!std::isfinite(surface)) return out;  // keypoint past the silhouette edge

    if (fb.instance_id[idx] == kp_instance) {
        if (self_occlusion_enabled &&
            proj->depth - surface > self_occlusion_distance)
            out.state = 1;
    } else {
        // relative epsilon absorbs rasterization depth quantization
        if (proj->depth > surface + 1e-4 * surface) out.state = 1;
    }
    return out;
}

std::optional<coco::BBox> extract_bbox(const FrameBuffers& fb, int instance_id) {
    int minx = fb.width, maxx = -1, miny = fb.height, maxy = -1;
    for (int y = 0; y < fb.height; ++y)
        for (int x = 0; x < fb.width; ++x)
            if (fb.instance_id[fb.index(x, y)] == instance_id) {
                minx = std::min(minx, x);
                maxx = std::max(maxx, x);
                miny = std::min(miny, y);
                maxy = std::max(maxy, y);
            }
    if (maxx < 0) return std::nullopt;
    return coco::BBox{static_cast<double>(minx), static_cast<double>(miny),
                      static_cast<double>(maxx - minx + 1),
                      static_cast<double>(maxy - miny + 1)};
}

namespace {

struct InstanceMask {
    std::vector<std::uint8_t> bitmap;
    int minx, maxx, miny, maxy;
    std::uint64_t area = 0;
};

std::unordered_map<int, InstanceMask> collect_masks(const FrameBuffers& fb) {
    std::unordered_map<int, InstanceMask> masks;
    for (int y = 0; y < fb.height; ++y)
        for (int x = 0; x < fb.width; ++x) {
            int id = fb.instance_id[fb.index(x, y)];
            if (id == 0) continue;
            auto [it, fresh] = masks.try_emplace(id);
            InstanceMask& m = it->second;
            if (fresh) {
                m.bitmap.assign(static_cast<std::size_t>(fb.width) * fb.height, 0);
                m.minx = fb.width;
                m.maxx = -1;
                m.miny = fb.height;
                m.maxy = -1;
            }
            m.bitmap[fb.index(x, y)] = 1;
            ++m.area;
            m.minx = std::min(m.minx, x);
            m.maxx = std::max(m.maxx, x);
            m.miny = std::min(m.miny, y);
            m.maxy = std::max(m.maxy, y);
        }
    return masks;
}

struct ProjectedBounds {
    double minu = 0, maxu = 0, minv = 0, maxv = 0;
    bool any = false;

    void add(double u, double v) {
        if (!any) {
            minu = maxu = u;
            minv = maxv = v;
            any = true;
        } else {
            minu = std::min(minu, u);
            maxu = std::max(maxu, u);
            minv = std::min(minv, v);
            maxv = std::max(maxv, v);
        }
    }
    void add_disc(const geom::Projection& p, double radius_world, double f) {
        double r_px = radius_world * f / p.depth;
        add(p.u - r_px, p.v - r_px);
        add(p.u + r_px, p.v + r_px);
    }
};

coco::BBox clamp_bounds(const ProjectedBounds& b, int w, int h) {
    double x0 = std::clamp(b.minu, 0.0, static_cast<double>(w));
    double x1 = std::clamp(b.maxu, 0.0, static_cast<double>(w));
    double y0 = std::clamp(b.minv, 0.0, static_cast<double>(h));
    double y1 = std::clamp(b.maxv, 0.0, static_cast<double>(h));
    return {x0, y0, std::max(0.0, x1 - x0), std::max(0.0, y1 - y0)};
}

std::vector<std::array<double, 3>> corners_of(const Vec3& lo, const Vec3& hi,
                                              const geom::Transform& xf) {
    std::vector<std::array<double, 3>> out;
    for (int i = 0; i < 8; ++i) {
        Vec3 local{(i & 1) ? hi.x : lo.x, (i & 2) ? hi.y : lo.y, (i & 4) ? hi.z : lo.z};
        Vec3 w = xf.apply(local);
        out.push_back({w.x, w.y, w.z});
    }
    return out;
}

}  // namespace

std::vector<AnnotationRecord> annotate_frame(const scene::SceneSpec& spec,
                                             const scene::SceneContext& ctx,
                                             const FrameBuffers& fb,
                                             LabelingScheme scheme,
                                             bool self_occlusion_enabled) {
    auto masks = collect_masks(fb);
    const double f = spec.camera.focal_px();
    std::vector<AnnotationRecord> out;

    auto make_record = [&](int instance_id, const std::string& category,
                           const ProjectedBounds& bounds,
                           std::vector<std::array<double, 3>> bbox3d)
        -> std::optional<AnnotationRecord> {
        auto it = masks.find(instance_id);
        bool visible = it != masks.end();
        coco::BBox projected = clamp_bounds(bounds, fb.width, fb.height);
        bool projects = bounds.any && projected.w > 0 && projected.h > 0;

        bool include = false;
        switch (scheme) {
            case LabelingScheme::VisibleOnly: include = visible; break;
            case LabelingScheme::VisibleAndOccluded: include = visible || projects; break;
            case LabelingScheme::AllObjects: include = true; break;
        }
        if (!include) return std::nullopt;

        AnnotationRecord rec;
        rec.instance_id = instance_id;
        rec.category = category;
        rec.bbox3d = std::move(bbox3d);
        if (visible) {
            const InstanceMask& m = it->second;
            rec.bbox = {static_cast<double>(m.minx), static_cast<double>(m.miny),
                        static_cast<double>(m.maxx - m.minx + 1),
                        static_cast<double>(m.maxy - m.miny + 1)};
            rec.area = static_cast<double>(m.area);
            rec.mask = coco::rle_encode(m.bitmap, fb.height, fb.width);
        } else {
            rec.bbox = projected;  // projected-geometry fallback
            rec.area = 0.0;
            rec.mask = coco::rle_encode(
                std::vector<std::uint8_t>(static_cast<std::size_t>(fb.width) * fb.height, 0),
                fb.height, fb.width);
        }
        return rec;
    };

    for (const scene::SceneHuman& h : spec.humans) {
        const human::HumanAsset& asset = ctx.assets[h.asset_index];
        auto joints = human::forward_kinematics(asset, h.pose, h.transform);

        ProjectedBounds bounds;
        Vec3 lo{0, 0, 0}, hi{0, 0, 0};
        bool first = true;
        for (const human::BodyCapsule& cap :
             human::body_primitives(asset, h.pose, h.transform)) {
            double hh = cap.primitive.dimensions[1];
            double r = cap.primitive.dimensions[0];
            for (double sign : {-1.0, 1.0}) {
                Vec3 end = cap.transform.apply({0, sign * hh, 0});
                if (auto p = geom::project(end, spec.camera)) bounds.add_disc(*p, r, f);
                Vec3 local = h.transform.apply_inverse(end);
                Vec3 ext{r / h.transform.scale.x, r / h.transform.scale.x,
                         r / h.transform.scale.x};
                if (first) {
                    lo = local - ext;
                    hi = local + ext;
                    first = false;
                } else {
                    lo = {std::min(lo.x, local.x - ext.x), std::min(lo.y, local.y - ext.y),
                          std::min(lo.z, local.z - ext.z)};
                    hi = {std::max(hi.x, local.x + ext.x), std::max(hi.y, local.y + ext.y),
                          std::max(hi.z, local.z + ext.z)};
                }
            }
        }
        auto rec = make_record(h.instance_id, "person", bounds,
                               corners_of(lo, hi, h.transform));
        if (!rec) continue;

        rec->keypoints.reserve(17);
        int labeled = 0;
        for (const std::string& name : human::coco_keypoint_names()) {
            KeypointLabel kl =
                classify_keypoint(joints.at(name), h.instance_id, fb, spec.camera,
                                  asset.occlusion_distance_for(name) * asset.height_scale *
                                      h.transform.scale.x,
                                  self_occlusion_enabled);
            if (scheme == LabelingScheme::VisibleAndOccluded && kl.state == 1)
                kl.state = 2;  // occluded keypoints reported as visible
            if (kl.state > 0) ++labeled;
            rec->keypoints.push_back(kl);
        }
        rec->num_keypoints = labeled;
        out.push_back(std::move(*rec));
    }

    for (const scene::SceneObject& o : spec.objects) {
        Vec3 lo, hi;
        const auto& d = o.primitive.dimensions;
        switch (o.primitive.kind) {
            case geom::PrimitiveKind::Box: lo = {-d[0], -d[1], -d[2]}; hi = {d[0], d[1], d[2]}; break;
            case geom::PrimitiveKind::Sphere: lo = {-d[0], -d[0], -d[0]}; hi = {d[0], d[0], d[0]}; break;
            case geom::PrimitiveKind::Cylinder:
            case geom::PrimitiveKind::Capsule: {
                double r = d[0];
                double hy = o.primitive.kind == geom::PrimitiveKind::Capsule ? d[1] + r : d[1];
                lo = {-r, -hy, -r};
                hi = {r, hy, r};
                break;
            }
            case geom::PrimitiveKind::Quad: lo = {-d[0], -d[1], 0}; hi = {d[0], d[1], 0}; break;
        }
        ProjectedBounds bounds;
        auto corners = corners_of(lo, hi, o.transform);
        for (const auto& c : corners)
            if (auto p = geom::project({c[0], c[1], c[2]}, spec.camera)) bounds.add(p->u, p->v);
        auto rec = make_record(o.instance_id, "occluder", bounds, std::move(corners));
        if (rec) out.push_back(std::move(*rec));
    }
    return out;
}

}  // namespace humansynth::label
