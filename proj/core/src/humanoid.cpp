#include "humansynth/humanoid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace humansynth::human {

using geom::Rotation;
using geom::Transform;
using geom::Vec3;

const std::vector<std::string>& coco_keypoint_names() {
    static const std::vector<std::string> names = {
        "nose",          "left_eye",      "right_eye",  "left_ear",    "right_ear",
        "left_shoulder", "right_shoulder", "left_elbow", "right_elbow", "left_wrist",
        "right_wrist",   "left_hip",      "right_hip",  "left_knee",   "right_knee",
        "left_ankle",    "right_ankle"};
    return names;
}

const std::vector<std::pair<int, int>>& coco_skeleton_edges() {
    static const std::vector<std::pair<int, int>> edges = {
        {16, 14}, {14, 12}, {17, 15}, {15, 13}, {12, 13}, {6, 12}, {7, 13},
        {6, 7},   {6, 8},   {7, 9},   {8, 10},  {9, 11},  {2, 3},  {1, 2},
        {1, 3},   {2, 4},   {3, 5},   {4, 6},   {5, 7}};
    return edges;
}

int Skeleton::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < joints.size(); ++i)
        if (joints[i].name == name) return static_cast<int>(i);
    return -1;
}

double HumanAsset::occlusion_distance_for(const std::string& keypoint) const {
    auto it = self_occlusion_distance.find(keypoint);
    return it != self_occlusion_distance.end() ? it->second
                                               : default_self_occlusion_distance;
}

namespace {

Skeleton base_skeleton() {
    Skeleton s;
    auto add = [&](const std::string& name, const std::string& parent, Vec3 off) {
        Joint j;
        j.name = name;
        j.parent = parent.empty() ? -1 : s.index_of(parent);
        if (!parent.empty() && j.parent < 0)
            throw std::logic_error("skeleton parent not yet defined: " + parent);
        j.rest_offset = off;
        s.joints.push_back(j);
    };
    // pelvis-relative layout for a 1.75 m figure; right side mirrors left in x
    add("pelvis", "", {0, 0, 0});
    add("spine", "pelvis", {0, 0.25, 0});
    add("neck", "spine", {0, 0.25, 0});
    add("head", "neck", {0, 0.12, 0});
    add("head_top", "head", {0, 0.10, 0});
    add("nose", "head", {0, 0.04, 0.10});
    add("left_eye", "head", {0.035, 0.08, 0.08});
    add("right_eye", "head", {-0.035, 0.08, 0.08});
    add("left_ear", "head", {0.08, 0.05, 0.01});
    add("right_ear", "head", {-0.08, 0.05, 0.01});
    add("left_shoulder", "neck", {0.19, -0.02, 0});
    add("right_shoulder", "neck", {-0.19, -0.02, 0});
    add("left_elbow", "left_shoulder", {0.03, -0.28, 0});
    add("right_elbow", "right_shoulder", {-0.03, -0.28, 0});
    add("left_wrist", "left_elbow", {0.01, -0.26, 0});
    add("right_wrist", "right_elbow", {-0.01, -0.26, 0});
    add("left_hip", "pelvis", {0.09, -0.04, 0});
    add("right_hip", "pelvis", {-0.09, -0.04, 0});
    add("left_knee", "left_hip", {0.02, -0.42, 0});
    add("right_knee", "right_hip", {-0.02, -0.42, 0});
    add("left_ankle", "left_knee", {0, -0.42, 0});
    add("right_ankle", "right_knee", {0, -0.42, 0});
    return s;
}

std::vector<BoneCapsule> base_capsules(double girth) {
    auto c = [girth](const char* a, const char* b, double r) {
        return BoneCapsule{a, b, r * girth};
    };
    return {
        c("pelvis", "spine", 0.110),
        c("spine", "neck", 0.100),
        c("neck", "head", 0.050),
        c("head", "head_top", 0.090),
        c("neck", "left_shoulder", 0.050),
        c("neck", "right_shoulder", 0.050),
        c("left_shoulder", "left_elbow", 0.045),
        c("right_shoulder", "right_elbow", 0.045),
        c("left_elbow", "left_wrist", 0.040),
        c("right_elbow", "right_wrist", 0.040),
        c("pelvis", "left_hip", 0.070),
        c("pelvis", "right_hip", 0.070),
        c("left_hip", "left_knee", 0.065),
        c("right_hip", "right_knee", 0.065),
        c("left_knee", "left_ankle", 0.050),
        c("right_knee", "right_ankle", 0.050),
    };
}

std::map<std::string, double> default_occlusion_distances() {
    std::map<std::string, double> d;
    for (const char* facial : {"nose", "left_eye", "right_eye", "left_ear", "right_ear"})
        d[facial] = 0.08;
    for (const char* torso :
         {"left_shoulder", "right_shoulder", "left_hip", "right_hip"})
        d[torso] = 0.18;
    return d;
}

}  // namespace

Pose rest_pose(const Skeleton& skeleton) {
    Pose p;
    p.local_rotation.assign(skeleton.size(), Rotation::identity());
    return p;
}

std::map<std::string, Vec3> forward_kinematics(const HumanAsset& asset, const Pose& pose,
                                               const Transform& root) {
    const Skeleton& sk = asset.skeleton;
    if (pose.local_rotation.size() != sk.size())
        throw std::invalid_argument("forward_kinematics: pose/skeleton joint count mismatch");

    std::vector<Vec3> pos(sk.size());
    std::vector<Rotation> orient(sk.size());
    for (std::size_t i = 0; i < sk.size(); ++i) {
        const Joint& j = sk.joints[i];
        Vec3 offset = j.rest_offset * asset.height_scale;
        if (j.parent < 0) {
            pos[i] = pose.root_translation + offset;
            orient[i] = pose.local_rotation[i];
        } else {
            pos[i] = pos[j.parent] + orient[j.parent].rotate(offset);
            orient[i] = orient[j.parent] * pose.local_rotation[i];
        }
    }
    std::map<std::string, Vec3> out;
    for (std::size_t i = 0; i < sk.size(); ++i) out[sk.joints[i].name] = root.apply(pos[i]);
    return out;
}

Transform capsule_between(const Vec3& a, const Vec3& b) {
    Transform t;
    t.translation = (a + b) * 0.5;
    Vec3 axis = b - a;
    double len = axis.norm();
    if (len > 1e-12) {
        Vec3 y{0, 1, 0};
        Vec3 dir = axis / len;
        Vec3 cross = y.cross(dir);
        double cn = cross.norm();
        double dot = std::clamp(y.dot(dir), -1.0, 1.0);
        if (cn > 1e-12) {
            t.rotation = Rotation::axis_angle(cross, std::atan2(cn, dot));
        } else if (dot < 0) {
            t.rotation = Rotation::axis_angle({1, 0, 0}, geom::kPi);
        }
    }
    return t;
}

std::vector<BodyCapsule> body_primitives(const HumanAsset& asset, const Pose& pose,
                                         const Transform& root) {
    auto joints = forward_kinematics(asset, pose, root);
    // uniform world scale assumed for humans; tests pin this
    double radius_scale = asset.height_scale * root.scale.x;
    std::vector<BodyCapsule> out;
    out.reserve(asset.bone_capsules.size());
    for (const BoneCapsule& bc : asset.bone_capsules) {
        auto a = joints.find(bc.joint_a);
        auto b = joints.find(bc.joint_b);
        if (a == joints.end() || b == joints.end())
            throw std::invalid_argument("body_primitives: capsule references unknown joint");
        Vec3 pa = a->second, pb = b->second;
        double half = (pb - pa).norm() * 0.5;
        BodyCapsule cap;
        cap.primitive = geom::Primitive::capsule(bc.radius * radius_scale, half);
        cap.transform = capsule_between(pa, pb);
        cap.bone = bc.joint_a + "-" + bc.joint_b;
        out.push_back(cap);
    }
    return out;
}

Pose mirror_pose(const Skeleton& skeleton, const Pose& pose) {
    auto mirror_name = [](const std::string& n) {
        if (n.rfind("left_", 0) == 0) return "right_" + n.substr(5);
        if (n.rfind("right_", 0) == 0) return "left_" + n.substr(6);
        return n;
    };
    Pose out = pose;
    out.root_translation.x = -out.root_translation.x;
    for (std::size_t i = 0; i < skeleton.size(); ++i) {
        int j = skeleton.index_of(mirror_name(skeleton.joints[i].name));
        const Rotation& r = pose.local_rotation[i];
        out.local_rotation[j] = Rotation{r.w, r.x, -r.y, -r.z};
    }
    return out;
}

namespace {

struct PoseBuilder {
    const Skeleton& sk;
    Pose pose;

    explicit PoseBuilder(const Skeleton& s) : sk(s), pose(rest_pose(s)) {}

    // degrees; applied as Rz * Rx (abduction then swing)
    void set(const std::string& joint, double swing_x, double abduct_z) {
        int i = sk.index_of(joint);
        if (i < 0) throw std::logic_error("unknown joint: " + joint);
        pose.local_rotation[i] =
            Rotation::axis_angle({0, 0, 1}, geom::deg_to_rad(abduct_z)) *
            Rotation::axis_angle({1, 0, 0}, geom::deg_to_rad(swing_x));
    }
};

PoseClip make_clip(const Skeleton& sk, const std::string& name, int frames,
                   const std::function<void(PoseBuilder&, double)>& fn) {
    PoseClip clip;
    clip.name = name;
    for (int i = 0; i < frames; ++i) {
        double phase = 2.0 * geom::kPi * i / frames;
        PoseBuilder b(sk);
        // baseline arm abduction keeps arms clear of the torso in every clip
        b.set("left_shoulder", 0, 12);
        b.set("right_shoulder", 0, -12);
        fn(b, phase);
        clip.frames.push_back(b.pose);
    }
    return clip;
}

}  // namespace

std::vector<PoseClip> builtin_pose_library() {
    static const std::vector<PoseClip> clips = [] {
        Skeleton sk = base_skeleton();
        std::vector<PoseClip> out;

        out.push_back(make_clip(sk, "stand", 8, [](PoseBuilder& b, double t) {
            double sway = 3.0 * std::sin(t);
            b.set("left_shoulder", sway, 12);
            b.set("right_shoulder", -sway, -12);
        }));

        out.push_back(make_clip(sk, "walk", 12, [](PoseBuilder& b, double t) {
            double swing = 25.0 * std::sin(t);
            b.set("left_hip", swing, 4);
            b.set("right_hip", -swing, -4);
            b.set("left_knee", std::max(0.0, 20.0 * std::sin(t + geom::kPi)), 0);
            b.set("right_knee", std::max(0.0, 20.0 * std::sin(t)), 0);
            b.set("left_shoulder", -20.0 * std::sin(t), 12);
            b.set("right_shoulder", 20.0 * std::sin(t), -12);
            b.set("left_elbow", -15, 0);
            b.set("right_elbow", -15, 0);
        }));

        out.push_back(make_clip(sk, "run", 12, [](PoseBuilder& b, double t) {
            double swing = 45.0 * std::sin(t);
            b.set("left_hip", swing, 5);
            b.set("right_hip", -swing, -5);
            b.set("left_knee", 30.0 + 30.0 * std::sin(t + geom::kPi), 0);
            b.set("right_knee", 30.0 + 30.0 * std::sin(t), 0);
            b.set("left_shoulder", -35.0 * std::sin(t), 14);
            b.set("right_shoulder", 35.0 * std::sin(t), -14);
            b.set("left_elbow", -70, 0);
            b.set("right_elbow", -70, 0);
        }));

        out.push_back(make_clip(sk, "sit", 8, [](PoseBuilder& b, double t) {
            double sway = 3.0 * std::sin(t);
            b.set("left_hip", -85 + sway, 6);
            b.set("right_hip", -85 + sway, -6);
            b.set("left_knee", 85, 0);
            b.set("right_knee", 85, 0);
            b.set("left_shoulder", 10, 15);
            b.set("right_shoulder", 10, -15);
        }));

        out.push_back(make_clip(sk, "crouch", 8, [](PoseBuilder& b, double t) {
            double bob = 5.0 * std::sin(t);
            b.set("left_hip", -70 + bob, 8);
            b.set("right_hip", -70 + bob, -8);
            b.set("left_knee", 95 - bob, 0);
            b.set("right_knee", 95 - bob, 0);
            b.set("left_shoulder", -30, 14);
            b.set("right_shoulder", -30, -14);
        }));

        out.push_back(make_clip(sk, "reach", 8, [](PoseBuilder& b, double t) {
            double lift = 150.0 + 12.0 * std::sin(t);
            b.set("left_shoulder", 0, lift);
            b.set("right_shoulder", 0, -lift);
        }));

        out.push_back(make_clip(sk, "wave", 8, [](PoseBuilder& b, double t) {
            b.set("right_shoulder", 0, -155);
            b.set("right_elbow", 0, -25.0 * std::sin(t));
            b.set("left_shoulder", 0, 14);
        }));

        out.push_back(make_clip(sk, "jumping_jack", 8, [](PoseBuilder& b, double t) {
            double a = 0.5 * (1.0 - std::cos(t));  // 0..1..0
            b.set("left_shoulder", 0, 15 + 140 * a);
            b.set("right_shoulder", 0, -(15 + 140 * a));
            b.set("left_hip", 0, 3 + 18 * a);
            b.set("right_hip", 0, -(3 + 18 * a));
        }));

        return out;
    }();
    return clips;
}

std::vector<HumanAsset> builtin_assets() {
    static const std::vector<HumanAsset> assets = [] {
        struct Variant {
            const char* name;
            double height;
            double girth;
            double hue;
        };
        const Variant variants[] = {{"adult_s", 1.55, 0.92, 30.0},
                                    {"adult_m", 1.67, 0.98, 120.0},
                                    {"adult_l", 1.78, 1.02, 210.0},
                                    {"adult_xl", 1.90, 1.08, 300.0}};
        std::vector<HumanAsset> out;
        for (const Variant& v : variants) {
            HumanAsset a;
            a.name = v.name;
            a.skeleton = base_skeleton();
            a.bone_capsules = base_capsules(v.girth);
            a.self_occlusion_distance = default_occlusion_distances();
            a.clothing_hue = v.hue;
            a.height_scale = v.height / 1.75;
            out.push_back(std::move(a));
        }
        return out;
    }();
    return assets;
}

}  // namespace humansynth::human
