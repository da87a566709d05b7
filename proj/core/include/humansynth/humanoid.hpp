#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "humansynth/geometry.hpp"

namespace humansynth::human {

/// The 17 COCO keypoint names in canonical annotation order.
const std::vector<std::string>& coco_keypoint_names();

/// COCO skeleton edge list (1-based keypoint indices, COCO convention).
const std::vector<std::pair<int, int>>& coco_skeleton_edges();

struct Joint {
    std::string name;
    int parent = -1;                 // -1 for the root
    geom::Vec3 rest_offset{0, 0, 0}; // translation from parent in rest pose
};

/// Topologically sorted joint hierarchy; contains the 17 COCO keypoints
/// plus structural joints (pelvis, spine, neck, head).
struct Skeleton {
    std::vector<Joint> joints;

    int index_of(const std::string& name) const;
    bool contains(const std::string& name) const { return index_of(name) >= 0; }
    std::size_t size() const { return joints.size(); }
};

struct Pose {
    std::vector<geom::Rotation> local_rotation;  // one per joint
    geom::Vec3 root_translation{0, 0, 0};
};

struct PoseClip {
    std::string name;
    std::vector<Pose> frames;
    double fps = 8.0;
};

struct BoneCapsule {
    std::string joint_a;
    std::string joint_b;
    double radius = 0.05;
};

struct HumanAsset {
    std::string name;
    Skeleton skeleton;
    std::vector<BoneCapsule> bone_capsules;
    std::map<std::string, double> self_occlusion_distance;  // per keypoint, m
    double default_self_occlusion_distance = 0.15;
    double clothing_hue = 0.0;   // degrees
    double height_scale = 1.0;   // multiplies all rest offsets

    double occlusion_distance_for(const std::string& keypoint) const;
};

/// World position of every joint under `pose`, then `root`. Throws on
/// pose/skeleton size mismatch.
std::map<std::string, geom::Vec3> forward_kinematics(const HumanAsset& asset,
                                                     const Pose& pose,
                                                     const geom::Transform& root);

struct BodyCapsule {
    geom::Primitive primitive;  // capsule
    geom::Transform transform;
    std::string bone;  // "<joint_a>-<joint_b>"
};

/// One world-space capsule per bone, endpoints at the posed joints.
std::vector<BodyCapsule> body_primitives(const HumanAsset& asset, const Pose& pose,
                                         const geom::Transform& root);

/// Mirror a pose about the sagittal (YZ) plane, swapping left/right
/// joint channels.
Pose mirror_pose(const Skeleton& skeleton, const Pose& pose);

/// Identity pose for a skeleton (rest configuration).
Pose rest_pose(const Skeleton& skeleton);

/// Procedural clip library: stand, walk, run, sit, crouch, reach, wave,
/// jumping_jack. Every frame yields a self-intersection-free capsule body.
std::vector<PoseClip> builtin_pose_library();

/// Four built-in asset variants, heights 1.55 m to 1.90 m.
std::vector<HumanAsset> builtin_assets();

/// World-axis-aligned capsule between two points.
geom::Transform capsule_between(const geom::Vec3& a, const geom::Vec3& b);

}  // namespace humansynth::human
