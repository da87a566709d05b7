#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "humansynth/geometry.hpp"

namespace humansynth::rng {

/// Inclusive uniform sampling range. min == max is a constant.
struct ParamRange {
    double min = 0.0;
    double max = 0.0;

    ParamRange() = default;
    ParamRange(double lo, double hi) : min(lo), max(hi) {}
    bool valid() const { return min <= max; }
};

/// Counter-based stream keyed by (master_seed, frame_index, randomizer_id).
/// Output is a pure function of the key and draw counter, so frame
/// workers derive their streams independently and still reproduce the
/// sequential run byte for byte.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t frame_index,
              std::string_view randomizer_id);

    /// Raw 64 uniform bits.
    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double next_double();

    /// Uniform double in [range.min, range.max].
    double uniform(const ParamRange& range);

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// True with probability p.
    bool bernoulli(double p);

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// (clip, frame) choice: clip uniform over clips, then frame uniform
/// over that clip's frames.
struct PoseRef {
    std::size_t clip = 0;
    std::size_t frame = 0;
};
PoseRef sample_pose_reference(const std::vector<std::size_t>& frames_per_clip,
                              RngStream& stream);

/// Axis-aligned sampling volume.
struct Box3 {
    geom::Vec3 lo;
    geom::Vec3 hi;
};

/// Bridson dart throwing (k = 30 candidates per active point). Returns
/// up to max_count points inside `volume` with pairwise distance >=
/// separation. Degenerate axes (zero extent) reduce the sampling
/// dimension naturally.
std::vector<geom::Vec3> poisson_disk(const Box3& volume, double separation,
                                     std::size_t max_count, RngStream& stream);

}  // namespace humansynth::rng
