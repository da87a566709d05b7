#include "humansynth/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace humansynth::rng {

namespace {

// splitmix64 finalizer; full-period bijective mix on 64 bits.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t frame_index,
                     std::string_view randomizer_id) {
    key_ = mix64(mix64(mix64(master_seed) ^ frame_index) ^ fnv1a(randomizer_id));
}

std::uint64_t RngStream::next_u64() { return mix64(key_ ^ mix64(counter_++)); }

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(const ParamRange& range) {
    if (!range.valid()) throw std::invalid_argument("uniform: inverted range");
    return range.min + (range.max - range.min) * next_double();
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: inverted range");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next_u64());  // full range
    return lo + static_cast<std::int64_t>(next_u64() % span);
}

bool RngStream::bernoulli(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("bernoulli: p outside [0,1]");
    return next_double() < p;
}

PoseRef sample_pose_reference(const std::vector<std::size_t>& frames_per_clip,
                              RngStream& stream) {
    if (frames_per_clip.empty())
        throw std::invalid_argument("sample_pose_reference: empty clip library");
    for (std::size_t n : frames_per_clip) {
        if (n == 0) throw std::invalid_argument("sample_pose_reference: empty clip");
    }
    PoseRef ref;
    ref.clip = static_cast<std::size_t>(
        stream.uniform_int(0, static_cast<std::int64_t>(frames_per_clip.size()) - 1));
    ref.frame = static_cast<std::size_t>(
        stream.uniform_int(0, static_cast<std::int64_t>(frames_per_clip[ref.clip]) - 1));
    return ref;
}

std::vector<geom::Vec3> poisson_disk(const Box3& volume, double separation,
                                     std::size_t max_count, RngStream& stream) {
    if (separation <= 0) throw std::invalid_argument("poisson_disk: separation must be > 0");
    if (max_count == 0) return {};

    using geom::Vec3;
    const Vec3 extent = volume.hi - volume.lo;
    const std::array<double, 3> ext{extent.x, extent.y, extent.z};
    int active_dims = 0;
    for (double e : ext)
        if (e > 0) ++active_dims;
    active_dims = std::max(active_dims, 1);

    // background grid with cell size r/sqrt(d): at most one sample per cell
    const double cell = separation / std::sqrt(static_cast<double>(active_dims));
    const int nx = std::max(1, static_cast<int>(std::ceil(std::max(ext[0], 0.0) / cell)));
    const int ny = std::max(1, static_cast<int>(std::ceil(std::max(ext[1], 0.0) / cell)));
    const int nz = std::max(1, static_cast<int>(std::ceil(std::max(ext[2], 0.0) / cell)));
    std::vector<int> grid(static_cast<std::size_t>(nx) * ny * nz, -1);

    auto cell_index = [&](const Vec3& p) {
        int ix = std::clamp(static_cast<int>((p.x - volume.lo.x) / cell), 0, nx - 1);
        int iy = std::clamp(static_cast<int>((p.y - volume.lo.y) / cell), 0, ny - 1);
        int iz = std::clamp(static_cast<int>((p.z - volume.lo.z) / cell), 0, nz - 1);
        return std::array<int, 3>{ix, iy, iz};
    };

    std::vector<Vec3> points;
    std::vector<std::size_t> active;

    auto far_enough = [&](const Vec3& p) {
        auto [cx, cy, cz] = cell_index(p);
        for (int ix = std::max(0, cx - 2); ix <= std::min(nx - 1, cx + 2); ++ix)
            for (int iy = std::max(0, cy - 2); iy <= std::min(ny - 1, cy + 2); ++iy)
                for (int iz = std::max(0, cz - 2); iz <= std::min(nz - 1, cz + 2); ++iz) {
                    int idx = grid[(static_cast<std::size_t>(ix) * ny + iy) * nz + iz];
                    if (idx >= 0 && (points[idx] - p).norm() < separation) return false;
                }
        return true;
    };

    auto insert = [&](const Vec3& p) {
        auto [cx, cy, cz] = cell_index(p);
        grid[(static_cast<std::size_t>(cx) * ny + cy) * nz + cz] =
            static_cast<int>(points.size());
        points.push_back(p);
        active.push_back(points.size() - 1);
    };

    auto random_in_volume = [&] {
        return Vec3{volume.lo.x + ext[0] * stream.next_double(),
                    volume.lo.y + ext[1] * stream.next_double(),
                    volume.lo.z + ext[2] * stream.next_double()};
    };

    insert(random_in_volume());

    // Axes wider than the separation carry the annulus offset. Thin axes
    // resample uniformly inside their extent: an annulus step along them
    // would leave the volume almost every time, starving the active list.
    const std::array<bool, 3> wide{ext[0] > separation, ext[1] > separation,
                                   ext[2] > separation};
    const int wide_dims = (wide[0] ? 1 : 0) + (wide[1] ? 1 : 0) + (wide[2] ? 1 : 0);

    constexpr int kAttempts = 30;
    while (!active.empty() && points.size() < max_count) {
        std::size_t slot = static_cast<std::size_t>(
            stream.uniform_int(0, static_cast<std::int64_t>(active.size()) - 1));
        Vec3 base = points[active[slot]];
        bool placed = false;
        for (int a = 0; a < kAttempts && points.size() < max_count; ++a) {
            // annulus [r, 2r] around the active point on the wide axes
            double r = separation * (1.0 + stream.next_double());
            std::array<double, 3> off{0, 0, 0};
            if (wide_dims == 3) {
                double theta = 2.0 * geom::kPi * stream.next_double();
                double cphi = 2.0 * stream.next_double() - 1.0;
                double sphi = std::sqrt(std::max(0.0, 1.0 - cphi * cphi));
                off = {r * sphi * std::cos(theta), r * cphi, r * sphi * std::sin(theta)};
            } else if (wide_dims == 2) {
                double theta = 2.0 * geom::kPi * stream.next_double();
                double c = r * std::cos(theta), s = r * std::sin(theta);
                bool first = true;
                for (int d = 0; d < 3; ++d)
                    if (wide[d]) {
                        off[d] = first ? c : s;
                        first = false;
                    }
            } else if (wide_dims == 1) {
                double sign = stream.bernoulli(0.5) ? 1.0 : -1.0;
                for (int d = 0; d < 3; ++d)
                    if (wide[d]) off[d] = sign * r;
            }
            Vec3 cand = wide_dims == 0 ? random_in_volume() : Vec3{};
            if (wide_dims > 0) {
                const double base_c[3] = {base.x, base.y, base.z};
                const double lo_c[3] = {volume.lo.x, volume.lo.y, volume.lo.z};
                double out_c[3];
                for (int d = 0; d < 3; ++d) {
                    if (wide[d])
                        out_c[d] = base_c[d] + off[d];
                    else
                        out_c[d] = ext[d] > 0 ? lo_c[d] + ext[d] * stream.next_double()
                                              : lo_c[d];
                }
                cand = {out_c[0], out_c[1], out_c[2]};
            }
            if (cand.x < volume.lo.x || cand.x > volume.hi.x || cand.y < volume.lo.y ||
                cand.y > volume.hi.y || cand.z < volume.lo.z || cand.z > volume.hi.z)
                continue;
            if (!far_enough(cand)) continue;
            insert(cand);
            placed = true;
        }
        if (!placed) {
            active[slot] = active.back();
            active.pop_back();
        }
    }
    return points;
}

}  // namespace humansynth::rng
