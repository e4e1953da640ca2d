#include "workcell/occupancy.hpp"

#include <algorithm>
#include <cmath>

namespace workcell {

namespace {

const double kHalfDiagonal = 0.5 * kVoxelSize * std::sqrt(3.0);

struct IndexRange {
  VoxelIndex lo, hi;
};

IndexRange index_range(const Aabb& aabb) {
  return {voxel_of(aabb.min), voxel_of(aabb.max)};
}

}  // namespace

std::string VoxelOwner::tag() const {
  if (!from_object()) return "agent:" + std::to_string(agent_id);
  if (agent_id > 0) return "object:" + object_id + "@agent:" + std::to_string(agent_id);
  return "object:" + object_id;
}

void OccupancyGrid::insert(const VoxelIndex& v, const VoxelOwner& owner) {
  auto& owners = cells_[v];
  if (std::find(owners.begin(), owners.end(), owner) == owners.end()) {
    owners.push_back(owner);
  }
}

const std::vector<VoxelOwner>* OccupancyGrid::owners_at(const VoxelIndex& v) const {
  auto it = cells_.find(v);
  return it == cells_.end() ? nullptr : &it->second;
}

std::vector<VoxelIndex> OccupancyGrid::shared_voxels() const {
  std::vector<VoxelIndex> out;
  for (const auto& [index, owners] : cells_) {
    if (owners.size() > 1) out.push_back(index);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<VoxelIndex, std::vector<VoxelOwner>>> OccupancyGrid::sorted_cells() const {
  std::vector<std::pair<VoxelIndex, std::vector<VoxelOwner>>> out(cells_.begin(), cells_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [index, owners] : out) {
    (void)index;
    std::sort(owners.begin(), owners.end());
  }
  return out;
}

uint64_t OccupancyGrid::digest() const {
  // XOR of per-cell FNV digests; order independent.
  uint64_t acc = 0x6b7a5c3e1d9f0842ull;
  for (const auto& [index, owners] : cells_) {
    uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](uint64_t v) {
      h ^= v;
      h *= 0x100000001b3ull;
    };
    mix(static_cast<uint64_t>(static_cast<int64_t>(index.x)));
    mix(static_cast<uint64_t>(static_cast<int64_t>(index.y)));
    mix(static_cast<uint64_t>(static_cast<int64_t>(index.z)));
    std::vector<VoxelOwner> sorted = owners;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& o : sorted) {
      mix(static_cast<uint64_t>(o.agent_id));
      for (char c : o.object_id) mix(static_cast<unsigned char>(c));
      mix(0x1full);
    }
    acc ^= h;
  }
  return acc;
}

void rasterize_capsule(OccupancyGrid& grid, const Vec3& a, const Vec3& b, double radius,
                       const VoxelOwner& owner) {
  const double reach = radius + kHalfDiagonal;
  Aabb aabb{a.cwiseMin(b), a.cwiseMax(b)};
  aabb = aabb.inflated(reach);
  const auto [lo, hi] = index_range(aabb);
  for (int x = lo.x; x <= hi.x; ++x) {
    for (int y = lo.y; y <= hi.y; ++y) {
      for (int z = lo.z; z <= hi.z; ++z) {
        const VoxelIndex v{x, y, z};
        if (point_segment_distance(voxel_center(v), a, b) <= reach) {
          grid.insert(v, owner);
        }
      }
    }
  }
}

void rasterize_box(OccupancyGrid& grid, const Box& box, const Pose& pose,
                   const VoxelOwner& owner) {
  const Aabb aabb = aabb_of(box, pose).inflated(kHalfDiagonal);
  const auto [lo, hi] = index_range(aabb);
  for (int x = lo.x; x <= hi.x; ++x) {
    for (int y = lo.y; y <= hi.y; ++y) {
      for (int z = lo.z; z <= hi.z; ++z) {
        const VoxelIndex v{x, y, z};
        if (point_obb_distance(voxel_center(v), box, pose) <= kHalfDiagonal) {
          grid.insert(v, owner);
        }
      }
    }
  }
}

}  // namespace workcell
