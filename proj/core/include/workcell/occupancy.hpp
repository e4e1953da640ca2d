#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "workcell/geometry.hpp"

namespace workcell {

inline constexpr double kVoxelSize = 0.05;  // m, discrete occupancy unit
inline constexpr double kLinkRadius = 0.06; // m, arm link capsule radius

struct VoxelIndex {
  int x{0}, y{0}, z{0};
  auto operator<=>(const VoxelIndex&) const = default;
};

inline VoxelIndex voxel_of(const Vec3& p) {
  return {static_cast<int>(std::floor(p.x() / kVoxelSize)),
          static_cast<int>(std::floor(p.y() / kVoxelSize)),
          static_cast<int>(std::floor(p.z() / kVoxelSize))};
}

inline Vec3 voxel_center(const VoxelIndex& v) {
  return {(v.x + 0.5) * kVoxelSize, (v.y + 0.5) * kVoxelSize, (v.z + 0.5) * kVoxelSize};
}

struct VoxelIndexHash {
  std::size_t operator()(const VoxelIndex& v) const {
    // 3D coordinate hash with large prime multipliers.
    std::size_t h = static_cast<std::size_t>(v.x) * 73856093u;
    h ^= static_cast<std::size_t>(v.y) * 19349663u;
    h ^= static_cast<std::size_t>(v.z) * 83492791u;
    return h;
  }
};

/// Who occupies a voxel. Arm links carry agent_id with an empty object_id;
/// object geometry carries its object_id plus the holder's agent_id when the
/// object is attached (an attached object shares its holder's tag).
struct VoxelOwner {
  int agent_id{0};
  std::string object_id;

  bool from_object() const { return !object_id.empty(); }
  bool operator==(const VoxelOwner&) const = default;
  bool operator<(const VoxelOwner& o) const {
    if (agent_id != o.agent_id) return agent_id < o.agent_id;
    return object_id < o.object_id;
  }
  std::string tag() const;
};

class OccupancyGrid {
 public:
  void insert(const VoxelIndex& v, const VoxelOwner& owner);
  const std::vector<VoxelOwner>* owners_at(const VoxelIndex& v) const;
  std::size_t voxel_count() const { return cells_.size(); }
  bool contains(const VoxelIndex& v) const { return cells_.count(v) > 0; }

  /// Voxels occupied by more than one distinct owner, index-sorted.
  std::vector<VoxelIndex> shared_voxels() const;

  /// Deterministic (index-sorted) view of the whole grid.
  std::vector<std::pair<VoxelIndex, std::vector<VoxelOwner>>> sorted_cells() const;

  /// Order-independent digest of the occupancy state.
  uint64_t digest() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [index, owners] : cells_) fn(index, owners);
  }

 private:
  std::unordered_map<VoxelIndex, std::vector<VoxelOwner>, VoxelIndexHash> cells_;
};

/// Conservative capsule rasterization: every voxel whose center lies within
/// radius + half the voxel diagonal of the segment is included, so no voxel
/// containing solid volume is missed (extras stay within one voxel shell).
void rasterize_capsule(OccupancyGrid& grid, const Vec3& a, const Vec3& b, double radius,
                       const VoxelOwner& owner);

/// Conservative oriented-box rasterization with the same soundness guarantee.
void rasterize_box(OccupancyGrid& grid, const Box& box, const Pose& pose, const VoxelOwner& owner);

}  // namespace workcell
