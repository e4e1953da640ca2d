#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace workcell {

using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

/// Rigid transform: rotation (unit quaternion) followed by translation.
struct Pose {
  Vec3 position{Vec3::Zero()};
  Quat orientation{Quat::Identity()};

  static Pose identity() { return {}; }

  Pose operator*(const Pose& rhs) const {
    return {position + orientation * rhs.position, (orientation * rhs.orientation).normalized()};
  }

  Pose inverse() const {
    Quat inv = orientation.conjugate();
    return {inv * (-position), inv};
  }

  Vec3 apply(const Vec3& p) const { return position + orientation * p; }
  Vec3 rotate(const Vec3& v) const { return orientation * v; }

  bool is_normalized(double tol = 1e-9) const {
    return std::abs(orientation.norm() - 1.0) <= tol;
  }
};

inline Pose make_pose(const Vec3& position, const Quat& orientation) {
  return {position, orientation.normalized()};
}

Quat quat_about(const Vec3& axis, double angle);
Pose pose_from_yaw(const Vec3& position, double yaw);

/// Minimal-angle rotation mapping unit vector `from` onto unit vector `to`.
Quat rotation_between(const Vec3& from, const Vec3& to);

/// Angle of the relative rotation a^-1 * b, in [0, pi].
double quat_angle(const Quat& a, const Quat& b);

/// Angle between two nonzero vectors, in [0, pi].
double angle_between(const Vec3& a, const Vec3& b);

/// Axis-aligned box in its owning frame.
struct Box {
  Vec3 center{Vec3::Zero()};
  Vec3 half_extents{Vec3::Zero()};
};

struct Aabb {
  Vec3 min{Vec3::Zero()};
  Vec3 max{Vec3::Zero()};

  bool contains(const Vec3& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
  bool contains(const Aabb& inner) const {
    return contains(inner.min) && contains(inner.max);
  }
  bool intersects(const Aabb& other) const {
    return (min.array() <= other.max.array()).all() && (max.array() >= other.min.array()).all();
  }
  Vec3 center() const { return 0.5 * (min + max); }
  Aabb inflated(double r) const { return {min.array() - r, max.array() + r}; }
  Aabb united(const Aabb& other) const {
    return {min.cwiseMin(other.min), max.cwiseMax(other.max)};
  }
};

/// World-frame AABB of a local axis-aligned box under a rigid transform.
Aabb aabb_of(const Box& box, const Pose& pose);

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b);

/// Distance from a point to a solid oriented box (0 when inside).
double point_obb_distance(const Vec3& p, const Box& box, const Pose& pose);

}  // namespace workcell
