#include "workcell/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace workcell {

Quat quat_about(const Vec3& axis, double angle) {
  return Quat(Eigen::AngleAxisd(angle, axis.normalized()));
}

Pose pose_from_yaw(const Vec3& position, double yaw) {
  return {position, quat_about(Vec3::UnitZ(), yaw)};
}

Quat rotation_between(const Vec3& from, const Vec3& to) {
  return Quat::FromTwoVectors(from, to).normalized();
}

double quat_angle(const Quat& a, const Quat& b) {
  const Quat rel = a.conjugate() * b;
  const double w = std::clamp(std::abs(rel.w()) / rel.norm(), 0.0, 1.0);
  return 2.0 * std::acos(w);
}

double angle_between(const Vec3& a, const Vec3& b) {
  const double d = a.dot(b) / (a.norm() * b.norm());
  return std::acos(std::clamp(d, -1.0, 1.0));
}

Aabb aabb_of(const Box& box, const Pose& pose) {
  const Vec3 center = pose.apply(box.center);
  const Eigen::Matrix3d rot = pose.orientation.toRotationMatrix();
  // Extent of a rotated box along each world axis is |R| * half_extents.
  const Vec3 extent = rot.cwiseAbs() * box.half_extents;
  return {center - extent, center + extent};
}

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 <= 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

double point_obb_distance(const Vec3& p, const Box& box, const Pose& pose) {
  const Vec3 local = pose.inverse().apply(p) - box.center;
  const Vec3 d = local.cwiseAbs() - box.half_extents;
  return d.cwiseMax(0.0).norm();
}

}  // namespace workcell
