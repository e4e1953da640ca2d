#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "workcell/geometry.hpp"
#include "workcell/kinematics.hpp"

namespace workcell {

inline constexpr double kGraspDistance = 0.02;        // m, max EE-to-annotation gap
inline constexpr double kCoGraspBreakDistance = 0.10; // m, co-grasp tear threshold

struct InteractionAnnotation {
  std::string label;
  Vec3 local_point{Vec3::Zero()};
  std::vector<Vec3> allowed_directions;  // unit vectors, asset frame
  double angular_tolerance{0.2618};      // rad
};

struct Asset {
  std::string id;
  std::vector<Box> shape;  // union of boxes, asset frame
  std::vector<InteractionAnnotation> annotations;

  const InteractionAnnotation* find_annotation(std::string_view label) const;
  const InteractionAnnotation& annotation(std::string_view label) const;  // throws
  Aabb local_aabb() const;
  void validate() const;  // throws InvalidConfig on malformed data
};

using AssetPtr = std::shared_ptr<const Asset>;

/// Rigid grip: while held, object pose = holder EE pose * grasp_transform.
struct Attachment {
  int holder{0};
  Pose grasp_transform;
  std::string label;          // annotation gripped at attach time
  Vec3 approach{0, 0, -1};    // world approach direction recorded at attach
};

/// Secondary grip on an object already held by another agent. Tracked for
/// integrity only; the pose follows the primary holder.
struct CoGrasp {
  int agent_id{0};
  std::string label;
};

struct ObjectInstance {
  std::string object_id;
  AssetPtr asset;
  Pose pose;
  std::optional<Attachment> attachment;
  std::vector<CoGrasp> co_grasps;

  bool held() const { return attachment.has_value(); }
  Vec3 annotation_world_point(std::string_view label) const;
  Vec3 annotation_world_direction(std::string_view label, std::size_t index = 0) const;
  Aabb world_aabb() const;
};

struct AgentState {
  int id{0};
  Pose base;
  JointState joints;
};

struct CoGraspBreak {
  std::string object_id;
  int agent_id{0};
  double distance{0};
};

class Scene {
 public:
  Scene(uint64_t seed, Aabb table_region, const ArmModel* arm = &ArmModel::panda());

  uint64_t seed() const { return seed_; }
  const Aabb& table_region() const { return table_region_; }
  const ArmModel& arm() const { return *arm_; }

  int tick() const { return tick_; }
  void set_tick(int tick) { tick_ = tick; }

  void add_agent(int id, const Pose& base, const JointState& joints);
  void add_object(std::string object_id, AssetPtr asset, const Pose& pose);

  const std::vector<AgentState>& agents() const { return agents_; }
  const std::vector<ObjectInstance>& objects() const { return objects_; }
  const AgentState& agent(int id) const;           // throws UnknownAgent
  const ObjectInstance& object(std::string_view id) const;  // throws UnknownObject
  bool has_agent(int id) const;
  bool has_object(std::string_view id) const;

  Pose ee_pose(int agent_id) const;
  FkResult agent_fk(int agent_id) const;

  /// Updates an arm and recomputes the pose of anything attached to it.
  void set_joint_state(int agent_id, const JointState& state);

  /// Kinematic grasp. Requires the EE within kGraspDistance of one of the
  /// object's interaction points and the object unheld.
  void attach(int agent_id, const std::string& object_id);

  /// Releases the held object, freezing its pose. Co-grasps on it are kept.
  void detach(int agent_id);

  void add_co_grasp(int agent_id, const std::string& object_id, const std::string& label);
  void remove_co_grasps(int agent_id);

  const ObjectInstance* held_object(int agent_id) const;

  /// Co-grasps whose gripper has drifted beyond `threshold` from its point.
  std::vector<CoGraspBreak> co_grasp_violations(double threshold = kCoGraspBreakDistance) const;

  /// Drops an object: detaches it, clears co-grasps, and settles it straight
  /// down onto the table surface.
  void drop_object(const std::string& object_id);

  void set_object_pose(const std::string& object_id, const Pose& pose);

 private:
  ObjectInstance& object_mut(std::string_view id);
  AgentState& agent_mut(int id);
  void refresh_attached(int agent_id);

  uint64_t seed_;
  Aabb table_region_;
  const ArmModel* arm_;
  int tick_{0};
  std::vector<AgentState> agents_;
  std::vector<ObjectInstance> objects_;
};

struct ObjectTemplate {
  std::string object_id;
  std::string asset_id;
  Pose nominal;
  // Randomization bounds: position offsets drawn uniformly in the rectangle,
  // yaw added to the nominal orientation.
  Vec3 rect_min{Vec3::Zero()};
  Vec3 rect_max{Vec3::Zero()};
  double yaw_min{0};
  double yaw_max{0};
};

struct SceneTemplate {
  Aabb table_region;
  std::vector<std::pair<int, Pose>> agent_bases;
  std::vector<ObjectTemplate> objects;
};

class AssetLibrary;

/// Deterministic seeded instantiation: placements are rejection-sampled until
/// every object AABB lies inside the table region and no two overlap.
Scene instantiate_scene(const SceneTemplate& tmpl, const AssetLibrary& assets, uint64_t seed);

}  // namespace workcell
