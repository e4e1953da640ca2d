#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "workcell/geometry.hpp"

namespace workcell {

inline constexpr int kArmJointCount = 7;
inline constexpr double kGripperMax = 0.08;          // m, fully open
inline constexpr double kMaxJointStepPerTick = 0.05; // rad
inline constexpr int kTicksPerSecond = 20;           // control steps per second

struct JointState {
  std::array<double, kArmJointCount> angles{};
  double gripper{kGripperMax};
};

struct JointDescriptor {
  Pose link;         // fixed transform preceding the joint rotation
  Vec3 axis{Vec3::UnitZ()};
  double min{-3.1};  // rad
  double max{3.1};
};

/// Serial chain of revolute joints. The default model uses the published
/// Franka Panda modified-DH constants with symmetric joint limits.
class ArmModel {
 public:
  ArmModel(std::vector<JointDescriptor> joints, Pose flange_offset);

  static const ArmModel& panda();

  int joint_count() const { return static_cast<int>(joints_.size()); }
  const std::vector<JointDescriptor>& joints() const { return joints_; }
  const Pose& flange_offset() const { return flange_offset_; }

  bool within_limits(const JointState& q, double tol = 1e-9) const;
  void clamp_to_limits(JointState& q) const;

 private:
  std::vector<JointDescriptor> joints_;
  Pose flange_offset_;
};

/// Nonsingular "ready" configuration used as the agents' home state.
JointState panda_ready_state();

struct FkResult {
  std::vector<Vec3> joint_positions;  // base origin followed by each joint origin
  Pose ee;
};

/// Throws OutOfLimits when `state` violates the model's joint limits.
FkResult forward_kinematics(const ArmModel& model, const Pose& base, const JointState& state);

/// 6 x n geometric Jacobian (linear rows first, then angular) at `state`.
Eigen::Matrix<double, 6, Eigen::Dynamic> arm_jacobian(const ArmModel& model, const Pose& base,
                                                      const JointState& state);

struct IkOptions {
  double pos_tol{1e-4};    // m
  double ang_tol{1e-3};    // rad
  int max_iters{200};
  double damping{0.05};
  double step_clamp{0.2};  // rad, per-iteration infinity-norm clamp
  double rot_weight{0.5};  // weight of the orientation error in the DLS solve
};

/// Damped-least-squares IK with joint-limit projection and deterministic
/// restarts. Throws Unreachable when the residual stays above tolerance.
JointState inverse_kinematics(const ArmModel& model, const Pose& base, const Pose& target,
                              const JointState& q_init, const IkOptions& options = {});

struct Sample {
  int tick{0};
  JointState state;
};

enum class ContactKind { Grasp, Press, Release };

/// Contact metadata attached to a trajectory by the primitive expander.
struct Interaction {
  ContactKind kind{ContactKind::Grasp};
  std::string object_id;
  std::string label;
  int contact_tick{0};
};

/// Per-agent timestamped joint-state sequence serving one subgoal.
struct Trajectory {
  int agent_id{0};
  std::string subgoal_id;
  std::vector<Sample> samples;  // ticks strictly increasing
  std::optional<Interaction> interaction;
  std::string allowed_contact;  // object this segment may touch ("" = none)

  bool empty() const { return samples.empty(); }
  int first_tick() const { return samples.front().tick; }
  int last_tick() const { return samples.back().tick; }
  void shift_ticks(int delta);

  /// Exact sample at `tick`, if present.
  const JointState* state_at(int tick) const;
  /// State at `tick` with the endpoints held outside the span.
  const JointState& state_at_or_hold(int tick) const;
};

/// Validates the per-tick joint delta bound over consecutive samples.
bool trajectory_respects_step_bound(const Trajectory& traj,
                                    double dq_max = kMaxJointStepPerTick);

/// Minimum tick count to travel between two states at `dq_max` per tick.
int min_ticks_between(const JointState& from, const JointState& to,
                      double dq_max = kMaxJointStepPerTick);

/// Joint-space linear interpolation: `ticks` samples at relative ticks 1..ticks,
/// endpoint exact. Throws TooFast when the per-tick delta would exceed `dq_max`.
std::vector<Sample> interpolate(const JointState& from, const JointState& to, int ticks,
                                double dq_max = kMaxJointStepPerTick);

}  // namespace workcell
