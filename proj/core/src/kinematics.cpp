#include "workcell/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "workcell/errors.hpp"

namespace workcell {

namespace {

constexpr double kPi = 3.14159265358979323846;

Pose modified_dh_link(double a, double alpha, double d) {
  // Craig convention: RotX(alpha) * TransX(a) * TransZ(d); the joint rotation
  // about local Z follows.
  Pose rot_x{Vec3::Zero(), quat_about(Vec3::UnitX(), alpha)};
  Pose trans{Vec3(a, 0, 0), Quat::Identity()};
  Pose lift{Vec3(0, 0, d), Quat::Identity()};
  return rot_x * trans * lift;
}

}  // namespace

ArmModel::ArmModel(std::vector<JointDescriptor> joints, Pose flange_offset)
    : joints_(std::move(joints)), flange_offset_(flange_offset) {
  for (const auto& j : joints_) {
    if (!(j.min < j.max)) {
      throw Error(Errc::InvalidConfig, "joint limit min must be below max");
    }
  }
}

const ArmModel& ArmModel::panda() {
  // Published Panda modified-DH constants. Limits are symmetric +-2.8973 so
  // the zero configuration is valid for every joint; the real arm's
  // asymmetric q4/q6 ranges are not load-bearing for a kinematic engine.
  static const ArmModel model = [] {
    const double lim = 2.8973;
    std::vector<JointDescriptor> joints;
    joints.push_back({modified_dh_link(0.0, 0.0, 0.333), Vec3::UnitZ(), -lim, lim});
    joints.push_back({modified_dh_link(0.0, -kPi / 2, 0.0), Vec3::UnitZ(), -lim, lim});
    joints.push_back({modified_dh_link(0.0, kPi / 2, 0.316), Vec3::UnitZ(), -lim, lim});
    joints.push_back({modified_dh_link(0.0825, kPi / 2, 0.0), Vec3::UnitZ(), -lim, lim});
    joints.push_back({modified_dh_link(-0.0825, -kPi / 2, 0.384), Vec3::UnitZ(), -lim, lim});
    joints.push_back({modified_dh_link(0.0, kPi / 2, 0.0), Vec3::UnitZ(), -lim, lim});
    joints.push_back({modified_dh_link(0.088, kPi / 2, 0.0), Vec3::UnitZ(), -lim, lim});
    return ArmModel(std::move(joints), Pose{Vec3(0, 0, 0.107), Quat::Identity()});
  }();
  return model;
}

bool ArmModel::within_limits(const JointState& q, double tol) const {
  for (int i = 0; i < joint_count(); ++i) {
    if (q.angles[i] < joints_[i].min - tol || q.angles[i] > joints_[i].max + tol) return false;
  }
  return q.gripper >= -tol && q.gripper <= kGripperMax + tol;
}

void ArmModel::clamp_to_limits(JointState& q) const {
  for (int i = 0; i < joint_count(); ++i) {
    q.angles[i] = std::clamp(q.angles[i], joints_[i].min, joints_[i].max);
  }
  q.gripper = std::clamp(q.gripper, 0.0, kGripperMax);
}

JointState panda_ready_state() {
  JointState q;
  q.angles = {0.0, -kPi / 4, 0.0, -3 * kPi / 4, 0.0, kPi / 2, kPi / 4};
  q.gripper = kGripperMax;
  return q;
}

FkResult forward_kinematics(const ArmModel& model, const Pose& base, const JointState& state) {
  if (!model.within_limits(state)) {
    throw Error(Errc::OutOfLimits, "joint state outside limits");
  }
  FkResult out;
  out.joint_positions.reserve(model.joint_count() + 1);
  out.joint_positions.push_back(base.position);
  Pose t = base;
  for (int i = 0; i < model.joint_count(); ++i) {
    const auto& joint = model.joints()[i];
    t = t * joint.link;
    out.joint_positions.push_back(t.position);
    t = t * Pose{Vec3::Zero(), quat_about(joint.axis, state.angles[i])};
  }
  out.ee = t * model.flange_offset();
  return out;
}

Eigen::Matrix<double, 6, Eigen::Dynamic> arm_jacobian(const ArmModel& model, const Pose& base,
                                                      const JointState& state) {
  const int n = model.joint_count();
  Eigen::Matrix<double, 6, Eigen::Dynamic> jac(6, n);
  Pose t = base;
  std::vector<Vec3> origins(n);
  std::vector<Vec3> axes(n);
  for (int i = 0; i < n; ++i) {
    const auto& joint = model.joints()[i];
    t = t * joint.link;
    origins[i] = t.position;
    axes[i] = t.rotate(joint.axis);
    t = t * Pose{Vec3::Zero(), quat_about(joint.axis, state.angles[i])};
  }
  const Vec3 ee = (t * model.flange_offset()).position;
  for (int i = 0; i < n; ++i) {
    jac.block<3, 1>(0, i) = axes[i].cross(ee - origins[i]);
    jac.block<3, 1>(3, i) = axes[i];
  }
  return jac;
}

namespace {

Vec3 orientation_error(const Quat& current, const Quat& target) {
  Quat rel = target * current.conjugate();
  if (rel.w() < 0) rel.coeffs() = -rel.coeffs();
  const Eigen::AngleAxisd aa(rel);
  return aa.axis() * aa.angle();
}

// Fixed perturbation patterns for deterministic IK restarts.
JointState restart_state(const ArmModel& model, const JointState& q_init, int attempt) {
  JointState q = q_init;
  for (int i = 0; i < model.joint_count(); ++i) {
    const double sign = ((i + attempt) % 2 == 0) ? 1.0 : -1.0;
    q.angles[i] += sign * 0.3 * attempt;
  }
  model.clamp_to_limits(q);
  return q;
}

}  // namespace

JointState inverse_kinematics(const ArmModel& model, const Pose& base, const Pose& target,
                              const JointState& q_init, const IkOptions& options) {
  if (!target.position.allFinite()) {
    throw Error(Errc::Unreachable, "ik target is not finite");
  }
  if (!model.within_limits(q_init)) {
    throw Error(Errc::OutOfLimits, "ik seed outside joint limits");
  }
  const int n = model.joint_count();
  const int iters_per_attempt = 50;
  const int attempts = std::max(1, options.max_iters / iters_per_attempt);

  JointState q = q_init;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) q = restart_state(model, q_init, attempt);
    for (int iter = 0; iter < iters_per_attempt; ++iter) {
      const FkResult fk = forward_kinematics(model, base, q);
      const Vec3 pos_err = target.position - fk.ee.position;
      const Vec3 rot_err = orientation_error(fk.ee.orientation, target.orientation);
      if (pos_err.norm() <= options.pos_tol && rot_err.norm() <= options.ang_tol) {
        return q;
      }
      Eigen::Matrix<double, 6, 1> err;
      err.head<3>() = pos_err;
      err.tail<3>() = options.rot_weight * rot_err;

      Eigen::Matrix<double, 6, Eigen::Dynamic> jac = arm_jacobian(model, base, q);
      jac.bottomRows<3>() *= options.rot_weight;

      const Eigen::Matrix<double, 6, 6> w =
          jac * jac.transpose() +
          options.damping * options.damping * Eigen::Matrix<double, 6, 6>::Identity();
      Eigen::VectorXd dq = jac.transpose() * w.ldlt().solve(err);

      const double max_step = dq.cwiseAbs().maxCoeff();
      if (max_step > options.step_clamp) dq *= options.step_clamp / max_step;
      for (int i = 0; i < n; ++i) q.angles[i] += dq[i];
      model.clamp_to_limits(q);
    }
  }
  const FkResult fk = forward_kinematics(model, base, q);
  const double pos_res = (target.position - fk.ee.position).norm();
  throw Error(Errc::Unreachable, "ik residual " + std::to_string(pos_res) +
                                     " m above tolerance after " +
                                     std::to_string(options.max_iters) + " iterations");
}

void Trajectory::shift_ticks(int delta) {
  for (auto& s : samples) s.tick += delta;
  if (interaction) interaction->contact_tick += delta;
}

const JointState* Trajectory::state_at(int tick) const {
  auto it = std::lower_bound(samples.begin(), samples.end(), tick,
                             [](const Sample& s, int t) { return s.tick < t; });
  if (it == samples.end() || it->tick != tick) return nullptr;
  return &it->state;
}

const JointState& Trajectory::state_at_or_hold(int tick) const {
  if (samples.empty()) throw Error(Errc::EmptyInput, "trajectory has no samples");
  if (tick <= samples.front().tick) return samples.front().state;
  if (tick >= samples.back().tick) return samples.back().state;
  auto it = std::upper_bound(samples.begin(), samples.end(), tick,
                             [](int t, const Sample& s) { return t < s.tick; });
  return std::prev(it)->state;
}

bool trajectory_respects_step_bound(const Trajectory& traj, double dq_max) {
  for (std::size_t k = 1; k < traj.samples.size(); ++k) {
    const auto& a = traj.samples[k - 1];
    const auto& b = traj.samples[k];
    if (b.tick <= a.tick) return false;
    const double budget = dq_max * (b.tick - a.tick) + 1e-12;
    for (int i = 0; i < kArmJointCount; ++i) {
      if (std::abs(b.state.angles[i] - a.state.angles[i]) > budget) return false;
    }
  }
  return true;
}

int min_ticks_between(const JointState& from, const JointState& to, double dq_max) {
  double max_delta = 0.0;
  for (int i = 0; i < kArmJointCount; ++i) {
    max_delta = std::max(max_delta, std::abs(to.angles[i] - from.angles[i]));
  }
  return std::max(1, static_cast<int>(std::ceil(max_delta / dq_max - 1e-12)));
}

std::vector<Sample> interpolate(const JointState& from, const JointState& to, int ticks,
                                double dq_max) {
  if (ticks <= 0) throw Error(Errc::InvalidConfig, "tick count must be positive");
  if (ticks < min_ticks_between(from, to, dq_max)) {
    throw Error(Errc::TooFast, "interpolating over " + std::to_string(ticks) +
                                   " ticks exceeds the per-tick joint step bound");
  }
  std::vector<Sample> out;
  out.reserve(ticks);
  for (int k = 1; k <= ticks; ++k) {
    const double u = static_cast<double>(k) / ticks;
    JointState q;
    for (int i = 0; i < kArmJointCount; ++i) {
      q.angles[i] = from.angles[i] + u * (to.angles[i] - from.angles[i]);
    }
    q.gripper = from.gripper + u * (to.gripper - from.gripper);
    out.push_back({k, k == ticks ? to : q});
  }
  return out;
}

}  // namespace workcell
