#include "workcell/scene.hpp"

#include <algorithm>
#include <cmath>

#include "workcell/assets.hpp"
#include "workcell/errors.hpp"
#include "workcell/rng.hpp"

namespace workcell {

const InteractionAnnotation* Asset::find_annotation(std::string_view label) const {
  for (const auto& a : annotations) {
    if (a.label == label) return &a;
  }
  return nullptr;
}

const InteractionAnnotation& Asset::annotation(std::string_view label) const {
  const auto* a = find_annotation(label);
  if (!a) {
    throw Error(Errc::UnknownAnnotation,
                "asset '" + id + "' has no annotation '" + std::string(label) + "'");
  }
  return *a;
}

Aabb Asset::local_aabb() const {
  Aabb out{shape.front().center - shape.front().half_extents,
           shape.front().center + shape.front().half_extents};
  for (const auto& b : shape) {
    out = out.united({b.center - b.half_extents, b.center + b.half_extents});
  }
  return out;
}

void Asset::validate() const {
  if (id.empty()) throw Error(Errc::InvalidConfig, "asset id empty");
  if (shape.empty()) throw Error(Errc::InvalidConfig, "asset '" + id + "' has no shape boxes");
  for (const auto& b : shape) {
    if (!(b.half_extents.array() > 0).all()) {
      throw Error(Errc::InvalidConfig, "asset '" + id + "' has a non-positive half extent");
    }
  }
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const auto& a = annotations[i];
    if (a.label.empty()) throw Error(Errc::InvalidConfig, "asset '" + id + "' annotation label empty");
    for (std::size_t j = i + 1; j < annotations.size(); ++j) {
      if (annotations[j].label == a.label) {
        throw Error(Errc::InvalidConfig,
                    "asset '" + id + "' duplicates annotation '" + a.label + "'");
      }
    }
    if (a.allowed_directions.empty()) {
      throw Error(Errc::InvalidConfig,
                  "asset '" + id + "' annotation '" + a.label + "' has no directions");
    }
    for (const auto& d : a.allowed_directions) {
      if (std::abs(d.norm() - 1.0) > 1e-9) {
        throw Error(Errc::InvalidConfig,
                    "asset '" + id + "' annotation '" + a.label + "' direction not unit");
      }
    }
    if (!(a.angular_tolerance > 0.0) || a.angular_tolerance > 3.14159265358979323846 + 1e-12) {
      throw Error(Errc::InvalidConfig,
                  "asset '" + id + "' annotation '" + a.label + "' tolerance out of (0, pi]");
    }
  }
}

Vec3 ObjectInstance::annotation_world_point(std::string_view label) const {
  return pose.apply(asset->annotation(label).local_point);
}

Vec3 ObjectInstance::annotation_world_direction(std::string_view label, std::size_t index) const {
  const auto& ann = asset->annotation(label);
  if (index >= ann.allowed_directions.size()) {
    throw Error(Errc::IndexOutOfRange, "annotation direction index");
  }
  return pose.rotate(ann.allowed_directions[index]);
}

Aabb ObjectInstance::world_aabb() const {
  Aabb out = aabb_of(asset->shape.front(), pose);
  for (const auto& b : asset->shape) {
    out = out.united(aabb_of(b, pose));
  }
  return out;
}

Scene::Scene(uint64_t seed, Aabb table_region, const ArmModel* arm)
    : seed_(seed), table_region_(table_region), arm_(arm) {}

void Scene::add_agent(int id, const Pose& base, const JointState& joints) {
  if (has_agent(id)) throw Error(Errc::InvalidConfig, "duplicate agent id");
  agents_.push_back({id, base, joints});
  std::sort(agents_.begin(), agents_.end(),
            [](const AgentState& a, const AgentState& b) { return a.id < b.id; });
}

void Scene::add_object(std::string object_id, AssetPtr asset, const Pose& pose) {
  if (has_object(object_id)) throw Error(Errc::InvalidConfig, "duplicate object id");
  objects_.push_back({std::move(object_id), std::move(asset), pose, std::nullopt, {}});
}

const AgentState& Scene::agent(int id) const {
  for (const auto& a : agents_) {
    if (a.id == id) return a;
  }
  throw Error(Errc::UnknownAgent, "agent " + std::to_string(id));
}

AgentState& Scene::agent_mut(int id) {
  return const_cast<AgentState&>(agent(id));
}

const ObjectInstance& Scene::object(std::string_view id) const {
  for (const auto& o : objects_) {
    if (o.object_id == id) return o;
  }
  throw Error(Errc::UnknownObject, "object '" + std::string(id) + "'");
}

ObjectInstance& Scene::object_mut(std::string_view id) {
  return const_cast<ObjectInstance&>(object(id));
}

bool Scene::has_agent(int id) const {
  return std::any_of(agents_.begin(), agents_.end(),
                     [&](const AgentState& a) { return a.id == id; });
}

bool Scene::has_object(std::string_view id) const {
  return std::any_of(objects_.begin(), objects_.end(),
                     [&](const ObjectInstance& o) { return o.object_id == id; });
}

Pose Scene::ee_pose(int agent_id) const {
  const auto& a = agent(agent_id);
  return forward_kinematics(*arm_, a.base, a.joints).ee;
}

FkResult Scene::agent_fk(int agent_id) const {
  const auto& a = agent(agent_id);
  return forward_kinematics(*arm_, a.base, a.joints);
}

void Scene::set_joint_state(int agent_id, const JointState& state) {
  agent_mut(agent_id).joints = state;
  refresh_attached(agent_id);
}

void Scene::refresh_attached(int agent_id) {
  for (auto& o : objects_) {
    if (o.attachment && o.attachment->holder == agent_id) {
      o.pose = ee_pose(agent_id) * o.attachment->grasp_transform;
    }
  }
}

void Scene::attach(int agent_id, const std::string& object_id) {
  auto& obj = object_mut(object_id);
  if (obj.attachment) {
    throw Error(Errc::AlreadyHeld, "object '" + object_id + "' is already held by agent " +
                                       std::to_string(obj.attachment->holder));
  }
  if (held_object(agent_id)) {
    throw Error(Errc::AlreadyHeld,
                "agent " + std::to_string(agent_id) + " already holds an object");
  }
  const Pose ee = ee_pose(agent_id);
  const InteractionAnnotation* best = nullptr;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const auto& ann : obj.asset->annotations) {
    const double d = (obj.pose.apply(ann.local_point) - ee.position).norm();
    if (d < best_dist) {
      best_dist = d;
      best = &ann;
    }
  }
  if (!best || best_dist > kGraspDistance) {
    throw Error(Errc::TooFar, "EE is " + std::to_string(best_dist) +
                                  " m from the nearest interaction point of '" + object_id +
                                  "' (limit " + std::to_string(kGraspDistance) + ")");
  }
  Attachment att;
  att.holder = agent_id;
  att.grasp_transform = ee.inverse() * obj.pose;
  att.label = best->label;
  att.approach = obj.pose.rotate(best->allowed_directions.front());
  obj.attachment = att;
}

void Scene::detach(int agent_id) {
  for (auto& o : objects_) {
    if (o.attachment && o.attachment->holder == agent_id) {
      o.attachment.reset();  // pose stays frozen at its current value
      return;
    }
  }
  throw Error(Errc::NothingHeld, "agent " + std::to_string(agent_id) + " holds nothing");
}

void Scene::add_co_grasp(int agent_id, const std::string& object_id, const std::string& label) {
  auto& obj = object_mut(object_id);
  obj.asset->annotation(label);  // validates the label
  obj.co_grasps.push_back({agent_id, label});
}

void Scene::remove_co_grasps(int agent_id) {
  for (auto& o : objects_) {
    std::erase_if(o.co_grasps, [&](const CoGrasp& c) { return c.agent_id == agent_id; });
  }
}

const ObjectInstance* Scene::held_object(int agent_id) const {
  for (const auto& o : objects_) {
    if (o.attachment && o.attachment->holder == agent_id) return &o;
  }
  return nullptr;
}

std::vector<CoGraspBreak> Scene::co_grasp_violations(double threshold) const {
  std::vector<CoGraspBreak> out;
  for (const auto& o : objects_) {
    for (const auto& cg : o.co_grasps) {
      const Vec3 point = o.annotation_world_point(cg.label);
      const double d = (ee_pose(cg.agent_id).position - point).norm();
      if (d > threshold) out.push_back({o.object_id, cg.agent_id, d});
    }
  }
  return out;
}

void Scene::drop_object(const std::string& object_id) {
  auto& obj = object_mut(object_id);
  obj.attachment.reset();
  obj.co_grasps.clear();
  const Aabb aabb = obj.world_aabb();
  const double floor = table_region_.min.z();
  obj.pose.position.z() -= aabb.min.z() - floor;
}

void Scene::set_object_pose(const std::string& object_id, const Pose& pose) {
  object_mut(object_id).pose = pose;
}

Scene instantiate_scene(const SceneTemplate& tmpl, const AssetLibrary& assets, uint64_t seed) {
  Scene scene(seed, tmpl.table_region);
  for (const auto& [id, base] : tmpl.agent_bases) {
    scene.add_agent(id, base, panda_ready_state());
  }
  Rng rng(derive_seed(seed, "scene"));
  std::vector<Aabb> placed;
  for (const auto& obj : tmpl.objects) {
    AssetPtr asset = assets.get(obj.asset_id);
    bool ok = false;
    for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
      Vec3 offset(rng.uniform(obj.rect_min.x(), obj.rect_max.x()),
                  rng.uniform(obj.rect_min.y(), obj.rect_max.y()),
                  rng.uniform(obj.rect_min.z(), obj.rect_max.z()));
      const double yaw = rng.uniform(obj.yaw_min, obj.yaw_max);
      Pose pose = obj.nominal;
      pose.position += offset;
      pose.orientation = (quat_about(Vec3::UnitZ(), yaw) * pose.orientation).normalized();

      Aabb aabb = aabb_of(asset->shape.front(), pose);
      for (const auto& b : asset->shape) aabb = aabb.united(aabb_of(b, pose));
      if (!tmpl.table_region.contains(aabb)) continue;
      bool overlap = false;
      for (const auto& other : placed) {
        if (aabb.intersects(other)) {
          overlap = true;
          break;
        }
      }
      if (overlap) continue;
      scene.add_object(obj.object_id, asset, pose);
      placed.push_back(aabb);
      ok = true;
    }
    if (!ok) {
      throw Error(Errc::PlacementFailed,
                  "could not place object '" + obj.object_id + "' after 1000 attempts");
    }
  }
  return scene;
}

}  // namespace workcell
