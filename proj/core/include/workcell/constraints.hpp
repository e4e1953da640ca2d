#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "workcell/geometry.hpp"

namespace workcell {

enum class ConstraintCategory { Logical, Spatial, Temporal };
enum class DirectionRelation { Perpendicular, Parallel, Facing };

/// The four concrete validation interfaces constraints dispatch to.
enum class InterfaceKind {
  ValidateDirection,
  ValidateInteraction,
  ValidateSpatialOccupancy,
  ValidateScheduling,
};

const char* category_name(ConstraintCategory c);
const char* interface_kind_name(InterfaceKind k);

inline constexpr double kDefaultDirectionToleranceRad = 0.2617993877991494;  // 15 degrees
inline constexpr double kDefaultAlignmentTolerance = 0.02;                   // m
inline constexpr int kDefaultSimultaneityToleranceTicks = 10;                // 0.5 s at 20 ticks/s

// --- Logical ---

struct ApproachDirectionConstraint {
  int agent_id{0};
  std::string object_id;
  DirectionRelation relation{DirectionRelation::Facing};
  double tolerance{kDefaultDirectionToleranceRad};
  bool operator==(const ApproachDirectionConstraint&) const = default;
};

struct ContactPointConstraint {
  int agent_id{0};
  std::string object_id;
  std::string annotation_label;
  bool operator==(const ContactPointConstraint&) const = default;
};

struct AlignedGrippersConstraint {
  std::vector<int> agent_ids;  // height axis only
  double tolerance{kDefaultAlignmentTolerance};
  bool operator==(const AlignedGrippersConstraint&) const = default;
};

// --- Spatial ---

struct CollisionAvoidanceConstraint {
  int agent_id{0};
  bool against_all{true};
  std::vector<int> others;  // used when !against_all
  bool operator==(const CollisionAvoidanceConstraint&) const = default;
};

struct KeepOutConstraint {
  std::vector<int> agent_ids;
  std::string region;  // named region resolved from the task definition
  bool operator==(const KeepOutConstraint&) const = default;
};

// --- Temporal ---

struct SequentialConstraint {
  int before_agent{0};
  std::string before_subgoal;  // empty = the agent's subgoal in the active window
  int after_agent{0};
  std::string after_subgoal;
  bool operator==(const SequentialConstraint&) const = default;
};

struct SimultaneousConstraint {
  std::vector<int> agent_ids;
  int tolerance_ticks{kDefaultSimultaneityToleranceTicks};
  bool operator==(const SimultaneousConstraint&) const = default;
};

struct TimeShareSpaceConstraint {
  std::vector<int> agent_ids;
  bool operator==(const TimeShareSpaceConstraint&) const = default;
};

class Constraint {
 public:
  using Payload = std::variant<ApproachDirectionConstraint, ContactPointConstraint,
                               AlignedGrippersConstraint, CollisionAvoidanceConstraint,
                               KeepOutConstraint, SequentialConstraint, SimultaneousConstraint,
                               TimeShareSpaceConstraint>;

  Constraint(Payload payload);  // NOLINT: implicit by design, validates invariants

  ConstraintCategory category() const;
  const Payload& payload() const { return payload_; }

  /// Every agent the constraint names, ascending, deduplicated.
  std::vector<int> agents() const;

  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&payload_);
  }

  bool operator==(const Constraint& other) const { return payload_ == other.payload_; }

 private:
  Payload payload_;
};

/// Partition of a constraint set into the three categories, declaration order
/// preserved within each.
struct ConstraintSet {
  std::vector<Constraint> logical;
  std::vector<Constraint> spatial;
  std::vector<Constraint> temporal;

  void add(Constraint c);
  std::size_t size() const { return logical.size() + spatial.size() + temporal.size(); }
  bool empty() const { return size() == 0; }
};

/// Parses one controlled-grammar constraint sentence. Throws
/// SentenceParseError when no template matches and Error(CategoryMismatch)
/// when the matched template belongs to a different category.
Constraint parse_constraint(ConstraintCategory category, std::string_view sentence);

/// Parses against every template, returning the constraint and its category.
std::pair<Constraint, ConstraintCategory> parse_any_constraint(std::string_view sentence);

/// Canonical sentence for a constraint; parse(render(c)) == c.
std::string render_constraint(const Constraint& c);

/// Maps a constraint to the validation interface that evaluates it. Total.
InterfaceKind dispatch(const Constraint& c);

/// Names of every grammar template, for diagnostics and docs.
std::vector<std::string> grammar_template_names();

}  // namespace workcell
