#include "workcell/constraints.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <regex>
#include <set>

#include "workcell/errors.hpp"

namespace workcell {

const char* category_name(ConstraintCategory c) {
  switch (c) {
    case ConstraintCategory::Logical: return "Logical";
    case ConstraintCategory::Spatial: return "Spatial";
    case ConstraintCategory::Temporal: return "Temporal";
  }
  return "?";
}

const char* interface_kind_name(InterfaceKind k) {
  switch (k) {
    case InterfaceKind::ValidateDirection: return "ValidateDirection";
    case InterfaceKind::ValidateInteraction: return "ValidateInteraction";
    case InterfaceKind::ValidateSpatialOccupancy: return "ValidateSpatialOccupancy";
    case InterfaceKind::ValidateScheduling: return "ValidateScheduling";
  }
  return "?";
}

Constraint::Constraint(Payload payload) : payload_(std::move(payload)) {
  if (agents().empty()) {
    throw Error(Errc::InvalidConfig, "every constraint must involve at least one agent");
  }
  if (const auto* d = get_if<ApproachDirectionConstraint>()) {
    if (!(d->tolerance > 0)) throw Error(Errc::InvalidConfig, "direction tolerance must be positive");
  } else if (const auto* a = get_if<AlignedGrippersConstraint>()) {
    if (!(a->tolerance > 0)) throw Error(Errc::InvalidConfig, "alignment tolerance must be positive");
    if (a->agent_ids.size() < 2) throw Error(Errc::InvalidConfig, "alignment needs two agents");
  } else if (const auto* s = get_if<SimultaneousConstraint>()) {
    if (s->tolerance_ticks <= 0) throw Error(Errc::InvalidConfig, "simultaneity tolerance must be positive");
    if (s->agent_ids.size() < 2) throw Error(Errc::InvalidConfig, "simultaneity needs two agents");
  } else if (const auto* t = get_if<TimeShareSpaceConstraint>()) {
    if (t->agent_ids.size() < 2) throw Error(Errc::InvalidConfig, "time-sharing needs two agents");
  }
}

ConstraintCategory Constraint::category() const {
  struct Visitor {
    ConstraintCategory operator()(const ApproachDirectionConstraint&) { return ConstraintCategory::Logical; }
    ConstraintCategory operator()(const ContactPointConstraint&) { return ConstraintCategory::Logical; }
    ConstraintCategory operator()(const AlignedGrippersConstraint&) { return ConstraintCategory::Logical; }
    ConstraintCategory operator()(const CollisionAvoidanceConstraint&) { return ConstraintCategory::Spatial; }
    ConstraintCategory operator()(const KeepOutConstraint&) { return ConstraintCategory::Spatial; }
    ConstraintCategory operator()(const SequentialConstraint&) { return ConstraintCategory::Temporal; }
    ConstraintCategory operator()(const SimultaneousConstraint&) { return ConstraintCategory::Temporal; }
    ConstraintCategory operator()(const TimeShareSpaceConstraint&) { return ConstraintCategory::Temporal; }
  };
  return std::visit(Visitor{}, payload_);
}

std::vector<int> Constraint::agents() const {
  std::set<int> ids;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ApproachDirectionConstraint> ||
                      std::is_same_v<T, ContactPointConstraint>) {
          ids.insert(c.agent_id);
        } else if constexpr (std::is_same_v<T, CollisionAvoidanceConstraint>) {
          ids.insert(c.agent_id);
          ids.insert(c.others.begin(), c.others.end());
        } else if constexpr (std::is_same_v<T, SequentialConstraint>) {
          ids.insert(c.before_agent);
          ids.insert(c.after_agent);
        } else {
          ids.insert(c.agent_ids.begin(), c.agent_ids.end());
        }
      },
      payload_);
  return {ids.begin(), ids.end()};
}

void ConstraintSet::add(Constraint c) {
  switch (c.category()) {
    case ConstraintCategory::Logical: logical.push_back(std::move(c)); break;
    case ConstraintCategory::Spatial: spatial.push_back(std::move(c)); break;
    case ConstraintCategory::Temporal: temporal.push_back(std::move(c)); break;
  }
}

InterfaceKind dispatch(const Constraint& c) {
  struct Visitor {
    InterfaceKind operator()(const ApproachDirectionConstraint&) { return InterfaceKind::ValidateDirection; }
    InterfaceKind operator()(const AlignedGrippersConstraint&) { return InterfaceKind::ValidateDirection; }
    InterfaceKind operator()(const ContactPointConstraint&) { return InterfaceKind::ValidateInteraction; }
    InterfaceKind operator()(const CollisionAvoidanceConstraint&) { return InterfaceKind::ValidateSpatialOccupancy; }
    InterfaceKind operator()(const KeepOutConstraint&) { return InterfaceKind::ValidateSpatialOccupancy; }
    InterfaceKind operator()(const SequentialConstraint&) { return InterfaceKind::ValidateScheduling; }
    InterfaceKind operator()(const SimultaneousConstraint&) { return InterfaceKind::ValidateScheduling; }
    InterfaceKind operator()(const TimeShareSpaceConstraint&) { return InterfaceKind::ValidateScheduling; }
  };
  return std::visit(Visitor{}, c.payload());
}

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::vector<int> parse_agent_list(const std::string& text) {
  static const std::regex agent_re(R"(Agent_(\d+))");
  std::vector<int> out;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), agent_re);
       it != std::sregex_iterator(); ++it) {
    out.push_back(std::stoi((*it)[1].str()));
  }
  return out;
}

std::string render_agent_list(const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += (i + 1 == ids.size()) ? " and " : ", ";
    out += "Agent_" + std::to_string(ids[i]);
  }
  return out;
}

// One grammar template: a regex over the whole sentence plus a builder from
// the capture groups. `literal_prefix` feeds the ParseError span diagnostic.
struct Template {
  std::string name;
  ConstraintCategory category;
  std::regex pattern;
  std::string literal_prefix;
  std::function<Constraint(const std::smatch&)> build;
};

// Slot fragments. Object ids may be brace-wrapped placeholders such as
// {Object}; they parse fine and fail later at binding time.
const char* kObj = R"((\{?[A-Za-z_][A-Za-z0-9_]*\}?))";
const char* kLabel = R"(([A-Za-z_][A-Za-z0-9_]*))";
const char* kNum = R"((\d+(?:\.\d+)?))";
const char* kAgents = R"((Agent_\d+(?:(?:, | and )Agent_\d+)*))";

const std::vector<Template>& templates() {
  static const std::vector<Template> list = [] {
    std::vector<Template> t;
    auto add = [&](std::string name, ConstraintCategory cat, std::string pattern,
                   std::string prefix, std::function<Constraint(const std::smatch&)> build) {
      t.push_back({std::move(name), cat, std::regex(pattern), std::move(prefix), std::move(build)});
    };

    add("gripper-direction", ConstraintCategory::Logical,
        std::string(R"(^The gripper of Agent_(\d+) (?:must be|is) (?:(perpendicular|parallel) to|(facing)) )") +
            kObj + R"((?: when grasping)?(?: within )" + kNum + R"( degrees)?\.$)",
        "The gripper of Agent_",
        [](const std::smatch& m) {
          ApproachDirectionConstraint c;
          c.agent_id = std::stoi(m[1].str());
          if (m[3].matched) {
            c.relation = DirectionRelation::Facing;
          } else {
            c.relation = m[2].str() == "perpendicular" ? DirectionRelation::Perpendicular
                                                       : DirectionRelation::Parallel;
          }
          c.object_id = m[4].str();
          c.tolerance = m[5].matched ? std::stod(m[5].str()) * kDegToRad
                                     : kDefaultDirectionToleranceRad;
          return Constraint(c);
        });

    add("grasp-contact-point", ConstraintCategory::Logical,
        std::string(R"(^Agent_(\d+) must grasp )") + kObj + R"( at its )" + kLabel + R"( point\.$)",
        "Agent_",
        [](const std::smatch& m) {
          return Constraint(ContactPointConstraint{std::stoi(m[1].str()), m[2].str(), m[3].str()});
        });

    add("gripper-height-consistent", ConstraintCategory::Logical,
        std::string(R"(^Keep the gripper height consistent between )") + kAgents +
            R"((?: to [^.]+)?(?: within )" + kNum + R"( m)?\.$)",
        "Keep the gripper height consistent between ",
        [](const std::smatch& m) {
          AlignedGrippersConstraint c;
          c.agent_ids = parse_agent_list(m[1].str());
          c.tolerance = m[2].matched ? std::stod(m[2].str()) : kDefaultAlignmentTolerance;
          return Constraint(c);
        });

    add("gripper-height-consistent-alt", ConstraintCategory::Logical,
        std::string("^") + kAgents + R"( must maintain a consistent gripper height\.$)", "Agent_",
        [](const std::smatch& m) {
          return Constraint(AlignedGrippersConstraint{parse_agent_list(m[1].str()),
                                                      kDefaultAlignmentTolerance});
        });

    add("collision-avoidance-all", ConstraintCategory::Spatial,
        R"(^Avoid collision between Agent_(\d+) and other Agents\.$)",
        "Avoid collision between Agent_",
        [](const std::smatch& m) {
          return Constraint(CollisionAvoidanceConstraint{std::stoi(m[1].str()), true, {}});
        });

    add("collision-avoidance-list", ConstraintCategory::Spatial,
        std::string(R"(^Avoid collision between Agent_(\d+) and )") + kAgents + R"(\.$)",
        "Avoid collision between Agent_",
        [](const std::smatch& m) {
          return Constraint(CollisionAvoidanceConstraint{std::stoi(m[1].str()), false,
                                                         parse_agent_list(m[2].str())});
        });

    add("collision-avoidance-alt", ConstraintCategory::Spatial,
        R"(^Agent_(\d+) must not intersect with the trajectories of other agents\.$)", "Agent_",
        [](const std::smatch& m) {
          return Constraint(CollisionAvoidanceConstraint{std::stoi(m[1].str()), true, {}});
        });

    add("keep-out-shared-area", ConstraintCategory::Spatial,
        std::string(R"(^Agent_(\d+) should not occupy the same space as Agent_(\d+) in the )") +
            kLabel + R"( area\.$)",
        "Agent_",
        [](const std::smatch& m) {
          return Constraint(KeepOutConstraint{{std::stoi(m[1].str()), std::stoi(m[2].str())},
                                              m[3].str()});
        });

    add("keep-out", ConstraintCategory::Spatial,
        std::string(R"(^Agent_(\d+) must stay out of the )") + kLabel + R"( area\.$)", "Agent_",
        [](const std::smatch& m) {
          return Constraint(KeepOutConstraint{{std::stoi(m[1].str())}, m[2].str()});
        });

    add("sequential", ConstraintCategory::Temporal,
        R"(^Agent_(\d+) must complete the task before Agent_(\d+) can begin their action\.$)",
        "Agent_",
        [](const std::smatch& m) {
          return Constraint(SequentialConstraint{std::stoi(m[1].str()), "",
                                                 std::stoi(m[2].str()), ""});
        });

    add("sequential-alt", ConstraintCategory::Temporal,
        R"(^Agent_(\d+) must [^.]+ only after Agent_(\d+) [^.]+\.$)", "Agent_",
        [](const std::smatch& m) {
          // "A must ... only after B ..." means B precedes A.
          return Constraint(SequentialConstraint{std::stoi(m[2].str()), "",
                                                 std::stoi(m[1].str()), ""});
        });

    add("simultaneous", ConstraintCategory::Temporal,
        std::string("^") + kAgents +
            R"( perform tasks simultaneously without interference(?: within (\d+) ticks)?\.$)",
        "Agent_",
        [](const std::smatch& m) {
          SimultaneousConstraint c;
          c.agent_ids = parse_agent_list(m[1].str());
          c.tolerance_ticks =
              m[2].matched ? std::stoi(m[2].str()) : kDefaultSimultaneityToleranceTicks;
          return Constraint(c);
        });

    add("simultaneous-alt", ConstraintCategory::Temporal,
        std::string("^") + kAgents + R"( must perform their actions simultaneously\.$)", "Agent_",
        [](const std::smatch& m) {
          return Constraint(SimultaneousConstraint{parse_agent_list(m[1].str()),
                                                   kDefaultSimultaneityToleranceTicks});
        });

    add("time-share-space", ConstraintCategory::Temporal,
        std::string("^") + kAgents + R"( could share the same space chronologically\.$)", "Agent_",
        [](const std::smatch& m) {
          return Constraint(TimeShareSpaceConstraint{parse_agent_list(m[1].str())});
        });

    return t;
  }();
  return list;
}

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::size_t common_prefix_length(const std::string& a, const std::string& b) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return n;
}

}  // namespace

std::pair<Constraint, ConstraintCategory> parse_any_constraint(std::string_view sentence) {
  const std::string text = trim(sentence);
  if (text.empty()) {
    throw SentenceParseError("", 0, grammar_template_names());
  }
  for (const auto& tmpl : templates()) {
    std::smatch m;
    if (std::regex_match(text, m, tmpl.pattern)) {
      return {tmpl.build(m), tmpl.category};
    }
  }
  std::size_t span = 0;
  for (const auto& tmpl : templates()) {
    span = std::max(span, common_prefix_length(text, tmpl.literal_prefix));
  }
  throw SentenceParseError(text, span, grammar_template_names());
}

Constraint parse_constraint(ConstraintCategory category, std::string_view sentence) {
  auto [constraint, matched_category] = parse_any_constraint(sentence);
  if (matched_category != category) {
    throw Error(Errc::CategoryMismatch,
                std::string("sentence parses as ") + category_name(matched_category) +
                    " but was declared " + category_name(category) + ": \"" + trim(sentence) +
                    "\"");
  }
  return constraint;
}

std::string render_constraint(const Constraint& c) {
  struct Visitor {
    std::string operator()(const ApproachDirectionConstraint& d) {
      std::string relation;
      switch (d.relation) {
        case DirectionRelation::Perpendicular: relation = "perpendicular to "; break;
        case DirectionRelation::Parallel: relation = "parallel to "; break;
        case DirectionRelation::Facing: relation = "facing "; break;
      }
      std::string out = "The gripper of Agent_" + std::to_string(d.agent_id) + " must be " +
                        relation + d.object_id;
      if (std::abs(d.tolerance - kDefaultDirectionToleranceRad) > 1e-12) {
        out += " within " + format_number(d.tolerance / kDegToRad) + " degrees";
      }
      return out + ".";
    }
    std::string operator()(const ContactPointConstraint& c) {
      return "Agent_" + std::to_string(c.agent_id) + " must grasp " + c.object_id + " at its " +
             c.annotation_label + " point.";
    }
    std::string operator()(const AlignedGrippersConstraint& a) {
      std::string out = "Keep the gripper height consistent between " +
                        render_agent_list(a.agent_ids);
      if (std::abs(a.tolerance - kDefaultAlignmentTolerance) > 1e-12) {
        out += " within " + format_number(a.tolerance) + " m";
      }
      return out + ".";
    }
    std::string operator()(const CollisionAvoidanceConstraint& c) {
      std::string out = "Avoid collision between Agent_" + std::to_string(c.agent_id) + " and ";
      out += c.against_all ? "other Agents" : render_agent_list(c.others);
      return out + ".";
    }
    std::string operator()(const KeepOutConstraint& k) {
      if (k.agent_ids.size() == 2) {
        return "Agent_" + std::to_string(k.agent_ids[0]) +
               " should not occupy the same space as Agent_" + std::to_string(k.agent_ids[1]) +
               " in the " + k.region + " area.";
      }
      return "Agent_" + std::to_string(k.agent_ids[0]) + " must stay out of the " + k.region +
             " area.";
    }
    std::string operator()(const SequentialConstraint& s) {
      return "Agent_" + std::to_string(s.before_agent) +
             " must complete the task before Agent_" + std::to_string(s.after_agent) +
             " can begin their action.";
    }
    std::string operator()(const SimultaneousConstraint& s) {
      std::string out = render_agent_list(s.agent_ids) +
                        " perform tasks simultaneously without interference";
      if (s.tolerance_ticks != kDefaultSimultaneityToleranceTicks) {
        out += " within " + std::to_string(s.tolerance_ticks) + " ticks";
      }
      return out + ".";
    }
    std::string operator()(const TimeShareSpaceConstraint& t) {
      return render_agent_list(t.agent_ids) + " could share the same space chronologically.";
    }
  };
  return std::visit(Visitor{}, c.payload());
}

std::vector<std::string> grammar_template_names() {
  std::vector<std::string> out;
  for (const auto& t : templates()) out.push_back(t.name);
  return out;
}

}  // namespace workcell
