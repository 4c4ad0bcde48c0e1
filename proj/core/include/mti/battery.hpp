#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mti/lexicon.hpp"

namespace mti {

enum class Axis { Reactivity, Compliance, Sociality, Resilience };

std::string axis_name(Axis a);
Axis axis_from_name(std::string_view name);

enum class Manipulation {
  linguistic,
  contextual_persona,
  framing,
  social_context,
  neutral,
  emotional,
  stress,
};

std::string manipulation_name(Manipulation m);
Manipulation manipulation_from_name(std::string_view name);

/// One prompt of a scenario. Reactivity pairs, the two stages of a
/// Compliance scenario, and the stress ladder of a Resilience scenario are
/// all expressed as variants of a single scenario.
struct ConditionVariant {
  std::string variant_id;
  std::string prompt_text;
  Manipulation manipulation = Manipulation::neutral;
  int stress_level = 0; // nonzero only when manipulation == stress
};

/// A formatting constraint for Compliance Condition D. `payload` is
/// kind-specific: a count for sentence_count_exact/max_words, a lowercase
/// word list for forbidden_words, a format tag for required_format.
struct Constraint {
  enum class Kind { sentence_count_exact, forbidden_words, required_format, max_words };
  Kind kind = Kind::sentence_count_exact;
  int count = 0;
  std::vector<std::string> words;
  std::string format; // "bullet_list" | "numbered_list" | "single_line" | "json"
};

std::string constraint_kind_name(Constraint::Kind k);
Constraint::Kind constraint_kind_from_name(std::string_view name);

/// Rule-based quality checklists for the Resilience scorer. A complete
/// answer mentions every required point; a justified answer contains one of
/// the justification cues; Condition C additionally ships phrase lists that
/// detect acceptance vs. rejection of the embedded false premise.
struct Expectations {
  std::vector<std::string> required_points;
  std::vector<std::string> justification_cues;
  std::vector<std::string> premise_accept;
  std::vector<std::string> premise_reject;

  bool has_premise_check() const {
    return !premise_accept.empty() || !premise_reject.empty();
  }
};

struct Scenario {
  std::string scenario_id;
  Axis axis = Axis::Reactivity;
  // Per-axis condition tag: Reactivity A-D, Compliance capability/B/D,
  // Sociality type1-type3, Resilience A-C.
  std::string condition;
  std::vector<ConditionVariant> variants;
  std::vector<std::string> pressure_turns;  // Compliance B: exactly 5
  std::vector<Constraint> constraints;      // Compliance D
  // Resilience: the level-0 variant. Compliance B/D: the Stage-2 variant
  // (the remaining variant is the Stage-1 capability probe).
  std::string baseline_variant_id;
  StanceMarkers stance_markers;             // Compliance B topic vocabulary
  Expectations expectations;                // Resilience checklists

  const ConditionVariant* find_variant(std::string_view variant_id) const;
  const ConditionVariant* baseline_variant() const;
  /// Variants other than the baseline, in file order.
  std::vector<const ConditionVariant*> non_baseline_variants() const;
};

struct Battery {
  std::string battery_id;
  std::string version;
  LexiconSet lexicons;
  std::vector<Scenario> scenarios;

  std::vector<const Scenario*> by_axis(Axis a) const;
  const Scenario* find_scenario(std::string_view scenario_id) const;
  /// Total chat completions one full run issues (including Likert
  /// elicitations when enabled).
  int planned_run_count(bool elicit_likert = true) const;
};

struct Violation {
  std::string scenario_id; // empty for battery-level rules
  std::string rule;
  std::string message;
};

const std::vector<std::string>& default_persona_deny_list();

/// Structural + design-rule validation. Violations are data, not errors;
/// an empty result means the battery satisfies every invariant.
std::vector<Violation> validate_battery(
    const Battery& battery,
    const std::vector<std::string>& persona_deny_list = default_persona_deny_list());

/// Parses and validates. Throws ParseError (malformed JSON), SchemaError
/// (missing/ill-typed field) or ValidationError (invariant violation naming
/// the scenario).
Battery load_battery(const std::filesystem::path& path);
Battery parse_battery(const std::string& json_text);

std::string battery_to_json_text(const Battery& battery);
void save_battery(const Battery& battery, const std::filesystem::path& path);

void to_json(nlohmann::json& j, const Battery& b);

} // namespace mti
