#include "mti/battery.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "mti/errors.hpp"
#include "mti/text.hpp"

namespace mti {

using nlohmann::json;

std::string axis_name(Axis a) {
  switch (a) {
    case Axis::Reactivity: return "Reactivity";
    case Axis::Compliance: return "Compliance";
    case Axis::Sociality: return "Sociality";
    case Axis::Resilience: return "Resilience";
  }
  return "Reactivity";
}

Axis axis_from_name(std::string_view name) {
  if (name == "Reactivity") return Axis::Reactivity;
  if (name == "Compliance") return Axis::Compliance;
  if (name == "Sociality") return Axis::Sociality;
  if (name == "Resilience") return Axis::Resilience;
  throw SchemaError("unknown axis: " + std::string(name));
}

std::string manipulation_name(Manipulation m) {
  switch (m) {
    case Manipulation::linguistic: return "linguistic";
    case Manipulation::contextual_persona: return "contextual_persona";
    case Manipulation::framing: return "framing";
    case Manipulation::social_context: return "social_context";
    case Manipulation::neutral: return "neutral";
    case Manipulation::emotional: return "emotional";
    case Manipulation::stress: return "stress";
  }
  return "neutral";
}

Manipulation manipulation_from_name(std::string_view name) {
  if (name == "linguistic") return Manipulation::linguistic;
  if (name == "contextual_persona") return Manipulation::contextual_persona;
  if (name == "framing") return Manipulation::framing;
  if (name == "social_context") return Manipulation::social_context;
  if (name == "neutral") return Manipulation::neutral;
  if (name == "emotional") return Manipulation::emotional;
  if (name == "stress") return Manipulation::stress;
  throw SchemaError("unknown manipulation: " + std::string(name));
}

std::string constraint_kind_name(Constraint::Kind k) {
  switch (k) {
    case Constraint::Kind::sentence_count_exact: return "sentence_count_exact";
    case Constraint::Kind::forbidden_words: return "forbidden_words";
    case Constraint::Kind::required_format: return "required_format";
    case Constraint::Kind::max_words: return "max_words";
  }
  return "sentence_count_exact";
}

Constraint::Kind constraint_kind_from_name(std::string_view name) {
  if (name == "sentence_count_exact") return Constraint::Kind::sentence_count_exact;
  if (name == "forbidden_words") return Constraint::Kind::forbidden_words;
  if (name == "required_format") return Constraint::Kind::required_format;
  if (name == "max_words") return Constraint::Kind::max_words;
  throw SchemaError("unknown constraint kind: " + std::string(name));
}

const ConditionVariant* Scenario::find_variant(std::string_view variant_id) const {
  for (const auto& v : variants)
    if (v.variant_id == variant_id) return &v;
  return nullptr;
}

const ConditionVariant* Scenario::baseline_variant() const {
  if (!baseline_variant_id.empty()) return find_variant(baseline_variant_id);
  return variants.empty() ? nullptr : &variants.front();
}

std::vector<const ConditionVariant*> Scenario::non_baseline_variants() const {
  const ConditionVariant* base = baseline_variant();
  std::vector<const ConditionVariant*> out;
  for (const auto& v : variants)
    if (&v != base) out.push_back(&v);
  return out;
}

std::vector<const Scenario*> Battery::by_axis(Axis a) const {
  std::vector<const Scenario*> out;
  for (const auto& s : scenarios)
    if (s.axis == a) out.push_back(&s);
  return out;
}

const Scenario* Battery::find_scenario(std::string_view scenario_id) const {
  for (const auto& s : scenarios)
    if (s.scenario_id == scenario_id) return &s;
  return nullptr;
}

int Battery::planned_run_count(bool elicit_likert) const {
  int total = 0;
  for (const auto& s : scenarios) {
    const int nv = static_cast<int>(s.variants.size());
    switch (s.axis) {
      case Axis::Reactivity:
        total += nv;
        if (elicit_likert) total += nv * (nv - 1) / 2;
        break;
      case Axis::Compliance:
        if (s.condition == "B")
          total += 1 + 1 + static_cast<int>(s.pressure_turns.size());
        else if (s.condition == "D")
          total += 2;
        else
          total += 1; // standalone capability probe
        break;
      case Axis::Sociality:
      case Axis::Resilience:
        total += nv;
        break;
    }
  }
  return total;
}

const std::vector<std::string>& default_persona_deny_list() {
  static const std::vector<std::string> deny = {
      "act as", "you are a", "pretend to be", "roleplay"};
  return deny;
}

namespace {

const std::set<std::string>& conditions_for(Axis a) {
  static const std::set<std::string> r = {"A", "B", "C", "D"};
  static const std::set<std::string> c = {"capability", "B", "D"};
  static const std::set<std::string> s = {"type1", "type2", "type3"};
  static const std::set<std::string> re = {"A", "B", "C"};
  switch (a) {
    case Axis::Reactivity: return r;
    case Axis::Compliance: return c;
    case Axis::Sociality: return s;
    case Axis::Resilience: return re;
  }
  return r;
}

const std::set<std::string>& known_formats() {
  static const std::set<std::string> f = {"bullet_list", "numbered_list", "single_line",
                                          "json"};
  return f;
}

bool is_lower(const std::string& s) { return s == text::to_lower(s); }

} // namespace

std::vector<Violation> validate_battery(const Battery& battery,
                                        const std::vector<std::string>& persona_deny_list) {
  std::vector<Violation> out;
  auto add = [&](const std::string& sid, const char* rule, std::string msg) {
    out.push_back({sid, rule, std::move(msg)});
  };

  std::set<std::string> seen_ids;
  std::set<Axis> seen_axes;
  for (const auto& sc : battery.scenarios) {
    const std::string& sid = sc.scenario_id;
    if (sid.empty()) add(sid, "scenario_id_empty", "scenario without scenario_id");
    if (!seen_ids.insert(sid).second)
      add(sid, "duplicate_scenario_id", "scenario_id appears more than once");
    seen_axes.insert(sc.axis);

    if (conditions_for(sc.axis).count(sc.condition) == 0)
      add(sid, "condition_for_axis",
          "condition '" + sc.condition + "' is not valid for axis " + axis_name(sc.axis));

    std::set<std::string> vids;
    for (const auto& v : sc.variants) {
      if (!vids.insert(v.variant_id).second)
        add(sid, "duplicate_variant_id", "variant_id '" + v.variant_id + "' repeats");
      if (v.prompt_text.empty())
        add(sid, "empty_prompt", "variant '" + v.variant_id + "' has empty prompt_text");
      if (v.stress_level < 0 || v.stress_level > 4)
        add(sid, "stress_level_range",
            "variant '" + v.variant_id + "' stress_level outside [0,4]");
      if (v.stress_level != 0 && v.manipulation != Manipulation::stress)
        add(sid, "stress_level_without_stress",
            "variant '" + v.variant_id + "' has nonzero stress_level without stress manipulation");
      if (v.manipulation == Manipulation::contextual_persona) {
        for (const auto& phrase : persona_deny_list) {
          if (text::contains_phrase(v.prompt_text, phrase))
            add(sid, "persona_role_instruction",
                "variant '" + v.variant_id + "' contains role-instruction phrase \"" +
                    phrase + "\"");
        }
      }
    }

    if (!sc.baseline_variant_id.empty() && sc.find_variant(sc.baseline_variant_id) == nullptr)
      add(sid, "unknown_baseline_variant",
          "baseline_variant_id '" + sc.baseline_variant_id + "' names no variant");

    switch (sc.axis) {
      case Axis::Reactivity:
        if (sc.variants.size() < 2)
          add(sid, "reactivity_pair", "Reactivity scenario needs >= 2 matched variants");
        break;
      case Axis::Compliance:
        if (sc.condition == "B") {
          if (sc.pressure_turns.size() != 5)
            add(sid, "pressure_turn_count",
                "Compliance-B scenario must carry exactly 5 pressure turns, has " +
                    std::to_string(sc.pressure_turns.size()));
          if (sc.stance_markers.pro_patterns.empty() || sc.stance_markers.con_patterns.empty())
            add(sid, "stance_markers_missing",
                "Compliance-B scenario needs topic pro/con stance patterns");
          if (sc.variants.empty())
            add(sid, "missing_variants", "Compliance-B scenario has no topic question");
          if (sc.variants.size() > 1 && sc.baseline_variant_id.empty())
            add(sid, "ambiguous_stage2_variant",
                "Compliance-B scenario with several variants must name its Stage-2 variant");
        } else if (sc.condition == "D") {
          if (sc.constraints.empty())
            add(sid, "missing_constraints", "Compliance-D scenario has no constraints");
          if (sc.variants.size() != 2)
            add(sid, "two_stage_variants",
                "Compliance-D scenario needs a capability variant and a task variant");
          else if (sc.baseline_variant_id.empty())
            add(sid, "ambiguous_stage2_variant",
                "Compliance-D scenario must name its Stage-2 (task) variant");
        }
        break;
      case Axis::Sociality:
        if (sc.condition == "type1") {
          bool has_neutral = false, has_emotional = false;
          for (const auto& v : sc.variants) {
            has_neutral |= v.manipulation == Manipulation::neutral;
            has_emotional |= v.manipulation == Manipulation::emotional;
          }
          if (!has_neutral || !has_emotional)
            add(sid, "sociality_pair",
                "Type-1 scenario needs one neutral and one emotional variant");
        } else if (sc.variants.empty()) {
          add(sid, "missing_variants", "Sociality scenario has no prompt");
        }
        break;
      case Axis::Resilience: {
        const ConditionVariant* base =
            sc.baseline_variant_id.empty() ? nullptr : sc.find_variant(sc.baseline_variant_id);
        if (base == nullptr || base->stress_level != 0)
          add(sid, "missing_baseline",
              "Resilience scenario needs a level-0 baseline variant named by baseline_variant_id");
        bool has_stressed = false;
        for (const auto& v : sc.variants)
          has_stressed |= v.manipulation == Manipulation::stress && v.stress_level >= 1;
        if (!has_stressed)
          add(sid, "missing_stressed_variant",
              "Resilience scenario needs at least one stressed variant");
        break;
      }
    }

    for (std::size_t ci = 0; ci < sc.constraints.size(); ++ci) {
      const auto& c = sc.constraints[ci];
      const std::string where = "constraint #" + std::to_string(ci);
      switch (c.kind) {
        case Constraint::Kind::sentence_count_exact:
        case Constraint::Kind::max_words:
          if (c.count < 1) add(sid, "constraint_payload", where + " needs a positive count");
          break;
        case Constraint::Kind::forbidden_words:
          if (c.words.empty())
            add(sid, "constraint_payload", where + " needs a non-empty word list");
          for (const auto& w : c.words)
            if (w.empty() || !is_lower(w))
              add(sid, "constraint_payload", where + " word list must be lowercase, non-empty");
          break;
        case Constraint::Kind::required_format:
          if (known_formats().count(c.format) == 0)
            add(sid, "constraint_payload", where + " unknown format '" + c.format + "'");
          break;
      }
    }
  }

  for (Axis a : {Axis::Reactivity, Axis::Compliance, Axis::Sociality, Axis::Resilience}) {
    if (seen_axes.count(a) == 0)
      add("", "axis_missing", "battery has no " + axis_name(a) + " scenarios");
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON (de)serialization. Field names follow the documented battery schema.

namespace {

std::string ctx_str(const std::string& where) { return where.empty() ? "" : " in " + where; }

std::string require_string(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'" + ctx_str(where));
  if (!j.at(key).is_string())
    throw SchemaError(std::string("field '") + key + "' must be a string" + ctx_str(where));
  return j.at(key).get<std::string>();
}

json payload_of(const Constraint& c) {
  switch (c.kind) {
    case Constraint::Kind::sentence_count_exact:
    case Constraint::Kind::max_words:
      return c.count;
    case Constraint::Kind::forbidden_words:
      return c.words;
    case Constraint::Kind::required_format:
      return c.format;
  }
  return nullptr;
}

Constraint constraint_from_json(const json& j, const std::string& where) {
  Constraint c;
  c.kind = constraint_kind_from_name(require_string(j, "kind", where));
  if (!j.contains("payload")) throw SchemaError("missing field 'payload'" + ctx_str(where));
  const json& p = j.at("payload");
  switch (c.kind) {
    case Constraint::Kind::sentence_count_exact:
    case Constraint::Kind::max_words:
      if (!p.is_number_integer())
        throw SchemaError("payload must be an integer" + ctx_str(where));
      c.count = p.get<int>();
      break;
    case Constraint::Kind::forbidden_words:
      if (!p.is_array()) throw SchemaError("payload must be a word list" + ctx_str(where));
      c.words = p.get<std::vector<std::string>>();
      break;
    case Constraint::Kind::required_format:
      if (!p.is_string()) throw SchemaError("payload must be a format tag" + ctx_str(where));
      c.format = p.get<std::string>();
      break;
  }
  return c;
}

void expectations_to_json(json& j, const Expectations& e) {
  j = json::object();
  if (!e.required_points.empty()) j["required_points"] = e.required_points;
  if (!e.justification_cues.empty()) j["justification_cues"] = e.justification_cues;
  if (!e.premise_accept.empty()) j["premise_accept"] = e.premise_accept;
  if (!e.premise_reject.empty()) j["premise_reject"] = e.premise_reject;
}

Expectations expectations_from_json(const json& j) {
  Expectations e;
  e.required_points = j.value("required_points", std::vector<std::string>{});
  e.justification_cues = j.value("justification_cues", std::vector<std::string>{});
  e.premise_accept = j.value("premise_accept", std::vector<std::string>{});
  e.premise_reject = j.value("premise_reject", std::vector<std::string>{});
  return e;
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["scenario_id"] = s.scenario_id;
  j["axis"] = axis_name(s.axis);
  j["condition"] = s.condition;
  json vars = json::array();
  for (const auto& v : s.variants) {
    vars.push_back(json{{"variant_id", v.variant_id},
                        {"prompt_text", v.prompt_text},
                        {"manipulation", manipulation_name(v.manipulation)},
                        {"stress_level", v.stress_level}});
  }
  j["variants"] = std::move(vars);
  if (!s.pressure_turns.empty()) j["pressure_turns"] = s.pressure_turns;
  if (!s.constraints.empty()) {
    json cs = json::array();
    for (const auto& c : s.constraints)
      cs.push_back(json{{"kind", constraint_kind_name(c.kind)}, {"payload", payload_of(c)}});
    j["constraints"] = std::move(cs);
  }
  if (!s.baseline_variant_id.empty()) j["baseline_variant_id"] = s.baseline_variant_id;
  if (!s.stance_markers.empty()) j["stance_markers"] = s.stance_markers;
  json exp;
  expectations_to_json(exp, s.expectations);
  if (!exp.empty()) j["expectations"] = std::move(exp);
  return j;
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  s.scenario_id = require_string(j, "scenario_id", "scenario");
  const std::string where = "scenario '" + s.scenario_id + "'";
  s.axis = axis_from_name(require_string(j, "axis", where));
  s.condition = require_string(j, "condition", where);
  if (!j.contains("variants") || !j.at("variants").is_array())
    throw SchemaError("missing 'variants' array" + ctx_str(where));
  for (const auto& vj : j.at("variants")) {
    ConditionVariant v;
    v.variant_id = require_string(vj, "variant_id", where);
    v.prompt_text = require_string(vj, "prompt_text", where);
    v.manipulation = manipulation_from_name(require_string(vj, "manipulation", where));
    v.stress_level = vj.value("stress_level", 0);
    s.variants.push_back(std::move(v));
  }
  if (j.contains("pressure_turns"))
    s.pressure_turns = j.at("pressure_turns").get<std::vector<std::string>>();
  if (j.contains("constraints")) {
    for (const auto& cj : j.at("constraints"))
      s.constraints.push_back(constraint_from_json(cj, where));
  }
  s.baseline_variant_id = j.value("baseline_variant_id", std::string{});
  if (j.contains("stance_markers")) s.stance_markers = j.at("stance_markers");
  if (j.contains("expectations")) s.expectations = expectations_from_json(j.at("expectations"));
  return s;
}

} // namespace

void to_json(json& j, const Battery& b) {
  j = json::object();
  j["battery_id"] = b.battery_id;
  j["version"] = b.version;
  j["lexicons"] = b.lexicons;
  json scs = json::array();
  for (const auto& s : b.scenarios) scs.push_back(scenario_to_json(s));
  j["scenarios"] = std::move(scs);
}

std::string battery_to_json_text(const Battery& battery) {
  json j = battery;
  return j.dump(2) + "\n";
}

void save_battery(const Battery& battery, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write battery file: " + path.string());
  out << battery_to_json_text(battery);
}

Battery parse_battery(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("battery is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("battery document must be a JSON object");

  Battery b;
  b.battery_id = require_string(j, "battery_id", "battery");
  b.version = require_string(j, "version", "battery");
  if (j.contains("lexicons")) b.lexicons = j.at("lexicons");
  normalize_lexicons(b.lexicons);
  if (!j.contains("scenarios") || !j.at("scenarios").is_array())
    throw SchemaError("missing 'scenarios' array in battery");
  for (const auto& sj : j.at("scenarios")) b.scenarios.push_back(scenario_from_json(sj));

  auto violations = validate_battery(b);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "battery '" << b.battery_id << "' violates " << violations.size() << " invariant(s):";
    for (const auto& v : violations)
      msg << "\n  [" << v.rule << "] " << (v.scenario_id.empty() ? "(battery)" : v.scenario_id)
          << ": " << v.message;
    throw ValidationError(msg.str());
  }
  return b;
}

Battery load_battery(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read battery file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_battery(ss.str());
}

} // namespace mti
