#include "riskbench/pilot/transcript.h"

#include <cctype>
#include <cmath>

#include "riskbench/util/error.h"

namespace riskbench::pilot {
namespace {

constexpr std::string_view kStateNames[] = {
    "Initializing", "Gathering", "Consolidating", "Concluding", "Finalized"};
constexpr std::string_view kClassNames[] = {
    "Uncertain", "Control", "Mild", "Borderline", "Moderate", "Severe", "Extreme"};

[[noreturn]] void Violation(const std::string& path, const std::string& reason) {
  throw SchemaError(ErrorCode::kSchemaViolation, path, reason);
}

const Json& Field(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) Violation(path + "/" + key, "required field missing");
  return *it;
}

std::string StringField(const Json& obj, const char* key,
                        const std::string& path) {
  const Json& v = Field(obj, key, path);
  if (!v.is_string()) Violation(path + "/" + key, "expected string");
  return v.get<std::string>();
}

int IntIn(const Json& v, int lo, int hi, const std::string& path) {
  // 3.0 is accepted as 3; 3.5 is not.
  if (v.is_number_integer()) {
    const auto x = v.get<long long>();
    if (x >= lo && x <= hi) return static_cast<int>(x);
  } else if (v.is_number_float()) {
    const double x = v.get<double>();
    if (x == std::floor(x) && x >= lo && x <= hi) return static_cast<int>(x);
  } else {
    Violation(path, "expected integer");
  }
  Violation(path, "expected integer in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
}

// "q07" or "q07_<anything>" -> 7; 0 otherwise.
int ItemNumber(std::string_view key) {
  if (key.size() < 3 || key[0] != 'q' || !std::isdigit(static_cast<unsigned char>(key[1])) ||
      !std::isdigit(static_cast<unsigned char>(key[2]))) {
    return 0;
  }
  if (key.size() > 3 && key[3] != '_') return 0;
  const int n = (key[1] - '0') * 10 + (key[2] - '0');
  return n >= 1 && n <= kBdiItemCount ? n : 0;
}

Evaluation ParseEvaluation(const Json& j, const std::string& path) {
  if (!j.is_object()) Violation(path, "expected object");
  Evaluation e;
  e.assessment_turn =
      IntIn(Field(j, "assessment_turn", path), 1, 1 << 30, path + "/assessment_turn");

  const Json& state = Field(j, "assessment_state", path);
  if (!state.is_string()) Violation(path + "/assessment_state", "expected string");
  auto parsed_state = ParseState(state.get<std::string>());
  if (!parsed_state) {
    Violation(path + "/assessment_state",
              "unknown state '" + state.get<std::string>() + "'");
  }
  e.assessment_state = *parsed_state;

  const Json& complete = Field(j, "assessment_complete", path);
  if (!complete.is_boolean()) Violation(path + "/assessment_complete", "expected boolean");
  e.assessment_complete = complete.get<bool>();

  const Json& total = Field(j, "total_bdi_score", path);
  if (!total.is_null()) {
    e.total_bdi_score = IntIn(total, 0, kMaxBdiTotal, path + "/total_bdi_score");
  }

  const Json& cls = Field(j, "classification_suggestion", path);
  if (!cls.is_string()) {
    Violation(path + "/classification_suggestion", "expected string");
  }
  auto parsed_cls = ParseClassification(cls.get<std::string>());
  if (!parsed_cls) {
    Violation(path + "/classification_suggestion",
              "unknown classification '" + cls.get<std::string>() + "'");
  }
  e.classification_suggestion = *parsed_cls;

  const Json& conf = Field(j, "confidence", path);
  if (!conf.is_null()) {
    if (!conf.is_number()) Violation(path + "/confidence", "expected number");
    const double c = conf.get<double>();
    if (!(c >= 0.0 && c <= 1.0)) Violation(path + "/confidence", "expected value in [0, 1]");
    e.confidence = c;
  }

  const Json& symptoms = Field(j, "key_symptoms", path);
  if (!symptoms.is_array()) Violation(path + "/key_symptoms", "expected array");
  if (symptoms.size() > kMaxKeySymptoms) {
    Violation(path + "/key_symptoms", "more than 4 symptoms");
  }
  for (std::size_t i = 0; i < symptoms.size(); ++i) {
    if (!symptoms[i].is_string()) {
      Violation(path + "/key_symptoms/" + std::to_string(i), "expected string");
    }
    e.key_symptoms.push_back(symptoms[i].get<std::string>());
  }

  const std::string items_path = path + "/bdi_scores";
  const Json& items = Field(j, "bdi_scores", path);
  if (!items.is_object()) Violation(items_path, "expected object");
  std::array<bool, kBdiItemCount> seen{};
  for (const auto& [key, value] : items.items()) {
    const std::string item_path = items_path + "/" + key;
    const int n = ItemNumber(key);
    if (n == 0) Violation(item_path, "not a q01..q21 item key");
    if (seen[n - 1]) {
      throw SchemaError(ErrorCode::kMissingItem, item_path,
                        "item q" + std::string(n < 10 ? "0" : "") +
                            std::to_string(n) + " appears more than once");
    }
    seen[n - 1] = true;
    if (!value.is_object()) Violation(item_path, "expected object");
    ItemScore& item = e.bdi_scores[n - 1];
    item.key = key;
    item.score = IntIn(Field(value, "score", item_path), 0, 3, item_path + "/score");
    item.reason = StringField(value, "reason", item_path);
  }
  for (int n = 1; n <= kBdiItemCount; ++n) {
    if (!seen[n - 1]) {
      throw SchemaError(ErrorCode::kMissingItem, items_path,
                        "missing item q" + std::string(n < 10 ? "0" : "") +
                            std::to_string(n));
    }
  }
  return e;
}

}  // namespace

std::string_view StateName(AssessmentState state) {
  return kStateNames[static_cast<int>(state)];
}

std::optional<AssessmentState> ParseState(std::string_view name) {
  for (int i = 0; i < 5; ++i) {
    if (kStateNames[i] == name) return static_cast<AssessmentState>(i);
  }
  return std::nullopt;
}

std::string_view ClassificationName(Classification c) {
  return kClassNames[static_cast<int>(c)];
}

std::optional<Classification> ParseClassification(std::string_view name) {
  for (int i = 0; i < 7; ++i) {
    if (kClassNames[i] == name) return static_cast<Classification>(i);
  }
  return std::nullopt;
}

int Evaluation::ItemSum() const {
  int sum = 0;
  for (const auto& item : bdi_scores) sum += item.score;
  return sum;
}

Transcript TranscriptFromJson(const Json& json, const std::string& base_path) {
  if (!json.is_object()) Violation(base_path, "expected transcript object");
  Transcript t;
  t.model = StringField(json, "model", base_path);
  t.persona = StringField(json, "persona", base_path);
  const Json& turns = Field(json, "turns", base_path);
  if (!turns.is_array()) Violation(base_path + "/turns", "expected array");

  for (std::size_t i = 0; i < turns.size(); ++i) {
    const std::string path = base_path + "/turns/" + std::to_string(i);
    const Json& tj = turns[i];
    if (!tj.is_object()) Violation(path, "expected object");
    Turn turn;
    turn.input_message = StringField(tj, "input_message", path);
    turn.output_message = StringField(tj, "output_message", path);
    turn.next_step_reasoning = StringField(tj, "next_step_reasoning", path);
    turn.evaluation = ParseEvaluation(Field(tj, "evaluation", path), path + "/evaluation");
    if (!t.turns.empty()) {
      const Evaluation& prev = t.turns.back().evaluation;
      if (turn.evaluation.assessment_turn <= prev.assessment_turn) {
        Violation(path + "/evaluation/assessment_turn",
                  "turn numbers must strictly increase");
      }
      if (turn.evaluation.assessment_state < prev.assessment_state) {
        throw SchemaError(
            ErrorCode::kStateRegression, path + "/evaluation/assessment_state",
            std::string(StateName(turn.evaluation.assessment_state)) +
                " follows " + std::string(StateName(prev.assessment_state)));
      }
    }
    t.turns.push_back(std::move(turn));
  }
  return t;
}

Transcript ParseTranscript(std::string_view bytes) {
  return TranscriptFromJson(ParseJson(bytes, "transcript"));
}

std::vector<Transcript> ParseTranscriptFile(std::string_view bytes) {
  const Json json = ParseJson(bytes, "transcript file");
  std::vector<Transcript> out;
  if (json.is_array()) {
    for (std::size_t i = 0; i < json.size(); ++i) {
      out.push_back(TranscriptFromJson(json[i], "/" + std::to_string(i)));
    }
  } else {
    out.push_back(TranscriptFromJson(json));
  }
  return out;
}

OrderedJson TranscriptToJson(const Transcript& t) {
  OrderedJson turns = OrderedJson::array();
  for (const auto& turn : t.turns) {
    const Evaluation& e = turn.evaluation;
    OrderedJson items = OrderedJson::object();
    for (const auto& item : e.bdi_scores) {
      items[item.key] = {{"score", item.score}, {"reason", item.reason}};
    }
    OrderedJson eval{
        {"assessment_turn", e.assessment_turn},
        {"assessment_state", StateName(e.assessment_state)},
        {"assessment_complete", e.assessment_complete},
        {"total_bdi_score",
         e.total_bdi_score ? OrderedJson(*e.total_bdi_score) : OrderedJson(nullptr)},
        {"classification_suggestion", ClassificationName(e.classification_suggestion)},
        {"confidence", e.confidence ? OrderedJson(*e.confidence) : OrderedJson(nullptr)},
        {"key_symptoms", e.key_symptoms},
        {"bdi_scores", items}};
    turns.push_back({{"input_message", turn.input_message},
                     {"output_message", turn.output_message},
                     {"next_step_reasoning", turn.next_step_reasoning},
                     {"evaluation", eval}});
  }
  return OrderedJson{{"model", t.model}, {"persona", t.persona}, {"turns", turns}};
}

}  // namespace riskbench::pilot
