#include "riskbench/pilot/submission.h"

#include <algorithm>
#include <set>

#include "riskbench/util/error.h"

namespace riskbench::pilot {

EdlChoice ParseEdlChoice(std::string_view name) {
  if (name == "finalized") return EdlChoice::kLastFinalized;
  if (name == "last") return EdlChoice::kLastTurn;
  Fail(ErrorCode::kInvalidConfig,
       "EDL choice must be finalized or last, got '" + std::string(name) + "'");
}

std::string_view EdlChoiceName(EdlChoice choice) {
  return choice == EdlChoice::kLastFinalized ? "finalized" : "last";
}

std::size_t ChooseEstimateTurn(const Transcript& t, EdlChoice choice) {
  if (t.turns.empty()) {
    Fail(ErrorCode::kEmptyInput,
         "transcript " + t.model + "/" + t.persona + " has no turns");
  }
  if (choice == EdlChoice::kLastFinalized) {
    for (std::size_t i = t.turns.size(); i-- > 0;) {
      if (t.turns[i].evaluation.assessment_state == AssessmentState::kFinalized) {
        return i;
      }
    }
  }
  return t.turns.size() - 1;
}

int EstimatedBdi(const Transcript& t, EdlChoice choice) {
  const Evaluation& e = t.turns[ChooseEstimateTurn(t, choice)].evaluation;
  return e.total_bdi_score ? *e.total_bdi_score : e.ItemSum();
}

std::vector<SubmissionEntry> BuildSubmission(std::span<const Transcript> transcripts,
                                             EdlChoice choice,
                                             const SymptomAliases& aliases) {
  std::vector<SubmissionEntry> out;
  std::set<std::string> seen;
  for (const auto& t : transcripts) {
    if (!seen.insert(t.persona).second) {
      Fail(ErrorCode::kMalformedInput, "persona " + t.persona + " appears twice");
    }
    const Evaluation& e = t.turns.at(ChooseEstimateTurn(t, choice)).evaluation;
    SubmissionEntry entry;
    entry.persona = t.persona;
    entry.bdi = e.total_bdi_score ? *e.total_bdi_score : e.ItemSum();
    entry.category = CategoryOf(entry.bdi);
    for (const auto& raw : e.key_symptoms) {
      const std::string name(SymptomName(NormalizeSymptom(raw, aliases)));
      if (std::find(entry.symptoms.begin(), entry.symptoms.end(), name) ==
          entry.symptoms.end()) {
        entry.symptoms.push_back(name);
      }
    }
    out.push_back(std::move(entry));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.persona < b.persona; });
  return out;
}

OrderedJson SubmissionToJson(std::span<const SubmissionEntry> entries) {
  OrderedJson out = OrderedJson::array();
  for (const auto& e : entries) {
    out.push_back({{"persona", e.persona},
                   {"category", CategoryName(e.category)},
                   {"bdi", e.bdi},
                   {"symptoms", e.symptoms}});
  }
  return out;
}

std::vector<SubmissionEntry> ParseSubmission(std::string_view bytes) {
  const Json json = ParseJson(bytes, "submission");
  if (!json.is_array()) {
    throw SchemaError(ErrorCode::kSchemaViolation, "", "submission must be an array");
  }
  std::vector<SubmissionEntry> out;
  for (std::size_t i = 0; i < json.size(); ++i) {
    const std::string path = "/" + std::to_string(i);
    SubmissionEntry e;
    try {
      e.persona = json[i].at("persona").get<std::string>();
      e.category = ParseCategory(json[i].at("category").get<std::string>());
      e.bdi = json[i].at("bdi").get<int>();
      e.symptoms = json[i].at("symptoms").get<std::vector<std::string>>();
    } catch (const Json::exception& ex) {
      throw SchemaError(ErrorCode::kSchemaViolation, path, ex.what());
    }
    if (e.bdi < 0 || e.bdi > kMaxBdiTotal) {
      throw SchemaError(ErrorCode::kSchemaViolation, path + "/bdi", "outside 0..63");
    }
    out.push_back(std::move(e));
  }
  return out;
}

PilotScores ScoreSubmission(std::span<const SubmissionEntry> entries,
                            std::span<const GoldPersona> gold) {
  std::map<std::string, Category, std::less<>> categories;
  std::map<std::string, int, std::less<>> edl;
  std::map<std::string, std::vector<std::string>, std::less<>> symptoms;
  for (const auto& e : entries) {
    if (!categories.emplace(e.persona, e.category).second) {
      Fail(ErrorCode::kMalformedInput, "persona " + e.persona + " appears twice");
    }
    edl.emplace(e.persona, e.bdi);
    symptoms.emplace(e.persona, e.symptoms);
  }
  PilotScores s;
  s.dchr = Dchr(categories, gold);
  s.adodl = Adodl(edl, gold);
  s.ashr = Ashr(symptoms, gold);
  return s;
}

OrderedJson ToJson(const PilotScores& s) {
  return OrderedJson{{"dchr", s.dchr},
                     {"adodl", s.adodl},
                     {"ashr", s.ashr.mean},
                     {"ashr_per_persona", s.ashr.per_persona}};
}

OlsFit FitClassificationLevels(std::span<const Transcript> transcripts,
                               EdlChoice choice) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& t : transcripts) {
    const Evaluation& e = t.turns.at(ChooseEstimateTurn(t, choice)).evaluation;
    if (!e.total_bdi_score) continue;
    x.push_back(static_cast<int>(e.classification_suggestion));
    y.push_back(*e.total_bdi_score);
  }
  return FitOls(x, y);
}

}  // namespace riskbench::pilot
