#include "riskbench/pilot/analysis.h"

#include <algorithm>
#include <cmath>

#include "riskbench/util/error.h"
#include "riskbench/util/stats.h"

namespace riskbench::pilot {
namespace {

OrderedJson Nullable(const std::optional<double>& v) {
  return v ? OrderedJson(*v) : OrderedJson(nullptr);
}

bool IsSpaceByte(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

OlsFit FitOls(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    Fail(ErrorCode::kLengthMismatch, "x and y differ in length");
  }
  if (x.size() < 2) Fail(ErrorCode::kDegenerateX, "need at least two points");
  if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); })) {
    Fail(ErrorCode::kDegenerateX, "x has zero variance");
  }
  const double mx = Mean(x);
  const double my = Mean(y);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) Fail(ErrorCode::kDegenerateX, "x has zero variance");
  OlsFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

std::map<std::string, SummationAudit> AuditSummation(
    std::span<const Transcript> transcripts) {
  std::map<std::string, std::vector<double>> diffs;
  for (const auto& t : transcripts) {
    auto& d = diffs[t.model];
    for (const auto& turn : t.turns) {
      const auto& e = turn.evaluation;
      if (!e.total_bdi_score) continue;
      d.push_back(std::abs(*e.total_bdi_score - e.ItemSum()));
    }
  }
  std::map<std::string, SummationAudit> out;
  for (const auto& [model, d] : diffs) {
    SummationAudit a;
    a.n = static_cast<int>(d.size());
    a.correct_n = static_cast<int>(std::count(d.begin(), d.end(), 0.0));
    a.avg_diff = Mean(d);
    a.std_diff = PopulationStd(d);
    a.correct_pct = a.n > 0 ? static_cast<double>(a.correct_n) / a.n : 0.0;
    out[model] = a;
  }
  return out;
}

ItemScoreTable CollectItemScores(std::span<const Transcript> transcripts) {
  ItemScoreTable table;
  for (const auto& t : transcripts) {
    auto& by_turn = table[t.model][t.persona];
    if (!by_turn.empty()) {
      Fail(ErrorCode::kMalformedInput, "model " + t.model +
                                           " has more than one transcript for persona " +
                                           t.persona);
    }
    for (const auto& turn : t.turns) {
      ItemVector v{};
      for (int i = 0; i < kBdiItemCount; ++i) {
        v[i] = turn.evaluation.bdi_scores[i].score;
      }
      by_turn[turn.evaluation.assessment_turn] = v;
    }
  }
  return table;
}

namespace {

const ItemVector* Select(const std::map<int, ItemVector>& by_turn,
                         const TurnSelector& selector) {
  if (by_turn.empty()) return nullptr;
  if (!selector.at_turn) return &by_turn.rbegin()->second;
  auto it = by_turn.upper_bound(*selector.at_turn);
  if (it == by_turn.begin()) return nullptr;
  return &std::prev(it)->second;
}

}  // namespace

AgreementResult AgreementStd(const ItemScoreTable& table,
                             const TurnSelector& selector, double threshold) {
  if (table.size() < 2) {
    Fail(ErrorCode::kInsufficientModels,
         "agreement needs at least two models, got " + std::to_string(table.size()));
  }
  AgreementResult result;
  result.threshold = threshold;
  result.models = table.size();

  // Personas with a selected turn under every model.
  const auto& first = table.begin()->second;
  for (const auto& [persona, by_turn] : first) {
    bool everywhere = true;
    for (const auto& [model, personas] : table) {
      auto it = personas.find(persona);
      if (it == personas.end() || Select(it->second, selector) == nullptr) {
        everywhere = false;
        break;
      }
    }
    if (everywhere) result.personas.push_back(persona);
  }
  if (result.personas.empty()) {
    Fail(ErrorCode::kEmptyInput, "no persona is covered by every model");
  }

  std::vector<double> values(table.size());
  for (const auto& persona : result.personas) {
    std::vector<const ItemVector*> rows;
    for (const auto& [model, personas] : table) {
      rows.push_back(Select(personas.at(persona), selector));
    }
    for (int i = 0; i < kBdiItemCount; ++i) {
      for (std::size_t m = 0; m < rows.size(); ++m) values[m] = (*rows[m])[i];
      result.item_std[i] += PopulationStd(values);
    }
  }
  int below = 0;
  for (double& s : result.item_std) {
    s /= static_cast<double>(result.personas.size());
    if (s < threshold) ++below;
  }
  result.fraction_below = static_cast<double>(below) / kBdiItemCount;
  return result;
}

Trajectory ComputeTrajectory(std::span<const Transcript> transcripts) {
  int last_round = 0;
  for (const auto& t : transcripts) {
    for (const auto& turn : t.turns) {
      last_round = std::max(last_round, turn.evaluation.assessment_turn);
    }
  }
  Trajectory traj;
  const auto rounds = static_cast<std::size_t>(last_round);
  std::vector<double> conf_sum(rounds, 0.0), bdi_sum(rounds, 0.0);
  std::vector<int> conf_n(rounds, 0), bdi_n(rounds, 0);

  for (const auto& t : transcripts) {
    std::vector<std::optional<int>> totals(rounds);
    for (const auto& turn : t.turns) {
      const auto& e = turn.evaluation;
      const auto r = static_cast<std::size_t>(e.assessment_turn - 1);
      if (e.confidence) {
        conf_sum[r] += *e.confidence;
        ++conf_n[r];
      }
      totals[r] = e.total_bdi_score;
    }
    std::optional<int> carried;
    for (std::size_t r = 0; r < rounds; ++r) {
      if (totals[r]) carried = totals[r];
      if (carried) {
        bdi_sum[r] += *carried;
        ++bdi_n[r];
      }
    }
  }
  for (std::size_t r = 0; r < rounds; ++r) {
    traj.rounds.push_back(static_cast<int>(r + 1));
    traj.confidence.push_back(conf_n[r] > 0 ? std::optional(conf_sum[r] / conf_n[r])
                                            : std::nullopt);
    traj.total_bdi.push_back(bdi_n[r] > 0 ? std::optional(bdi_sum[r] / bdi_n[r])
                                          : std::nullopt);
  }
  return traj;
}

TextField ParseTextField(std::string_view name) {
  if (name == "input") return TextField::kInput;
  if (name == "output") return TextField::kOutput;
  if (name == "reason") return TextField::kReason;
  Fail(ErrorCode::kInvalidConfig,
       "text field must be input, output or reason, got '" + std::string(name) + "'");
}

std::size_t CountWhitespaceTokens(std::string_view text) {
  std::size_t count = 0;
  bool in_token = false;
  for (char c : text) {
    const bool space = IsSpaceByte(c);
    if (!space && !in_token) ++count;
    in_token = !space;
  }
  return count;
}

TokenStats ComputeTokenStats(std::span<const std::string> texts) {
  TokenStats s;
  s.n = texts.size();
  if (texts.empty()) return s;
  std::vector<double> counts;
  counts.reserve(texts.size());
  for (const auto& t : texts) counts.push_back(static_cast<double>(CountWhitespaceTokens(t)));
  for (double c : counts) s.sum += c;
  s.avg = s.sum / static_cast<double>(s.n);
  s.max = *std::max_element(counts.begin(), counts.end());
  s.min = *std::min_element(counts.begin(), counts.end());
  s.std = PopulationStd(counts);
  return s;
}

std::map<std::string, TokenStats> TokenStatsByModel(
    std::span<const Transcript> transcripts, TextField field) {
  std::map<std::string, std::vector<std::string>> texts;
  for (const auto& t : transcripts) {
    auto& bucket = texts[t.model];
    for (const auto& turn : t.turns) {
      switch (field) {
        case TextField::kInput: bucket.push_back(turn.input_message); break;
        case TextField::kOutput: bucket.push_back(turn.output_message); break;
        case TextField::kReason: bucket.push_back(turn.next_step_reasoning); break;
      }
    }
  }
  std::map<std::string, TokenStats> out;
  for (const auto& [model, bucket] : texts) out[model] = ComputeTokenStats(bucket);
  return out;
}

OrderedJson ToJson(const SummationAudit& a) {
  return OrderedJson{{"avg_diff", a.avg_diff},   {"std_diff", a.std_diff},
                     {"correct_n", a.correct_n}, {"n", a.n},
                     {"correct_pct", a.correct_pct}};
}

OrderedJson ToJson(const AgreementResult& a) {
  OrderedJson items = OrderedJson::object();
  for (int i = 0; i < kBdiItemCount; ++i) {
    items[(i < 9 ? "q0" : "q") + std::to_string(i + 1)] = a.item_std[i];
  }
  return OrderedJson{{"models", a.models},
                     {"personas", a.personas},
                     {"item_std", items},
                     {"threshold", a.threshold},
                     {"fraction_below", a.fraction_below}};
}

OrderedJson ToJson(const Trajectory& t) {
  OrderedJson conf = OrderedJson::array();
  OrderedJson bdi = OrderedJson::array();
  for (const auto& v : t.confidence) conf.push_back(Nullable(v));
  for (const auto& v : t.total_bdi) bdi.push_back(Nullable(v));
  return OrderedJson{{"rounds", t.rounds}, {"confidence", conf}, {"total_bdi", bdi}};
}

OrderedJson ToJson(const TokenStats& s) {
  return OrderedJson{{"n", s.n},     {"sum", s.sum}, {"avg", s.avg},
                     {"max", s.max}, {"min", s.min}, {"std", s.std}};
}

OrderedJson ToJson(const OlsFit& f) {
  return OrderedJson{{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}};
}

}  // namespace riskbench::pilot
