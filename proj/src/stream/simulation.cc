#include "riskbench/stream/simulation.h"

#include <algorithm>
#include <cmath>

#include "riskbench/util/error.h"
#include "riskbench/util/io.h"

namespace riskbench::stream {

SimulationResult RunSimulation(std::span<const corpus::UserWritings> users,
                               const Scorer& scorer, double threshold) {
  std::vector<const corpus::UserWritings*> order;
  order.reserve(users.size());
  for (const auto& u : users) {
    if (u.posts.empty()) {
      Fail(ErrorCode::kEmptyTimeline, "user " + u.user_id + " has no writings");
    }
    order.push_back(&u);
  }
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    return a->user_id < b->user_id;
  });

  SimulationResult result;
  result.outcomes.resize(order.size());
  std::vector<bool> resolved(order.size(), false);
  std::size_t max_len = 0;
  for (std::size_t u = 0; u < order.size(); ++u) {
    result.outcomes[u].user_id = order[u]->user_id;
    max_len = std::max(max_len, order[u]->posts.size());
  }

  for (std::size_t t = 1; t <= max_len; ++t) {
    const int round = static_cast<int>(t);
    for (std::size_t u = 0; u < order.size(); ++u) {
      const auto& user = *order[u];
      if (resolved[u] || user.posts.size() < t) continue;
      double score = 0.0;
      try {
        score = scorer(user, t);
      } catch (const std::exception& e) {
        Fail(ErrorCode::kScorerFailure, "user " + user.user_id + " round " +
                                            std::to_string(round) + ": " +
                                            e.what());
      }
      if (!(score >= 0.0 && score <= 1.0)) {
        Fail(ErrorCode::kScorerFailure,
             "user " + user.user_id + " round " + std::to_string(round) +
                 ": score " + std::to_string(score) + " outside [0,1]");
      }
      const int decision = score >= threshold ? 1 : 0;
      result.emissions.push_back({round, user.user_id, decision, score});
      auto& outcome = result.outcomes[u];
      outcome.score_trajectory.push_back(score);
      outcome.delay = round;
      if (decision == 1) {
        outcome.final_decision = 1;
        resolved[u] = true;
      }
    }
  }
  return result;
}

std::string WriteEmissions(std::span<const RoundEmission> emissions) {
  std::string out;
  for (const auto& e : emissions) {
    out += OrderedJson{{"round", e.round},
                       {"user", e.user_id},
                       {"decision", e.decision},
                       {"score", e.score}}
               .dump();
    out += '\n';
  }
  return out;
}

std::vector<RoundEmission> ReadEmissions(std::string_view text,
                                         std::string_view context) {
  std::vector<RoundEmission> out;
  const auto rows = ParseJsonLines(text, context);
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    RoundEmission e;
    try {
      e.round = rows[i].at("round").get<int>();
      e.user_id = rows[i].at("user").get<std::string>();
      e.decision = rows[i].at("decision").get<int>();
      e.score = rows[i].at("score").get<double>();
    } catch (const Json::exception& ex) {
      Fail(ErrorCode::kMalformedInput, std::string(context) + " line " +
                                           std::to_string(i + 1) + ": " +
                                           ex.what());
    }
    if (e.round < 1 || (e.decision != 0 && e.decision != 1) ||
        !std::isfinite(e.score)) {
      Fail(ErrorCode::kMalformedInput, std::string(context) + " line " +
                                           std::to_string(i + 1) +
                                           ": invalid round, decision or score");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<StreamOutcome> OutcomesFromEmissions(
    std::span<const RoundEmission> emissions) {
  std::map<std::string, std::vector<const RoundEmission*>, std::less<>> by_user;
  for (const auto& e : emissions) by_user[e.user_id].push_back(&e);

  std::vector<StreamOutcome> outcomes;
  outcomes.reserve(by_user.size());
  for (auto& [user, rows] : by_user) {
    std::stable_sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) {
      return a->round < b->round;
    });
    StreamOutcome o;
    o.user_id = user;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i]->round != static_cast<int>(i + 1)) {
        Fail(ErrorCode::kMalformedInput,
             "user " + user + ": expected round " + std::to_string(i + 1) +
                 ", found " + std::to_string(rows[i]->round));
      }
      if (o.final_decision == 1) {
        Fail(ErrorCode::kMalformedInput,
             "user " + user + ": emission after a positive decision");
      }
      o.score_trajectory.push_back(rows[i]->score);
      o.delay = rows[i]->round;
      o.final_decision = rows[i]->decision;
    }
    outcomes.push_back(std::move(o));
  }
  return outcomes;
}

std::map<std::string, double, std::less<>> ScoresAtCheckpoint(
    std::span<const StreamOutcome> outcomes, int writings) {
  if (writings < 1) {
    Fail(ErrorCode::kInvalidConfig, "ranking checkpoint must be >= 1");
  }
  std::map<std::string, double, std::less<>> scores;
  for (const auto& o : outcomes) {
    if (o.score_trajectory.empty()) {
      Fail(ErrorCode::kMalformedInput, "user " + o.user_id + " has no scores");
    }
    const std::size_t idx =
        std::min(o.score_trajectory.size(), static_cast<std::size_t>(writings));
    scores.emplace(o.user_id, o.score_trajectory[idx - 1]);
  }
  return scores;
}

}  // namespace riskbench::stream
