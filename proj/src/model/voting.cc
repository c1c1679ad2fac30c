#include "riskbench/model/voting.h"

#include <cmath>

#include "riskbench/util/error.h"
#include "riskbench/util/io.h"

namespace riskbench::model {
namespace {

bool InUnitInterval(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

std::vector<double> SoftVote(std::span<const std::vector<double>> members) {
  if (members.empty()) Fail(ErrorCode::kEmptyInput, "soft vote with no members");
  const std::size_t n = members.front().size();
  for (std::size_t m = 0; m < members.size(); ++m) {
    if (members[m].size() != n) {
      Fail(ErrorCode::kLengthMismatch,
           "member " + std::to_string(m) + " has " +
               std::to_string(members[m].size()) + " scores, expected " +
               std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!InUnitInterval(members[m][i])) {
        Fail(ErrorCode::kOutOfRange, "member " + std::to_string(m) +
                                         " score " + std::to_string(i) +
                                         " outside [0,1]");
      }
    }
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& member : members) out[i] += member[i];
    out[i] /= static_cast<double>(members.size());
  }
  return out;
}

Decision Decide(double p, double threshold) {
  if (!InUnitInterval(p)) {
    Fail(ErrorCode::kOutOfRange, "probability " + std::to_string(p) +
                                     " outside [0,1]");
  }
  return {p >= threshold ? 1 : 0, p};
}

MemberScores ParseMemberScores(std::string_view text, std::string_view context) {
  MemberScores scores;
  const auto rows = ParseJsonLines(text, context);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where =
        std::string(context) + " line " + std::to_string(i + 1);
    std::string user;
    double proba = 0.0;
    try {
      user = rows[i].at("user_id").get<std::string>();
      proba = rows[i].at("proba").get<double>();
    } catch (const Json::exception& e) {
      Fail(ErrorCode::kMalformedInput, where + ": " + e.what());
    }
    if (!InUnitInterval(proba)) {
      Fail(ErrorCode::kOutOfRange, where + ": proba outside [0,1]");
    }
    if (!scores.emplace(user, proba).second) {
      Fail(ErrorCode::kMalformedInput, where + ": duplicate user " + user);
    }
  }
  return scores;
}

std::string SerializeMemberScores(const MemberScores& scores) {
  std::string out;
  for (const auto& [user, proba] : scores) {
    out += OrderedJson{{"user_id", user}, {"proba", proba}}.dump();
    out += '\n';
  }
  return out;
}

std::vector<double> AlignMemberScores(const MemberScores& scores,
                                      std::span<const std::string> user_ids,
                                      std::string_view context) {
  std::vector<double> out;
  out.reserve(user_ids.size());
  for (const auto& user : user_ids) {
    auto it = scores.find(user);
    if (it == scores.end()) {
      Fail(ErrorCode::kMalformedInput,
           std::string(context) + ": no score for user " + user);
    }
    out.push_back(it->second);
  }
  return out;
}

}  // namespace riskbench::model
