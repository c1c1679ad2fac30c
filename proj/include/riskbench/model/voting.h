#ifndef RISKBENCH_MODEL_VOTING_H_
#define RISKBENCH_MODEL_VOTING_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace riskbench::model {

// Elementwise mean of aligned member probabilities.
// Throws kLengthMismatch, kOutOfRange, or kEmptyInput with no members.
std::vector<double> SoftVote(std::span<const std::vector<double>> members);

struct Decision {
  int decision = 0;
  double score = 0.0;
};

// 1 iff p >= threshold. Throws kOutOfRange unless p is in [0, 1].
Decision Decide(double p, double threshold = 0.5);

using MemberScores = std::map<std::string, double, std::less<>>;

// JSONL {"user_id": str, "proba": f64}. Duplicate users and out-of-range
// probabilities are rejected.
MemberScores ParseMemberScores(std::string_view text, std::string_view context);
std::string SerializeMemberScores(const MemberScores& scores);

// Probabilities for `user_ids`, in that order. Throws kMalformedInput when
// a user is missing from the member file.
std::vector<double> AlignMemberScores(const MemberScores& scores,
                                      std::span<const std::string> user_ids,
                                      std::string_view context);

}  // namespace riskbench::model

#endif  // RISKBENCH_MODEL_VOTING_H_
