#ifndef RISKBENCH_CORPUS_TIMELINE_H_
#define RISKBENCH_CORPUS_TIMELINE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riskbench/corpus/contractions.h"
#include "riskbench/util/time.h"

namespace riskbench::corpus {

struct RawPost {
  std::string post_id;
  UnixSeconds timestamp = 0;
  std::string title;
  std::string body;
  // False for interlocutor messages in a conversation thread.
  bool is_subject = true;

  friend bool operator==(const RawPost&, const RawPost&) = default;
};

// Posts ascending by timestamp; equal timestamps ordered by post_id.
struct UserTimeline {
  std::string user_id;
  std::vector<RawPost> posts;

  friend bool operator==(const UserTimeline&, const UserTimeline&) = default;
};

// Parses one per-user file:
//   {"user_id": str, "posts": [{"post_id": str, "timestamp": ISO-8601,
//     "title": str|null, "text": str|null, "is_subject": bool}]}
// Null title/text become "". A missing is_subject means true.
// Throws kMalformedInput, kBadTimestamp or kDuplicatePost.
UserTimeline ParseUserFile(std::string_view bytes);

// Inverse of ParseUserFile for canonical timelines.
std::string SerializeUserFile(const UserTimeline& timeline);

// A post after cleaning. `text` is the cleaned title and body joined by one
// space and trimmed; it is what every downstream stage consumes.
struct CleanPost {
  std::string user_id;
  std::string post_id;
  UnixSeconds timestamp = 0;
  std::string title;
  std::string body;
  std::string text;
  bool is_subject = true;

  friend bool operator==(const CleanPost&, const CleanPost&) = default;
};

std::vector<CleanPost> CleanTimeline(const UserTimeline& timeline,
                                     const ContractionTable& table);

// Canonical corpus: JSONL, one CleanPost object per line.
std::string WriteCorpusJsonl(std::span<const CleanPost> posts);
std::vector<CleanPost> ReadCorpusJsonl(std::string_view bytes,
                                       std::string_view context = "corpus");

// One user's writings in chronological order, as seen by the feature,
// attention and streaming stages.
struct UserWritings {
  std::string user_id;
  std::vector<CleanPost> posts;
};

// Groups a canonical corpus by user (sorted by user_id) and restores
// timeline order within each user. With `subject_only`, interlocutor posts
// are dropped and users left without posts are omitted.
std::vector<UserWritings> GroupByUser(std::span<const CleanPost> posts,
                                      bool subject_only = true);

}  // namespace riskbench::corpus

#endif  // RISKBENCH_CORPUS_TIMELINE_H_
