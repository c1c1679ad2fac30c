#include "riskbench/corpus/timeline.h"

#include <algorithm>
#include <map>
#include <set>

#include "riskbench/corpus/text_clean.h"
#include "riskbench/util/error.h"
#include "riskbench/util/io.h"

namespace riskbench::corpus {
namespace {

bool TimelineLess(const RawPost& a, const RawPost& b) {
  if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
  return a.post_id < b.post_id;
}

std::string OptionalString(const Json& post, const char* key,
                           const std::string& where) {
  if (!post.contains(key) || post.at(key).is_null()) return "";
  if (!post.at(key).is_string()) {
    Fail(ErrorCode::kMalformedInput,
         where + ": '" + key + "' must be a string or null");
  }
  return post.at(key).get<std::string>();
}

std::string RequiredString(const Json& object, const char* key,
                           const std::string& where) {
  if (!object.contains(key) || !object.at(key).is_string()) {
    Fail(ErrorCode::kMalformedInput,
         where + ": missing string field '" + key + "'");
  }
  return object.at(key).get<std::string>();
}

}  // namespace

UserTimeline ParseUserFile(std::string_view bytes) {
  const Json doc = ParseJson(bytes, "user file");
  if (!doc.is_object()) {
    Fail(ErrorCode::kMalformedInput, "user file must be a JSON object");
  }
  UserTimeline timeline;
  timeline.user_id = RequiredString(doc, "user_id", "user file");
  if (!doc.contains("posts") || !doc.at("posts").is_array()) {
    Fail(ErrorCode::kMalformedInput,
         "user " + timeline.user_id + ": 'posts' must be an array");
  }
  std::set<std::string> seen;
  std::size_t index = 0;
  for (const Json& item : doc.at("posts")) {
    const std::string where =
        "user " + timeline.user_id + " post #" + std::to_string(index++);
    if (!item.is_object()) {
      Fail(ErrorCode::kMalformedInput, where + ": post must be an object");
    }
    RawPost post;
    post.post_id = RequiredString(item, "post_id", where);
    const std::string stamp = RequiredString(item, "timestamp", where);
    const auto parsed = ParseIso8601(stamp);
    if (!parsed) {
      Fail(ErrorCode::kBadTimestamp, where + ": cannot parse '" + stamp + "'");
    }
    post.timestamp = *parsed;
    post.title = OptionalString(item, "title", where);
    post.body = OptionalString(item, "text", where);
    if (item.contains("is_subject")) {
      if (!item.at("is_subject").is_boolean()) {
        Fail(ErrorCode::kMalformedInput, where + ": 'is_subject' must be bool");
      }
      post.is_subject = item.at("is_subject").get<bool>();
    }
    if (!seen.insert(post.post_id).second) {
      Fail(ErrorCode::kDuplicatePost, "user " + timeline.user_id +
                                          ": duplicate post_id '" +
                                          post.post_id + "'");
    }
    timeline.posts.push_back(std::move(post));
  }
  std::sort(timeline.posts.begin(), timeline.posts.end(), TimelineLess);
  return timeline;
}

std::string SerializeUserFile(const UserTimeline& timeline) {
  OrderedJson posts = OrderedJson::array();
  for (const RawPost& post : timeline.posts) {
    posts.push_back({{"post_id", post.post_id},
                     {"timestamp", FormatIso8601(post.timestamp)},
                     {"title", post.title},
                     {"text", post.body},
                     {"is_subject", post.is_subject}});
  }
  OrderedJson doc = {{"user_id", timeline.user_id}, {"posts", posts}};
  return doc.dump(2) + "\n";
}

std::vector<CleanPost> CleanTimeline(const UserTimeline& timeline,
                                     const ContractionTable& table) {
  std::vector<CleanPost> out;
  out.reserve(timeline.posts.size());
  for (const RawPost& raw : timeline.posts) {
    CleanPost post;
    post.user_id = timeline.user_id;
    post.post_id = raw.post_id;
    post.timestamp = raw.timestamp;
    post.title = CleanText(raw.title, table);
    post.body = CleanText(raw.body, table);
    post.text = post.title.empty()   ? post.body
                : post.body.empty() ? post.title
                                     : post.title + " " + post.body;
    post.is_subject = raw.is_subject;
    out.push_back(std::move(post));
  }
  return out;
}

std::string WriteCorpusJsonl(std::span<const CleanPost> posts) {
  std::string out;
  for (const CleanPost& post : posts) {
    OrderedJson row = {{"user_id", post.user_id},
                       {"post_id", post.post_id},
                       {"timestamp", FormatIso8601(post.timestamp)},
                       {"title", post.title},
                       {"body", post.body},
                       {"text", post.text},
                       {"is_subject", post.is_subject}};
    out += row.dump();
    out += '\n';
  }
  return out;
}

std::vector<CleanPost> ReadCorpusJsonl(std::string_view bytes,
                                       std::string_view context) {
  std::vector<CleanPost> posts;
  std::size_t line = 0;
  for (const Json& row : ParseJsonLines(bytes, context)) {
    const std::string where = std::string(context) + " row " +
                              std::to_string(++line);
    if (!row.is_object()) {
      Fail(ErrorCode::kMalformedInput, where + ": expected an object");
    }
    CleanPost post;
    post.user_id = RequiredString(row, "user_id", where);
    post.post_id = RequiredString(row, "post_id", where);
    const std::string stamp = RequiredString(row, "timestamp", where);
    const auto parsed = ParseIso8601(stamp);
    if (!parsed) {
      Fail(ErrorCode::kBadTimestamp, where + ": cannot parse '" + stamp + "'");
    }
    post.timestamp = *parsed;
    post.title = OptionalString(row, "title", where);
    post.body = OptionalString(row, "body", where);
    post.text = OptionalString(row, "text", where);
    post.is_subject = row.value("is_subject", true);
    posts.push_back(std::move(post));
  }
  return posts;
}

std::vector<UserWritings> GroupByUser(std::span<const CleanPost> posts,
                                      bool subject_only) {
  std::map<std::string, std::vector<CleanPost>> by_user;
  for (const CleanPost& post : posts) {
    if (subject_only && !post.is_subject) continue;
    by_user[post.user_id].push_back(post);
  }
  std::vector<UserWritings> users;
  users.reserve(by_user.size());
  for (auto& [user_id, user_posts] : by_user) {
    std::stable_sort(user_posts.begin(), user_posts.end(),
                     [](const CleanPost& a, const CleanPost& b) {
                       if (a.timestamp != b.timestamp) {
                         return a.timestamp < b.timestamp;
                       }
                       return a.post_id < b.post_id;
                     });
    users.push_back({user_id, std::move(user_posts)});
  }
  return users;
}

}  // namespace riskbench::corpus
