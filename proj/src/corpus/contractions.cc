#include "riskbench/corpus/contractions.h"

#include <cctype>
#include <utility>

#include "riskbench/util/embedded_data.h"
#include "riskbench/util/error.h"
#include "unicode_util.h"

namespace riskbench::corpus {
namespace {

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

void Validate(const ContractionTable::Map& entries) {
  for (const auto& [key, expansion] : entries) {
    if (key.empty()) Fail(ErrorCode::kInvalidConfig, "empty contraction key");
    for (unsigned char c : key) {
      if (c >= 0x80 || std::isupper(c) || std::isspace(c)) {
        Fail(ErrorCode::kInvalidConfig,
             "contraction key must be lowercase ASCII: " + key);
      }
    }
    if (expansion.find('\'') != std::string::npos) {
      Fail(ErrorCode::kInvalidConfig,
           "expansion contains an apostrophe: " + expansion);
    }
    std::size_t pos = 0;
    while (pos < expansion.size()) {
      const std::size_t end = std::min(expansion.find(' ', pos),
                                       expansion.size());
      const std::string word = AsciiLower(expansion.substr(pos, end - pos));
      if (entries.contains(word)) {
        Fail(ErrorCode::kInvalidConfig,
             "expansion of '" + key + "' contains key '" + word + "'");
      }
      pos = end + 1;
    }
  }
}

std::string Capitalized(const std::string& expansion) {
  std::string out = expansion;
  if (!out.empty()) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  }
  return out;
}

}  // namespace

ContractionTable::ContractionTable(Map entries) : entries_(std::move(entries)) {
  Validate(entries_);
}

const ContractionTable& ContractionTable::Default() {
  static const ContractionTable table =
      FromJson(ParseJson(embedded::ContractionsJson(), "contractions.json"));
  return table;
}

ContractionTable ContractionTable::FromJson(const Json& object) {
  if (!object.is_object()) {
    Fail(ErrorCode::kInvalidConfig, "contraction table must be an object");
  }
  Map entries;
  for (const auto& [key, value] : object.items()) {
    if (!value.is_string()) {
      Fail(ErrorCode::kInvalidConfig, "expansion must be a string: " + key);
    }
    entries.emplace(key, value.get<std::string>());
  }
  return ContractionTable(std::move(entries));
}

const std::string* ContractionTable::Find(std::string_view lowercase_key) const {
  auto it = entries_.find(lowercase_key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string ExpandContractions(std::string_view text,
                               const ContractionTable& table) {
  const std::u32string chars = internal::DecodeUtf8(text);
  const auto is_word = [](char32_t c) {
    return c == U'\'' || internal::IsAlnum(c);
  };
  std::string out;
  out.reserve(text.size() + 16);
  std::size_t i = 0;
  while (i < chars.size()) {
    if (!is_word(chars[i])) {
      internal::AppendUtf8(chars[i++], out);
      continue;
    }
    std::size_t end = i;
    while (end < chars.size() && is_word(chars[end])) ++end;
    const std::string word =
        internal::EncodeUtf8(std::u32string_view(chars).substr(i, end - i));
    i = end;

    std::string_view lead, core = word, trail;
    const std::string* expansion = table.Find(AsciiLower(core));
    if (expansion == nullptr) {
      const std::size_t first = core.find_first_not_of('\'');
      if (first != std::string_view::npos) {
        const std::size_t last = core.find_last_not_of('\'');
        lead = core.substr(0, first);
        trail = core.substr(last + 1);
        core = core.substr(first, last - first + 1);
        expansion = table.Find(AsciiLower(core));
      }
    }
    if (expansion == nullptr) {
      out += word;
      continue;
    }
    bool capitalized = false;
    for (char c : core) {
      const auto uc = static_cast<unsigned char>(c);
      if (std::isalpha(uc)) {
        capitalized = std::isupper(uc) != 0;
        break;
      }
    }
    out += lead;
    out += capitalized ? Capitalized(*expansion) : *expansion;
    out += trail;
  }
  return out;
}

}  // namespace riskbench::corpus
