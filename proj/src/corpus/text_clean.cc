#include "riskbench/corpus/text_clean.h"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>

#include "riskbench/util/embedded_data.h"
#include "riskbench/util/error.h"
#include "unicode_util.h"

namespace riskbench::corpus {
namespace {

using internal::AppendUtf8;
using internal::DecodeUtf8;
using internal::EncodeUtf8;
using internal::IsAlnum;
using internal::IsWhitespace;

constexpr int kMaxRepairRounds = 8;

struct NamedEntity {
  std::string_view name;
  char32_t code_point;
};

// The entities that show up in scraped forum text; anything else is left
// untouched.
constexpr NamedEntity kNamedEntities[] = {
    {"AElig", 0x00C6}, {"Aacute", 0x00C1}, {"Acirc", 0x00C2},
    {"Agrave", 0x00C0}, {"Aring", 0x00C5}, {"Atilde", 0x00C3},
    {"Auml", 0x00C4}, {"Ccedil", 0x00C7}, {"Eacute", 0x00C9},
    {"Ecirc", 0x00CA}, {"Egrave", 0x00C8}, {"Euml", 0x00CB},
    {"Iacute", 0x00CD}, {"Icirc", 0x00CE}, {"Igrave", 0x00CC},
    {"Iuml", 0x00CF}, {"Ntilde", 0x00D1}, {"Oacute", 0x00D3},
    {"Ocirc", 0x00D4}, {"Ograve", 0x00D2}, {"Oslash", 0x00D8},
    {"Otilde", 0x00D5}, {"Ouml", 0x00D6}, {"Uacute", 0x00DA},
    {"Ucirc", 0x00DB}, {"Ugrave", 0x00D9}, {"Uuml", 0x00DC},
    {"Yacute", 0x00DD}, {"aacute", 0x00E1}, {"acirc", 0x00E2},
    {"acute", 0x00B4}, {"aelig", 0x00E6}, {"agrave", 0x00E0},
    {"amp", 0x0026}, {"apos", 0x0027}, {"aring", 0x00E5},
    {"atilde", 0x00E3}, {"auml", 0x00E4}, {"brvbar", 0x00A6},
    {"bull", 0x2022}, {"ccedil", 0x00E7}, {"cent", 0x00A2},
    {"copy", 0x00A9}, {"curren", 0x00A4}, {"dagger", 0x2020},
    {"deg", 0x00B0}, {"divide", 0x00F7}, {"eacute", 0x00E9},
    {"ecirc", 0x00EA}, {"egrave", 0x00E8}, {"emsp", 0x2003},
    {"ensp", 0x2002}, {"euml", 0x00EB}, {"euro", 0x20AC},
    {"frac12", 0x00BD}, {"frac14", 0x00BC}, {"frac34", 0x00BE},
    {"gt", 0x003E}, {"hearts", 0x2665}, {"hellip", 0x2026},
    {"iacute", 0x00ED}, {"icirc", 0x00EE}, {"iexcl", 0x00A1},
    {"igrave", 0x00EC}, {"iquest", 0x00BF}, {"iuml", 0x00EF},
    {"laquo", 0x00AB}, {"ldquo", 0x201C}, {"lsquo", 0x2018},
    {"lt", 0x003C}, {"mdash", 0x2014}, {"middot", 0x00B7},
    {"nbsp", 0x00A0}, {"ndash", 0x2013}, {"not", 0x00AC},
    {"ntilde", 0x00F1}, {"oacute", 0x00F3}, {"ocirc", 0x00F4},
    {"ograve", 0x00F2}, {"oslash", 0x00F8}, {"otilde", 0x00F5},
    {"ouml", 0x00F6}, {"para", 0x00B6}, {"plusmn", 0x00B1},
    {"pound", 0x00A3}, {"quot", 0x0022}, {"raquo", 0x00BB},
    {"rdquo", 0x201D}, {"reg", 0x00AE}, {"rsquo", 0x2019},
    {"sect", 0x00A7}, {"shy", 0x00AD}, {"szlig", 0x00DF},
    {"times", 0x00D7}, {"trade", 0x2122}, {"uacute", 0x00FA},
    {"uuml", 0x00FC}, {"yen", 0x00A5},
};

const NamedEntity* FindEntity(std::string_view name) {
  for (const auto& entity : kNamedEntities) {
    if (entity.name == name) return &entity;
  }
  return nullptr;
}

bool IsAsciiAlpha(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z');
}
bool IsAsciiDigit(char32_t c) { return c >= U'0' && c <= U'9'; }
bool IsHexDigit(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') ||
         (c >= 'A' && c <= 'F');
}

bool IsSchemeChar(char32_t c) {
  return IsAsciiAlpha(c) || IsAsciiDigit(c) || c == U'+' || c == U'.' ||
         c == U'-';
}

// Characters that end a URL besides whitespace: brackets and quotes that
// commonly wrap links in posts and markdown.
bool IsUrlStop(char32_t c) {
  switch (c) {
    case U'(': case U')': case U'[': case U']': case U'<': case U'>':
    case U'{': case U'}': case U'"': case U'\'': case U'|': case U'\\':
    case U'^': case U'`': case U'“': case U'”': case U'‘': case U'’':
      return true;
    default:
      return false;
  }
}

char32_t AsciiLower(char32_t c) {
  return (c >= U'A' && c <= U'Z') ? c + 32 : c;
}

// Length of the URL starting at `i`, or 0 when none starts there.
std::size_t UrlStartLength(const std::u32string& s, std::size_t i) {
  if (i > 0 && IsAlnum(s[i - 1])) return 0;
  bool starts = false;
  if (i + 4 <= s.size() && AsciiLower(s[i]) == U'w' &&
      AsciiLower(s[i + 1]) == U'w' && AsciiLower(s[i + 2]) == U'w' &&
      s[i + 3] == U'.') {
    starts = true;
  } else if (IsAsciiAlpha(s[i])) {
    std::size_t k = i;
    while (k < s.size() && IsSchemeChar(s[k])) ++k;
    starts = k + 3 <= s.size() && s[k] == U':' && s[k + 1] == U'/' &&
             s[k + 2] == U'/';
  }
  if (!starts) return 0;
  std::size_t end = i;
  while (end < s.size() && !IsWhitespace(s[end]) && !IsUrlStop(s[end])) ++end;
  return end - i;
}

std::string Nfc(const std::string& text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    Fail(ErrorCode::kIoError, "ICU NFC normalizer unavailable");
  }
  const icu::UnicodeString input = icu::UnicodeString::fromUTF8(text);
  if (nfc->isNormalized(input, status) && U_SUCCESS(status)) {
    std::string out;
    input.toUTF8String(out);
    return out;
  }
  status = U_ZERO_ERROR;
  const icu::UnicodeString normalized = nfc->normalize(input, status);
  if (U_FAILURE(status)) return text;
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

std::string ReplaceMojibake(std::string_view text, const MojibakeTable& table) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (static_cast<unsigned char>(text[i]) < 0x80) {
      out += text[i++];
      continue;
    }
    bool replaced = false;
    for (const auto& [key, value] : table.entries()) {
      if (text.compare(i, key.size(), key) == 0) {
        out += value;
        i += key.size();
        replaced = true;
        break;
      }
    }
    if (!replaced) out += text[i++];
  }
  return out;
}

}  // namespace

const MojibakeTable& MojibakeTable::Default() {
  static const MojibakeTable table =
      FromJson(ParseJson(embedded::MojibakeJson(), "mojibake.json"));
  return table;
}

MojibakeTable MojibakeTable::FromJson(const Json& object) {
  MojibakeTable table;
  for (const char* section : {"sequences", "typographic"}) {
    if (!object.contains(section)) continue;
    for (const auto& [key, value] : object.at(section).items()) {
      if (!value.is_string()) {
        Fail(ErrorCode::kInvalidConfig, "mojibake value must be a string");
      }
      std::string replacement = value.get<std::string>();
      const bool ascii_free = std::none_of(key.begin(), key.end(), [](char c) {
        return static_cast<unsigned char>(c) < 0x80;
      });
      if (key.empty() || !ascii_free || replacement.size() >= key.size()) {
        Fail(ErrorCode::kInvalidConfig,
             "mojibake key must be non-ASCII and longer than its "
             "replacement: " + key);
      }
      table.entries_.emplace_back(key, std::move(replacement));
    }
  }
  std::stable_sort(table.entries_.begin(), table.entries_.end(),
                   [](const auto& a, const auto& b) {
                     return a.first.size() > b.first.size();
                   });
  return table;
}

bool IsRetainedCodePoint(char32_t c) {
  switch (c) {
    case U' ': case U'\'': case U'-': case U'&': case U'.': case U',':
    case U'!': case U'?':
      return true;
    default:
      return IsAlnum(c);
  }
}

std::string RepairEncoding(std::string_view text, const MojibakeTable& table) {
  // Round-trip through the decoder so invalid UTF-8 becomes U+FFFD first.
  std::string current = EncodeUtf8(DecodeUtf8(text));
  for (int round = 0; round < kMaxRepairRounds; ++round) {
    std::string next = Nfc(ReplaceMojibake(current, table));
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

std::string DecodeHtmlEntities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out += text[i++];
      continue;
    }
    const std::size_t semi = text.find(';', i + 1);
    // Entity bodies are short; a far-away ';' is not ours.
    if (semi == std::string_view::npos || semi - i > 12) {
      out += text[i++];
      continue;
    }
    const std::string_view body = text.substr(i + 1, semi - i - 1);
    std::optional<char32_t> decoded;
    if (body.size() >= 2 && body[0] == '#') {
      const bool hex = body[1] == 'x' || body[1] == 'X';
      const std::string_view digits = body.substr(hex ? 2 : 1);
      const bool valid =
          !digits.empty() && digits.size() <= 8 &&
          std::all_of(digits.begin(), digits.end(), [hex](char c) {
            return hex ? IsHexDigit(c) : (c >= '0' && c <= '9');
          });
      if (valid) {
        const std::uint64_t value =
            std::stoull(std::string(digits), nullptr, hex ? 16 : 10);
        const bool scalar = value > 0 && value <= 0x10FFFF &&
                            !(value >= 0xD800 && value <= 0xDFFF);
        decoded = scalar ? static_cast<char32_t>(value) : U'�';
      }
    } else if (const NamedEntity* entity = FindEntity(body)) {
      decoded = entity->code_point;
    }
    if (!decoded) {
      out += text[i++];
      continue;
    }
    AppendUtf8(*decoded, out);
    i = semi + 1;
  }
  return out;
}

std::string RemoveUrls(std::string_view text) {
  const std::u32string s = DecodeUtf8(text);
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t length = UrlStartLength(s, i);
    if (length == 0) {
      out.push_back(s[i++]);
      continue;
    }
    out.push_back(U' ');
    i += length;
  }
  return EncodeUtf8(out);
}

std::string FilterCharacters(std::string_view text) {
  std::u32string s = DecodeUtf8(text);
  for (char32_t& c : s) {
    if (!IsRetainedCodePoint(c)) c = U' ';
  }
  return EncodeUtf8(s);
}

std::string CollapseWhitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

std::string CleanText(std::string_view text, const ContractionTable& table) {
  return CleanText(text, table, MojibakeTable::Default());
}

std::string CleanText(std::string_view text, const ContractionTable& table,
                      const MojibakeTable& mojibake) {
  std::string s = RepairEncoding(text, mojibake);
  s = RepairEncoding(DecodeHtmlEntities(s), mojibake);
  s = RemoveUrls(s);
  s = ExpandContractions(s, table);
  s = FilterCharacters(s);
  return CollapseWhitespace(s);
}

}  // namespace riskbench::corpus
