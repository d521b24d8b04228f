#include "ctsearch/corpus/markdown.hpp"

#include <cctype>
#include <vector>

#include "ctsearch/text/unicode.hpp"

namespace ctsearch::corpus {

namespace {

bool is_word_byte(char c) {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) != 0;
}

bool is_fence(std::string_view line) {
  line = text::trim(line);
  return line.substr(0, 3) == "```" || line.substr(0, 3) == "~~~";
}

// "---", "***", "___", "===" and spaced variants such as "- - -".
bool is_rule_line(std::string_view line) {
  line = text::trim(line);
  if (line.empty()) return false;
  char marker = 0;
  int count = 0;
  for (char c : line) {
    if (c == ' ' || c == '\t') continue;
    if (c != '-' && c != '*' && c != '_' && c != '=') return false;
    if (marker == 0) marker = c;
    if (c != marker) return false;
    ++count;
  }
  return count >= 3;
}

// "[ref]: http://..." link reference definitions.
bool is_reference_definition(std::string_view line) {
  line = text::trim(line);
  if (line.empty() || line.front() != '[') return false;
  auto close = line.find("]:");
  if (close == std::string_view::npos || close < 2) return false;
  return line.substr(1, close - 1).find(']') == std::string_view::npos;
}

// Instiki/nLab block markers ("+-- {: .num_defn}" and "=--").
bool is_block_marker(std::string_view line) {
  line = text::trim(line);
  return line.substr(0, 3) == "+--" || line.substr(0, 3) == "=--";
}

std::string_view strip_block_prefixes(std::string_view line) {
  line = text::trim(line);
  while (!line.empty() && line.front() == '>') {
    line.remove_prefix(1);
    line = text::trim(line);
  }
  std::size_t hashes = 0;
  while (hashes < line.size() && line[hashes] == '#') ++hashes;
  if (hashes >= 1 && hashes <= 6 && (hashes == line.size() || line[hashes] == ' ')) {
    line = text::trim(line.substr(hashes));
    // Closing sequence of an ATX heading.
    std::size_t end = line.size();
    while (end > 0 && line[end - 1] == '#') --end;
    if (end < line.size() && (end == 0 || line[end - 1] == ' ')) line = text::trim(line.substr(0, end));
  }
  if (line.size() >= 2 && (line[0] == '-' || line[0] == '+' || line[0] == '*') && line[1] == ' ') {
    line = text::trim(line.substr(2));
  } else {
    std::size_t digits = 0;
    while (digits < line.size() && std::isdigit(static_cast<unsigned char>(line[digits]))) ++digits;
    if (digits > 0 && digits + 1 < line.size() && (line[digits] == '.' || line[digits] == ')') &&
        line[digits + 1] == ' ') {
      line = text::trim(line.substr(digits + 2));
    }
  }
  return line;
}

// Position just past the bracket matching the opener at `open`, or npos.
std::size_t match_close(std::string_view s, std::size_t open, char opener, char closer) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
      continue;
    }
    if (s[i] == opener) ++depth;
    if (s[i] == closer && --depth == 0) return i + 1;
  }
  return std::string_view::npos;
}

std::string strip_inline(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    // Kramdown inline attribute lists: {: .class} and {:toc}.
    if (c == '{' && i + 1 < s.size() && s[i + 1] == ':') {
      auto close = s.find('}', i);
      if (close != std::string_view::npos) {
        i = close + 1;
        continue;
      }
    }
    if (c == '!' && i + 1 < s.size() && s[i + 1] == '[') {
      ++i;  // image: keep the alt text via the link rule below
      continue;
    }
    if (c == '[' && i + 1 < s.size() && s[i + 1] == '[') {
      auto close = s.find("]]", i + 2);
      if (close != std::string_view::npos) {
        std::string_view inner = s.substr(i + 2, close - i - 2);
        auto bar = inner.rfind('|');
        if (bar != std::string_view::npos) inner = inner.substr(bar + 1);
        out.append(text::trim(inner));
        i = close + 2;
        continue;
      }
    }
    if (c == '[') {
      auto after = match_close(s, i, '[', ']');
      if (after != std::string_view::npos && after < s.size() &&
          (s[after] == '(' || s[after] == '[')) {
        char closer = s[after] == '(' ? ')' : ']';
        auto end = match_close(s, after, s[after], closer);
        if (end != std::string_view::npos) {
          out.append(s.substr(i + 1, after - i - 2));
          i = end;
          continue;
        }
      }
    }
    if (c == '<') {
      auto close = s.find('>', i);
      if (close != std::string_view::npos) {
        std::string_view inner = s.substr(i + 1, close - i - 1);
        bool autolink = inner.find("://") != std::string_view::npos ||
                        inner.substr(0, 7) == "mailto:";
        bool tag = !inner.empty() &&
                   (std::isalpha(static_cast<unsigned char>(inner.front())) != 0 ||
                    (inner.front() == '/' && inner.size() > 1 &&
                     std::isalpha(static_cast<unsigned char>(inner[1])) != 0) ||
                    inner.front() == '!');
        if (autolink && inner.find(' ') == std::string_view::npos) {
          out.append(inner);
          i = close + 1;
          continue;
        }
        if (tag) {
          i = close + 1;
          continue;
        }
      }
    }
    if (c == '\\' && i + 1 < s.size() && std::ispunct(static_cast<unsigned char>(s[i + 1])) != 0) {
      ++i;  // drop the escape, keep the escaped character
      continue;
    }
    if (c == '*' || c == '`') {
      ++i;
      continue;
    }
    if (c == '~' && i + 1 < s.size() && s[i + 1] == '~') {
      i += 2;
      continue;
    }
    if (c == '_') {
      bool prev_word = i > 0 && is_word_byte(s[i - 1]);
      bool next_word = i + 1 < s.size() && is_word_byte(s[i + 1]);
      if (!(prev_word && next_word)) {
        ++i;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

std::string collapse_spaces(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '\t') c = ' ';
    if (c == ' ' && (out.empty() || out.back() == ' ')) continue;
    out.push_back(c);
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string strip_once(std::string_view raw) {
  std::vector<std::string> lines;
  bool in_fence = false;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    auto nl = raw.find('\n', pos);
    std::string_view line =
        raw.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? raw.size() + 1 : nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (is_fence(line)) {
      in_fence = !in_fence;
      continue;
    }
    if (in_fence) continue;
    if (is_block_marker(line) || is_rule_line(line) || is_reference_definition(line)) continue;
    lines.push_back(collapse_spaces(strip_inline(strip_block_prefixes(line))));
  }

  std::string out;
  bool pending_blank = false;
  for (const auto& line : lines) {
    if (line.empty()) {
      pending_blank = !out.empty();
      continue;
    }
    if (!out.empty()) out += pending_blank ? "\n\n" : "\n";
    pending_blank = false;
    out += line;
  }
  return out;
}

}  // namespace

std::string strip_markdown(std::string_view raw) {
  // Every rule only deletes characters, so iterating to a fixed point
  // terminates and makes the function idempotent.
  std::string current = strip_once(raw);
  for (int pass = 0; pass < 64; ++pass) {
    std::string next = strip_once(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

}  // namespace ctsearch::corpus
