#include "ctsearch/corpus/math_verbalizer.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "ctsearch/text/unicode.hpp"

namespace ctsearch::corpus {

namespace {

enum class Kind { kIdent, kNumber, kCommand, kSymbol };

struct Tok {
  Kind kind;
  std::string text;  // command names are stored without the backslash
};

const std::map<std::string, std::string, std::less<>>& operator_words() {
  static const std::map<std::string, std::string, std::less<>> table = {
      // commands
      {"\\leq", "less than or equal to"}, {"\\le", "less than or equal to"},
      {"\\geq", "greater than or equal to"}, {"\\ge", "greater than or equal to"},
      {"\\neq", "not equal to"}, {"\\ne", "not equal to"},
      {"\\to", "to"}, {"\\rightarrow", "to"}, {"\\longrightarrow", "to"},
      {"\\leftarrow", "from"}, {"\\longleftarrow", "from"}, {"\\colon", "from"},
      {"\\setminus", "minus"}, {"\\wedge", "wedge"}, {"\\vee", "vee"},
      {"\\mapsto", "maps to"}, {"\\Rightarrow", "implies"}, {"\\implies", "implies"},
      {"\\Leftrightarrow", "if and only if"}, {"\\iff", "if and only if"},
      {"\\times", "times"}, {"\\cdot", "dot"}, {"\\circ", "composed with"},
      {"\\otimes", "tensor"}, {"\\oplus", "direct sum"},
      {"\\in", "in"}, {"\\notin", "not in"},
      {"\\subset", "subset of"}, {"\\subseteq", "subset of or equal to"},
      {"\\cup", "union"}, {"\\cap", "intersection"},
      {"\\cong", "isomorphic to"}, {"\\simeq", "equivalent to"}, {"\\equiv", "equivalent to"},
      {"\\sim", "similar to"}, {"\\approx", "approximately"},
      {"\\infty", "infinity"}, {"\\forall", "for all"}, {"\\exists", "there exists"},
      {"\\sum", "sum"}, {"\\prod", "product"}, {"\\coprod", "coproduct"},
      {"\\int", "integral"}, {"\\partial", "partial"}, {"\\emptyset", "empty set"},
      {"\\varnothing", "empty set"}, {"\\dots", "dots"}, {"\\ldots", "dots"},
      {"\\cdots", "dots"}, {"\\pm", "plus or minus"},
      // ASCII symbols
      {"=", "equals"}, {"<", "less than"}, {">", "greater than"}, {"+", "plus"},
      {"-", "minus"}, {"/", "over"}, {",", "comma"}, {":", "colon"}, {";", "semicolon"},
      {"|", "bar"}, {"*", "star"},
      // Unicode symbols
      {"≤", "less than or equal to"}, {"≥", "greater than or equal to"},
      {"≠", "not equal to"}, {"→", "to"}, {"⟶", "to"}, {"←", "from"},
      {"↦", "maps to"}, {"⇒", "implies"}, {"×", "times"},
      {"⋅", "dot"}, {"∘", "composed with"}, {"⊗", "tensor"},
      {"⊕", "direct sum"}, {"∈", "in"}, {"⊆", "subset of or equal to"},
      {"⊂", "subset of"}, {"∪", "union"}, {"∩", "intersection"},
      {"≅", "isomorphic to"}, {"≃", "equivalent to"}, {"∞", "infinity"},
      {"−", "minus"},
  };
  return table;
}

const std::map<std::string, std::string, std::less<>>& greek_unicode() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"α", "alpha"}, {"β", "beta"},  {"γ", "gamma"},  {"δ", "delta"},
      {"ε", "epsilon"}, {"ζ", "zeta"}, {"η", "eta"},   {"θ", "theta"},
      {"ι", "iota"},  {"κ", "kappa"}, {"λ", "lambda"}, {"μ", "mu"},
      {"ν", "nu"},    {"ξ", "xi"},    {"π", "pi"},     {"ρ", "rho"},
      {"σ", "sigma"}, {"τ", "tau"},   {"υ", "upsilon"}, {"φ", "phi"},
      {"χ", "chi"},   {"ψ", "psi"},   {"ω", "omega"},  {"Γ", "Gamma"},
      {"Δ", "Delta"}, {"Θ", "Theta"}, {"Λ", "Lambda"}, {"Ξ", "Xi"},
      {"Π", "Pi"},    {"Σ", "Sigma"}, {"Φ", "Phi"},    {"Ψ", "Psi"},
      {"Ω", "Omega"},
  };
  return table;
}

const std::set<std::string, std::less<>>& greek_commands() {
  static const std::set<std::string, std::less<>> names = {
      "alpha", "beta",  "gamma", "delta",  "epsilon", "varepsilon", "zeta",  "eta",
      "theta", "vartheta", "iota", "kappa", "lambda", "mu",       "nu",    "xi",
      "pi",    "varpi", "rho",   "varrho", "sigma",  "varsigma",  "tau",   "upsilon",
      "phi",   "varphi", "chi",  "psi",    "omega",  "Gamma",     "Delta", "Theta",
      "Lambda", "Xi",   "Pi",    "Sigma",  "Upsilon", "Phi",      "Psi",   "Omega",
      "ell"};
  return names;
}

const std::set<std::string, std::less<>>& function_names() {
  static const std::set<std::string, std::less<>> names = {
      "lim", "max", "min", "sup", "inf", "ker", "dim", "deg", "det", "exp",
      "log", "ln",  "sin", "cos", "tan", "hom", "arg", "gcd", "Pr"};
  return names;
}

const std::set<std::string, std::less<>>& ignored_commands() {
  static const std::set<std::string, std::less<>> names = {
      ",",    ";",     ":",     "!",     " ",      "quad",   "qquad", "left",
      "right", "big",  "Big",   "bigg",  "Bigg",   "bigl",   "bigr",  "Bigl",
      "Bigr", "displaystyle", "textstyle", "scriptstyle", "limits", "nolimits", "\\"};
  return names;
}

const std::set<std::string, std::less<>>& font_commands() {
  static const std::set<std::string, std::less<>> names = {
      "mathcal", "mathbf", "mathbb", "mathrm", "mathsf", "mathfrak", "mathit",
      "mathscr", "boldsymbol", "bm",   "operatorname", "mathtt"};
  return names;
}

const std::set<std::string, std::less<>>& text_commands() {
  static const std::set<std::string, std::less<>> names = {"text", "textrm", "textit",
                                                          "textbf", "mbox", "textsf"};
  return names;
}

const std::map<std::string, std::string, std::less<>>& accent_words() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"bar", "bar"},     {"overline", "bar"},   {"hat", "hat"},
      {"widehat", "hat"}, {"tilde", "tilde"},    {"widetilde", "tilde"},
      {"underline", "underline"}};
  return table;
}

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

std::vector<Tok> tokenize(std::string_view s) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    if (text::is_ascii_space(s[i])) {
      ++i;
    } else if (std::isalpha(c) != 0) {
      std::size_t j = i;
      while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j])) != 0) ++j;
      out.push_back({Kind::kIdent, std::string(s.substr(i, j - i))});
      i = j;
    } else if (std::isdigit(c) != 0) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])) != 0) ++j;
      if (j + 1 < s.size() && s[j] == '.' && std::isdigit(static_cast<unsigned char>(s[j + 1])) != 0) {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])) != 0) ++j;
      }
      out.push_back({Kind::kNumber, std::string(s.substr(i, j - i))});
      i = j;
    } else if (c == '\\') {
      std::size_t j = i + 1;
      if (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j])) != 0) {
        while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j])) != 0) ++j;
      } else if (j < s.size()) {
        ++j;
      }
      out.push_back({Kind::kCommand, std::string(s.substr(i + 1, j - i - 1))});
      i = j;
    } else if (c >= 0x80) {
      std::size_t len = std::min(utf8_length(c), s.size() - i);
      std::string ch(s.substr(i, len));
      if (greek_unicode().count(ch) != 0) {
        out.push_back({Kind::kIdent, greek_unicode().at(ch)});
      } else {
        out.push_back({Kind::kSymbol, ch});
      }
      i += len;
    } else {
      out.push_back({Kind::kSymbol, std::string(1, s[i])});
      ++i;
    }
  }
  return out;
}

class Unhandled {};

class Verbalizer {
 public:
  explicit Verbalizer(std::vector<Tok> toks) : toks_(std::move(toks)) {}

  std::vector<std::string> run() {
    auto words = sequence(nullptr);
    if (pos_ != toks_.size()) throw Unhandled{};
    return words;
  }

 private:
  bool at_symbol(std::string_view sym) const {
    return pos_ < toks_.size() && toks_[pos_].kind == Kind::kSymbol && toks_[pos_].text == sym;
  }

  bool at_command(std::string_view name) const {
    return pos_ < toks_.size() && toks_[pos_].kind == Kind::kCommand && toks_[pos_].text == name;
  }

  // Items up to (and consuming) the closing symbol, or to the end when stop is null.
  std::vector<std::string> sequence(const char* stop) {
    std::vector<std::string> words;
    while (pos_ < toks_.size()) {
      if (stop != nullptr && at_symbol(stop)) {
        ++pos_;
        return words;
      }
      if (at_symbol(")") || at_symbol("]") || at_symbol("}")) throw Unhandled{};
      append(words, item());
    }
    if (stop != nullptr) throw Unhandled{};
    return words;
  }

  static void append(std::vector<std::string>& dst, const std::vector<std::string>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
  }

  // One argument of a command or script: a braced group or a single token.
  std::vector<std::string> argument() {
    if (pos_ >= toks_.size()) throw Unhandled{};
    if (at_symbol("{")) {
      ++pos_;
      return sequence("}");
    }
    return atom_only();
  }

  std::vector<std::string> text_argument() {
    if (!at_symbol("{")) throw Unhandled{};
    ++pos_;
    std::vector<std::string> words;
    int depth = 1;
    while (pos_ < toks_.size()) {
      const Tok& t = toks_[pos_++];
      if (t.kind == Kind::kSymbol && t.text == "{") ++depth;
      if (t.kind == Kind::kSymbol && t.text == "}" && --depth == 0) return words;
      if (t.kind == Kind::kIdent || t.kind == Kind::kNumber) words.push_back(t.text);
    }
    throw Unhandled{};
  }

  // An atom without postfix scripts.
  std::vector<std::string> atom_only() {
    const Tok t = toks_[pos_];
    switch (t.kind) {
      case Kind::kIdent:
      case Kind::kNumber:
        ++pos_;
        return {t.text};
      case Kind::kSymbol: {
        if (t.text == "(") {
          ++pos_;
          return sequence(")");
        }
        if (t.text == "[") {
          ++pos_;
          std::vector<std::string> words{"bracket"};
          append(words, sequence("]"));
          return words;
        }
        if (t.text == "{") {
          ++pos_;
          return sequence("}");
        }
        if (t.text == "'") {
          ++pos_;
          return {"prime"};
        }
        if (t.text == "&" || t.text == ".") {
          ++pos_;
          return {};
        }
        auto it = operator_words().find(t.text);
        if (it == operator_words().end()) throw Unhandled{};
        ++pos_;
        return {it->second};
      }
      case Kind::kCommand:
        return command();
    }
    throw Unhandled{};
  }

  std::vector<std::string> command() {
    const std::string name = toks_[pos_].text;
    ++pos_;
    if (greek_commands().count(name) != 0 || function_names().count(name) != 0) return {name};
    if (ignored_commands().count(name) != 0) return {};
    if (auto it = operator_words().find("\\" + name); it != operator_words().end()) {
      return {it->second};
    }
    if (font_commands().count(name) != 0) return argument();
    if (text_commands().count(name) != 0) return text_argument();
    if (auto it = accent_words().find(name); it != accent_words().end()) {
      auto words = argument();
      words.push_back(it->second);
      return words;
    }
    if (name == "frac" || name == "dfrac" || name == "tfrac") {
      auto words = argument();
      words.push_back("over");
      append(words, argument());
      return words;
    }
    if (name == "sqrt") {
      std::vector<std::string> words{"the", "square", "root", "of"};
      append(words, argument());
      return words;
    }
    throw Unhandled{};
  }

  static bool names_something(const Tok& t) {
    if (t.kind == Kind::kIdent) return true;
    if (t.kind != Kind::kCommand) return false;
    return greek_commands().count(t.text) != 0 || function_names().count(t.text) != 0 ||
           font_commands().count(t.text) != 0;
  }

  std::vector<std::string> item() {
    const bool nameable = names_something(toks_[pos_]);
    auto words = atom_only();
    while (pos_ < toks_.size()) {
      if (at_symbol("_")) {
        ++pos_;
        words.push_back("sub");
        append(words, argument());
      } else if (at_symbol("^")) {
        ++pos_;
        words.push_back("super");
        append(words, argument());
      } else if (at_symbol("'")) {
        ++pos_;
        words.push_back("prime");
      } else {
        break;
      }
    }
    if (nameable && at_symbol("(")) {
      ++pos_;
      std::vector<std::string> applied{"the", "expression"};
      append(applied, words);
      applied.push_back("of");
      append(applied, sequence(")"));
      return applied;
    }
    return words;
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
};

std::string fallback(const std::vector<Tok>& toks) {
  std::string out = "the expression";
  for (const auto& t : toks) {
    std::string name;
    if (t.kind == Kind::kIdent) {
      name = t.text;
    } else if (t.kind == Kind::kCommand && greek_commands().count(t.text) != 0) {
      name = t.text;
    }
    if (name.empty()) continue;
    out += ' ';
    out += name;
  }
  return out;
}

bool is_escaped(std::string_view text, std::size_t pos) {
  std::size_t backslashes = 0;
  while (pos > backslashes && text[pos - backslashes - 1] == '\\') ++backslashes;
  return backslashes % 2 == 1;
}

}  // namespace

std::string verbalize_math(std::string_view latex) {
  auto toks = tokenize(latex);
  std::string out;
  try {
    out = text::join(Verbalizer(toks).run(), " ");
  } catch (const Unhandled&) {
    out = fallback(toks);
  }
  if (out.empty()) out = "the expression";
  return out;
}

std::string verbalize_math(const MathFragment& fragment) { return verbalize_math(fragment.raw); }

std::vector<MathFragment> find_math_fragments(std::string_view text) {
  std::vector<MathFragment> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::string_view open;
    std::string_view close;
    if (text[i] == '$' && !is_escaped(text, i)) {
      if (i + 1 < text.size() && text[i + 1] == '$') {
        open = "$$";
        close = "$$";
      } else {
        open = "$";
        close = "$";
      }
    } else if (text[i] == '\\' && i + 1 < text.size() && !is_escaped(text, i) &&
               (text[i + 1] == '(' || text[i + 1] == '[')) {
      open = text.substr(i, 2);
      close = text[i + 1] == '(' ? "\\)" : "\\]";
    }
    if (open.empty()) {
      ++i;
      continue;
    }
    std::size_t search = i + open.size();
    std::size_t end = std::string_view::npos;
    while (search < text.size()) {
      auto found = text.find(close, search);
      if (found == std::string_view::npos) break;
      if (close.front() == '$' && is_escaped(text, found)) {
        search = found + 1;
        continue;
      }
      end = found;
      break;
    }
    if (end == std::string_view::npos) {
      i += open.size();
      continue;
    }
    std::string_view raw = text.substr(i + open.size(), end - i - open.size());
    if (!text::trim(raw).empty()) {
      out.push_back({std::string(raw), i, end + close.size()});
    }
    i = end + close.size();
  }
  return out;
}

std::string verbalize_inline_math(std::string_view text) {
  std::string out;
  std::size_t cursor = 0;
  for (const auto& f : find_math_fragments(text)) {
    out.append(text.substr(cursor, f.begin - cursor));
    out.append(verbalize_math(f));
    cursor = f.end;
  }
  out.append(text.substr(cursor));
  return out;
}

}  // namespace ctsearch::corpus
