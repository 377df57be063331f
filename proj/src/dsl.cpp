#include "concord/dsl.hpp"

#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>

namespace concord::dsl {

namespace {

constexpr std::size_t kMaxDomain = 1u << 16;

enum class Tok {
  kName, kInt, kColon, kDotDot, kComma, kLBrace, kRBrace, kLBracket,
  kRBracket, kSemi, kLParen, kRParen, kGt, kGe, kNewline, kEnd,
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::kName: return "a name";
    case Tok::kInt: return "an integer";
    case Tok::kColon: return "':'";
    case Tok::kDotDot: return "'..'";
    case Tok::kComma: return "','";
    case Tok::kLBrace: return "'{'";
    case Tok::kRBrace: return "'}'";
    case Tok::kLBracket: return "'['";
    case Tok::kRBracket: return "']'";
    case Tok::kSemi: return "';'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kGt: return "'>'";
    case Tok::kGe: return "'>='";
    case Tok::kNewline: return "end of line";
    case Tok::kEnd: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  Value value = 0;
  Position at;
};

[[noreturn]] void fail(Code code, Position at, std::string msg) {
  throw ParseError({code, at, std::move(msg)});
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    i += n;
    col += n;
  };
  auto is_name_start = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  while (i < src.size()) {
    const char c = src[i];
    const Position at{line, col};
    if (c == '\n') {
      out.push_back({Tok::kNewline, "", 0, at});
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (is_name_start(c)) {
      std::size_t j = i;
      while (j < src.size() && (is_name_start(src[j]) || is_digit(src[j]))) ++j;
      out.push_back({Tok::kName, std::string(src.substr(i, j - i)), 0, at});
      advance(j - i);
      continue;
    }
    if (is_digit(c) || (c == '-' && i + 1 < src.size() && is_digit(src[i + 1]))) {
      std::size_t j = i + 1;
      while (j < src.size() && is_digit(src[j])) ++j;
      Value v = 0;
      auto [p, ec] = std::from_chars(src.data() + i, src.data() + j, v);
      if (ec != std::errc() || p != src.data() + j)
        fail(Code::kLexical, at, "integer out of range");
      out.push_back({Tok::kInt, std::string(src.substr(i, j - i)), v, at});
      advance(j - i);
      continue;
    }
    auto single = [&](Tok t) {
      out.push_back({t, std::string(1, c), 0, at});
      advance(1);
    };
    switch (c) {
      case ':': single(Tok::kColon); continue;
      case ',': single(Tok::kComma); continue;
      case '{': single(Tok::kLBrace); continue;
      case '}': single(Tok::kRBrace); continue;
      case '[': single(Tok::kLBracket); continue;
      case ']': single(Tok::kRBracket); continue;
      case ';': single(Tok::kSemi); continue;
      case '(': single(Tok::kLParen); continue;
      case ')': single(Tok::kRParen); continue;
      default: break;
    }
    if (c == '.' && i + 1 < src.size() && src[i + 1] == '.') {
      out.push_back({Tok::kDotDot, "..", 0, at});
      advance(2);
      continue;
    }
    if (c == '>') {
      if (i + 1 < src.size() && src[i + 1] == '=') {
        out.push_back({Tok::kGe, ">=", 0, at});
        advance(2);
      } else {
        single(Tok::kGt);
      }
      continue;
    }
    std::ostringstream os;
    const auto byte = static_cast<unsigned char>(c);
    if (byte >= 0x20 && byte < 0x7f)
      os << "unexpected character '" << c << "'";
    else
      os << "unexpected byte 0x" << std::hex << static_cast<int>(byte);
    fail(Code::kLexical, at, os.str());
  }
  out.push_back({Tok::kEnd, "", 0, {line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Document document() {
    skip_newlines();
    keyword("vars");
    auto space = vars();
    line_end();
    skip_newlines();
    const Position comb_at = peek().at;
    keyword("combiner");
    auto comb = combiner();
    line_end();
    skip_newlines();
    keyword("models");
    const ModelClass mc = models();
    line_end();

    Document doc{Profile{std::move(space), std::move(comb), mc, {}}, {}};
    std::set<std::string> names;
    skip_newlines();
    do {
      const Position at = peek().at;
      keyword("stakeholder");
      const Token& name = expect(Tok::kName);
      if (!names.insert(name.text).second)
        fail(Code::kDuplicateStakeholder, name.at,
             "duplicate stakeholder '" + name.text + "'");
      skip_newlines();
      expect(Tok::kLBrace);
      Stakeholder sh{name.text, {}};
      sh.statements.push_back(statement(doc.profile.space));
      while (skip_newlines(), peek().kind == Tok::kSemi) {
        next();
        sh.statements.push_back(statement(doc.profile.space));
      }
      expect(Tok::kRBrace);
      doc.profile.stakeholders.push_back(std::move(sh));
      doc.stakeholder_at.push_back(at);
      skip_newlines();
    } while (peek().kind != Tok::kEnd);

    try {
      doc.profile.validate();
    } catch (const InputError& e) {
      fail(Code::kCombiner, comb_at, e.what());
    }
    return doc;
  }

  Statement lone_statement(const VariableSpace& space) {
    skip_newlines();
    Statement s = statement(space);
    skip_newlines();
    expect(Tok::kEnd);
    return s;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::kEnd) ++pos_;
    return t;
  }
  void skip_newlines() {
    while (peek().kind == Tok::kNewline) ++pos_;
  }

  [[noreturn]] void unexpected(const std::string& wanted) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::kName || t.kind == Tok::kInt
                          ? "'" + t.text + "'"
                          : describe(t.kind);
    fail(Code::kSyntax, t.at, "expected " + wanted + ", found " + got);
  }

  const Token& expect(Tok kind) {
    if (peek().kind != kind) unexpected(describe(kind));
    return next();
  }

  void keyword(const char* word) {
    if (peek().kind != Tok::kName || peek().text != word)
      unexpected(std::string("'") + word + "'");
    next();
  }

  void line_end() {
    if (peek().kind != Tok::kNewline) unexpected("end of line");
    next();
  }

  VariableSpace vars() {
    std::vector<std::string> names;
    std::vector<std::vector<Value>> domains;
    std::set<std::string> seen;
    do {
      const Token& name = expect(Tok::kName);
      if (!seen.insert(name.text).second)
        fail(Code::kDuplicateVariable, name.at,
             "duplicate variable '" + name.text + "'");
      expect(Tok::kColon);
      const Token& lo = expect(Tok::kInt);
      expect(Tok::kDotDot);
      const Token& hi = expect(Tok::kInt);
      if (hi.value <= lo.value)
        fail(Code::kDomain, lo.at,
             "domain of '" + name.text + "' needs at least two values");
      if (static_cast<std::uint64_t>(hi.value) - static_cast<std::uint64_t>(lo.value) >=
          kMaxDomain)
        fail(Code::kDomain, lo.at, "domain of '" + name.text + "' is too large");
      std::vector<Value> d;
      for (Value v = lo.value; v <= hi.value; ++v) d.push_back(v);
      names.push_back(name.text);
      domains.push_back(std::move(d));
    } while (peek().kind == Tok::kComma && (next(), true));
    return VariableSpace(std::move(names), std::move(domains));
  }

  std::vector<Value> int_list(Tok sep, Tok close) {
    std::vector<Value> out{expect(Tok::kInt).value};
    while (peek().kind == sep) {
      next();
      out.push_back(expect(Tok::kInt).value);
    }
    if (peek().kind != close) unexpected(describe(close));
    return out;
  }

  Combiner combiner() {
    const Token& t = peek();
    if (t.kind != Tok::kName) unexpected("a combiner");
    static const std::pair<const char*, Combiner::Kind> kinds[] = {
        {"sum", Combiner::Kind::kSum}, {"product", Combiner::Kind::kProduct},
        {"min", Combiner::Kind::kMin}, {"max", Combiner::Kind::kMax},
        {"and", Combiner::Kind::kAnd}, {"or", Combiner::Kind::kOr}};
    for (const auto& [word, kind] : kinds)
      if (t.text == word) {
        next();
        return Combiner(kind);
      }
    if (t.text != "table")
      fail(Code::kCombiner, t.at, "unknown combiner '" + t.text + "'");
    const Position at = t.at;
    next();
    expect(Tok::kLBrace);
    auto universe = int_list(Tok::kComma, Tok::kRBrace);
    next();
    expect(Tok::kLBracket);
    std::vector<std::vector<Value>> rows;
    rows.push_back({expect(Tok::kInt).value});
    while (true) {
      if (peek().kind == Tok::kComma) {
        next();
        rows.back().push_back(expect(Tok::kInt).value);
      } else if (peek().kind == Tok::kSemi) {
        next();
        rows.push_back({expect(Tok::kInt).value});
      } else {
        break;
      }
    }
    expect(Tok::kRBracket);
    try {
      return Combiner::table(std::move(universe), std::move(rows));
    } catch (const InputError& e) {
      fail(Code::kCombiner, at, e.what());
    }
  }

  ModelClass models() {
    const Token& t = peek();
    if (t.kind == Tok::kName && t.text == "hierarchical") {
      next();
      return ModelClass::kHierarchical;
    }
    if (t.kind == Tok::kName && t.text == "lexicographic") {
      next();
      return ModelClass::kLexicographic;
    }
    unexpected("'hierarchical' or 'lexicographic'");
  }

  Alternative tuple(const VariableSpace& space) {
    skip_newlines();
    const Position at = peek().at;
    expect(Tok::kLParen);
    std::vector<const Token*> vals;
    skip_newlines();
    vals.push_back(&expect(Tok::kInt));
    while (skip_newlines(), peek().kind == Tok::kComma) {
      next();
      skip_newlines();
      vals.push_back(&expect(Tok::kInt));
    }
    skip_newlines();
    expect(Tok::kRParen);
    if (vals.size() != space.size()) {
      std::ostringstream os;
      os << "tuple has " << vals.size() << " values, " << space.size()
         << " variables are declared";
      fail(Code::kArity, at, os.str());
    }
    std::vector<Value> out;
    for (std::size_t v = 0; v < vals.size(); ++v) {
      if (!space.contains(v, vals[v]->value))
        fail(Code::kRange, vals[v]->at,
             "value " + vals[v]->text + " outside the range of '" + space.name(v) + "'");
      out.push_back(vals[v]->value);
    }
    return Alternative(std::move(out));
  }

  Statement statement(const VariableSpace& space) {
    Alternative l = tuple(space);
    skip_newlines();
    Relation rel;
    if (peek().kind == Tok::kGt) {
      rel = Relation::kStrict;
    } else if (peek().kind == Tok::kGe) {
      rel = Relation::kNonStrict;
    } else {
      unexpected("'>' or '>='");
    }
    next();
    Alternative r = tuple(space);
    return {std::move(l), std::move(r), rel};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string code_name(Code c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "E%03d", static_cast<int>(c));
  return buf;
}

std::string Diagnostic::str() const {
  std::ostringstream os;
  os << at.line << ':' << at.column << ": error " << code_name(code) << ": " << message;
  return os.str();
}

ParseError::ParseError(Diagnostic d) : InputError(d.str()), diag_(std::move(d)) {}

Document parse(std::string_view text) { return Parser(text).document(); }

Statement parse_statement(std::string_view text, const VariableSpace& space) {
  return Parser(text).lone_statement(space);
}

std::string render(const Alternative& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(a[i]);
  }
  return out + ")";
}

std::string render(const Statement& s) {
  return render(s.left) + (s.strict() ? " > " : " >= ") + render(s.right);
}

std::string render(const Profile& p) {
  std::ostringstream os;
  os << "vars ";
  for (std::size_t v = 0; v < p.space.size(); ++v) {
    const auto& d = p.space.domain(v);
    for (std::size_t k = 1; k < d.size(); ++k)
      if (d[k] != d[k - 1] + 1)
        throw InputError("render: domain of '" + p.space.name(v) + "' is not a range");
    os << (v ? ", " : "") << p.space.name(v) << ':' << d.front() << ".." << d.back();
  }
  os << "\ncombiner ";
  if (p.combiner.is_table()) {
    const auto& u = p.combiner.universe();
    os << "table {";
    for (std::size_t i = 0; i < u.size(); ++i) os << (i ? "," : "") << u[i];
    os << "} [";
    const auto& t = p.combiner.table_entries();
    for (std::size_t i = 0; i < t.size(); ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < t[i].size(); ++j) os << (j ? "," : "") << t[i][j];
    }
    os << "]";
  } else {
    os << to_string(p.combiner.kind());
  }
  os << "\nmodels " << to_string(p.model_class) << "\n";
  for (const auto& sh : p.stakeholders) {
    os << "\nstakeholder " << sh.name << " {\n";
    for (std::size_t i = 0; i < sh.statements.size(); ++i)
      os << "  " << render(sh.statements[i])
         << (i + 1 < sh.statements.size() ? ";\n" : "\n");
    os << "}\n";
  }
  return os.str();
}

}  // namespace concord::dsl
