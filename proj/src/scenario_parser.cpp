#include <blp/scenario.hpp>

#include <cctype>
#include <charconv>
#include <set>
#include <string>

namespace blp::scenario {
namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
  std::size_t end_column;  // column just past the last character
};

bool is_punct(char c) { return c == '{' || c == '}' || c == ','; }

std::vector<Line> tokenize(std::string_view source) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    auto eol = source.find('\n', pos);
    if (eol == std::string_view::npos) eol = source.size();
    auto text = source.substr(pos, eol - pos);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    ++number;

    Line line{number, {}, text.size() + 1};
    std::size_t i = 0;
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      if (is_punct(text[i])) {
        ++i;
      } else {
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && !is_punct(text[i])) ++i;
      }
      line.tokens.push_back(Token{text.substr(start, i - start), start + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (eol == source.size()) break;
    pos = eol + 1;
  }
  return lines;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// Cursor over one line's tokens.
class LineReader {
 public:
  explicit LineReader(const Line& line) : line_(line) {}

  bool at_end() const { return pos_ >= line_.tokens.size(); }
  const Token& keyword() const { return line_.tokens.front(); }

  [[noreturn]] void fail_here(const std::string& message) const {
    if (at_end()) throw ParseError(line_.number, line_.end_column, message, "");
    const auto& t = line_.tokens[pos_];
    throw ParseError(line_.number, t.column, message, std::string(t.text));
  }

  [[noreturn]] void fail_arity(std::string_view usage) const {
    const auto& kw = keyword();
    throw ParseError(line_.number, kw.column,
                     "'" + std::string(kw.text) + "' takes " + std::string(usage), std::string(kw.text));
  }

  std::string_view take() { return line_.tokens[pos_++].text; }

  std::string_view identifier(std::string_view usage) {
    if (at_end()) fail_arity(usage);
    if (!is_identifier(line_.tokens[pos_].text)) fail_here("expected an identifier");
    return take();
  }

  void expect(std::string_view word, std::string_view usage) {
    if (at_end()) fail_arity(usage);
    if (line_.tokens[pos_].text != word) fail_here("expected '" + std::string(word) + "'");
    ++pos_;
  }

  std::uint32_t natural(std::string_view usage) {
    if (at_end()) fail_arity(usage);
    auto text = line_.tokens[pos_].text;
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) fail_here("expected a natural number");
    ++pos_;
    return value;
  }

  MatrixMode matrix_mode(std::string_view usage) {
    if (at_end()) fail_arity(usage);
    auto text = line_.tokens[pos_].text;
    if (text == "read") return ++pos_, MatrixMode::read;
    if (text == "write") return ++pos_, MatrixMode::write;
    if (text == "ctrl") return ++pos_, MatrixMode::ctrl;
    fail_here("expected a mode (read, write or ctrl)");
  }

  // "level" NAT "cats" "{" idlist? "}"
  SecurityClass security_class(std::string_view usage) {
    SecurityClass cls;
    expect("level", usage);
    cls.level = natural(usage);
    expect("cats", usage);
    expect("{", usage);
    if (!at_end() && line_.tokens[pos_].text == "}") {
      ++pos_;
      return cls;
    }
    while (true) {
      cls.cats.insert(CategoryId{identifier(usage)});
      if (at_end()) fail_here("expected ',' or '}'");
      auto sep = take();
      if (sep == "}") return cls;
      if (sep != ",") {
        --pos_;
        fail_here("expected ',' or '}'");
      }
    }
  }

  void finish(std::string_view usage) const {
    if (!at_end()) {
      const auto& t = line_.tokens[pos_];
      const auto& kw = keyword();
      throw ParseError(line_.number, t.column,
                       "'" + std::string(kw.text) + "' takes " + std::string(usage) + "; unexpected extra token",
                       std::string(t.text));
    }
  }

 private:
  const Line& line_;
  std::size_t pos_ = 1;  // token 0 is the keyword
};

constexpr std::string_view kClassUsage = "level N cats {...}";

struct BlockScope {
  std::set<SubjectId> subjects;
  std::set<ObjectId> objects;
};

Decl parse_decl(const Line& line, BlockScope& scope) {
  LineReader in(line);
  const auto kw = in.keyword().text;
  auto undeclared = [&](std::string_view what, std::string_view id) {
    throw ParseError(line.number, in.keyword().column,
                     std::string(what) + " '" + std::string(id) + "' is not declared in this state block",
                     std::string(id));
  };

  if (kw == "subject" || kw == "object") {
    const std::string usage = "an identifier, optionally followed by " + std::string(kClassUsage);
    const auto& id_token = line.tokens.size() > 1 ? line.tokens[1] : line.tokens[0];
    auto name = in.identifier(usage);
    std::optional<SecurityClass> cls;
    if (!in.at_end()) cls = in.security_class(usage);
    in.finish(usage);
    if (kw == "subject") {
      SubjectId id{name};
      if (!scope.subjects.insert(id).second)
        throw ParseError(line.number, id_token.column, "duplicate subject declaration", std::string(name));
      return SubjectDecl{id, cls};
    }
    ObjectId id{name};
    if (!scope.objects.insert(id).second)
      throw ParseError(line.number, id_token.column, "duplicate object declaration", std::string(name));
    return ObjectDecl{id, cls};
  }
  if (kw == "grant") {
    constexpr std::string_view usage = "3 arguments: object subject mode";
    auto o = in.identifier(usage);
    auto s = in.identifier(usage);
    auto mode = in.matrix_mode(usage);
    in.finish(usage);
    if (!scope.objects.count(ObjectId{o})) undeclared("object", o);
    if (!scope.subjects.count(SubjectId{s})) undeclared("subject", s);
    return GrantDecl{ObjectId{o}, SubjectId{s}, mode};
  }
  if (kw == "reading" || kw == "writing") {
    constexpr std::string_view usage = "2 arguments: subject object";
    auto s = in.identifier(usage);
    auto o = in.identifier(usage);
    in.finish(usage);
    if (!scope.subjects.count(SubjectId{s})) undeclared("subject", s);
    if (!scope.objects.count(ObjectId{o})) undeclared("object", o);
    if (kw == "reading") return ReadingDecl{SubjectId{s}, ObjectId{o}};
    return WritingDecl{SubjectId{s}, ObjectId{o}};
  }
  throw ParseError(line.number, in.keyword().column,
                   "expected a declaration (subject, object, grant, reading, writing) or 'end'", std::string(kw));
}

std::optional<Request> parse_command(const Line& line) {
  LineReader in(line);
  const auto kw = in.keyword().text;

  auto subject_object = [&](auto make) -> Request {
    constexpr std::string_view usage = "2 arguments: subject object";
    auto s = in.identifier(usage);
    auto o = in.identifier(usage);
    in.finish(usage);
    return make(SubjectId{s}, ObjectId{o});
  };
  auto rescind = [&](auto make) -> Request {
    constexpr std::string_view usage = "3 arguments: rescinder target object";
    auto a = in.identifier(usage);
    auto b = in.identifier(usage);
    auto o = in.identifier(usage);
    in.finish(usage);
    return make(SubjectId{a}, SubjectId{b}, ObjectId{o});
  };

  if (kw == "get-read") return subject_object([](auto s, auto o) { return GetRead{s, o}; });
  if (kw == "get-write") return subject_object([](auto s, auto o) { return GetWrite{s, o}; });
  if (kw == "release-read") return subject_object([](auto s, auto o) { return ReleaseRead{s, o}; });
  if (kw == "release-write") return subject_object([](auto s, auto o) { return ReleaseWrite{s, o}; });
  if (kw == "delete-object") return subject_object([](auto s, auto o) { return DeleteObject{s, o}; });
  if (kw == "rescind-read") return rescind([](auto a, auto b, auto o) { return RescindRead{a, b, o}; });
  if (kw == "rescind-write") return rescind([](auto a, auto b, auto o) { return RescindWrite{a, b, o}; });
  if (kw == "give") {
    constexpr std::string_view usage = "4 arguments: giver receiver object mode";
    auto g = in.identifier(usage);
    auto r = in.identifier(usage);
    auto o = in.identifier(usage);
    auto mode = in.matrix_mode(usage);
    in.finish(usage);
    return GiveRW{SubjectId{g}, SubjectId{r}, ObjectId{o}, mode};
  }
  if (kw == "change-class") {
    const std::string usage = "an object followed by " + std::string(kClassUsage);
    auto o = in.identifier(usage);
    auto cls = in.security_class(usage);
    in.finish(usage);
    return ChangeClass{ObjectId{o}, cls};
  }
  if (kw == "create-object") {
    const std::string usage = "a subject and an object followed by " + std::string(kClassUsage);
    auto s = in.identifier(usage);
    auto o = in.identifier(usage);
    auto cls = in.security_class(usage);
    in.finish(usage);
    return CreateObject{SubjectId{s}, ObjectId{o}, cls};
  }
  return std::nullopt;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::string message, std::string token)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message +
                         (token.empty() ? std::string() : " (at '" + token + "')")),
      line_(line),
      column_(column),
      message_(std::move(message)),
      token_(std::move(token)) {}

std::string_view to_string(Predicate predicate) {
  switch (predicate) {
    case Predicate::sec_cond: return "seccond";
    case Predicate::star_prop: return "starprop";
    case Predicate::well_formed: return "wellformed";
  }
  return "?";
}

Script parse_scenario(std::string_view source) {
  const auto lines = tokenize(source);
  Script script;
  bool have_state = false;
  bool have_command = false;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    LineReader in(line);
    const auto kw = in.keyword().text;

    if (kw == "state") {
      in.finish("no arguments");
      StateBlock block;
      BlockScope scope;
      const auto start = line.number;
      bool closed = false;
      for (++i; i < lines.size(); ++i) {
        if (lines[i].tokens.front().text == "end") {
          LineReader(lines[i]).finish("no arguments");
          closed = true;
          break;
        }
        block.decls.push_back(parse_decl(lines[i], scope));
      }
      if (!closed) throw ParseError(start, 1, "state block is not closed with 'end'", "state");
      script.statements.emplace_back(std::move(block));
      script.lines.push_back(start);
      have_state = true;
      continue;
    }

    if (kw == "assert") {
      Assert a;
      while (!in.at_end()) {
        auto name = in.take();
        if (name == "seccond") a.predicates.push_back(Predicate::sec_cond);
        else if (name == "starprop") a.predicates.push_back(Predicate::star_prop);
        else if (name == "wellformed") a.predicates.push_back(Predicate::well_formed);
        else
          throw ParseError(line.number, line.tokens[a.predicates.size() + 1].column,
                           "unknown property (expected seccond, starprop or wellformed)", std::string(name));
      }
      if (a.predicates.empty()) in.fail_arity("at least one property: seccond, starprop, wellformed");
      if (!have_state) throw ParseError(line.number, in.keyword().column, "assert before any state block", "assert");
      script.statements.emplace_back(std::move(a));
      script.lines.push_back(line.number);
      continue;
    }

    if (kw == "expect") {
      constexpr std::string_view usage = "1 argument: yes or no";
      if (in.at_end()) in.fail_arity(usage);
      auto word = in.take();
      Decision d;
      if (word == "yes") d = Decision::yes;
      else if (word == "no") d = Decision::no;
      else throw ParseError(line.number, line.tokens[1].column, "expected 'yes' or 'no'", std::string(word));
      in.finish(usage);
      if (!have_command)
        throw ParseError(line.number, in.keyword().column, "expect with no preceding command", "expect");
      script.statements.emplace_back(Expect{d});
      script.lines.push_back(line.number);
      continue;
    }

    if (auto request = parse_command(line)) {
      if (!have_state)
        throw ParseError(line.number, in.keyword().column, "command before any state block", std::string(kw));
      script.statements.emplace_back(Command{*request});
      script.lines.push_back(line.number);
      have_command = true;
      continue;
    }

    if (kw == "end") throw ParseError(line.number, in.keyword().column, "'end' outside a state block", "end");
    throw ParseError(line.number, in.keyword().column, "unknown statement", std::string(kw));
  }
  return script;
}

}  // namespace blp::scenario
