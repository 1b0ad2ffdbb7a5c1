/*
 * Copyright (C) 2026 The Shutter Sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include "shutter/dsl.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

#include "shutter/errors.hpp"

namespace shutter::dsl {

namespace {

bool is_ident_start(char c)
{
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_identifier(std::string_view s)
{
  return !s.empty() && is_ident_start(s.front()) &&
         std::all_of(s.begin(), s.end(), is_ident_char);
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

// ---------------------------------------------------------------------------
// Scenario parsing: one cursor per line.

class LineCursor
{
public:
  LineCursor(std::string_view line, int line_no) : line_(line), line_no_(line_no) {}

  [[noreturn]] void fail(std::string message, std::string expected) const
  {
    throw ParseError(line_no_, static_cast<int>(pos_) + 1, std::move(message), std::move(expected));
  }

  bool at_end() const { return pos_ >= line_.size(); }
  char peek() const { return at_end() ? '\0' : line_[pos_]; }

  void skip_blanks()
  {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos_;
  }

  // At least one blank is required between fields.
  void require_blank(const std::string& expected)
  {
    if (at_end() || (peek() != ' ' && peek() != '\t')) {
      fail(at_end() ? "unexpected end of line" : "unexpected character " + quoted(line_.substr(pos_, 1)), expected);
    }
    skip_blanks();
  }

  std::string_view word()
  {
    const std::size_t start = pos_;
    while (!at_end() && is_ident_char(peek())) ++pos_;
    return line_.substr(start, pos_ - start);
  }

  void expect_literal(std::string_view lit)
  {
    if (line_.substr(pos_, lit.size()) != lit) {
      fail("unexpected input", quoted(lit));
    }
    pos_ += lit.size();
  }

  std::string ident(const std::string& expected)
  {
    if (!is_ident_start(peek())) {
      fail(at_end() ? "unexpected end of line" : "unexpected character " + quoted(line_.substr(pos_, 1)), expected);
    }
    return std::string(word());
  }

  std::int64_t integer(const std::string& expected)
  {
    const std::size_t start = pos_;
    while (!at_end() && is_digit(peek())) ++pos_;
    if (start == pos_) {
      pos_ = start;
      fail(at_end() ? "unexpected end of line" : "unexpected character " + quoted(line_.substr(pos_, 1)), expected);
    }
    std::int64_t value = 0;
    const auto text = line_.substr(start, pos_ - start);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || value > std::numeric_limits<int>::max()) {
      pos_ = start;
      fail("integer out of range", expected);
    }
    return value;
  }

  double decimal(const std::string& expected)
  {
    const std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    const std::size_t int_start = pos_;
    while (!at_end() && is_digit(peek())) ++pos_;
    if (pos_ == int_start) {
      fail(at_end() ? "unexpected end of line" : "unexpected character " + quoted(line_.substr(pos_, 1)), expected);
    }
    if (peek() == '.') {
      ++pos_;
      const std::size_t frac_start = pos_;
      while (!at_end() && is_digit(peek())) ++pos_;
      if (pos_ == frac_start) {
        fail(at_end() ? "unexpected end of line" : "unexpected character " + quoted(line_.substr(pos_, 1)), "digit");
      }
    }
    const auto text = line_.substr(start, pos_ - start);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || !std::isfinite(value)) {
      pos_ = start;
      fail("number out of range", expected);
    }
    return value;
  }

  void expect_end()
  {
    skip_blanks();
    if (!at_end()) {
      fail("unexpected trailing input " + quoted(line_.substr(pos_)), "end of line");
    }
  }

  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }

private:
  std::string_view line_;
  int line_no_;
  std::size_t pos_ = 0;
};

constexpr std::string_view kEventKinds =
  "person_appear|person_move|person_leave|button|hazard|network";

Event parse_event(LineCursor& cur, Tick at)
{
  const std::size_t kind_pos = cur.pos();
  const std::string kind = std::string(cur.word());
  Event e;
  e.at_tick = at;

  auto person_fields = [&](bool with_position) {
    cur.require_blank("id=");
    cur.expect_literal("id=");
    e.person_id = static_cast<PersonId>(cur.integer("integer"));
    if (with_position) {
      cur.require_blank("x=");
      cur.expect_literal("x=");
      e.position.x = cur.decimal("number");
      cur.require_blank("y=");
      cur.expect_literal("y=");
      e.position.y = cur.decimal("number");
    }
  };

  auto choice = [&](std::string_view first, std::string_view second) {
    cur.require_blank(std::string(first) + "|" + std::string(second));
    const std::size_t at_pos = cur.pos();
    const auto w = cur.word();
    if (w == first) return true;
    if (w == second) return false;
    cur.set_pos(at_pos);
    cur.fail("unknown value " + quoted(w), std::string(first) + "|" + std::string(second));
  };

  if (kind == "person_appear") {
    e.kind = EventKind::PersonAppear;
    person_fields(true);
  } else if (kind == "person_move") {
    e.kind = EventKind::PersonMove;
    person_fields(true);
  } else if (kind == "person_leave") {
    e.kind = EventKind::PersonLeave;
    person_fields(false);
  } else if (kind == "button") {
    e.kind = EventKind::ButtonPress;
    cur.require_blank("yes|no|aux");
    const std::size_t at_pos = cur.pos();
    const auto w = cur.word();
    const auto b = parse_button(w);
    if (!b) {
      cur.set_pos(at_pos);
      cur.fail("unknown button " + quoted(w), "yes|no|aux");
    }
    e.button = *b;
  } else if (kind == "hazard") {
    e.kind = choice("on", "off") ? EventKind::HazardOn : EventKind::HazardOff;
  } else if (kind == "network") {
    e.kind = choice("down", "up") ? EventKind::NetworkDown : EventKind::NetworkUp;
  } else {
    cur.set_pos(kind_pos);
    cur.fail(kind.empty() ? "missing event" : "unknown event " + quoted(kind), std::string(kEventKinds));
  }
  cur.expect_end();
  return e;
}

std::string format_number(double v)
{
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
  if (ec != std::errc()) {
    throw ValidationError("cannot format coordinate");
  }
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------
// Tree parsing.

enum class TokenKind { Ident, Int, LBrace, RBrace, LParen, RParen, Star, Equals, End };

struct Token
{
  TokenKind kind = TokenKind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

std::string describe(const Token& t)
{
  switch (t.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::Ident: return "identifier " + quoted(t.text);
    case TokenKind::Int: return "integer " + t.text;
    default: return quoted(t.text);
  }
}

std::vector<Token> tokenize(std::string_view text)
{
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&]() {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++i;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      advance();
      continue;
    }
    Token t;
    t.line = line;
    t.column = column;
    if (is_ident_start(c)) {
      t.kind = TokenKind::Ident;
      while (i < text.size() && is_ident_char(text[i])) {
        t.text += text[i];
        advance();
      }
    } else if (is_digit(c)) {
      t.kind = TokenKind::Int;
      while (i < text.size() && is_digit(text[i])) {
        t.text += text[i];
        advance();
      }
    } else {
      switch (c) {
        case '{': t.kind = TokenKind::LBrace; break;
        case '}': t.kind = TokenKind::RBrace; break;
        case '(': t.kind = TokenKind::LParen; break;
        case ')': t.kind = TokenKind::RParen; break;
        case '*': t.kind = TokenKind::Star; break;
        case '=': t.kind = TokenKind::Equals; break;
        default: {
          const unsigned char uc = static_cast<unsigned char>(c);
          std::string shown = uc >= 0x20 && uc < 0x7f ? quoted(std::string(1, c)) : "byte " + std::to_string(uc);
          throw ParseError(line, column, "unexpected character " + shown, "node");
        }
      }
      t.text = std::string(1, c);
      advance();
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = TokenKind::End;
  end.line = line;
  end.column = column;
  out.push_back(end);
  return out;
}

constexpr int kMaxDepth = 256;
constexpr std::string_view kNodeKeywords = "sequence|fallback|parallel|guard|condition|action";

class TreeParser
{
public:
  explicit TreeParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  bt::TreeNode parse_root()
  {
    bt::TreeNode root = node(0);
    if (peek().kind != TokenKind::End) {
      fail(peek(), "unexpected " + describe(peek()) + " after the root node", "end of input");
    }
    return root;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }

  [[noreturn]] static void fail(const Token& t, std::string message, std::string expected)
  {
    throw ParseError(t.line, t.column, std::move(message), std::move(expected));
  }

  const Token& expect(TokenKind kind, const std::string& expected)
  {
    const Token& t = peek();
    if (t.kind != kind) fail(t, "unexpected " + describe(t), expected);
    return next();
  }

  std::string ident(const std::string& expected) { return expect(TokenKind::Ident, expected).text; }

  std::vector<bt::TreeNode> block(int depth, bool single)
  {
    expect(TokenKind::LBrace, "'{'");
    std::vector<bt::TreeNode> children;
    while (peek().kind != TokenKind::RBrace) {
      if (peek().kind == TokenKind::End) {
        fail(peek(), "unexpected end of input", children.empty() ? "node" : "node or '}'");
      }
      if (single && children.size() == 1) {
        fail(peek(), "guard takes exactly one child", "'}'");
      }
      children.push_back(node(depth + 1));
    }
    if (children.empty()) {
      fail(peek(), "composite requires at least one child", "node");
    }
    next();  // '}'
    return children;
  }

  bt::TreeNode node(int depth)
  {
    const Token& head = peek();
    if (depth > kMaxDepth) fail(head, "tree nested too deeply", "at most 256 levels");
    if (head.kind != TokenKind::Ident) {
      fail(head, "unexpected " + describe(head), std::string(kNodeKeywords));
    }
    const std::string kw = next().text;

    if (kw == "sequence" || kw == "fallback") {
      bool memory = false;
      if (peek().kind == TokenKind::Star) {
        next();
        memory = true;
      }
      std::string name = ident("node name");
      auto children = block(depth, false);
      return kw == "sequence" ? bt::sequence(std::move(name), std::move(children), memory)
                              : bt::fallback(std::move(name), std::move(children), memory);
    }
    if (kw == "parallel") {
      std::string name = ident("node name");
      return bt::parallel(std::move(name), block(depth, false));
    }
    if (kw == "guard") {
      expect(TokenKind::LParen, "'('");
      std::string cond = ident("condition name");
      expect(TokenKind::RParen, "')'");
      std::string name = ident("node name");
      auto children = block(depth, true);
      return bt::guard(std::move(cond), std::move(name), std::move(children.front()));
    }
    if (kw == "condition") {
      return bt::condition(ident("condition name"));
    }
    if (kw == "action") {
      std::string behavior = ident("behavior name");
      std::optional<int> duration;
      if (peek().kind == TokenKind::Ident && peek().text == "dur" &&
          tokens_[pos_ + 1].kind == TokenKind::Equals)
      {
        next();
        next();
        const Token& value = expect(TokenKind::Int, "duration");
        int d = 0;
        const auto [ptr, ec] = std::from_chars(value.text.data(), value.text.data() + value.text.size(), d);
        if (ec != std::errc() || d < 1) {
          fail(value, "duration must be a positive integer", "duration >= 1");
        }
        duration = d;
      }
      return bt::action(std::move(behavior), duration);
    }
    fail(head, "unknown node kind " + quoted(kw), std::string(kNodeKeywords));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

void print_node(const bt::TreeNode& n, int indent, std::string& out)
{
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto check = [](const std::string& s, const char* what) {
    if (!is_identifier(s)) {
      throw ConfigError(std::string("cannot print ") + what + " " + quoted(s));
    }
  };
  switch (n.kind) {
    case bt::NodeKind::Condition:
      check(n.condition, "condition name");
      out += pad + "condition " + n.condition + "\n";
      return;
    case bt::NodeKind::Action:
      check(n.behavior, "behavior name");
      out += pad + "action " + n.behavior;
      if (n.duration) out += " dur=" + std::to_string(*n.duration);
      out += "\n";
      return;
    case bt::NodeKind::Guard:
      check(n.condition, "guard condition");
      check(n.name, "node name");
      out += pad + "guard(" + n.condition + ") " + n.name + " {\n";
      break;
    default:
      check(n.name, "node name");
      out += pad + std::string(bt::to_string(n.kind)) + (n.memory ? "*" : "") + " " + n.name + " {\n";
      break;
  }
  for (const auto& c : n.children) print_node(c, indent + 1, out);
  out += pad + "}\n";
}

}  // namespace

std::vector<Event> ScenarioScript::events_at(Tick t) const
{
  std::vector<Event> out;
  for (const auto& e : events) {
    if (e.at_tick == t) out.push_back(e);
  }
  return out;
}

ScenarioScript parse_scenario(std::string_view text)
{
  ScenarioScript script;
  std::vector<int> event_lines;
  bool have_header = false;
  int line_no = 0;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    const bool last = end == std::string_view::npos;
    if (last) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (last && line.empty()) break;

    LineCursor cur(line, line_no);
    cur.skip_blanks();
    if (cur.at_end() || cur.peek() == '#') {
      if (last) break;
      continue;
    }
    if (!have_header) {
      const std::size_t kw_pos = cur.pos();
      if (cur.word() != "scenario") {
        cur.set_pos(kw_pos);
        cur.fail("missing scenario header", "'scenario'");
      }
      cur.require_blank("scenario name");
      script.name = cur.ident("scenario name");
      cur.require_blank("'ticks'");
      cur.expect_literal("ticks");
      cur.require_blank("integer");
      const std::size_t dur_pos = cur.pos();
      script.duration = cur.integer("integer");
      if (script.duration < 1) {
        cur.set_pos(dur_pos);
        cur.fail("duration must be positive", "integer >= 1");
      }
      cur.expect_end();
      have_header = true;
    } else {
      if (cur.peek() != '@') {
        cur.fail("unexpected character " + quoted(line.substr(cur.pos(), 1)), "'@', '#' or blank line");
      }
      cur.set_pos(cur.pos() + 1);
      const Tick at = cur.integer("tick number");
      cur.require_blank(std::string(kEventKinds));
      script.events.push_back(parse_event(cur, at));
      event_lines.push_back(line_no);
    }
    if (last) break;
  }
  if (!have_header) {
    throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing scenario header", "'scenario'");
  }

  // Report validation problems against the offending line.
  std::vector<std::size_t> order(script.events.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return script.events[a].at_tick < script.events[b].at_tick;
  });
  std::set<PersonId> present;
  std::vector<Event> sorted;
  for (std::size_t idx : order) {
    const Event& e = script.events[idx];
    const std::string where = " (line " + std::to_string(event_lines[idx]) + ")";
    if (e.at_tick >= script.duration) {
      throw ValidationError(
        "event at " + std::to_string(e.at_tick) + " beyond duration " +
        std::to_string(script.duration) + where);
    }
    const bool about_person = e.kind == EventKind::PersonAppear ||
                              e.kind == EventKind::PersonMove || e.kind == EventKind::PersonLeave;
    if (about_person && e.person_id < 1) {
      throw ValidationError("person id " + std::to_string(e.person_id) + " is not positive" + where);
    }
    if (e.kind == EventKind::PersonAppear && !present.insert(e.person_id).second) {
      throw ValidationError(
        "person " + std::to_string(e.person_id) + " already present at tick " +
        std::to_string(e.at_tick) + where);
    }
    if ((e.kind == EventKind::PersonMove && !present.contains(e.person_id)) ||
        (e.kind == EventKind::PersonLeave && present.erase(e.person_id) == 0))
    {
      throw ValidationError(
        "unknown person " + std::to_string(e.person_id) + " at tick " +
        std::to_string(e.at_tick) + where);
    }
    sorted.push_back(e);
  }
  script.events = std::move(sorted);
  return script;
}

void validate_scenario(ScenarioScript& script)
{
  if (script.duration < 1) {
    throw ValidationError("scenario duration must be positive");
  }
  std::stable_sort(script.events.begin(), script.events.end(), [](const Event& a, const Event& b) {
    return a.at_tick < b.at_tick;
  });
  std::set<PersonId> present;
  for (const Event& e : script.events) {
    if (e.at_tick < 0) {
      throw ValidationError("event at negative tick " + std::to_string(e.at_tick));
    }
    if (e.at_tick >= script.duration) {
      throw ValidationError(
        "event at " + std::to_string(e.at_tick) + " beyond duration " +
        std::to_string(script.duration));
    }
    const std::string at = " at tick " + std::to_string(e.at_tick);
    if ((e.kind == EventKind::PersonAppear || e.kind == EventKind::PersonMove ||
         e.kind == EventKind::PersonLeave) && e.person_id < 1)
    {
      throw ValidationError("person id " + std::to_string(e.person_id) + " is not positive" + at);
    }
    switch (e.kind) {
      case EventKind::PersonAppear:
        if (!std::isfinite(e.position.x) || !std::isfinite(e.position.y)) {
          throw ValidationError("non-finite position for person " + std::to_string(e.person_id) + at);
        }
        if (!present.insert(e.person_id).second) {
          throw ValidationError("person " + std::to_string(e.person_id) + " already present" + at);
        }
        break;
      case EventKind::PersonMove:
        if (!std::isfinite(e.position.x) || !std::isfinite(e.position.y)) {
          throw ValidationError("non-finite position for person " + std::to_string(e.person_id) + at);
        }
        if (!present.contains(e.person_id)) {
          throw ValidationError("unknown person " + std::to_string(e.person_id) + at);
        }
        break;
      case EventKind::PersonLeave:
        if (present.erase(e.person_id) == 0) {
          throw ValidationError("unknown person " + std::to_string(e.person_id) + at);
        }
        break;
      default:
        break;
    }
  }
}

std::string print_scenario(const ScenarioScript& script)
{
  if (!is_identifier(script.name)) {
    throw ValidationError("scenario name " + quoted(script.name) + " is not an identifier");
  }
  std::string out = "scenario " + script.name + " ticks " + std::to_string(script.duration) + "\n";
  for (const auto& e : script.events) {
    out += "@" + std::to_string(e.at_tick) + " ";
    switch (e.kind) {
      case EventKind::PersonAppear:
      case EventKind::PersonMove:
        out += std::string(to_string(e.kind)) + " id=" + std::to_string(e.person_id) +
               " x=" + format_number(e.position.x) + " y=" + format_number(e.position.y);
        break;
      case EventKind::PersonLeave:
        out += "person_leave id=" + std::to_string(e.person_id);
        break;
      case EventKind::ButtonPress: out += "button " + std::string(to_string(e.button)); break;
      case EventKind::HazardOn: out += "hazard on"; break;
      case EventKind::HazardOff: out += "hazard off"; break;
      case EventKind::NetworkDown: out += "network down"; break;
      case EventKind::NetworkUp: out += "network up"; break;
    }
    out += "\n";
  }
  return out;
}

bt::TreeNode parse_tree(std::string_view text)
{
  TreeParser parser(tokenize(text));
  bt::TreeNode root = parser.parse_root();
  bt::assign_ids(root);
  return root;
}

std::string print_tree(const bt::TreeNode& tree)
{
  std::string out;
  print_node(tree, 0, out);
  return out;
}

}  // namespace shutter::dsl
