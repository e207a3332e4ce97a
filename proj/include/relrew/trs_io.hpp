// Copyright 2026 The Relrew Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Line-oriented TRS file format:
//
//   # comment
//   sig add/2 succ/1 zero/0     (one or more lines, merged)
//   vars x y
//   rule add(zero, y) -> y
//
// Identifiers are [A-Za-z_][A-Za-z0-9_]*; whitespace inside terms is
// insignificant. Lexical and syntax errors carry line:column; semantic
// errors carry the rule index.

#ifndef RELREW_TRS_IO_HPP
#define RELREW_TRS_IO_HPP

#include <cctype>

#include "relrew/term.hpp"

namespace relrew {

class TrsParseError : public std::runtime_error {
 public:
  TrsParseError(int line, int col, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + what),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

/// A parsed TRS file: the system plus the source line of each rule, for
/// diagnostics.
struct TrsFile {
  ESystem es;
  std::vector<int> rule_lines;
};

namespace trs_detail {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  int line;

  int col() const { return static_cast<int>(pos) + 1; }
  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos;
  }

  std::string ident() {
    skip_ws();
    if (done() || !(std::isalpha(static_cast<unsigned char>(peek())) ||
                    peek() == '_'))
      throw TrsParseError(line, col(), "expected an identifier");
    std::size_t start = pos;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                       peek() == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }

  bool eat(char c) {
    skip_ws();
    if (!done() && peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c, const std::string& what) {
    if (!eat(c)) throw TrsParseError(line, col(), "expected " + what);
  }
};

inline Term parse_term(Cursor& cur, const Signature& sig, const VarSet& vars,
                       int rule_index) {
  std::string name = cur.ident();
  cur.skip_ws();
  std::vector<Term> kids;
  bool has_args = false;
  if (cur.eat('(')) {
    has_args = true;
    do {
      kids.push_back(parse_term(cur, sig, vars, rule_index));
    } while (cur.eat(','));
    cur.expect(')', "')'");
  }
  std::string where =
      rule_index >= 0 ? "rule " + std::to_string(rule_index) : "term";
  if (auto v = vars.find(name)) {
    if (has_args)
      throw TrsParseError(cur.line, cur.col(),
                          "variable '" + name + "' cannot take arguments");
    return Term::var(*v);
  }
  auto s = sig.find(name);
  if (!s)
    throw std::invalid_argument(where + ": undeclared symbol '" + name + "'");
  if (static_cast<int>(kids.size()) != sig.arity(*s))
    throw std::invalid_argument(
        where + ": arity mismatch for '" + name + "' (declared " +
        std::to_string(sig.arity(*s)) + ", got " +
        std::to_string(kids.size()) + ")");
  return Term::node(*s, std::move(kids));
}

}  // namespace trs_detail

inline TrsFile parse_trs(const std::string& text) {
  std::vector<std::pair<std::string, int>> sig_entries;
  std::vector<std::string> var_names;
  std::vector<std::pair<std::string, int>> rule_sources;  // text, line

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string body = raw.substr(0, raw.find('#'));
    trs_detail::Cursor cur{body, 0, lineno};
    cur.skip_ws();
    if (cur.done()) continue;
    std::string head = cur.ident();
    if (head == "sig") {
      cur.skip_ws();
      if (cur.done())
        throw TrsParseError(lineno, cur.col(), "empty sig line");
      while (!cur.done()) {
        std::string name = cur.ident();
        cur.expect('/', "'/' after symbol name");
        cur.skip_ws();
        if (cur.done() ||
            !std::isdigit(static_cast<unsigned char>(cur.peek())))
          throw TrsParseError(lineno, cur.col(), "expected an arity");
        int arity = 0;
        while (!cur.done() &&
               std::isdigit(static_cast<unsigned char>(cur.peek())))
          arity = arity * 10 + (cur.text[cur.pos++] - '0');
        sig_entries.emplace_back(name, arity);
        cur.skip_ws();
      }
    } else if (head == "vars") {
      cur.skip_ws();
      while (!cur.done()) {
        var_names.push_back(cur.ident());
        cur.skip_ws();
      }
    } else if (head == "rule") {
      rule_sources.emplace_back(body, lineno);
    } else {
      throw TrsParseError(lineno, 1,
                          "unknown directive '" + head +
                              "' (expected sig, vars, or rule)");
    }
  }

  Signature sig(std::move(sig_entries));
  VarSet vars(std::move(var_names));
  std::vector<Rule> rules;
  std::vector<int> rule_lines;
  for (std::size_t i = 0; i < rule_sources.size(); ++i) {
    const auto& [body, line] = rule_sources[i];
    trs_detail::Cursor cur{body, 0, line};
    cur.ident();  // the 'rule' keyword
    Term lhs = trs_detail::parse_term(cur, sig, vars, static_cast<int>(i));
    cur.expect('-', "'->'");
    cur.expect('>', "'->'");
    Term rhs = trs_detail::parse_term(cur, sig, vars, static_cast<int>(i));
    cur.skip_ws();
    if (!cur.done())
      throw TrsParseError(line, cur.col(), "trailing input after rule");
    rules.push_back(Rule{std::move(lhs), std::move(rhs)});
    rule_lines.push_back(line);
  }
  return TrsFile{ESystem(std::move(sig), std::move(vars), std::move(rules)),
                 std::move(rule_lines)};
}

/// Parses a single term over an existing system (the CLI --term argument
/// uses the same grammar as rule terms).
inline Term parse_term_over(const ESystem& es, const std::string& text) {
  trs_detail::Cursor cur{text, 0, 1};
  Term t = trs_detail::parse_term(cur, es.sig(), es.vars(), -1);
  cur.skip_ws();
  if (!cur.done())
    throw TrsParseError(1, cur.col(), "trailing input after term");
  return t;
}

inline std::string print_trs(const ESystem& es) {
  std::string out = "sig";
  for (const auto& [name, arity] : es.sig().entries())
    out += " " + name + "/" + std::to_string(arity);
  out += "\n";
  if (es.vars().size() > 0) {
    out += "vars";
    for (const std::string& v : es.vars().names()) out += " " + v;
    out += "\n";
  }
  for (const Rule& r : es.rules())
    out += "rule " + term_to_string(r.lhs, es.sig(), es.vars()) + " -> " +
           term_to_string(r.rhs, es.sig(), es.vars()) + "\n";
  return out;
}

}  // namespace relrew

#endif  // RELREW_TRS_IO_HPP
