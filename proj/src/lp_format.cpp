// Copyright 2026 The IRELAND Authors
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

#include "ireland/lp_format.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace ireland {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  if (std::strtod(buf, nullptr) != v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
  }
  return buf;
}

namespace {

// Appends one term, wrapping lines at a readable width.
class LineWriter {
 public:
  explicit LineWriter(std::ostream& out) : out_(out) {}

  void begin(const std::string& head) {
    out_ << head;
    column_ = head.size();
    fresh_line_ = false;
  }

  void piece(const std::string& text) {
    if (column_ + text.size() + 1 > 78 && !fresh_line_) {
      out_ << "\n   ";
      column_ = 3;
    }
    out_ << ' ' << text;
    column_ += text.size() + 1;
    fresh_line_ = false;
  }

  void end() {
    out_ << '\n';
    column_ = 0;
    fresh_line_ = true;
  }

 private:
  std::ostream& out_;
  std::size_t column_ = 0;
  bool fresh_line_ = true;
};

void write_terms(LineWriter& line, const std::vector<int>& vars,
                 const std::vector<double>& coeffs, double constant,
                 const MilpModel& model, bool* any) {
  for (std::size_t k = 0; k < vars.size(); ++k) {
    const double c = coeffs[k];
    if (c == 0.0) continue;
    const std::string& name = model.variable(static_cast<std::size_t>(vars[k])).name;
    std::string term;
    if (!*any) {
      term = c < 0.0 ? "- " : "";
    } else {
      term = c < 0.0 ? "- " : "+ ";
    }
    const double mag = std::fabs(c);
    if (mag != 1.0) term += format_number(mag) + " ";
    term += name;
    line.piece(term);
    *any = true;
  }
  if (constant != 0.0) {
    std::string term = constant < 0.0 ? "- " : (*any ? "+ " : "");
    term += format_number(std::fabs(constant));
    line.piece(term);
    *any = true;
  }
  if (!*any) {
    line.piece("0");
    *any = true;
  }
}

const char* relation_text(Relation rel) {
  switch (rel) {
    case Relation::kLessEq: return "<=";
    case Relation::kGreaterEq: return ">=";
    case Relation::kEqual: return "=";
  }
  return "<=";
}

}  // namespace

void write_lp(const MilpModel& model, std::ostream& out) {
  const Objective& obj = model.objective();
  out << (obj.sense == ObjSense::kMaximize ? "Maximize" : "Minimize") << "\n";
  LineWriter line(out);
  line.begin(" obj:");
  bool any = false;
  write_terms(line, obj.vars, obj.coeffs, obj.constant, model, &any);
  line.end();

  std::vector<bool> mentioned(model.num_variables(), false);
  for (int v : obj.vars) mentioned[static_cast<std::size_t>(v)] = true;

  out << "Subject To\n";
  for (std::size_t i = 0; i < model.num_constraints(); ++i) {
    const Constraint& row = model.constraint(i);
    line.begin(" " + row.name + ":");
    bool row_any = false;
    write_terms(line, row.vars, row.coeffs, 0.0, model, &row_any);
    line.piece(relation_text(row.rel));
    line.piece(format_number(row.rhs));
    line.end();
    for (std::size_t k = 0; k < row.vars.size(); ++k) {
      if (row.coeffs[k] != 0.0) mentioned[static_cast<std::size_t>(row.vars[k])] = true;
    }
  }

  std::ostringstream bounds;
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    const Variable& var = model.variable(j);
    if (var.kind == VarKind::kBinary) continue;
    const bool default_bounds = var.lower == 0.0 && var.upper == kInfinity;
    if (default_bounds && mentioned[j]) continue;
    if (var.lower == -kInfinity && var.upper == kInfinity) {
      bounds << " " << var.name << " free\n";
    } else if (var.lower == var.upper) {
      bounds << " " << var.name << " = " << format_number(var.lower) << "\n";
    } else if (var.lower == -kInfinity) {
      bounds << " -infinity <= " << var.name << " <= " << format_number(var.upper)
             << "\n";
    } else if (var.upper == kInfinity) {
      bounds << " " << var.name << " >= " << format_number(var.lower) << "\n";
    } else {
      bounds << " " << format_number(var.lower) << " <= " << var.name
             << " <= " << format_number(var.upper) << "\n";
    }
  }
  const std::string bounds_text = bounds.str();
  if (!bounds_text.empty()) out << "Bounds\n" << bounds_text;

  bool any_binary = false;
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    if (model.variable(j).kind == VarKind::kBinary) {
      any_binary = true;
      break;
    }
  }
  if (any_binary) {
    out << "Binary\n";
    line.begin("");
    for (std::size_t j = 0; j < model.num_variables(); ++j) {
      if (model.variable(j).kind == VarKind::kBinary) {
        line.piece(model.variable(j).name);
      }
    }
    line.end();
  }
  out << "End\n";
}

void export_lp(const MilpModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write LP file: " + path);
  write_lp(model, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

enum class TokKind { kName, kNumber, kOp, kEnd };

struct Token {
  TokKind kind = TokKind::kEnd;
  std::string text;
  double number = 0.0;
};

bool name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
         c == '[' || c == ']' || c == '(' || c == ')' || c == '#';
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<Token> tokenize(std::istream& in) {
  std::vector<Token> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t comment = line.find('\\');
    if (comment != std::string::npos) line.resize(comment);
    std::size_t i = 0;
    while (i < line.size()) {
      const char c = line[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (name_start(c)) {
        std::size_t j = i + 1;
        while (j < line.size() && name_char(line[j])) ++j;
        tokens.push_back({TokKind::kName, line.substr(i, j - i), 0.0});
        i = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::size_t j = i;
        while (j < line.size() &&
               (std::isdigit(static_cast<unsigned char>(line[j])) || line[j] == '.')) {
          ++j;
        }
        if (j < line.size() && (line[j] == 'e' || line[j] == 'E')) {
          std::size_t k = j + 1;
          if (k < line.size() && (line[k] == '+' || line[k] == '-')) ++k;
          while (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) ++k;
          j = k;
        }
        const std::string text = line.substr(i, j - i);
        tokens.push_back({TokKind::kNumber, text, std::strtod(text.c_str(), nullptr)});
        i = j;
        continue;
      }
      if (c == '<' || c == '>') {
        std::string op(1, c);
        if (i + 1 < line.size() && line[i + 1] == '=') {
          op += '=';
          ++i;
        }
        tokens.push_back({TokKind::kOp, op[0] == '<' ? "<=" : ">=", 0.0});
        i += 1;
        continue;
      }
      if (c == '=' || c == '+' || c == '-' || c == ':') {
        tokens.push_back({TokKind::kOp, std::string(1, c), 0.0});
        ++i;
        continue;
      }
      throw ParseError(std::string("unexpected character `") + c + "` in LP file");
    }
  }
  tokens.push_back({TokKind::kEnd, "", 0.0});
  return tokens;
}

bool is_keyword(const Token& t, std::initializer_list<const char*> words) {
  if (t.kind != TokKind::kName) return false;
  const std::string low = lower(t.text);
  for (const char* w : words) {
    if (low == w) return true;
  }
  return false;
}

// Section heads end the expression grammar.
bool section_boundary(const Token& t) {
  return t.kind == TokKind::kEnd ||
         is_keyword(t, {"subject", "such", "st", "s.t.", "bounds", "bound",
                        "binary", "binaries", "bin", "general", "generals",
                        "gen", "integer", "integers", "end", "free",
                        "semi-continuous", "semis"});
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  MilpModel run();

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& take() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  int var_id(const std::string& name) {
    const int existing = model_.variable_index(name);
    if (existing >= 0) return existing;
    return model_.add_continuous(name, 0.0, kInfinity);
  }

  // Reads [sign]* and returns the combined sign.
  double read_sign() {
    double sign = 1.0;
    while (peek().kind == TokKind::kOp &&
           (peek().text == "+" || peek().text == "-")) {
      if (take().text == "-") sign = -sign;
    }
    return sign;
  }

  // Linear expression: signed terms, each a number, a name, or number*name.
  void read_expression(std::vector<int>* vars, std::vector<double>* coeffs,
                       double* constant);

  // Number with optional sign and infinity names.
  double read_signed_value();

  void parse_objective();
  void parse_constraints();
  void parse_bounds();
  void parse_binaries();

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  MilpModel model_;
  ObjSense sense_ = ObjSense::kMinimize;
  std::vector<int> obj_vars_;
  std::vector<double> obj_coeffs_;
  double obj_constant_ = 0.0;
  std::map<std::string, std::pair<double, double>> pending_bounds_;
  std::vector<std::string> binary_names_;
  int unnamed_rows_ = 0;
};

void Parser::read_expression(std::vector<int>* vars, std::vector<double>* coeffs,
                             double* constant) {
  std::map<int, std::size_t> slot;
  while (true) {
    const Token& next = peek();
    if (section_boundary(next)) break;
    if (next.kind == TokKind::kOp &&
        (next.text == "<=" || next.text == ">=" || next.text == "=")) {
      break;
    }
    const double sign = read_sign();
    const Token& t = peek();
    double coef = sign;
    bool have_var = false;
    std::string var_name;
    if (t.kind == TokKind::kNumber) {
      coef = sign * take().number;
      if (peek().kind == TokKind::kName && !section_boundary(peek())) {
        var_name = take().text;
        have_var = true;
      }
    } else if (t.kind == TokKind::kName) {
      var_name = take().text;
      have_var = true;
    } else {
      throw ParseError("unexpected token `" + t.text + "` in expression");
    }
    if (have_var) {
      const int id = var_id(var_name);
      auto it = slot.find(id);
      if (it == slot.end()) {
        slot.emplace(id, vars->size());
        vars->push_back(id);
        coeffs->push_back(coef);
      } else {
        (*coeffs)[it->second] += coef;
      }
    } else {
      *constant += coef;
    }
  }
}

double Parser::read_signed_value() {
  const double sign = read_sign();
  const Token& t = take();
  if (t.kind == TokKind::kNumber) return sign * t.number;
  if (is_keyword(t, {"infinity", "inf"})) return sign * kInfinity;
  throw ParseError("expected a number, got `" + t.text + "`");
}

void Parser::parse_objective() {
  const Token& head = take();
  if (is_keyword(head, {"minimize", "min", "minimise"})) {
    sense_ = ObjSense::kMinimize;
  } else if (is_keyword(head, {"maximize", "max", "maximise"})) {
    sense_ = ObjSense::kMaximize;
  } else {
    throw ParseError("LP file must start with Minimize or Maximize, got `" +
                     head.text + "`");
  }
  if (peek().kind == TokKind::kName && peek(1).kind == TokKind::kOp &&
      peek(1).text == ":") {
    take();
    take();
  }
  read_expression(&obj_vars_, &obj_coeffs_, &obj_constant_);
}

void Parser::parse_constraints() {
  if (!is_keyword(peek(), {"subject", "such", "st", "s.t."})) {
    throw ParseError("expected `Subject To`, got `" + peek().text + "`");
  }
  if (is_keyword(peek(), {"subject", "such"})) {
    take();
    if (!is_keyword(peek(), {"to", "that"})) {
      throw ParseError("expected `To` after `Subject`");
    }
    take();
  } else {
    take();
  }
  while (true) {
    const Token& next = peek();
    if (next.kind == TokKind::kEnd ||
        is_keyword(next, {"bounds", "bound", "binary", "binaries", "bin",
                          "general", "generals", "gen", "integer", "integers",
                          "end", "semi-continuous", "semis"})) {
      break;
    }
    std::string name;
    if (next.kind == TokKind::kName && peek(1).kind == TokKind::kOp &&
        peek(1).text == ":") {
      name = take().text;
      take();
    } else {
      name = "c" + std::to_string(++unnamed_rows_);
    }
    std::vector<int> vars;
    std::vector<double> coeffs;
    double constant = 0.0;
    read_expression(&vars, &coeffs, &constant);
    const Token& rel_tok = take();
    if (rel_tok.kind != TokKind::kOp ||
        (rel_tok.text != "<=" && rel_tok.text != ">=" && rel_tok.text != "=")) {
      throw ParseError("expected a relation in row `" + name + "`, got `" +
                       rel_tok.text + "`");
    }
    const Relation rel = rel_tok.text == "<=" ? Relation::kLessEq
                         : rel_tok.text == ">=" ? Relation::kGreaterEq
                                                : Relation::kEqual;
    const double rhs = read_signed_value() - constant;
    model_.add_constraint(name, std::move(vars), std::move(coeffs), rel, rhs);
  }
}

void Parser::parse_bounds() {
  take();  // Bounds
  while (true) {
    const Token& next = peek();
    if (next.kind == TokKind::kEnd ||
        is_keyword(next, {"binary", "binaries", "bin", "general", "generals",
                          "gen", "integer", "integers", "end",
                          "semi-continuous", "semis"})) {
      break;
    }
    if (next.kind == TokKind::kName && is_keyword(peek(1), {"free"})) {
      const std::string name = take().text;
      take();
      pending_bounds_[name] = {-kInfinity, kInfinity};
      continue;
    }
    if (next.kind == TokKind::kName) {
      const std::string name = take().text;
      const Token& rel = take();
      if (rel.kind != TokKind::kOp) {
        throw ParseError("malformed bounds line near `" + name + "`");
      }
      const double value = read_signed_value();
      auto [it, inserted] = pending_bounds_.try_emplace(name, 0.0, kInfinity);
      if (rel.text == "<=") {
        it->second.second = value;
      } else if (rel.text == ">=") {
        it->second.first = value;
      } else if (rel.text == "=") {
        it->second = {value, value};
      } else {
        throw ParseError("malformed bounds relation `" + rel.text + "`");
      }
      continue;
    }
    // Form: value <= name [<= value]
    const double lo = read_signed_value();
    const Token& rel = take();
    if (rel.kind != TokKind::kOp || rel.text != "<=") {
      throw ParseError("malformed bounds line (expected `<=`)");
    }
    const Token& name_tok = take();
    if (name_tok.kind != TokKind::kName) {
      throw ParseError("malformed bounds line (expected a variable name)");
    }
    auto [it, inserted] =
        pending_bounds_.try_emplace(name_tok.text, 0.0, kInfinity);
    it->second.first = lo;
    if (peek().kind == TokKind::kOp && peek().text == "<=") {
      take();
      it->second.second = read_signed_value();
    }
  }
}

void Parser::parse_binaries() {
  take();  // Binary
  while (peek().kind == TokKind::kName && !is_keyword(peek(), {"end"})) {
    binary_names_.push_back(take().text);
  }
}

MilpModel Parser::run() {
  parse_objective();
  parse_constraints();
  while (true) {
    const Token& next = peek();
    if (next.kind == TokKind::kEnd) break;
    if (is_keyword(next, {"bounds", "bound"})) {
      parse_bounds();
    } else if (is_keyword(next, {"binary", "binaries", "bin"})) {
      parse_binaries();
    } else if (is_keyword(next, {"general", "generals", "gen", "integer",
                                 "integers", "semi-continuous", "semis"})) {
      throw ParseError("general-integer sections are not supported");
    } else if (is_keyword(next, {"end"})) {
      take();
      break;
    } else {
      throw ParseError("unexpected token `" + next.text + "` between sections");
    }
  }

  for (const auto& [name, bounds] : pending_bounds_) {
    const int id = var_id(name);
    if (bounds.first > bounds.second) {
      throw ParseError("contradictory bounds for `" + name + "`");
    }
    model_.set_bounds(id, bounds.first, bounds.second);
  }
  for (const std::string& name : binary_names_) {
    model_.set_kind(var_id(name), VarKind::kBinary);
  }
  model_.set_objective(sense_, std::move(obj_vars_), std::move(obj_coeffs_),
                       obj_constant_);
  return std::move(model_);
}

}  // namespace

MilpModel parse_lp(std::istream& in) { return Parser(tokenize(in)).run(); }

MilpModel parse_lp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open LP file: " + path);
  return parse_lp(in);
}

SolveResult read_solution_file(const MilpModel& model, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open solution file: " + path);
  std::vector<double> assignment(model.num_variables(), 0.0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    std::string name;
    if (!(row >> name)) continue;
    double value = 0.0;
    if (!(row >> value)) {
      throw ParseError(path + ": line " + std::to_string(line_no) +
                       ": expected `name value`");
    }
    const int id = model.variable_index(name);
    if (id < 0) {
      throw ParseError(path + ": line " + std::to_string(line_no) +
                       ": unknown variable `" + name + "`");
    }
    assignment[static_cast<std::size_t>(id)] = value;
  }
  if (!model.is_feasible(assignment, 1e-6, 1e-6)) {
    throw std::invalid_argument(path + ": assignment violates the model");
  }
  SolveResult out;
  out.status = SolveStatus::kOptimal;
  out.assignment = std::move(assignment);
  out.objective = model.objective_value(out.assignment);
  out.best_bound = out.objective;
  return out;
}

}  // namespace ireland
