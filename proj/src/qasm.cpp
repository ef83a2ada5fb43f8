#include "caqr/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "caqr/error.hpp"

namespace caqr {

namespace {

enum class Tok { Ident, Number, Symbol, String, Pragma, End };

struct Token {
  Tok type = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    if (c == '/' && peek(1) == '/') {
      advance(2);
      std::string body;
      while (pos_ < src_.size() && src_[pos_] != '\n') body += take();
      auto first = body.find_first_not_of(" \t");
      if (first != std::string::npos && body[first] == '#') {
        t.type = Tok::Pragma;
        t.text = body.substr(first + 1);
        return t;
      }
      return next();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.type = Tok::Ident;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        t.text += take();
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      t.type = Tok::Number;
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        bool exp_sign = (d == '+' || d == '-') && !t.text.empty() &&
                        (t.text.back() == 'e' || t.text.back() == 'E');
        if (std::isdigit(static_cast<unsigned char>(d)) || d == '.' ||
            d == 'e' || d == 'E' || exp_sign) {
          t.text += take();
        } else {
          break;
        }
      }
      return t;
    }
    if (c == '"') {
      take();
      t.type = Tok::String;
      while (pos_ < src_.size() && src_[pos_] != '"') t.text += take();
      if (pos_ >= src_.size()) {
        throw ParseError("unterminated string", t.line, t.column);
      }
      take();
      return t;
    }
    t.type = Tok::Symbol;
    if ((c == '=' && peek(1) == '=') || (c == '-' && peek(1) == '>')) {
      t.text = std::string(src_.substr(pos_, 2));
      advance(2);
      return t;
    }
    t.text = std::string(1, take());
    return t;
  }

 private:
  char peek(std::size_t off) const {
    return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
  }
  char take() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) take();
  }
  void skip_space() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      take();
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

  Circuit parse() {
    while (cur_.type != Tok::End) statement();
    if (open_group_) {
      throw ParseError("unterminated #commuting block", cur_.line, cur_.column);
    }
    if (!have_qreg_) throw ParseError("missing qreg declaration", 1, 1);
    return std::move(circuit_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }

  Token advance() {
    Token t = cur_;
    cur_ = lex_.next();
    return t;
  }

  bool is_symbol(std::string_view s) const {
    return cur_.type == Tok::Symbol && cur_.text == s;
  }

  void expect_symbol(std::string_view s) {
    if (!is_symbol(s)) {
      fail("expected '" + std::string(s) + "', found '" + cur_.text + "'", cur_);
    }
    advance();
  }

  Token expect(Tok type, const char* what) {
    if (cur_.type != type) fail(std::string("expected ") + what, cur_);
    return advance();
  }

  int integer() {
    Token t = expect(Tok::Number, "integer");
    for (char c : t.text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected integer", t);
    }
    return std::stoi(t.text);
  }

  // expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)*
  double expr() {
    double v = term();
    while (is_symbol("+") || is_symbol("-")) {
      bool plus = advance().text == "+";
      double r = term();
      v = plus ? v + r : v - r;
    }
    return v;
  }
  double term() {
    double v = factor();
    while (is_symbol("*") || is_symbol("/")) {
      bool mul = advance().text == "*";
      double r = factor();
      v = mul ? v * r : v / r;
    }
    return v;
  }
  double factor() {
    if (is_symbol("-")) {
      advance();
      return -factor();
    }
    if (is_symbol("+")) {
      advance();
      return factor();
    }
    if (is_symbol("(")) {
      advance();
      double v = expr();
      expect_symbol(")");
      return v;
    }
    if (cur_.type == Tok::Ident && cur_.text == "pi") {
      advance();
      return std::numbers::pi;
    }
    Token t = expect(Tok::Number, "number");
    try {
      std::size_t used = 0;
      double v = std::stod(t.text, &used);
      if (used != t.text.size()) fail("malformed number", t);
      return v;
    } catch (const std::logic_error&) {
      fail("malformed number", t);
    }
  }

  int reg_index(const std::string& expected_reg, int size, const char* kind) {
    Token name = expect(Tok::Ident, kind);
    if (name.text != expected_reg) fail("unknown register '" + name.text + "'", name);
    expect_symbol("[");
    Token idx_tok = cur_;
    int idx = integer();
    expect_symbol("]");
    if (idx < 0 || idx >= size) {
      fail("index " + std::to_string(idx) + " out of range for " + name.text +
               "[" + std::to_string(size) + "]",
           idx_tok);
    }
    return idx;
  }

  int qubit() {
    if (!have_qreg_) fail("qubit used before qreg declaration", cur_);
    return reg_index(qreg_, circuit_.num_qubits, "qubit register");
  }
  int clbit() {
    if (!have_creg_) fail("clbit used before creg declaration", cur_);
    return reg_index(creg_, circuit_.num_clbits, "classical register");
  }

  void pragma(const Token& t) {
    std::istringstream in(t.text);
    std::string word;
    in >> word;
    if (word == "commuting") {
      std::string what;
      in >> what;
      if (what == "begin") {
        if (open_group_) fail("nested #commuting block", t);
        int id = 0;
        if (in >> id) {
          open_group_ = id;
        } else {
          open_group_ = next_group_;
        }
        next_group_ = std::max(next_group_, *open_group_ + 1);
      } else if (what == "end") {
        if (!open_group_) fail("#commuting end without begin", t);
        open_group_.reset();
      } else {
        fail("unknown #commuting directive '" + what + "'", t);
      }
    } else if (word == "scratch") {
      std::string rest;
      std::getline(in, rest);
      auto lb = rest.find('[');
      auto rb = rest.find(']');
      if (lb == std::string::npos || rb == std::string::npos || rb < lb) {
        fail("malformed #scratch pragma", t);
      }
      int idx = std::stoi(rest.substr(lb + 1, rb - lb - 1));
      if (idx < 0 || idx >= circuit_.num_clbits) fail("scratch clbit out of range", t);
      circuit_.scratch_clbits.push_back(idx);
    }
    // Other pragmas are ignored.
  }

  void statement() {
    if (cur_.type == Tok::Pragma) {
      pragma(advance());
      return;
    }
    Token head = expect(Tok::Ident, "statement");
    if (head.text == "OPENQASM") {
      expect(Tok::Number, "version");
      expect_symbol(";");
      return;
    }
    if (head.text == "include") {
      expect(Tok::String, "file name");
      expect_symbol(";");
      return;
    }
    if (head.text == "qreg" || head.text == "creg") {
      bool quantum = head.text == "qreg";
      Token name = expect(Tok::Ident, "register name");
      expect_symbol("[");
      int size = integer();
      expect_symbol("]");
      expect_symbol(";");
      if (quantum) {
        if (have_qreg_) fail("only one qreg is supported", head);
        have_qreg_ = true;
        qreg_ = name.text;
        circuit_.num_qubits = size;
      } else {
        if (have_creg_) fail("only one creg is supported", head);
        have_creg_ = true;
        creg_ = name.text;
        circuit_.num_clbits = size;
      }
      return;
    }
    if (head.text == "measure") {
      int q = qubit();
      expect_symbol("->");
      int c = clbit();
      expect_symbol(";");
      add(head, GateKind::MEASURE, {q}, {c}, 0.0);
      return;
    }
    if (head.text == "reset") {
      int q = qubit();
      expect_symbol(";");
      add(head, GateKind::RESET, {q}, {}, 0.0);
      return;
    }
    if (head.text == "if") {
      expect_symbol("(");
      int c = clbit();
      expect_symbol("==");
      Token one = cur_;
      if (integer() != 1) fail("only '==1' conditions are supported", one);
      expect_symbol(")");
      Token gate = expect(Tok::Ident, "gate");
      if (gate.text != "x") fail("only 'x' may be classically conditioned", gate);
      int q = qubit();
      expect_symbol(";");
      add(head, GateKind::CX_CLASSICAL, {q}, {c}, 0.0);
      return;
    }
    auto kind = gate_from_name(head.text);
    if (!kind || *kind == GateKind::MEASURE || *kind == GateKind::RESET) {
      fail("unknown gate '" + head.text + "'", head);
    }
    double theta = 0.0;
    if (is_parametric(*kind)) {
      expect_symbol("(");
      theta = expr();
      expect_symbol(")");
    }
    std::vector<int> qs;
    qs.push_back(qubit());
    while (is_symbol(",")) {
      advance();
      qs.push_back(qubit());
    }
    expect_symbol(";");
    if (static_cast<int>(qs.size()) != qubit_arity(*kind)) {
      fail("gate '" + head.text + "' takes " +
               std::to_string(qubit_arity(*kind)) + " qubit(s)",
           head);
    }
    if (qs.size() == 2 && qs[0] == qs[1]) fail("identical qubit operands", head);
    std::optional<int> group;
    if (open_group_) {
      if (!is_diagonal_two_qubit(*kind)) {
        fail("only cz/cp gates may appear in a #commuting block", head);
      }
      group = open_group_;
    }
    add(head, *kind, std::move(qs), {}, theta, group);
  }

  void add(const Token& at, GateKind kind, std::vector<int> qs,
           std::vector<int> cs, double theta,
           std::optional<int> group = std::nullopt) {
    if (open_group_ && !group) {
      fail("only cz/cp gates may appear in a #commuting block", at);
    }
    circuit_.append(kind, std::move(qs), std::move(cs), theta, group);
  }

  Lexer lex_;
  Token cur_;
  Circuit circuit_;
  bool have_qreg_ = false;
  bool have_creg_ = false;
  std::string qreg_;
  std::string creg_;
  std::optional<int> open_group_;
  int next_group_ = 0;
};

std::string format_angle(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Circuit parse_qasm(std::string_view text) {
  Circuit c = Parser(text).parse();
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0, 0);
  }
  return c;
}

std::string emit_qasm(const Circuit& circuit) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  out << "qreg q[" << circuit.num_qubits << "];\n";
  if (circuit.num_clbits > 0) out << "creg c[" << circuit.num_clbits << "];\n";
  for (int s : circuit.scratch_clbits) out << "// #scratch c[" << s << "]\n";
  std::optional<int> open;
  for (const auto& inst : circuit.instructions) {
    if (open != inst.commuting_group) {
      if (open) out << "// #commuting end\n";
      if (inst.commuting_group) {
        out << "// #commuting begin " << *inst.commuting_group << "\n";
      }
      open = inst.commuting_group;
    }
    auto q = [&](int i) { return "q[" + std::to_string(inst.qubits[i]) + "]"; };
    switch (inst.kind) {
      case GateKind::MEASURE:
        out << "measure " << q(0) << " -> c[" << inst.clbits[0] << "];\n";
        break;
      case GateKind::RESET:
        out << "reset " << q(0) << ";\n";
        break;
      case GateKind::CX_CLASSICAL:
        out << "if (c[" << inst.clbits[0] << "]==1) x " << q(0) << ";\n";
        break;
      default:
        out << gate_name(inst.kind);
        if (is_parametric(inst.kind)) out << "(" << format_angle(inst.theta) << ")";
        out << " " << q(0);
        if (inst.qubits.size() == 2) out << ", " << q(1);
        out << ";\n";
    }
  }
  if (open) out << "// #commuting end\n";
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

Circuit read_qasm_file(const std::string& path) {
  Circuit c = parse_qasm(read_text_file(path));
  if (c.name.empty()) {
    auto slash = path.find_last_of('/');
    auto base = path.substr(slash == std::string::npos ? 0 : slash + 1);
    c.name = base.substr(0, base.find_last_of('.'));
  }
  return c;
}

}  // namespace caqr
