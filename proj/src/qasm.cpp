// Copyright 2026 The Maestro Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// OpenQASM 2.0 front end: a hand-written lexer and recursive-descent parser
// for the qelib1 subset listed in GateKind, plus the canonical serializer.

#include "maestro/circuit.hpp"
#include "maestro/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace maestro {

namespace {

using Kind = ParseError::Kind;

enum class Tok { Ident, Real, Int, String, Symbol, End };

struct Token {
    Tok type = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space_and_comments();
        Token tok;
        tok.line = line_;
        tok.column = column_;
        if (pos_ >= src_.size()) {
            return tok;
        }
        const char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            tok.type = Tok::Ident;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                tok.text += advance();
            }
            return tok;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && pos_ + 1 < src_.size() &&
                                                            std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            return number(tok);
        }
        if (c == '"') {
            advance();
            tok.type = Tok::String;
            while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
                tok.text += advance();
            }
            if (pos_ >= src_.size() || src_[pos_] != '"') {
                throw ParseError(Kind::Syntax, "unterminated string literal", tok.line, tok.column);
            }
            advance();
            return tok;
        }
        tok.type = Tok::Symbol;
        if ((c == '-' && peek(1) == '>') || (c == '=' && peek(1) == '=')) {
            tok.text += advance();
            tok.text += advance();
            return tok;
        }
        static constexpr std::string_view kSymbols = ";,[](){}+-*/^";
        if (kSymbols.find(c) == std::string_view::npos) {
            throw ParseError(Kind::Syntax, std::string("unexpected character '") + c + "'", tok.line,
                             tok.column);
        }
        tok.text += advance();
        return tok;
    }

  private:
    char peek(std::size_t ahead) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }

    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else if (c == '/' && peek(1) == '*') {
                const std::size_t line = line_, column = column_;
                advance();
                advance();
                while (pos_ < src_.size() && !(src_[pos_] == '*' && peek(1) == '/')) {
                    advance();
                }
                if (pos_ >= src_.size()) {
                    throw ParseError(Kind::Syntax, "unterminated block comment", line, column);
                }
                advance();
                advance();
            } else {
                break;
            }
        }
    }

    Token number(Token tok) {
        bool real = false;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            tok.text += advance();
        }
        if (pos_ < src_.size() && src_[pos_] == '.') {
            real = true;
            tok.text += advance();
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                tok.text += advance();
            }
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            const char sign = peek(1);
            const bool has_sign = sign == '+' || sign == '-';
            if (std::isdigit(static_cast<unsigned char>(peek(has_sign ? 2 : 1)))) {
                real = true;
                tok.text += advance();
                if (has_sign) {
                    tok.text += advance();
                }
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    tok.text += advance();
                }
            }
        }
        tok.type = real ? Tok::Real : Tok::Int;
        return tok;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

struct Register {
    std::size_t offset;
    std::size_t size;
};

// An operand is either a whole register (index empty) or one element.
struct Operand {
    const Register *reg;
    std::optional<std::size_t> index;
    Token where;
};

class Parser {
  public:
    explicit Parser(std::string_view src) : lexer_(src) { cur_ = lexer_.next(); }

    Circuit parse() {
        if (is_ident("OPENQASM")) {
            next();
            if (cur_.type != Tok::Real && cur_.type != Tok::Int) {
                syntax("expected version number after OPENQASM");
            }
            if (cur_.text != "2.0" && cur_.text != "2") {
                throw ParseError(Kind::UnsupportedFeature, "only OPENQASM 2.0 is supported", cur_.line,
                                 cur_.column);
            }
            next();
            expect(";");
        }
        while (cur_.type != Tok::End) {
            statement();
        }
        return std::move(circuit_);
    }

  private:
    [[noreturn]] void syntax(const std::string &msg) const {
        throw ParseError(Kind::Syntax, msg, cur_.line, cur_.column);
    }

    void next() { cur_ = lexer_.next(); }

    bool is_symbol(std::string_view s) const { return cur_.type == Tok::Symbol && cur_.text == s; }
    bool is_ident(std::string_view s) const { return cur_.type == Tok::Ident && cur_.text == s; }

    void expect(std::string_view s) {
        if (!is_symbol(s)) {
            syntax("expected '" + std::string(s) + "'" +
                   (cur_.type == Tok::End ? " before end of input" : " near '" + cur_.text + "'"));
        }
        next();
    }

    std::string identifier() {
        if (cur_.type != Tok::Ident) {
            syntax("expected identifier");
        }
        std::string name = cur_.text;
        next();
        return name;
    }

    std::size_t integer() {
        if (cur_.type != Tok::Int) {
            syntax("expected integer");
        }
        std::size_t value = 0;
        const auto *first = cur_.text.data();
        const auto res = std::from_chars(first, first + cur_.text.size(), value);
        if (res.ec != std::errc{}) {
            syntax("integer out of range");
        }
        next();
        return value;
    }

    void statement() {
        const Token start = cur_;
        if (cur_.type != Tok::Ident) {
            syntax("expected statement");
        }
        const std::string word = cur_.text;
        if (word == "include") {
            next();
            if (cur_.type != Tok::String) {
                syntax("expected file name after include");
            }
            if (cur_.text != "qelib1.inc") {
                throw ParseError(Kind::UnsupportedFeature, "only qelib1.inc may be included", cur_.line,
                                 cur_.column);
            }
            next();
            expect(";");
        } else if (word == "qreg" || word == "creg") {
            next();
            declare(word == "qreg");
        } else if (word == "if") {
            throw ParseError(Kind::UnsupportedFeature, "classical conditionals are not supported", start.line,
                             start.column);
        } else if (word == "gate" || word == "opaque") {
            throw ParseError(Kind::UnsupportedFeature, "custom gate definitions are not supported", start.line,
                             start.column);
        } else if (word == "measure") {
            next();
            measure();
        } else {
            next();
            gate(start);
        }
    }

    void declare(bool quantum) {
        const Token where = cur_;
        const std::string name = identifier();
        expect("[");
        const std::size_t size = integer();
        expect("]");
        expect(";");
        if (qregs_.count(name) || cregs_.count(name)) {
            throw ParseError(Kind::Syntax, "register '" + name + "' redeclared", where.line, where.column);
        }
        if (size == 0) {
            throw ParseError(Kind::Syntax, "register '" + name + "' has zero size", where.line, where.column);
        }
        if (quantum) {
            qregs_.emplace(name, Register{circuit_.n_qubits, size});
            circuit_.n_qubits += size;
        } else {
            cregs_.emplace(name, Register{circuit_.n_clbits, size});
            circuit_.n_clbits += size;
        }
    }

    Operand operand(bool quantum) {
        const Token where = cur_;
        const std::string name = identifier();
        auto &regs = quantum ? qregs_ : cregs_;
        const auto it = regs.find(name);
        if (it == regs.end()) {
            throw ParseError(Kind::Syntax,
                             std::string(quantum ? "unknown quantum register '" : "unknown classical register '") +
                                 name + "'",
                             where.line, where.column);
        }
        Operand op{&it->second, std::nullopt, where};
        if (is_symbol("[")) {
            next();
            const Token idx_tok = cur_;
            const std::size_t idx = integer();
            expect("]");
            if (idx >= it->second.size) {
                throw ParseError(Kind::IndexOutOfBounds,
                                 "index " + std::to_string(idx) + " out of bounds for register '" + name +
                                     "' of size " + std::to_string(it->second.size),
                                 idx_tok.line, idx_tok.column);
            }
            op.index = idx;
        }
        return op;
    }

    // Number of broadcast repetitions implied by a list of operands.
    static std::size_t broadcast_width(const std::vector<Operand> &ops, const Token &where) {
        std::size_t width = 1;
        bool seen = false;
        for (const auto &op : ops) {
            if (op.index) {
                continue;
            }
            if (seen && op.reg->size != width) {
                throw ParseError(Kind::Syntax, "register size mismatch in broadcast", where.line, where.column);
            }
            width = op.reg->size;
            seen = true;
        }
        return width;
    }

    static std::size_t resolve(const Operand &op, std::size_t rep) {
        return op.reg->offset + (op.index ? *op.index : rep);
    }

    void emit(Instruction inst, const Token &where) {
        for (std::size_t i = 0; i < inst.qubits.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (inst.qubits[i] == inst.qubits[j]) {
                    throw ParseError(Kind::DuplicateQubit,
                                     "duplicate qubit operand in '" + std::string(gate_name(inst.kind)) + "'",
                                     where.line, where.column);
                }
            }
        }
        circuit_.ops.push_back(std::move(inst));
    }

    void measure() {
        const Token where = cur_;
        const Operand q = operand(true);
        expect("->");
        const Operand c = operand(false);
        expect(";");
        const std::size_t qw = q.index ? 1 : q.reg->size;
        const std::size_t cw = c.index ? 1 : c.reg->size;
        if (qw != cw) {
            throw ParseError(Kind::Syntax, "measure operand sizes differ", where.line, where.column);
        }
        for (std::size_t rep = 0; rep < qw; ++rep) {
            emit(Instruction{GateKind::Measure, {}, {resolve(q, rep)}, resolve(c, rep)}, where);
        }
    }

    void gate(const Token &start) {
        const auto kind = gate_from_name(start.text);
        if (!kind) {
            throw ParseError(Kind::UnsupportedGate, "unsupported gate '" + start.text + "'", start.line,
                             start.column);
        }
        std::vector<double> params;
        if (is_symbol("(")) {
            next();
            if (!is_symbol(")")) {
                params.push_back(expression());
                while (is_symbol(",")) {
                    next();
                    params.push_back(expression());
                }
            }
            expect(")");
        }
        if (params.size() != param_count(*kind)) {
            throw ParseError(Kind::Syntax,
                             "'" + start.text + "' expects " + std::to_string(param_count(*kind)) + " parameter(s)",
                             start.line, start.column);
        }
        std::vector<Operand> args{operand(true)};
        while (is_symbol(",")) {
            next();
            args.push_back(operand(true));
        }
        expect(";");

        const std::size_t arity = qubit_arity(*kind);
        if (*kind == GateKind::Barrier) {
            Instruction inst{*kind, {}, {}, std::nullopt};
            for (const auto &a : args) {
                if (a.index) {
                    inst.qubits.push_back(resolve(a, 0));
                } else {
                    for (std::size_t i = 0; i < a.reg->size; ++i) {
                        inst.qubits.push_back(resolve(a, i));
                    }
                }
            }
            emit(std::move(inst), start);
            return;
        }
        if (args.size() != arity) {
            throw ParseError(Kind::Syntax,
                             "'" + start.text + "' expects " + std::to_string(arity) + " qubit operand(s)", start.line,
                             start.column);
        }
        const std::size_t width = broadcast_width(args, start);
        for (std::size_t rep = 0; rep < width; ++rep) {
            Instruction inst{*kind, params, {}, std::nullopt};
            for (const auto &a : args) {
                inst.qubits.push_back(resolve(a, rep));
            }
            emit(std::move(inst), start);
        }
    }

    // expression := term (('+'|'-') term)*
    double expression() {
        double value = term();
        while (is_symbol("+") || is_symbol("-")) {
            const bool plus = cur_.text == "+";
            next();
            const double rhs = term();
            value = plus ? value + rhs : value - rhs;
        }
        return value;
    }

    // term := unary (('*'|'/') unary)*
    double term() {
        double value = unary();
        while (is_symbol("*") || is_symbol("/")) {
            const bool mul = cur_.text == "*";
            next();
            const double rhs = unary();
            value = mul ? value * rhs : value / rhs;
        }
        return value;
    }

    double unary() {
        if (is_symbol("-")) {
            next();
            return -unary();
        }
        if (is_symbol("+")) {
            next();
            return unary();
        }
        return power();
    }

    // power := primary ('^' unary)?   (right associative)
    double power() {
        const double base = primary();
        if (is_symbol("^")) {
            next();
            return std::pow(base, unary());
        }
        return base;
    }

    double primary() {
        if (cur_.type == Tok::Real || cur_.type == Tok::Int) {
            const double v = std::stod(cur_.text);
            next();
            return v;
        }
        if (is_symbol("(")) {
            next();
            const double v = expression();
            expect(")");
            return v;
        }
        if (cur_.type == Tok::Ident) {
            const Token where = cur_;
            const std::string name = identifier();
            if (name == "pi") {
                return std::numbers::pi;
            }
            static const std::unordered_map<std::string, double (*)(double)> kFuncs{
                {"sin", [](double x) { return std::sin(x); }},   {"cos", [](double x) { return std::cos(x); }},
                {"tan", [](double x) { return std::tan(x); }},   {"exp", [](double x) { return std::exp(x); }},
                {"ln", [](double x) { return std::log(x); }},    {"sqrt", [](double x) { return std::sqrt(x); }},
            };
            const auto fn = kFuncs.find(name);
            if (fn == kFuncs.end()) {
                throw ParseError(Kind::Syntax, "unknown identifier '" + name + "' in expression", where.line,
                                 where.column);
            }
            expect("(");
            const double arg = expression();
            expect(")");
            return fn->second(arg);
        }
        syntax("expected expression");
    }

    Lexer lexer_;
    Token cur_;
    Circuit circuit_;
    std::unordered_map<std::string, Register> qregs_;
    std::unordered_map<std::string, Register> cregs_;
};

} // namespace

Circuit parse_qasm(std::string_view source) { return Parser(source).parse(); }

std::string to_qasm(const Circuit &circuit) {
    std::ostringstream out;
    out.precision(17);
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    if (circuit.n_qubits > 0) {
        out << "qreg q[" << circuit.n_qubits << "];\n";
    }
    if (circuit.n_clbits > 0) {
        out << "creg c[" << circuit.n_clbits << "];\n";
    }
    for (const auto &inst : circuit.ops) {
        out << gate_name(inst.kind);
        if (!inst.params.empty()) {
            out << '(';
            for (std::size_t i = 0; i < inst.params.size(); ++i) {
                out << (i ? "," : "") << inst.params[i];
            }
            out << ')';
        }
        for (std::size_t i = 0; i < inst.qubits.size(); ++i) {
            out << (i ? "," : " ") << "q[" << inst.qubits[i] << ']';
        }
        if (inst.kind == GateKind::Measure) {
            out << " -> c[" << *inst.clbit << ']';
        }
        out << ";\n";
    }
    return out.str();
}

} // namespace maestro
