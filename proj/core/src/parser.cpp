#include "parser.hpp"

#include "jetvar/errors.hpp"

#include <cctype>

namespace jetvar::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
public:
    Parser(const BundleSpec& spec, const std::string& src) : spec_(spec), src_(src) {}

    Expr parse_full() {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return e;
    }

    VarKey parse_var_full() {
        skip_ws();
        if (pos_ == src_.size() || !ident_start(src_[pos_])) fail("expected a variable name");
        std::size_t at = pos_;
        std::string name = read_ident();
        VarKey key = resolve_varref(name, at);
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return key;
    }

private:
    const BundleSpec& spec_;
    const std::string& src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
        throw ParseError(msg, at);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    std::string read_ident() {
        std::string out;
        while (pos_ < src_.size() && ident_char(src_[pos_])) out += src_[pos_++];
        return out;
    }

    Rational read_integer() {
        std::string digits;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            digits += src_[pos_++];
        return Rational(Integer(digits));
    }

    Expr parse_expr() {
        bool neg = false;
        char c = peek();
        if (c == '+' || c == '-') {
            ++pos_;
            neg = c == '-';
        }
        Expr acc = parse_term();
        if (neg) acc = -acc;
        while (true) {
            c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                Expr t = parse_term();
                acc = c == '+' ? acc + t : acc - t;
            } else {
                return acc;
            }
        }
    }

    Expr parse_term() {
        Expr acc = parse_factor();
        while (true) {
            char c = peek();
            if (c == '*' || c == '/') {
                ++pos_;
                Expr f = parse_factor();
                if (c == '/') {
                    if (f.is_zero()) fail("division by zero");
                    acc = acc / f;
                } else {
                    acc = acc * f;
                }
            } else {
                return acc;
            }
        }
    }

    Expr parse_factor() {
        Expr b = parse_base();
        if (peek() == '^') {
            ++pos_;
            bool neg = accept('-');
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer exponent");
            Rational e = read_integer();
            if (den(e) != 1 || num(e) > 1000000) fail("exponent out of range");
            int k = static_cast<int>(num(e).convert_to<long>());
            b = b.pow(neg ? -k : k);
        }
        return b;
    }

    Expr parse_base() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Expr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Expr e = spec_.constant(read_integer());
            return e;
        }
        if (ident_start(c)) {
            std::size_t at = pos_;
            std::string name = read_ident();
            return spec_.var(resolve_varref(name, at));
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
    }

    /// An identifier, optionally followed by a bracketed jet index.
    VarKey resolve_varref(const std::string& name, std::size_t at) {
        if (peek() == '[') {
            int field = spec_.field_index(name);
            if (field < 0) fail_at("unknown field '" + name + "'", at);
            ++pos_;
            MultiIndex mi(spec_.base_dim());
            while (true) {
                skip_ws();
                std::size_t name_at = pos_;
                if (pos_ >= src_.size() || !ident_start(src_[pos_]))
                    fail("expected a base coordinate name");
                std::string coord = read_ident();
                int dir = spec_.base().index_of(coord);
                if (dir < 0) fail_at("unknown base coordinate " + coord, name_at);
                mi = mi.plus(dir);
                if (accept(']')) break;
                expect(',');
            }
            return VarKey::jet_var(field, std::move(mi));
        }
        return resolve_ident(name, at);
    }

    VarKey resolve_ident(const std::string& name, std::size_t at) {
        if (int dir = spec_.base().index_of(name); dir >= 0) return VarKey::base(dir);
        if (int field = spec_.field_index(name); field >= 0)
            return VarKey::jet_var(field, MultiIndex(spec_.base_dim()));
        if (int id = spec_.atom_index(name); id >= 0) return VarKey::atom(id);

        // subscript sugar, available only when all base names are single chars
        bool single = true;
        for (const auto& coord : spec_.base().coords)
            if (coord.size() != 1) single = false;
        auto underscore = name.rfind('_');
        if (single && underscore != std::string::npos && underscore + 1 < name.size()) {
            std::string prefix = name.substr(0, underscore);
            std::string suffix = name.substr(underscore + 1);
            int field = spec_.field_index(prefix);
            if (field >= 0) {
                MultiIndex mi(spec_.base_dim());
                for (char c : suffix) {
                    int dir = spec_.base().index_of(std::string(1, c));
                    if (dir < 0)
                        fail_at("unknown base coordinate " + std::string(1, c), at + underscore + 1);
                    mi = mi.plus(dir);
                }
                return VarKey::jet_var(field, std::move(mi));
            }
        }
        fail_at("unknown identifier '" + name + "'", at);
    }
};

} // namespace

Expr parse_expression(const BundleSpec& spec, const std::string& src) {
    return Parser(spec, src).parse_full();
}

VarKey parse_var_reference(const BundleSpec& spec, const std::string& src) {
    return Parser(spec, src).parse_var_full();
}

} // namespace jetvar::detail
