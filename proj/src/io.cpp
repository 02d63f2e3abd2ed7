#include "frobmod/io.hpp"

#include <map>

#include "frobmod/errors.hpp"

namespace frob {

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;
    int line = 1;

    explicit Cursor(const std::string& str, int line_no = 1) : s(str), line(line_no) {}

    [[noreturn]] void fail(const std::string& msg) const {
        raise(Err::ParseError, "line " + std::to_string(line) + ", column " +
                                   std::to_string(pos + 1) + ": " + msg);
    }
    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    bool at_end() { return peek() == '\0'; }
    i64 number() {
        skip_ws();
        if (pos >= s.size() || !isdigit((unsigned char)s[pos])) fail("expected a number");
        i64 v = 0;
        while (pos < s.size() && isdigit((unsigned char)s[pos])) {
            v = v * 10 + (s[pos] - '0');
            if (v > ((i64)1 << 60)) fail("number out of range");
            ++pos;
        }
        return v;
    }
};

// --- generic expression grammar over an evaluation context ---
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-'* atom ('^' number)?
//   atom   := number | variable | '(' expr [',' number] ')'
// the parenthesized pair form is only meaningful for perfect-closure scalars

template <class Ctx>
typename Ctx::Value parse_expr(Cursor& c, Ctx& ctx);

template <class Ctx>
typename Ctx::Value parse_atom(Cursor& c, Ctx& ctx) {
    char ch = c.peek();
    if (ch == '(') {
        c.expect('(');
        auto v = parse_expr(c, ctx);
        if (c.peek() == ',') {
            c.expect(',');
            i64 level = c.number();
            c.expect(')');
            return ctx.pair_form(v, level, c);
        }
        c.expect(')');
        return v;
    }
    if (isdigit((unsigned char)ch)) return ctx.from_uint(c.number());
    if (isalpha((unsigned char)ch)) {
        ++c.pos;
        return ctx.var(ch, c);
    }
    c.fail("expected a number, variable, or parenthesized expression");
}

template <class Ctx>
typename Ctx::Value parse_factor(Cursor& c, Ctx& ctx) {
    bool neg = false;
    while (c.peek() == '-') {
        c.expect('-');
        neg = !neg;
    }
    auto v = parse_atom(c, ctx);
    if (c.peek() == '^') {
        c.expect('^');
        i64 k = c.number();
        v = ctx.pow(v, k, c);
    }
    return neg ? ctx.neg(v) : v;
}

template <class Ctx>
typename Ctx::Value parse_term(Cursor& c, Ctx& ctx) {
    auto v = parse_factor(c, ctx);
    for (;;) {
        if (c.peek() == '*') {
            c.expect('*');
            v = ctx.mul(v, parse_factor(c, ctx));
        } else if (c.peek() == '/') {
            c.expect('/');
            v = ctx.div(v, parse_factor(c, ctx), c);
        } else {
            return v;
        }
    }
}

template <class Ctx>
typename Ctx::Value parse_expr(Cursor& c, Ctx& ctx) {
    auto v = parse_term(c, ctx);
    for (;;) {
        if (c.peek() == '+') {
            c.expect('+');
            v = ctx.add(v, parse_term(c, ctx));
        } else if (c.peek() == '-') {
            // leave the sign for the factor parser to consume
            c.expect('-');
            v = ctx.sub(v, parse_term(c, ctx));
        } else {
            return v;
        }
    }
}

// evaluation directly in a coefficient ring
struct ScalarCtx {
    using Value = RingScalar;
    Ring ring;

    Value from_uint(i64 v) { return RingScalar::from_int(ring, v); }
    Value var(char name, Cursor& c) {
        switch (ring->kind()) {
            case RingKind::PolyRing:
                if (name == 'x') return RingScalar::of_poly(ring, FpPoly::x(ring->p()));
                break;
            case RingKind::RatFuncField:
                if (name == 'x') return RingScalar::of_rat(ring, FpRat(FpPoly::x(ring->p())));
                break;
            case RingKind::ExtField:
                if (name == 'u') return RingScalar::of_ext(ring, FpPoly::x(ring->p()));
                break;
            case RingKind::QuotientRing:
                if (name == 'x')
                    return RingScalar::of_quot(ring, {FpRat(FpPoly::x(ring->p()))});
                if (name == 't')
                    return RingScalar::of_quot(ring, {FpRat::zero(ring->p()), FpRat::one(ring->p())});
                break;
            case RingKind::PerfectClosure:
                if (name == 'x')
                    return RingScalar::of_perf(ring, FpRat(FpPoly::x(ring->p())), 0);
                break;
            default: break;
        }
        c.fail(std::string("variable '") + name + "' is not available in " + ring->str());
    }
    Value pair_form(const Value& v, i64 level, Cursor& c) {
        if (ring->kind() != RingKind::PerfectClosure)
            c.fail("the (value, level) form needs the perfect closure");
        if (level < 0 || level > (1 << 16)) c.fail("level out of range");
        return level == 0 ? v : v.p_th_root(level);
    }
    Value neg(const Value& v) { return -v; }
    Value add(const Value& a, const Value& b) { return a + b; }
    Value sub(const Value& a, const Value& b) { return a - b; }
    Value mul(const Value& a, const Value& b) { return a * b; }
    Value div(const Value& a, const Value& b, Cursor& c) {
        if (b.is_zero()) c.fail("division by zero in a literal");
        try {
            return a / b;
        } catch (const FrobError&) {
            c.fail("non-invertible divisor in a literal");
        }
    }
    Value pow(const Value& v, i64 k, Cursor& c) {
        if (k < 0 || k > (1 << 20)) c.fail("exponent out of range");
        return v.pow(k);
    }
};

// evaluation as a polynomial in a main variable over F_p(x); used for ring
// moduli, where reduction must not happen
struct TPolyCtx {
    using Value = std::vector<FpRat>;  // coefficients of 1, T, T^2, ...
    i64 p;
    char main_var;      // 't' for quotient moduli, 'u' for extension moduli
    bool allow_x;       // extension moduli live over F_p, not F_p(x)

    static void trim(Value& v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
    }
    Value from_uint(i64 v) {
        Value r = {FpRat::constant(p, v)};
        trim(r);
        return r;
    }
    Value var(char name, Cursor& c) {
        if (name == main_var) return {FpRat::zero(p), FpRat::one(p)};
        if (name == 'x' && allow_x) return {FpRat(FpPoly::x(p))};
        c.fail(std::string("variable '") + name + "' is not allowed here");
    }
    Value pair_form(const Value&, i64, Cursor& c) { c.fail("unexpected (value, level) form"); }
    Value neg(const Value& v) {
        Value r(v);
        for (auto& x : r) x = -x;
        return r;
    }
    Value add(const Value& a, const Value& b) {
        Value r(std::max(a.size(), b.size()), FpRat::zero(p));
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < a.size()) r[i] = r[i] + a[i];
            if (i < b.size()) r[i] = r[i] + b[i];
        }
        trim(r);
        return r;
    }
    Value sub(const Value& a, const Value& b) { return add(a, neg(b)); }
    Value mul(const Value& a, const Value& b) {
        if (a.empty() || b.empty()) return {};
        Value r(a.size() + b.size() - 1, FpRat::zero(p));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
        trim(r);
        return r;
    }
    Value div(const Value& a, const Value& b, Cursor& c) {
        if (b.size() != 1) c.fail("only coefficient divisors are allowed here");
        Value r(a);
        for (auto& x : r) x = x / b[0];
        return r;
    }
    Value pow(const Value& v, i64 k, Cursor& c) {
        if (k < 0 || k > 4096) c.fail("exponent out of range");
        Value acc = from_uint(1), base = v;
        while (k > 0) {
            if (k & 1) acc = mul(acc, base);
            base = mul(base, base);
            k >>= 1;
        }
        return acc;
    }
};

std::vector<RingScalar> parse_bracket_list_at(Cursor& c, const Ring& ring) {
    ScalarCtx ctx{ring};
    c.expect('[');
    std::vector<RingScalar> out;
    if (c.peek() != ']') {
        out.push_back(parse_expr(c, ctx));
        while (c.eat(',')) out.push_back(parse_expr(c, ctx));
    }
    c.expect(']');
    return out;
}

Mat parse_row_major(Cursor& c, const Ring& ring, int rows, int cols, const char* what) {
    auto entries = parse_bracket_list_at(c, ring);
    if ((int)entries.size() != rows * cols)
        raise(Err::ValidationError, std::string(what) + ": expected " +
                                        std::to_string(rows * cols) + " entries, got " +
                                        std::to_string(entries.size()) + " (line " +
                                        std::to_string(c.line) + ")");
    return Mat(ring, rows, cols, std::move(entries));
}

Mat parse_columns(Cursor& c, const Ring& ring, int n) {
    Mat m(ring, n, 0);
    for (;;) {
        auto col = parse_bracket_list_at(c, ring);
        if ((int)col.size() != n)
            raise(Err::ValidationError,
                  "column of length " + std::to_string(col.size()) + ", expected " +
                      std::to_string(n) + " (line " + std::to_string(c.line) + ")");
        m = Mat::hstack(m, Mat(ring, n, 1, std::move(col)));
        if (!c.eat(';')) break;
    }
    if (!c.at_end()) c.fail("trailing characters after the column list");
    return m;
}

std::string tpoly_str(const std::vector<FpRat>& v, const std::string& var) {
    if (v.empty()) return "0";
    std::string s;
    for (size_t i = v.size(); i-- > 0;) {
        if (v[i].is_zero()) continue;
        if (!s.empty()) s += "+";
        std::string coef = v[i].str();
        bool paren = coef.find_first_of("+*/^") != std::string::npos;
        if (i == 0) {
            s += paren ? "(" + coef + ")" : coef;
        } else {
            if (!v[i].is_one()) s += (paren ? "(" + coef + ")" : coef) + "*";
            s += var;
            if (i != 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

}  // namespace

RingScalar parse_scalar(const std::string& text, const Ring& ring) {
    Cursor c(text);
    ScalarCtx ctx{ring};
    RingScalar v = parse_expr(c, ctx);
    if (!c.at_end()) c.fail("trailing characters in a literal");
    return v;
}

std::vector<RingScalar> parse_bracket_list(const std::string& text, const Ring& ring) {
    Cursor c(text);
    auto out = parse_bracket_list_at(c, ring);
    if (!c.at_end()) c.fail("trailing characters after the list");
    return out;
}

Ring parse_ring_spec(const std::string& text, i64 p) {
    Cursor c(text);
    c.skip_ws();
    std::string word;
    while (c.pos < text.size() && isalpha((unsigned char)text[c.pos])) word += text[c.pos++];
    if (word == "prime") {
        if (!c.at_end()) c.fail("unexpected arguments for the prime field");
        return RingDescriptor::prime_field(p);
    }
    auto done = [&](Ring r) {
        if (!c.at_end()) c.fail("unexpected arguments after the ring kind");
        return r;
    };
    if (word == "poly") return done(RingDescriptor::poly_ring(p));
    if (word == "ratfunc") return done(RingDescriptor::rat_func_field(p));
    if (word == "perfect") return done(RingDescriptor::perfect_closure(p));
    if (word == "ext") {
        i64 m = c.number();
        if (m < 1 || m > 64) c.fail("extension degree out of range");
        if (c.at_end()) return RingDescriptor::ext_field(p, (int)m);
        TPolyCtx ctx{p, 'u', false};
        auto mod = parse_expr(c, ctx);
        if (!c.at_end()) c.fail("trailing characters in the extension modulus");
        std::vector<i64> coeffs;
        for (const auto& r : mod) {
            if (!r.is_polynomial() || !r.num().is_constant())
                c.fail("extension modulus coefficients must be in F_p");
            coeffs.push_back(r.num().coeff(0));
        }
        return RingDescriptor::ext_field(p, FpPoly(p, std::move(coeffs)));
    }
    if (word == "quotient") {
        TPolyCtx ctx{p, 't', true};
        auto mod = parse_expr(c, ctx);
        if (!c.at_end()) c.fail("trailing characters in the quotient modulus");
        return RingDescriptor::quotient_ring(p, std::move(mod));
    }
    c.fail("unknown ring kind '" + word + "'");
}

std::string ring_spec_string(const Ring& ring) {
    switch (ring->kind()) {
        case RingKind::PrimeField: return "prime";
        case RingKind::PolyRing: return "poly";
        case RingKind::RatFuncField: return "ratfunc";
        case RingKind::PerfectClosure: return "perfect";
        case RingKind::ExtField:
            return "ext " + std::to_string(ring->m()) + " " + ring->ext_modulus().str("u");
        case RingKind::QuotientRing: return "quotient " + tpoly_str(ring->quot_modulus(), "t");
    }
    return "?";
}

ModuleFile parse_module_file(const std::string& text) {
    std::map<std::string, std::pair<std::string, int>> fields;
    int line_no = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos)
            raise(Err::ParseError, "line " + std::to_string(line_no) + ": expected 'key: value'");
        std::string key = line.substr(a, line.find_last_not_of(" \t", colon - 1) + 1 - a);
        std::string value = line.substr(colon + 1);
        if (auto z = value.find_last_not_of(" \t\r"); z != std::string::npos)
            value = value.substr(0, z + 1);
        if (fields.count(key))
            raise(Err::ParseError, "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        fields[key] = {value, line_no};
    }

    auto need = [&](const std::string& key) -> std::pair<std::string, int> {
        auto it = fields.find(key);
        if (it == fields.end()) raise(Err::ParseError, "missing required field '" + key + "'");
        auto v = it->second;
        fields.erase(it);
        return v;
    };
    auto get_int = [&](const std::string& key) {
        auto [v, ln] = need(key);
        Cursor c(v, ln);
        i64 x = c.number();
        if (!c.at_end()) c.fail("trailing characters");
        return x;
    };

    i64 p = get_int("p");
    i64 e = get_int("e");
    require(e >= 1, Err::ValidationError, "twist e must be positive");
    auto [ring_text, ring_line] = need("ring");
    Ring ring;
    try {
        ring = parse_ring_spec(ring_text, p);
    } catch (const FrobError& err) {
        if (err.code() == Err::ParseError) throw;
        raise(Err::ValidationError, "line " + std::to_string(ring_line) + ": " + err.what());
    }
    i64 n = get_int("n");
    require(n >= 1 && n <= 64, Err::ValidationError, "rank n must be in 1..64");

    auto [mat_text, mat_line] = need("matrix");
    Cursor mc(mat_text, mat_line);
    Mat A = parse_row_major(mc, ring, (int)n, (int)n, "matrix");
    if (!mc.at_end()) mc.fail("trailing characters after the matrix");

    ModuleFile mf{FrobModule(ring, (int)n, e, std::move(A)), {}, {}, {}, {}};

    if (fields.count("subspace")) {
        auto [v, ln] = need("subspace");
        Cursor c(v, ln);
        mf.subspace_cols = parse_columns(c, ring, (int)n);
    }
    if (fields.count("submodule")) {
        auto [v, ln] = need("submodule");
        Cursor c(v, ln);
        mf.submodule_cols = parse_columns(c, ring, (int)n);
    }
    if (fields.count("basis")) {
        auto [v, ln] = need("basis");
        Cursor c(v, ln);
        mf.basis = parse_row_major(c, ring, (int)n, (int)n, "basis");
        if (!c.at_end()) c.fail("trailing characters after the basis");
    }
    if (fields.count("vector")) {
        auto [v, ln] = need("vector");
        Cursor c(v, ln);
        auto entries = parse_bracket_list_at(c, ring);
        if ((int)entries.size() != n)
            raise(Err::ValidationError, "vector of length " + std::to_string(entries.size()) +
                                            ", expected " + std::to_string(n));
        mf.vector = Mat(ring, (int)n, 1, std::move(entries));
        if (!c.at_end()) c.fail("trailing characters after the vector");
    }
    if (!fields.empty())
        raise(Err::ParseError, "line " + std::to_string(fields.begin()->second.second) +
                                   ": unknown field '" + fields.begin()->first + "'");
    return mf;
}

std::string matrix_row_major(const Mat& m) {
    std::string s = "[";
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            s += ((i || j) ? ", " : "") + m.at(i, j).str();
    return s + "]";
}

std::string matrix_columns(const Mat& m) {
    std::string s;
    for (int j = 0; j < m.cols(); ++j) {
        if (j) s += "; ";
        s += "[";
        for (int i = 0; i < m.rows(); ++i) s += (i ? ", " : "") + m.at(i, j).str();
        s += "]";
    }
    return s;
}

std::string emit_module_file(const ModuleFile& mf) {
    const FrobModule& M = mf.module;
    std::string s;
    s += "p: " + std::to_string(M.p()) + "\n";
    s += "e: " + std::to_string(M.e()) + "\n";
    s += "ring: " + ring_spec_string(M.ring()) + "\n";
    s += "n: " + std::to_string(M.n()) + "\n";
    s += "matrix: " + matrix_row_major(M.matrix()) + "\n";
    if (mf.basis) s += "basis: " + matrix_row_major(*mf.basis) + "\n";
    if (mf.submodule_cols) s += "submodule: " + matrix_columns(*mf.submodule_cols) + "\n";
    if (mf.subspace_cols) s += "subspace: " + matrix_columns(*mf.subspace_cols) + "\n";
    if (mf.vector) s += "vector: " + matrix_columns(*mf.vector) + "\n";
    return s;
}

}  // namespace frob
