#include "vectont/foe.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace vectont {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class TokKind {
    Ident,
    Number,
    KwClass,
    KwAnd,
    KwOr,
    KwNot,
    LParen,
    RParen,
    Comma,
    Colon,
    Le,
    Ge,
    Eq,
    Plus,
    Minus,
    Star,
    Caret,
    End,
};

struct Token {
    TokKind kind;
    std::string text;
    double number = 0.0;
    std::size_t pos = 0;
};

[[noreturn]] void syntax_error(std::size_t pos, const std::string& what) {
    throw Error(ErrorCode::SyntaxError, "at position " + std::to_string(pos) + ": " + what);
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
                ++j;
            }
            std::string word = text.substr(i, j - i);
            TokKind kind = TokKind::Ident;
            if (word == "class") kind = TokKind::KwClass;
            else if (word == "AND") kind = TokKind::KwAnd;
            else if (word == "OR") kind = TokKind::KwOr;
            else if (word == "NOT") kind = TokKind::KwNot;
            out.push_back({kind, word, 0.0, start});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) ||
                                       text[j] == '.' || text[j] == 'e' || text[j] == 'E' ||
                                       ((text[j] == '+' || text[j] == '-') && j > i &&
                                        (text[j - 1] == 'e' || text[j - 1] == 'E')))) {
                ++j;
            }
            std::string word = text.substr(i, j - i);
            try {
                std::size_t used = 0;
                double value = std::stod(word, &used);
                if (used != word.size()) syntax_error(start, "malformed number '" + word + "'");
                out.push_back({TokKind::Number, word, value, start});
            } catch (const std::exception&) {
                syntax_error(start, "malformed number '" + word + "'");
            }
            i = j;
            continue;
        }
        switch (c) {
            case '(': out.push_back({TokKind::LParen, "(", 0.0, start}); ++i; break;
            case ')': out.push_back({TokKind::RParen, ")", 0.0, start}); ++i; break;
            case ',': out.push_back({TokKind::Comma, ",", 0.0, start}); ++i; break;
            case ':': out.push_back({TokKind::Colon, ":", 0.0, start}); ++i; break;
            case '+': out.push_back({TokKind::Plus, "+", 0.0, start}); ++i; break;
            case '-': out.push_back({TokKind::Minus, "-", 0.0, start}); ++i; break;
            case '*': out.push_back({TokKind::Star, "*", 0.0, start}); ++i; break;
            case '^': out.push_back({TokKind::Caret, "^", 0.0, start}); ++i; break;
            case '<':
                if (i + 1 < text.size() && text[i + 1] == '=') {
                    out.push_back({TokKind::Le, "<=", 0.0, start});
                    i += 2;
                } else {
                    syntax_error(start, "'<' must be '<='");
                }
                break;
            case '>':
                if (i + 1 < text.size() && text[i + 1] == '=') {
                    out.push_back({TokKind::Ge, ">=", 0.0, start});
                    i += 2;
                } else {
                    syntax_error(start, "'>' must be '>='");
                }
                break;
            case '=': out.push_back({TokKind::Eq, "=", 0.0, start}); ++i; break;
            default:
                syntax_error(start, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({TokKind::End, "", 0.0, text.size()});
    return out;
}

// ---------------------------------------------------------------------------
// Parser
//
// Precedence (tightest first): ^  *  (+ -)  comparisons  NOT  AND  OR.
// A parenthesized group may hold either a numeric sum or a boolean
// expression; the type discipline below sorts out which uses are legal.
// ---------------------------------------------------------------------------

class Parser {
public:
    Parser(const std::string& text, const SchemaPtr& schema)
        : tokens_(tokenize(text)), schema_(schema) {}

    std::shared_ptr<const FunctionClass> parse_class() {
        expect(TokKind::KwClass, "expected 'class'");
        Token name = expect(TokKind::Ident, "expected class name");
        expect(TokKind::LParen, "expected '('");
        std::vector<std::string> params;
        std::vector<std::size_t> param_pos;
        if (peek().kind != TokKind::RParen) {
            Token p = expect(TokKind::Ident, "expected parameter name");
            params.push_back(p.text);
            param_pos.push_back(p.pos);
            while (peek().kind == TokKind::Comma) {
                advance();
                p = expect(TokKind::Ident, "expected parameter name");
                params.push_back(p.text);
                param_pos.push_back(p.pos);
            }
        }
        expect(TokKind::RParen, "expected ')'");
        expect(TokKind::Colon, "expected ':'");
        for (std::size_t i = 0; i < params.size(); ++i) {
            for (std::size_t j = i + 1; j < params.size(); ++j) {
                if (params[i] == params[j]) {
                    syntax_error(param_pos[j], "duplicate parameter '" + params[i] + "'");
                }
            }
        }
        params_ = params;
        ExprPtr body = parse_or();
        Token end = peek();
        if (end.kind != TokKind::End) {
            syntax_error(end.pos, "unexpected trailing input '" + end.text + "'");
        }
        if (!body->is_boolean()) {
            throw Error(ErrorCode::TypeError,
                        "at position " + std::to_string(end.pos) +
                            ": class body must be boolean-valued (a comparison or connective)");
        }
        auto cls = std::make_shared<FunctionClass>();
        cls->name = name.text;
        cls->params = std::move(params);
        cls->body = body;
        cls->schema = schema_;
        return cls;
    }

private:
    std::vector<Token> tokens_;
    std::size_t cursor_ = 0;
    SchemaPtr schema_;
    std::vector<std::string> params_;

    const Token& peek() const { return tokens_[cursor_]; }
    void advance() { ++cursor_; }

    Token expect(TokKind kind, const std::string& what) {
        if (peek().kind != kind) syntax_error(peek().pos, what);
        Token t = peek();
        advance();
        return t;
    }

    static ExprPtr mk(Expr e) { return std::make_shared<Expr>(std::move(e)); }

    void require_numeric(const ExprPtr& e, std::size_t pos, const char* context) {
        if (e->is_boolean()) {
            throw Error(ErrorCode::TypeError,
                        "at position " + std::to_string(pos) +
                            ": boolean expression used as a number in " + context);
        }
    }

    void require_boolean(const ExprPtr& e, std::size_t pos, const char* context) {
        if (!e->is_boolean()) {
            throw Error(ErrorCode::TypeError,
                        "at position " + std::to_string(pos) +
                            ": numeric expression used as a condition in " + context);
        }
    }

    ExprPtr parse_or() {
        std::size_t pos = peek().pos;
        ExprPtr lhs = parse_and();
        while (peek().kind == TokKind::KwOr) {
            advance();
            require_boolean(lhs, pos, "OR");
            std::size_t rpos = peek().pos;
            ExprPtr rhs = parse_and();
            require_boolean(rhs, rpos, "OR");
            lhs = mk({.kind = Expr::Kind::Or, .lhs = lhs, .rhs = rhs});
        }
        return lhs;
    }

    ExprPtr parse_and() {
        std::size_t pos = peek().pos;
        ExprPtr lhs = parse_not();
        while (peek().kind == TokKind::KwAnd) {
            advance();
            require_boolean(lhs, pos, "AND");
            std::size_t rpos = peek().pos;
            ExprPtr rhs = parse_not();
            require_boolean(rhs, rpos, "AND");
            lhs = mk({.kind = Expr::Kind::And, .lhs = lhs, .rhs = rhs});
        }
        return lhs;
    }

    ExprPtr parse_not() {
        if (peek().kind == TokKind::KwNot) {
            std::size_t pos = peek().pos;
            advance();
            ExprPtr inner = parse_cmp();
            require_boolean(inner, pos, "NOT");
            return mk({.kind = Expr::Kind::Not, .lhs = inner});
        }
        return parse_cmp();
    }

    ExprPtr parse_cmp() {
        std::size_t pos = peek().pos;
        ExprPtr lhs = parse_sum();
        TokKind k = peek().kind;
        if (k == TokKind::Le || k == TokKind::Ge || k == TokKind::Eq) {
            advance();
            require_numeric(lhs, pos, "a comparison");
            std::size_t rpos = peek().pos;
            ExprPtr rhs = parse_sum();
            require_numeric(rhs, rpos, "a comparison");
            Expr::Kind kind = k == TokKind::Le   ? Expr::Kind::Le
                              : k == TokKind::Ge ? Expr::Kind::Ge
                                                 : Expr::Kind::Eq;
            return mk({.kind = kind, .lhs = lhs, .rhs = rhs});
        }
        return lhs;
    }

    ExprPtr parse_sum() {
        std::size_t pos = peek().pos;
        ExprPtr lhs = parse_term();
        while (peek().kind == TokKind::Plus || peek().kind == TokKind::Minus) {
            bool plus = peek().kind == TokKind::Plus;
            advance();
            require_numeric(lhs, pos, "'+'/'-'");
            std::size_t rpos = peek().pos;
            ExprPtr rhs = parse_term();
            require_numeric(rhs, rpos, "'+'/'-'");
            lhs = mk({.kind = plus ? Expr::Kind::Add : Expr::Kind::Sub, .lhs = lhs, .rhs = rhs});
        }
        return lhs;
    }

    ExprPtr parse_term() {
        std::size_t pos = peek().pos;
        ExprPtr lhs = parse_pow();
        while (peek().kind == TokKind::Star) {
            advance();
            require_numeric(lhs, pos, "'*'");
            std::size_t rpos = peek().pos;
            ExprPtr rhs = parse_pow();
            require_numeric(rhs, rpos, "'*'");
            lhs = mk({.kind = Expr::Kind::Mul, .lhs = lhs, .rhs = rhs});
        }
        return lhs;
    }

    ExprPtr parse_pow() {
        std::size_t pos = peek().pos;
        ExprPtr base = parse_atom();
        if (peek().kind == TokKind::Caret) {
            advance();
            require_numeric(base, pos, "'^'");
            Token exp = peek();
            if (exp.kind != TokKind::Number || exp.number != std::floor(exp.number)) {
                syntax_error(exp.pos, "exponent must be an integer literal");
            }
            advance();
            return mk({.kind = Expr::Kind::Pow,
                       .exponent = static_cast<long long>(exp.number),
                       .lhs = base});
        }
        return base;
    }

    ExprPtr parse_atom() {
        Token t = peek();
        switch (t.kind) {
            case TokKind::Number:
                advance();
                return mk({.kind = Expr::Kind::Number, .number = t.number});
            case TokKind::Ident: {
                advance();
                for (std::size_t i = 0; i < params_.size(); ++i) {
                    if (params_[i] == t.text) {
                        return mk({.kind = Expr::Kind::ParamRef, .name = t.text, .index = i});
                    }
                }
                if (schema_->has_dim(t.text)) {
                    std::size_t idx = schema_->index_of(t.text);
                    if (!schema_->dim(idx).is_numeric()) {
                        throw Error(ErrorCode::TypeError,
                                    "at position " + std::to_string(t.pos) + ": dimension '" +
                                        t.text + "' is " +
                                        quale_kind_name(schema_->dim(idx).kind) +
                                        " and cannot be used in arithmetic");
                    }
                    return mk({.kind = Expr::Kind::DimRef, .name = t.text, .index = idx});
                }
                throw Error(ErrorCode::UnknownIdentifier,
                            "at position " + std::to_string(t.pos) + ": '" + t.text +
                                "' is neither a schema dimension nor a parameter");
            }
            case TokKind::LParen: {
                advance();
                ExprPtr inner = parse_or();
                expect(TokKind::RParen, "expected ')'");
                return inner;
            }
            default:
                syntax_error(t.pos, "expected identifier, number, or '('");
        }
    }
};

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct EvalContext {
    const OntVector& v;
    const std::vector<double>& bindings;
    double tol;
    // body dimension index -> index in v's schema (resolved lazily)
    const DomainSchema& body_schema;
};

double eval_num(const Expr& e, const EvalContext& ctx);

bool eval_bool(const Expr& e, const EvalContext& ctx) {
    switch (e.kind) {
        case Expr::Kind::Le: return tol_le(eval_num(*e.lhs, ctx), eval_num(*e.rhs, ctx), ctx.tol);
        case Expr::Kind::Ge: return tol_ge(eval_num(*e.lhs, ctx), eval_num(*e.rhs, ctx), ctx.tol);
        case Expr::Kind::Eq: return tol_eq(eval_num(*e.lhs, ctx), eval_num(*e.rhs, ctx), ctx.tol);
        case Expr::Kind::Not: return !eval_bool(*e.lhs, ctx);
        case Expr::Kind::And: return eval_bool(*e.lhs, ctx) && eval_bool(*e.rhs, ctx);
        case Expr::Kind::Or: return eval_bool(*e.lhs, ctx) || eval_bool(*e.rhs, ctx);
        default:
            throw Error(ErrorCode::TypeError, "numeric expression evaluated as boolean");
    }
}

double eval_num(const Expr& e, const EvalContext& ctx) {
    switch (e.kind) {
        case Expr::Kind::Number: return e.number;
        case Expr::Kind::ParamRef: return ctx.bindings[e.index];
        case Expr::Kind::DimRef: {
            if (!ctx.v.schema()->has_dim(e.name)) {
                throw Error(ErrorCode::SchemaMismatch,
                            "vector's schema lacks dimension '" + e.name + "'");
            }
            return ctx.v.numeric(ctx.v.schema()->index_of(e.name));
        }
        case Expr::Kind::Add: return eval_num(*e.lhs, ctx) + eval_num(*e.rhs, ctx);
        case Expr::Kind::Sub: return eval_num(*e.lhs, ctx) - eval_num(*e.rhs, ctx);
        case Expr::Kind::Mul: return eval_num(*e.lhs, ctx) * eval_num(*e.rhs, ctx);
        case Expr::Kind::Pow:
            return std::pow(eval_num(*e.lhs, ctx), static_cast<double>(e.exponent));
        default:
            throw Error(ErrorCode::TypeError, "boolean expression evaluated as number");
    }
}

// ---------------------------------------------------------------------------
// Unparse
// ---------------------------------------------------------------------------

std::string number_text(double x) {
    nlohmann::json j = x;
    return j.dump();
}

std::string unparse_expr(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Number: return number_text(e.number);
        case Expr::Kind::DimRef:
        case Expr::Kind::ParamRef: return e.name;
        case Expr::Kind::Add: return "(" + unparse_expr(*e.lhs) + " + " + unparse_expr(*e.rhs) + ")";
        case Expr::Kind::Sub: return "(" + unparse_expr(*e.lhs) + " - " + unparse_expr(*e.rhs) + ")";
        case Expr::Kind::Mul: return "(" + unparse_expr(*e.lhs) + " * " + unparse_expr(*e.rhs) + ")";
        case Expr::Kind::Pow:
            return "(" + unparse_expr(*e.lhs) + " ^ " + std::to_string(e.exponent) + ")";
        case Expr::Kind::Le: return "(" + unparse_expr(*e.lhs) + " <= " + unparse_expr(*e.rhs) + ")";
        case Expr::Kind::Ge: return "(" + unparse_expr(*e.lhs) + " >= " + unparse_expr(*e.rhs) + ")";
        case Expr::Kind::Eq: return "(" + unparse_expr(*e.lhs) + " = " + unparse_expr(*e.rhs) + ")";
        case Expr::Kind::Not: return "(NOT " + unparse_expr(*e.lhs) + ")";
        case Expr::Kind::And:
            return "(" + unparse_expr(*e.lhs) + " AND " + unparse_expr(*e.rhs) + ")";
        case Expr::Kind::Or:
            return "(" + unparse_expr(*e.lhs) + " OR " + unparse_expr(*e.rhs) + ")";
    }
    return "";
}

double lower_median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    return xs[(xs.size() - 1) / 2];
}

} // namespace

std::shared_ptr<const FunctionClass> parse_foe(const std::string& text,
                                               const SchemaPtr& schema) {
    Parser parser(text, schema);
    return parser.parse_class();
}

std::string unparse(const FunctionClass& cls) {
    std::string out = "class " + cls.name + "(";
    for (std::size_t i = 0; i < cls.params.size(); ++i) {
        out += (i ? ", " : "") + cls.params[i];
    }
    out += "): " + unparse_expr(*cls.body);
    return out;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::Kind::Number: return a->number == b->number;
        case Expr::Kind::DimRef:
        case Expr::Kind::ParamRef: return a->name == b->name && a->index == b->index;
        case Expr::Kind::Pow:
            return a->exponent == b->exponent && expr_equal(a->lhs, b->lhs);
        case Expr::Kind::Not: return expr_equal(a->lhs, b->lhs);
        default: return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
    }
}

FOEInstance bind(const std::shared_ptr<const FunctionClass>& cls,
                 const std::map<std::string, double>& values) {
    for (const auto& [key, _] : values) {
        if (std::find(cls->params.begin(), cls->params.end(), key) == cls->params.end()) {
            throw Error(ErrorCode::UnknownParameter,
                        "class '" + cls->name + "' has no parameter '" + key + "'");
        }
    }
    std::vector<double> bindings;
    bindings.reserve(cls->params.size());
    for (const auto& p : cls->params) {
        auto it = values.find(p);
        if (it == values.end()) {
            throw Error(ErrorCode::MissingParameter,
                        "parameter '" + p + "' of class '" + cls->name + "' is unbound");
        }
        bindings.push_back(it->second);
    }
    return FOEInstance{cls, std::move(bindings)};
}

bool evaluate(const FOEInstance& instance, const OntVector& v, double tol) {
    EvalContext ctx{v, instance.bindings, tol, *instance.class_ref->schema};
    return eval_bool(*instance.class_ref->body, ctx);
}

ExistenceSet extension(const FOEInstance& instance, const ExistenceSet& set, double tol) {
    ExistenceSet out(set.schema(), set.tolerance());
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (evaluate(instance, set.members()[i], tol)) {
            out = out.insert(set.members()[i], set.provenance()[i]).set;
        }
    }
    return out;
}

std::vector<FOEInstance> fit_constant_interval(const ExistenceSet& set,
                                               const std::string& value_dim,
                                               const std::string& axis_dim,
                                               double gap_factor, double tol) {
    const auto& schema = set.schema();
    std::size_t axis_idx = schema->index_of(axis_dim);
    std::size_t value_idx = schema->index_of(value_dim);
    if (!schema->dim(axis_idx).is_numeric() || !schema->dim(value_idx).is_numeric()) {
        throw Error(ErrorCode::NonNumericDimension,
                    "fit_constant_interval needs numeric axis and value dimensions");
    }
    if (set.empty()) return {};

    struct Sample {
        double axis;
        double value;
    };
    std::vector<Sample> samples;
    samples.reserve(set.size());
    for (const auto& m : set.members()) {
        samples.push_back({m.numeric(axis_idx), m.numeric(value_idx)});
    }
    std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
        return a.axis != b.axis ? a.axis < b.axis : a.value < b.value;
    });

    double threshold = std::numeric_limits<double>::infinity();
    if (samples.size() >= 2) {
        std::vector<double> gaps;
        gaps.reserve(samples.size() - 1);
        for (std::size_t i = 1; i < samples.size(); ++i) {
            gaps.push_back(samples[i].axis - samples[i - 1].axis);
        }
        threshold = gap_factor * lower_median(gaps);
    }

    // The shared interval-constant class; parameter names are kept clear of
    // the schema's own dimension names.
    auto param = [&](std::string base) {
        while (schema->has_dim(base)) base += "_";
        return base;
    };
    std::string lo = param("lo"), hi = param("hi"), val = param("val");
    std::string text = "class interval_const(" + lo + ", " + hi + ", " + val + "): (" +
                       axis_dim + " >= " + lo + ") AND (" + axis_dim + " <= " + hi +
                       ") AND (" + value_dim + " = " + val + ")";
    auto cls = parse_foe(text, schema);

    std::vector<FOEInstance> out;
    std::size_t run_start = 0;
    for (std::size_t i = 1; i <= samples.size(); ++i) {
        bool split = i == samples.size() ||
                     !tol_eq(samples[i].value, samples[run_start].value, tol) ||
                     samples[i].axis - samples[i - 1].axis > threshold;
        if (!split) continue;
        out.push_back(bind(cls, {{lo, samples[run_start].axis},
                                 {hi, samples[i - 1].axis},
                                 {val, samples[run_start].value}}));
        run_start = i;
    }
    return out;
}

ContinuityVerdict classify_continuity(const ExistenceSet& set, const FOEInstance& instance,
                                      const std::string& axis_dim, double gap_factor,
                                      double tol) {
    std::size_t axis_idx = set.schema()->index_of(axis_dim);
    if (!set.schema()->dim(axis_idx).is_numeric()) {
        throw Error(ErrorCode::NonNumericDimension,
                    "continuity axis '" + axis_dim + "' must be numeric");
    }
    ExistenceSet ext = extension(instance, set, tol);
    if (ext.empty()) {
        throw Error(ErrorCode::EmptyExtension, "instance has no members in this set");
    }
    std::vector<double> axis;
    axis.reserve(ext.size());
    for (const auto& m : ext.members()) axis.push_back(m.numeric(axis_idx));
    std::sort(axis.begin(), axis.end());

    ContinuityVerdict verdict;
    if (axis.size() == 1) {
        // An instant cannot endure.
        verdict.label = ContinuityLabel::Perdurant;
        verdict.witness_lo = axis[0];
        verdict.witness_hi = axis[0];
        verdict.witness_gap = std::numeric_limits<double>::infinity();
        verdict.sampling_interval = 0.0;
        return verdict;
    }
    std::vector<double> gaps;
    gaps.reserve(axis.size() - 1);
    for (std::size_t i = 1; i < axis.size(); ++i) gaps.push_back(axis[i] - axis[i - 1]);
    double median = lower_median(gaps);
    verdict.sampling_interval = median;

    std::size_t worst = 0;
    for (std::size_t i = 1; i < gaps.size(); ++i) {
        if (gaps[i] > gaps[worst]) worst = i;
    }
    if (gaps[worst] > gap_factor * median) {
        verdict.label = ContinuityLabel::Perdurant;
        verdict.witness_lo = axis[worst];
        verdict.witness_hi = axis[worst + 1];
        verdict.witness_gap = gaps[worst];
    } else {
        verdict.label = ContinuityLabel::Endurant;
    }
    return verdict;
}

double compression_ratio(const FOEInstance& instance, const ExistenceSet& set, double tol) {
    ExistenceSet ext = extension(instance, set, tol);
    if (ext.empty()) {
        throw Error(ErrorCode::EmptyExtension, "instance has no members in this set");
    }
    double coords = static_cast<double>(ext.size()) * static_cast<double>(set.schema()->size());
    std::size_t params = instance.class_ref->params.size();
    if (params == 0) return std::numeric_limits<double>::infinity();
    return coords / static_cast<double>(params);
}

} // namespace vectont
