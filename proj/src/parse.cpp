#include "camtraj/parse.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>

#include "camtraj/common.hpp"

namespace camtraj {

const GrammarKeywords& grammar_keywords() {
    static const GrammarKeywords table = [] {
        GrammarKeywords k;
        k.version = 1;
        k.move_verbs = {"move", "moves", "pan", "pans", "shift", "shifts", "go", "goes"};
        k.zoom_verbs = {"zoom", "zooms", "push", "pushes", "pull", "pulls"};
        k.rotate_verbs = {"rotate", "rotates", "rotating"};
        k.directions = {
            {"right", 0.0},     {"rightward", 0.0}, {"up", 90.0},      {"upward", 90.0},
            {"upwards", 90.0},  {"left", 180.0},    {"leftward", 180.0},
            {"down", 270.0},    {"downward", 270.0},{"downwards", 270.0},
        };
        k.adverbs = {{"slowly", Speed::low}, {"quickly", Speed::high}};
        k.rotation_words = {{"clockwise", Rotate::cw},
                            {"counterclockwise", Rotate::ccw},
                            {"counter-clockwise", Rotate::ccw},
                            {"anticlockwise", Rotate::ccw}};
        k.time_words = {"from", "to", "until", "between", "and",
                        "second", "seconds", "sec", "secs"};
        k.fillers = {"the", "camera", "it", "first", "next", "finally", "now"};
        return k;
    }();
    return table;
}

namespace {

struct Token {
    enum Kind { word, number, punct } kind;
    std::string text;
    double value = 0.0;  // for numbers
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    size_t i = 0;
    while (i < text.size()) {
        unsigned char c = text[i];
        if (std::isspace(c) || c == ',') {
            ++i;
        } else if (c == '.' || c == ';') {
            // A '.' between digits is a decimal point, handled in the number
            // branch; here it is always a clause separator.
            tokens.push_back({Token::punct, std::string(1, char(c))});
            ++i;
        } else if (std::isdigit(c)) {
            size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i + 1 < text.size() && text[i] == '.' &&
                std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
                ++i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            }
            std::string tok = text.substr(start, i - start);
            tokens.push_back({Token::number, tok, parse_number(tok)});
        } else if (std::isalpha(c)) {
            size_t start = i;
            while (i < text.size() &&
                   (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '-'))
                ++i;
            std::string tok = text.substr(start, i - start);
            std::transform(tok.begin(), tok.end(), tok.begin(),
                           [](unsigned char ch) { return char(std::tolower(ch)); });
            tokens.push_back({Token::word, tok});
        } else {
            throw ParseError("unexpected character '" + std::string(1, char(c)) + "'");
        }
    }
    return tokens;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

// One clause worth of tokens, with a cursor.
class ClauseReader {
public:
    ClauseReader(std::vector<Token> tokens, int clause_index)
        : tokens_(std::move(tokens)), clause_(clause_index) {}

    bool done() const { return pos_ >= tokens_.size(); }
    const Token& peek() const {
        if (done()) fail("unexpected end of clause");
        return tokens_[pos_];
    }
    const Token& take() {
        const Token& t = peek();
        ++pos_;
        return t;
    }
    bool take_word(const std::string& w) {
        if (!done() && tokens_[pos_].kind == Token::word && tokens_[pos_].text == w) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool peek_word(const std::string& w) const {
        return !done() && tokens_[pos_].kind == Token::word && tokens_[pos_].text == w;
    }
    bool peek_number() const { return !done() && tokens_[pos_].kind == Token::number; }

    double take_number(const char* what) {
        if (!peek_number()) fail(std::string("expected ") + what);
        return tokens_[pos_++].value;
    }
    void expect_unit_seconds() {
        if (done() || tokens_[pos_].kind != Token::word ||
            !contains({"second", "seconds", "sec", "secs"}, tokens_[pos_].text))
            fail("expected time unit 'seconds'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& message) const {
        std::string tok = done() ? "<end>" : tokens_[pos_].text;
        throw ParseError(message + " (token '" + tok + "')",
                         "clause " + std::to_string(clause_));
    }
    int clause() const { return clause_; }

private:
    std::vector<Token> tokens_;
    size_t pos_ = 0;
    int clause_;
};

struct ParsedClause {
    std::optional<double> start;
    std::optional<double> end;
    MotionPrimitive primitive;  // times filled in by the scheduler
};

// timerange := 'from' NUM ('to'|'until') NUM unit | 'between' NUM 'and' NUM unit
void parse_time_range(ClauseReader& r, ParsedClause& out) {
    if (r.take_word("from")) {
        out.start = r.take_number("start time");
        if (!r.take_word("to") && !r.take_word("until")) r.fail("expected 'to' or 'until'");
        out.end = r.take_number("end time");
        r.expect_unit_seconds();
    } else if (r.take_word("between")) {
        out.start = r.take_number("start time");
        if (!r.take_word("and")) r.fail("expected 'and'");
        out.end = r.take_number("end time");
        r.expect_unit_seconds();
    }
}

void set_speed(ClauseReader& r, MotionPrimitive& p, bool& speed_set, Speed s) {
    if (speed_set) r.fail("conflicting speed adverbs");
    p.speed = s;
    speed_set = true;
}

// 'zoom in' / 'zooms out' / 'push in' / 'pull out'
Radial parse_zoom_tail(ClauseReader& r, const std::string& verb) {
    if (verb == "push" || verb == "pushes") {
        if (!r.take_word("in")) r.fail("expected 'in' after 'push'");
        return Radial::zoom_in;
    }
    if (verb == "pull" || verb == "pulls") {
        if (!r.take_word("out")) r.fail("expected 'out' after 'pull'");
        return Radial::zoom_out;
    }
    if (r.take_word("in")) return Radial::zoom_in;
    if (r.take_word("out")) return Radial::zoom_out;
    r.fail("expected 'in' or 'out' after zoom verb");
}

// rotation := rot_dir ('by'? NUM 'degrees')?
void parse_rotation_tail(ClauseReader& r, MotionPrimitive& p, const ParserDefaults& defaults) {
    const auto& kw = grammar_keywords();
    if (r.done() || r.peek().kind != Token::word) r.fail("expected rotation direction");
    auto it = kw.rotation_words.find(r.peek().text);
    if (it == kw.rotation_words.end()) r.fail("unknown rotation direction");
    r.take();
    p.rotate = it->second;
    p.rotate_degrees = defaults.rotate_degrees;
    bool had_by = r.take_word("by");
    if (r.peek_number()) {
        p.rotate_degrees = r.take_number("rotation angle");
        if (!r.take_word("degrees") && !r.take_word("degree")) r.fail("expected 'degrees'");
    } else if (had_by) {
        r.fail("expected rotation angle after 'by'");
    }
}

ParsedClause parse_clause(std::vector<Token> tokens, int clause_index,
                          const ParserDefaults& defaults) {
    const auto& kw = grammar_keywords();
    ClauseReader r(std::move(tokens), clause_index);
    ParsedClause out;
    MotionPrimitive& p = out.primitive;
    bool speed_set = false;

    // Leading fillers ("first", "the camera", ...), then an optional time
    // range, then possibly more fillers before the verb.
    while (!r.done() && r.peek().kind == Token::word && contains(kw.fillers, r.peek().text))
        r.take();
    parse_time_range(r, out);
    while (!r.done() && r.peek().kind == Token::word && contains(kw.fillers, r.peek().text))
        r.take();

    if (r.done()) r.fail("empty clause");

    // Optional adverb before the verb.
    if (r.peek().kind == Token::word) {
        auto it = kw.adverbs.find(r.peek().text);
        if (it != kw.adverbs.end()) {
            r.take();
            set_speed(r, p, speed_set, it->second);
        }
    }

    if (r.peek().kind != Token::word) r.fail("expected a verb");
    const std::string verb = r.take().text;
    bool is_move = false;

    if (contains(kw.move_verbs, verb)) {
        is_move = true;
        // direction: principal word or 'at N degrees'
        if (r.take_word("at")) {
            double angle = r.take_number("direction angle");
            if (!r.take_word("degrees") && !r.take_word("degree")) r.fail("expected 'degrees'");
            angle = std::fmod(angle, 360.0);
            if (angle < 0.0) angle += 360.0;
            p.direction.planar_angle = angle;
        } else {
            if (r.done() || r.peek().kind != Token::word) r.fail("expected a direction");
            auto it = kw.directions.find(r.peek().text);
            if (it == kw.directions.end()) r.fail("unknown direction");
            r.take();
            p.direction.planar_angle = it->second;
        }
    } else if (contains(kw.zoom_verbs, verb)) {
        p.direction.radial = parse_zoom_tail(r, verb);
    } else if (verb == "rotate" || verb == "rotates") {
        parse_rotation_tail(r, p, defaults);
    } else {
        r.fail("unknown verb '" + verb + "'");
    }

    // Clause tail: adverb, 'and <zoom>', 'while rotating ...' in any order
    // that the grammar admits (each at most once).
    while (!r.done()) {
        const Token& t = r.peek();
        if (t.kind != Token::word) r.fail("unexpected token");
        auto adv = kw.adverbs.find(t.text);
        if (adv != kw.adverbs.end()) {
            r.take();
            set_speed(r, p, speed_set, adv->second);
            continue;
        }
        if (t.text == "and" && is_move && !p.direction.radial) {
            r.take();
            if (r.done() || r.peek().kind != Token::word || !contains(kw.zoom_verbs, r.peek().text))
                r.fail("expected a zoom verb after 'and'");
            std::string zv = r.take().text;
            p.direction.radial = parse_zoom_tail(r, zv);
            continue;
        }
        if (t.text == "while" && is_move && p.rotate == Rotate::none) {
            r.take();
            if (!r.take_word("rotating") && !r.take_word("rotates") && !r.take_word("rotate"))
                r.fail("expected 'rotating' after 'while'");
            parse_rotation_tail(r, p, defaults);
            continue;
        }
        r.fail("unexpected token '" + t.text + "'");
    }

    return out;
}

}  // namespace

TrajectoryScript parse_instruction_text(const std::string& text,
                                        const ParserDefaults& defaults) {
    if (defaults.move_duration <= 0.0 || defaults.rotate_duration <= 0.0 ||
        defaults.rotate_degrees <= 0.0)
        throw ValidationError("parser defaults must be strictly positive");

    std::vector<Token> tokens = tokenize(text);

    // Split into clauses on '.', ';' and the word "then".
    std::vector<std::vector<Token>> clauses(1);
    for (auto& t : tokens) {
        bool sep = (t.kind == Token::punct) ||
                   (t.kind == Token::word && t.text == "then");
        if (sep) {
            if (!clauses.back().empty()) clauses.emplace_back();
        } else {
            clauses.back().push_back(std::move(t));
        }
    }
    if (clauses.back().empty()) clauses.pop_back();
    if (clauses.empty()) throw ParseError("no clauses in description");

    TrajectoryScript script;
    double cursor = 0.0;
    for (size_t i = 0; i < clauses.size(); ++i) {
        ParsedClause c = parse_clause(std::move(clauses[i]), static_cast<int>(i), defaults);
        MotionPrimitive p = c.primitive;
        if (c.start) {
            p.start_time = *c.start;
            p.end_time = *c.end;
            if (!(p.end_time > p.start_time))
                throw ValidationError("clause " + std::to_string(i) +
                                      ": end time must exceed start time");
        } else {
            double duration =
                p.direction.empty() ? defaults.rotate_duration : defaults.move_duration;
            p.start_time = cursor;
            p.end_time = cursor + duration;
        }
        if (p.start_time < cursor - 1e-12)
            throw ValidationError("clause " + std::to_string(i) +
                                  ": time range overlaps an earlier clause");
        cursor = p.end_time;
        script.primitives.push_back(std::move(p));
    }
    script.total_duration = cursor;

    ValidationReport report = validate_script(script);
    if (!report.ok()) throw ValidationError("parsed script invalid: " + report.to_string());
    return script;
}

}  // namespace camtraj
