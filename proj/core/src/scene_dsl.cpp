#include "perspectiva/scene_dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

namespace perspectiva {

namespace {

enum class TokKind { word, number, str, lparen, rparen, comma, eol, eof, junk };

struct Tok {
    TokKind kind = TokKind::eof;
    std::string text;       // spelling, or decoded payload for strings
    double value = 0.0;     // numbers only
    bool braccia = false;   // number carried the "br" suffix
    SourceSpan span;
};

std::string describe(const Tok& t) {
    switch (t.kind) {
        case TokKind::eol: return "end of line";
        case TokKind::eof: return "end of input";
        case TokKind::str: return "\"" + t.text + "\"";
        default: return "\"" + t.text + "\"";
    }
}

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct Fail {
    ParseError err;
};

[[noreturn]] void fail_at(const Tok& t, std::string expected) {
    throw Fail{ParseError{t.span, std::move(expected), describe(t)}};
}

std::vector<Tok> lex(std::string_view text) {
    std::vector<Tok> out;
    int line = 1, col = 1;
    size_t i = 0;
    const size_t n = text.size();

    const auto push = [&](TokKind k, std::string s, SourceSpan sp) {
        Tok t;
        t.kind = k;
        t.text = std::move(s);
        t.span = sp;
        out.push_back(std::move(t));
    };

    while (i < n) {
        const char c = text[i];
        const SourceSpan here{line, col};
        if (c == '\n') {
            push(TokKind::eol, "\\n", here);
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            ++col;
            continue;
        }
        if (c == '#') {
            while (i < n && text[i] != '\n') {
                ++i;
                ++col;
            }
            continue;
        }
        if (c == '(') { push(TokKind::lparen, "(", here); ++i; ++col; continue; }
        if (c == ')') { push(TokKind::rparen, ")", here); ++i; ++col; continue; }
        if (c == ',') { push(TokKind::comma, ",", here); ++i; ++col; continue; }
        if (c == '"') {
            std::string payload;
            size_t j = i + 1;
            int jcol = col + 1;
            bool closed = false;
            while (j < n && text[j] != '\n') {
                if (text[j] == '\\' && j + 1 < n && text[j + 1] != '\n') {
                    payload.push_back(text[j + 1]);
                    j += 2;
                    jcol += 2;
                    continue;
                }
                if (text[j] == '"') {
                    closed = true;
                    ++j;
                    ++jcol;
                    break;
                }
                payload.push_back(text[j]);
                ++j;
                ++jcol;
            }
            if (!closed) {
                Tok t;
                t.kind = TokKind::junk;
                t.text = "unterminated string";
                t.span = here;
                out.push_back(t);
                i = j;
                col = jcol;
                continue;
            }
            Tok t;
            t.kind = TokKind::str;
            t.text = std::move(payload);
            t.span = here;
            out.push_back(std::move(t));
            i = j;
            col = jcol;
            continue;
        }
        const bool starts_number =
            std::isdigit(static_cast<unsigned char>(c)) ||
            ((c == '-' || c == '+' || c == '.') && i + 1 < n &&
             (std::isdigit(static_cast<unsigned char>(text[i + 1])) || text[i + 1] == '.'));
        if (starts_number) {
            size_t j = i;
            if (text[j] == '+') ++j;  // from_chars takes '-' but not '+'
            double v = 0.0;
            const auto res = std::from_chars(text.data() + j, text.data() + n, v);
            if (res.ec == std::errc() && res.ptr != text.data() + j) {
                size_t end = static_cast<size_t>(res.ptr - text.data());
                Tok t;
                t.kind = TokKind::number;
                t.text = std::string(text.substr(i, end - i));
                t.value = v;
                t.span = here;
                // "br" glued to the number marks a length in braccia
                if (end + 1 < n && text[end] == 'b' && text[end + 1] == 'r' &&
                    (end + 2 >= n || !word_char(text[end + 2]))) {
                    t.braccia = true;
                    t.text += "br";
                    end += 2;
                }
                col += static_cast<int>(end - i);
                i = end;
                out.push_back(std::move(t));
                continue;
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < n && word_char(text[j])) ++j;
            push(TokKind::word, std::string(text.substr(i, j - i)), here);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        push(TokKind::junk, std::string(1, c), here);
        ++i;
        ++col;
    }
    Tok eof;
    eof.kind = TokKind::eof;
    eof.text = "";
    eof.span = {line, col};
    out.push_back(eof);
    return out;
}

// A length whose unit is resolved only after the whole text is read,
// because a braccio statement may follow its uses.
struct Len {
    double v = 0.0;
    bool br = false;

    double cm(double braccio) const { return br ? v * braccio : v; }
};

struct RawViewer { Len height, distance; };
struct RawCanvas { Len width, height; std::optional<Len> base; };
struct RawLine { Len x, y, z; double dx = 0, dy = 0, dz = 0; };
struct RawFloor { int cols = 0, rows = 0; Len sx; std::optional<Len> sy, offset; };
struct RawFigure { std::string label; Len x, depth, height; };

class Parser {
public:
    explicit Parser(const std::vector<Tok>& ts) : ts_(ts) {}

    Scene run(double default_braccio) {
        while (cur().kind != TokKind::eof) {
            if (cur().kind == TokKind::eol) {
                advance();
                continue;
            }
            statement();
        }
        if (!viewer_)
            throw Fail{ParseError{{1, 1}, "viewer",
                                  ts_.empty() ? "end of input" : describe(ts_.front())}};
        return assemble(default_braccio);
    }

private:
    const std::vector<Tok>& ts_;
    size_t i_ = 0;

    std::optional<RawViewer> viewer_;
    std::optional<RawCanvas> canvas_;
    std::optional<Len> braccio_;
    std::vector<RawLine> lines_;
    std::vector<RawFloor> floors_;
    std::vector<RawFigure> figures_;

    const Tok& cur() const { return ts_[i_]; }
    void advance() { if (i_ + 1 < ts_.size()) ++i_; }

    void expect_word(const char* w) {
        if (cur().kind != TokKind::word || cur().text != w) fail_at(cur(), std::string("'") + w + "'");
        advance();
    }

    void expect(TokKind k, const char* what) {
        if (cur().kind != k) fail_at(cur(), what);
        advance();
    }

    Len length() {
        if (cur().kind != TokKind::number) fail_at(cur(), "NUM");
        Len l{cur().value, cur().braccia};
        advance();
        return l;
    }

    double unitless() {
        if (cur().kind != TokKind::number) fail_at(cur(), "NUM");
        if (cur().braccia) fail_at(cur(), "unitless NUM (no br suffix)");
        const double v = cur().value;
        advance();
        return v;
    }

    int integer() {
        if (cur().kind != TokKind::number) fail_at(cur(), "INT");
        const double v = cur().value;
        if (cur().braccia || v != std::floor(v) || std::fabs(v) > 1e9) fail_at(cur(), "INT");
        advance();
        return static_cast<int>(v);
    }

    void end_of_statement() {
        if (cur().kind == TokKind::eof) return;
        if (cur().kind != TokKind::eol) fail_at(cur(), "end of line");
        advance();
    }

    void statement() {
        if (cur().kind != TokKind::word)
            fail_at(cur(), "statement keyword (viewer, canvas, braccio, line, floor or figure)");
        const Tok kw = cur();
        if (kw.text == "viewer") {
            if (viewer_) fail_at(kw, "at most one viewer statement");
            advance();
            RawViewer v;
            expect_word("height");
            v.height = length();
            expect_word("distance");
            v.distance = length();
            end_of_statement();
            viewer_ = v;
        } else if (kw.text == "canvas") {
            if (canvas_) fail_at(kw, "at most one canvas statement");
            advance();
            RawCanvas c;
            expect_word("width");
            c.width = length();
            expect_word("height");
            c.height = length();
            if (cur().kind == TokKind::word && cur().text == "base") {
                advance();
                if (cur().kind == TokKind::word && cur().text == "floor") {
                    advance();
                    c.base = Len{0.0, false};
                } else {
                    c.base = length();
                }
            }
            end_of_statement();
            canvas_ = c;
        } else if (kw.text == "braccio") {
            if (braccio_) fail_at(kw, "at most one braccio statement");
            advance();
            if (cur().kind != TokKind::number || cur().braccia) fail_at(cur(), "NUM in centimetres");
            braccio_ = Len{cur().value, false};
            advance();
            end_of_statement();
        } else if (kw.text == "line") {
            advance();
            RawLine l;
            expect_word("at");
            expect(TokKind::lparen, "'('");
            l.x = length();
            expect(TokKind::comma, "','");
            l.y = length();
            expect(TokKind::comma, "','");
            l.z = length();
            expect(TokKind::rparen, "')'");
            expect_word("dir");
            expect(TokKind::lparen, "'('");
            l.dx = unitless();
            expect(TokKind::comma, "','");
            l.dy = unitless();
            expect(TokKind::comma, "','");
            l.dz = unitless();
            expect(TokKind::rparen, "')'");
            end_of_statement();
            lines_.push_back(l);
        } else if (kw.text == "floor") {
            advance();
            RawFloor f;
            expect_word("tiles");
            f.cols = integer();
            expect_word("x");
            f.rows = integer();
            expect_word("size");
            f.sx = length();
            if (cur().kind == TokKind::word && cur().text == "by") {
                advance();
                f.sy = length();
            }
            if (cur().kind == TokKind::word && cur().text == "offset") {
                advance();
                f.offset = length();
            }
            end_of_statement();
            floors_.push_back(f);
        } else if (kw.text == "figure") {
            advance();
            RawFigure g;
            if (cur().kind != TokKind::str) fail_at(cur(), "STRING");
            g.label = cur().text;
            advance();
            expect_word("at");
            expect(TokKind::lparen, "'('");
            g.x = length();
            expect(TokKind::comma, "','");
            g.depth = length();
            expect(TokKind::rparen, "')'");
            expect_word("height");
            g.height = length();
            end_of_statement();
            figures_.push_back(g);
        } else {
            fail_at(kw, "statement keyword (viewer, canvas, braccio, line, floor or figure)");
        }
    }

    Scene assemble(double default_braccio) const {
        Scene s;
        s.braccio_cm = braccio_ ? braccio_->v : default_braccio;
        const double br = s.braccio_cm;

        s.frame.eye_height_H = viewer_->height.cm(br);
        s.frame.canvas_distance_D = viewer_->distance.cm(br);
        if (canvas_) {
            s.frame.canvas_width = canvas_->width.cm(br);
            s.frame.canvas_height = canvas_->height.cm(br);
            s.frame.canvas_base_height = canvas_->base ? canvas_->base->cm(br) : 0.0;
        } else {
            // Alberti's stage: a square of side six braccia opening at floor level
            s.frame.canvas_width = 6.0 * br;
            s.frame.canvas_height = 6.0 * br;
            s.frame.canvas_base_height = 0.0;
        }

        for (const RawLine& l : lines_) {
            SceneLine sl;
            sl.anchor = {l.x.cm(br), l.y.cm(br), l.z.cm(br)};
            sl.direction = {l.dx, l.dy, l.dz};
            s.lines.push_back(sl);
        }
        for (const RawFloor& f : floors_) {
            TiledFloor t;
            t.columns = f.cols;
            t.rows = f.rows;
            t.tile_width_s_x = f.sx.cm(br);
            t.tile_depth_s_y = f.sy ? f.sy->cm(br) : t.tile_width_s_x;
            t.origin_offset = f.offset ? f.offset->cm(br) : 0.0;
            s.floors.push_back(t);
        }
        for (const RawFigure& g : figures_) {
            StandingFigure sf;
            sf.label = g.label;
            sf.base_x = g.x.cm(br);
            sf.base_depth = g.depth.cm(br);
            sf.height = g.height.cm(br);
            s.figures.push_back(sf);
        }
        return s;
    }
};

std::string fmt_num(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string quote_label(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

std::string ParseError::message() const {
    std::ostringstream os;
    os << span.line << ":" << span.column << ": expected " << expected << ", found " << found;
    return os.str();
}

std::variant<Scene, ParseError> parse_scene(std::string_view text, double default_braccio_cm) {
    try {
        const auto toks = lex(text);
        Parser p(toks);
        return p.run(default_braccio_cm);
    } catch (const Fail& f) {
        return f.err;
    }
}

std::string print_scene(const Scene& s) {
    std::ostringstream os;
    os << "viewer height " << fmt_num(s.frame.eye_height_H) << " distance "
       << fmt_num(s.frame.canvas_distance_D) << "\n";
    os << "canvas width " << fmt_num(s.frame.canvas_width) << " height "
       << fmt_num(s.frame.canvas_height);
    if (s.frame.canvas_base_height != 0.0)
        os << " base " << fmt_num(s.frame.canvas_base_height);
    os << "\n";
    os << "braccio " << fmt_num(s.braccio_cm) << "\n";
    for (const SceneLine& l : s.lines) {
        os << "line at (" << fmt_num(l.anchor.x) << ", " << fmt_num(l.anchor.y) << ", "
           << fmt_num(l.anchor.z) << ") dir (" << fmt_num(l.direction.dx) << ", "
           << fmt_num(l.direction.dy) << ", " << fmt_num(l.direction.dz) << ")\n";
    }
    for (const TiledFloor& f : s.floors) {
        os << "floor tiles " << f.columns << " x " << f.rows << " size "
           << fmt_num(f.tile_width_s_x);
        if (f.tile_depth_s_y != f.tile_width_s_x) os << " by " << fmt_num(f.tile_depth_s_y);
        if (f.origin_offset != 0.0) os << " offset " << fmt_num(f.origin_offset);
        os << "\n";
    }
    for (const StandingFigure& g : s.figures) {
        os << "figure " << quote_label(g.label) << " at (" << fmt_num(g.base_x) << ", "
           << fmt_num(g.base_depth) << ") height " << fmt_num(g.height) << "\n";
    }
    return os.str();
}

}  // namespace perspectiva
