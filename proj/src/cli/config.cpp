#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "toridouble/cli.hpp"

namespace toridouble {

namespace {

ParseError perr(const std::string& msg, int line, int column) { return ParseError(line, column, msg); }

struct Token {
    std::string text;
    int column;  // 1-based
};

struct Value {
    std::string text;
    int line;
    int column;
};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool is_name(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
}

std::vector<Token> split_ws(const std::string& s, int column0) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back({s.substr(i, j - i), column0 + static_cast<int>(i)});
        i = j;
    }
    return out;
}

std::size_t parse_count(const std::string& s, const Value& v, int column) {
    std::size_t n = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        throw perr("malformed shape '" + s + "'", v.line, column);
    return n;
}

// "len: a b c" or "rxc: a b; c d"; returns declared shape and the entries row by row
struct Shaped {
    std::size_t rows = 0;
    std::size_t cols = 0;
    bool matrix = false;
    std::vector<std::vector<Token>> entries;
};

Shaped split_shaped(const Value& v, bool want_matrix) {
    std::size_t colon = v.text.find(':');
    if (colon == std::string::npos)
        throw perr(std::string("expected a shape declaration '") + (want_matrix ? "rxc" : "len") + ": ...'",
                         v.line, v.column);
    std::string shape = trim(v.text.substr(0, colon));
    Shaped out;
    std::size_t x = shape.find('x');
    if (want_matrix) {
        if (x == std::string::npos) throw perr("expected a matrix shape 'rxc'", v.line, v.column);
        out.rows = parse_count(shape.substr(0, x), v, v.column);
        out.cols = parse_count(shape.substr(x + 1), v, v.column);
        out.matrix = true;
    } else {
        if (x != std::string::npos) throw perr("expected a vector length", v.line, v.column);
        out.rows = 1;
        out.cols = parse_count(shape, v, v.column);
    }
    std::string body = v.text.substr(colon + 1);
    int col = v.column + static_cast<int>(colon) + 1;
    std::size_t start = 0;
    while (true) {
        std::size_t semi = body.find(';', start);
        std::string row = body.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
        out.entries.push_back(split_ws(row, col + static_cast<int>(start)));
        if (semi == std::string::npos) break;
        if (!want_matrix) throw perr("';' in a vector", v.line, col + static_cast<int>(semi));
        start = semi + 1;
    }
    // "0x0:" and "0:" have no entries at all
    if (out.entries.size() == 1 && out.entries[0].empty() && (out.rows == 0 || out.cols == 0)) out.entries.clear();
    std::size_t want_rows = (out.rows == 0 || out.cols == 0) ? 0 : out.rows;
    if (out.entries.size() != want_rows)
        throw ValidationError("line " + std::to_string(v.line) + ": declared " + shape + " but found " +
                              std::to_string(out.entries.size()) + " rows");
    for (const auto& r : out.entries)
        if (r.size() != out.cols)
            throw ValidationError("line " + std::to_string(v.line) + ": declared " + shape + " but a row has " +
                                  std::to_string(r.size()) + " entries");
    return out;
}

Rational rational_at(const Token& t, const Value& v) {
    try {
        return parse_rational(t.text);
    } catch (const std::exception& e) {
        throw perr(e.what(), v.line, t.column);
    }
}

CRational complex_at(const Token& t, const Value& v) {
    try {
        return parse_complex(t.text);
    } catch (const std::exception& e) {
        throw perr(e.what(), v.line, t.column);
    }
}

Integer integer_at(const Token& t, const Value& v) {
    Rational q = rational_at(t, v);
    if (q.get_den() != 1) throw perr("expected an integer, got '" + t.text + "'", v.line, t.column);
    return q.get_num();
}

CRational complex_scalar(const Value& v) {
    auto toks = split_ws(v.text, v.column);
    if (toks.size() != 1) throw perr("expected one complex number", v.line, v.column);
    return complex_at(toks[0], v);
}

double real_scalar(const Value& v) {
    auto toks = split_ws(v.text, v.column);
    if (toks.size() != 1) throw perr("expected one number", v.line, v.column);
    const std::string& t = toks[0].text;
    double x = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (ec != std::errc() || p != t.data() + t.size()) throw perr("malformed number '" + t + "'", v.line, toks[0].column);
    return x;
}

long integer_scalar(const Value& v) {
    auto toks = split_ws(v.text, v.column);
    if (toks.size() != 1) throw perr("expected one integer", v.line, v.column);
    Integer z = integer_at(toks[0], v);
    if (!z.fits_slong_p()) throw perr("integer out of range", v.line, toks[0].column);
    return z.get_si();
}

RatVector rat_vector(const Value& v) {
    Shaped s = split_shaped(v, false);
    RatVector out;
    for (const auto& row : s.entries)
        for (const auto& t : row) out.push_back(rational_at(t, v));
    return out;
}

IntVector int_vector(const Value& v) {
    Shaped s = split_shaped(v, false);
    IntVector out;
    for (const auto& row : s.entries)
        for (const auto& t : row) out.push_back(integer_at(t, v));
    return out;
}

std::vector<int> bit_vector(const Value& v) {
    std::vector<int> out;
    Shaped s = split_shaped(v, false);
    for (const auto& row : s.entries)
        for (const auto& t : row) {
            if (t.text != "0" && t.text != "1") throw perr("xi bits must be 0 or 1", v.line, t.column);
            out.push_back(t.text == "1");
        }
    return out;
}

std::vector<int> small_int_vector(const Value& v) {
    std::vector<int> out;
    for (const Integer& z : int_vector(v)) {
        if (!z.fits_sint_p()) throw perr("integer out of range", v.line, v.column);
        out.push_back(static_cast<int>(z.get_si()));
    }
    return out;
}

CRatVector complex_vector(const Value& v) {
    Shaped s = split_shaped(v, false);
    CRatVector out;
    for (const auto& row : s.entries)
        for (const auto& t : row) {
            CRational c = complex_at(t, v);
            out.re.push_back(c.re);
            out.im.push_back(c.im);
        }
    return out;
}

RatMatrix rat_matrix(const Value& v) {
    Shaped s = split_shaped(v, true);
    RatMatrix m(s.rows, s.cols);
    for (std::size_t i = 0; i < s.entries.size(); ++i)
        for (std::size_t j = 0; j < s.cols; ++j) m(i, j) = rational_at(s.entries[i][j], v);
    return m;
}

IntMatrix int_matrix(const Value& v) {
    Shaped s = split_shaped(v, true);
    IntMatrix m(s.rows, s.cols);
    for (std::size_t i = 0; i < s.entries.size(); ++i)
        for (std::size_t j = 0; j < s.cols; ++j) m(i, j) = integer_at(s.entries[i][j], v);
    return m;
}

CRatMatrix complex_matrix(const Value& v) {
    Shaped s = split_shaped(v, true);
    CRatMatrix m{RatMatrix(s.rows, s.cols), RatMatrix(s.rows, s.cols)};
    for (std::size_t i = 0; i < s.entries.size(); ++i)
        for (std::size_t j = 0; j < s.cols; ++j) {
            CRational c = complex_at(s.entries[i][j], v);
            m.re(i, j) = c.re;
            m.im(i, j) = c.im;
        }
    return m;
}

std::string word(const Value& v) {
    auto toks = split_ws(v.text, v.column);
    if (toks.size() != 1 || !is_name(toks[0].text)) throw perr("expected a single word", v.line, v.column);
    return toks[0].text;
}

TaskType parse_task_type(const Value& v) {
    static const std::pair<const char*, TaskType> names[] = {
        {"validate", TaskType::validate}, {"lift", TaskType::lift},           {"theta", TaskType::theta},
        {"identity1", TaskType::identity1}, {"identity2", TaskType::identity2}, {"usub", TaskType::usub},
        {"diagram", TaskType::diagram},   {"upart-self", TaskType::upart_self}, {"twist", TaskType::twist}};
    std::string w = word(v);
    for (const auto& [name, t] : names)
        if (w == name) return t;
    throw perr("unknown task type '" + w + "'", v.line, v.column);
}

BraneKind parse_kind(const Value& v) {
    std::string w = word(v);
    if (w == "graph") return BraneKind::graph;
    if (w == "fiber") return BraneKind::fiber;
    if (w == "coisotropic") return BraneKind::coisotropic;
    throw perr("unknown brane kind '" + w + "' (expected graph, fiber or coisotropic)", v.line, v.column);
}

[[noreturn]] void invalid(const std::string& where, const std::string& msg) { throw ValidationError(where + ": " + msg); }

void need_len(const std::string& where, const char* key, std::size_t got, std::size_t want) {
    if (got != want)
        invalid(where, std::string(key) + " must have length " + std::to_string(want) + ", got " + std::to_string(got));
}

void need_shape(const std::string& where, const char* key, std::size_t r, std::size_t c, std::size_t wr,
                std::size_t wc) {
    if (r != wr || c != wc)
        invalid(where, std::string(key) + " must be " + std::to_string(wr) + "x" + std::to_string(wc) + ", got " +
                           std::to_string(r) + "x" + std::to_string(c));
}

void validate(const JobConfig& c) {
    const int n = c.torus.n;
    if (n <= 0) invalid("[torus]", "n must be a positive integer");
    const std::size_t un = static_cast<std::size_t>(n);
    if (c.torus.tau && c.torus.omega) invalid("[torus]", "give either tau or omega, not both");
    if (!c.torus.tau && !c.torus.omega) invalid("[torus]", "missing tau or omega");
    if (c.torus.b_field && !c.torus.omega) invalid("[torus]", "b requires omega");
    if (c.torus.tau) need_shape("[torus]", "tau", c.torus.tau->rows(), c.torus.tau->cols(), un, un);
    if (c.torus.omega) need_shape("[torus]", "omega", c.torus.omega->rows(), c.torus.omega->cols(), 2 * un, 2 * un);
    if (c.torus.b_field) need_shape("[torus]", "b", c.torus.b_field->rows(), c.torus.b_field->cols(), 2 * un, 2 * un);

    std::set<std::string> names;
    for (const BraneConfig& b : c.branes) {
        const std::string where = "[brane " + b.name + "]";
        if (!names.insert(b.name).second) invalid(where, "declared twice");
        auto require = [&](bool present, const char* key) {
            if (!present) invalid(where, std::string("missing ") + key);
        };
        auto forbid = [&](bool present, const char* key) {
            if (present) invalid(where, std::string(key) + " does not apply to kind " + to_string(b.kind));
        };
        switch (b.kind) {
        case BraneKind::graph:
            require(b.d.has_value(), "D");
            need_shape(where, "D", b.d->rows(), b.d->cols(), un, un);
            forbid(b.r || b.support || b.n_quad || b.offset || b.phi, "r/support/N/offset/phi");
            break;
        case BraneKind::fiber:
            require(b.r.has_value(), "r");
            require(b.phi.has_value(), "phi");
            need_len(where, "r", b.r->size(), un);
            need_len(where, "phi", b.phi->size(), un);
            forbid(b.d || b.support || b.n_quad || b.offset, "D/support/N/offset");
            break;
        default: {
            require(b.support.has_value(), "support");
            forbid(b.d || b.r, "D/r");
            const std::size_t dim = b.support->cols();
            need_shape(where, "support", b.support->rows(), dim, 2 * un, dim);
            if (b.n_quad) need_shape(where, "N", b.n_quad->rows(), b.n_quad->cols(), dim, dim);
            if (b.offset) need_len(where, "offset", b.offset->size(), 2 * un);
            if (b.phi) need_len(where, "phi", b.phi->size(), dim);
        }
        }
        if (b.xi) need_len(where, "xi", b.xi->size(), b.dim(n));
    }

    std::set<std::string> ids;
    for (const TaskConfig& t : c.tasks) {
        const std::string where = "[task " + t.id + "]";
        if (!ids.insert(t.id).second) invalid(where, "declared twice");
        auto require = [&](bool present, const char* key) {
            if (!present) invalid(where, std::string("missing ") + key);
        };
        const BraneConfig* brane = nullptr;
        if (t.brane) {
            brane = c.find_brane(*t.brane);
            if (!brane) invalid(where, "brane '" + *t.brane + "' is not declared");
        }
        switch (t.type) {
        case TaskType::validate:
        case TaskType::lift:
        case TaskType::upart_self:
        case TaskType::twist:
            require(brane != nullptr, "brane");
            break;
        case TaskType::theta:
            require(t.d.has_value(), "D");
            require(t.z.has_value(), "z");
            need_shape(where, "D", t.d->rows(), t.d->cols(), un, un);
            need_len(where, "z", t.z->size(), un);
            if (t.k) need_len(where, "k", t.k->size(), un);
            if (t.xi) need_len(where, "xi", t.xi->size(), un);
            break;
        case TaskType::identity1:
            require(t.z.has_value(), "z");
            need_len(where, "z", t.z->size(), 1);
            if (!t.tau && n != 1) invalid(where, "tau is required unless the torus has n = 1");
            break;
        case TaskType::identity2:
            require(t.u.has_value(), "u");
            require(t.v.has_value(), "v");
            need_len(where, "u", t.u->size(), 1);
            need_len(where, "v", t.v->size(), 1);
            if (!t.tau && n != 1) invalid(where, "tau is required unless the torus has n = 1");
            break;
        case TaskType::usub:
            require(brane != nullptr, "brane");
            require(t.r.has_value(), "r");
            require(t.phi.has_value(), "phi");
            need_len(where, "r", t.r->size(), un);
            need_len(where, "phi", t.phi->size(), un);
            if (t.theta_hat) need_len(where, "theta_hat", t.theta_hat->size(), un);
            if (t.kappa) need_len(where, "kappa", t.kappa->size(), un);
            if (t.k) need_len(where, "k", t.k->size(), un);
            break;
        case TaskType::diagram:
            require(brane != nullptr, "brane");
            require(t.z_grid.has_value(), "z_grid");
            if (t.z_grid->cols() != un) invalid(where, "z_grid must have n columns");
            if (t.ks && t.ks->cols() != un) invalid(where, "ks must have n columns");
            if (t.predict_c) need_len(where, "predict_c", t.predict_c->size(), un);
            break;
        }
        if ((t.type == TaskType::usub || t.type == TaskType::diagram) && brane && brane->kind != BraneKind::graph)
            invalid(where, "brane '" + brane->name + "' must be a graph brane");
    }
}

std::string num(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::string bits_text(const std::vector<int>& b) {
    std::string s = std::to_string(b.size()) + ":";
    for (int x : b) s += " " + std::to_string(x);
    return s;
}

std::string complex_scalar_text(const CRational& z) { return to_string(z); }

}  // namespace

std::size_t BraneConfig::dim(int n) const {
    switch (kind) {
    case BraneKind::graph:
    case BraneKind::fiber:
        return static_cast<std::size_t>(n);
    default:
        return support ? support->cols() : 0;
    }
}

std::vector<int> BraneConfig::xi_or_default(int n) const { return xi ? *xi : std::vector<int>(dim(n), 0); }

std::string to_string(TaskType t) {
    switch (t) {
    case TaskType::validate: return "validate";
    case TaskType::lift: return "lift";
    case TaskType::theta: return "theta";
    case TaskType::identity1: return "identity1";
    case TaskType::identity2: return "identity2";
    case TaskType::usub: return "usub";
    case TaskType::diagram: return "diagram";
    case TaskType::upart_self: return "upart-self";
    case TaskType::twist: return "twist";
    }
    return "?";
}

const BraneConfig* JobConfig::find_brane(const std::string& name) const {
    for (const auto& b : branes)
        if (b.name == name) return &b;
    return nullptr;
}

JobConfig parse_config(const std::string& text) {
    enum class Section { none, numeric, torus, brane, task };
    JobConfig c;
    Section sec = Section::none;
    bool seen_numeric = false, seen_torus = false;
    std::set<std::string> keys;  // keys in the current section
    bool have_type = false;

    auto close_section = [&](int line) {
        if ((sec == Section::task) && !have_type)
            throw ValidationError("[task " + c.tasks.back().id + "] before line " + std::to_string(line) +
                                  ": missing type");
        if (sec == Section::brane && !have_type)
            throw ValidationError("[brane " + c.branes.back().name + "] before line " + std::to_string(line) +
                                  ": missing kind");
    };

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw.substr(0, raw.find('#'));
        if (trim(s).empty()) continue;
        const int indent = static_cast<int>(s.find_first_not_of(" \t")) + 1;
        std::string body = trim(s);
        if (body.front() == '[') {
            if (body.back() != ']') throw perr("unterminated section header", line, indent);
            close_section(line);
            auto toks = split_ws(body.substr(1, body.size() - 2), indent + 1);
            keys.clear();
            have_type = false;
            if (toks.empty()) throw perr("empty section header", line, indent);
            const std::string& head = toks[0].text;
            if ((head == "numeric" || head == "torus") && toks.size() == 1) {
                bool& seen = head == "numeric" ? seen_numeric : seen_torus;
                if (seen) throw ValidationError("line " + std::to_string(line) + ": [" + head + "] declared twice");
                seen = true;
                sec = head == "numeric" ? Section::numeric : Section::torus;
            } else if ((head == "brane" || head == "task") && toks.size() == 2) {
                if (!is_name(toks[1].text)) throw perr("invalid name '" + toks[1].text + "'", line, toks[1].column);
                if (head == "brane") {
                    sec = Section::brane;
                    c.branes.push_back({});
                    c.branes.back().name = toks[1].text;
                } else {
                    sec = Section::task;
                    c.tasks.push_back({});
                    c.tasks.back().id = toks[1].text;
                }
            } else {
                throw perr("unknown section '" + body + "'", line, indent);
            }
            continue;
        }
        std::size_t eq = body.find('=');
        if (eq == std::string::npos) throw perr("expected 'key = value'", line, indent);
        std::string key = trim(body.substr(0, eq));
        if (!is_name(key)) throw perr("invalid key '" + key + "'", line, indent);
        std::size_t vstart = body.find_first_not_of(" \t", eq + 1);
        if (vstart == std::string::npos) throw perr("missing value for '" + key + "'", line, indent + static_cast<int>(eq) + 1);
        Value v{body.substr(vstart), line, indent + static_cast<int>(vstart)};
        if (sec == Section::none) throw perr("key outside of any section", line, indent);
        if (!keys.insert(key).second) throw perr("duplicate key '" + key + "'", line, indent);
        auto unknown = [&]() { return perr("unknown key '" + key + "'", line, indent); };

        switch (sec) {
        case Section::numeric: {
            NumericConfig& nc = c.numeric;
            if (key == "tol") {
                double t = real_scalar(v);
                if (!(t > 0)) throw ValidationError("line " + std::to_string(line) + ": tol must be positive");
                nc.tol = t;
            } else if (key == "max_radius") {
                long r = integer_scalar(v);
                if (r < 1 || r > 1 << 20) throw ValidationError("line " + std::to_string(line) + ": max_radius out of range");
                nc.max_radius = static_cast<int>(r);
            } else if (key == "precision") {
                try {
                    nc.precision = parse_precision(word(v));
                } catch (const ValidationError& e) {
                    throw perr(e.what(), line, v.column);
                }
            } else if (key == "workers" || key == "jobs") {
                long w = integer_scalar(v);
                if (w < 1 || w > 256) throw ValidationError("line " + std::to_string(line) + ": " + key + " out of range");
                (key == "workers" ? nc.workers : nc.jobs) = static_cast<unsigned>(w);
            } else {
                throw unknown();
            }
            break;
        }
        case Section::torus: {
            TorusConfig& t = c.torus;
            if (key == "n") {
                long n = integer_scalar(v);
                if (n < 1 || n > 16) throw ValidationError("line " + std::to_string(line) + ": n out of range");
                t.n = static_cast<int>(n);
            } else if (key == "tau") {
                t.tau = complex_matrix(v);
            } else if (key == "omega") {
                t.omega = rat_matrix(v);
            } else if (key == "b") {
                t.b_field = rat_matrix(v);
            } else {
                throw unknown();
            }
            break;
        }
        case Section::brane: {
            BraneConfig& b = c.branes.back();
            if (key == "kind") {
                b.kind = parse_kind(v);
                have_type = true;
            } else if (key == "D") {
                b.d = int_matrix(v);
            } else if (key == "r") {
                b.r = rat_vector(v);
            } else if (key == "phi") {
                b.phi = rat_vector(v);
            } else if (key == "support") {
                b.support = int_matrix(v);
            } else if (key == "N") {
                b.n_quad = rat_matrix(v);
            } else if (key == "offset") {
                b.offset = rat_vector(v);
            } else if (key == "xi") {
                b.xi = bit_vector(v);
            } else {
                throw unknown();
            }
            break;
        }
        case Section::task: {
            TaskConfig& t = c.tasks.back();
            if (key == "type") {
                t.type = parse_task_type(v);
                have_type = true;
            } else if (key == "brane") {
                t.brane = word(v);
            } else if (key == "D") {
                t.d = int_matrix(v);
            } else if (key == "k") {
                t.k = int_vector(v);
            } else if (key == "xi") {
                t.xi = bit_vector(v);
            } else if (key == "tau") {
                t.tau = complex_scalar(v);
            } else if (key == "z") {
                t.z = complex_vector(v);
            } else if (key == "u") {
                t.u = complex_vector(v);
            } else if (key == "v") {
                t.v = complex_vector(v);
            } else if (key == "r") {
                t.r = rat_vector(v);
            } else if (key == "phi") {
                t.phi = rat_vector(v);
            } else if (key == "theta_hat") {
                t.theta_hat = rat_vector(v);
            } else if (key == "kappa") {
                t.kappa = rat_vector(v);
            } else if (key == "z_grid") {
                t.z_grid = complex_matrix(v);
            } else if (key == "ks") {
                t.ks = int_matrix(v);
            } else if (key == "predict_c") {
                t.predict_c = int_vector(v);
            } else if (key == "expect") {
                t.expect = small_int_vector(v);
            } else {
                throw unknown();
            }
            break;
        }
        case Section::none:
            break;
        }
    }
    close_section(line + 1);
    if (!seen_torus) throw ValidationError("missing [torus] section");
    validate(c);
    return c;
}

std::string to_config_text(const JobConfig& c) {
    std::ostringstream os;
    const NumericConfig& nc = c.numeric;
    if (nc.tol || nc.max_radius || nc.precision || nc.workers || nc.jobs) {
        os << "[numeric]\n";
        if (nc.tol) os << "tol = " << num(*nc.tol) << "\n";
        if (nc.max_radius) os << "max_radius = " << *nc.max_radius << "\n";
        if (nc.precision) os << "precision = " << to_string(*nc.precision) << "\n";
        if (nc.workers) os << "workers = " << *nc.workers << "\n";
        if (nc.jobs) os << "jobs = " << *nc.jobs << "\n";
        os << "\n";
    }
    os << "[torus]\nn = " << c.torus.n << "\n";
    if (c.torus.tau) os << "tau = " << to_string(*c.torus.tau) << "\n";
    if (c.torus.omega) os << "omega = " << to_string(*c.torus.omega) << "\n";
    if (c.torus.b_field) os << "b = " << to_string(*c.torus.b_field) << "\n";
    for (const BraneConfig& b : c.branes) {
        os << "\n[brane " << b.name << "]\nkind = " << to_string(b.kind) << "\n";
        if (b.d) os << "D = " << to_string(*b.d) << "\n";
        if (b.r) os << "r = " << to_string(*b.r) << "\n";
        if (b.support) os << "support = " << to_string(*b.support) << "\n";
        if (b.n_quad) os << "N = " << to_string(*b.n_quad) << "\n";
        if (b.offset) os << "offset = " << to_string(*b.offset) << "\n";
        if (b.phi) os << "phi = " << to_string(*b.phi) << "\n";
        if (b.xi) os << "xi = " << bits_text(*b.xi) << "\n";
    }
    for (const TaskConfig& t : c.tasks) {
        os << "\n[task " << t.id << "]\ntype = " << to_string(t.type) << "\n";
        if (t.brane) os << "brane = " << *t.brane << "\n";
        if (t.d) os << "D = " << to_string(*t.d) << "\n";
        if (t.k) os << "k = " << to_string(*t.k) << "\n";
        if (t.xi) os << "xi = " << bits_text(*t.xi) << "\n";
        if (t.tau) os << "tau = " << complex_scalar_text(*t.tau) << "\n";
        if (t.z) os << "z = " << to_string(*t.z) << "\n";
        if (t.u) os << "u = " << to_string(*t.u) << "\n";
        if (t.v) os << "v = " << to_string(*t.v) << "\n";
        if (t.r) os << "r = " << to_string(*t.r) << "\n";
        if (t.phi) os << "phi = " << to_string(*t.phi) << "\n";
        if (t.theta_hat) os << "theta_hat = " << to_string(*t.theta_hat) << "\n";
        if (t.kappa) os << "kappa = " << to_string(*t.kappa) << "\n";
        if (t.z_grid) os << "z_grid = " << to_string(*t.z_grid) << "\n";
        if (t.ks) os << "ks = " << to_string(*t.ks) << "\n";
        if (t.predict_c) os << "predict_c = " << to_string(*t.predict_c) << "\n";
        if (t.expect) os << "expect = " << bits_text(*t.expect) << "\n";
    }
    return os.str();
}

NumericPolicy resolve_policy(const NumericConfig& config, const NumericConfig& overrides) {
    NumericPolicy p;
    auto pick = [](const auto& over, const auto& conf) { return over ? over : conf; };
    if (auto v = pick(overrides.precision, config.precision)) p.precision = *v;
    p.tol = default_tol(p.precision);
    if (auto v = pick(overrides.tol, config.tol)) p.tol = *v;
    if (auto v = pick(overrides.max_radius, config.max_radius)) p.max_radius = *v;
    if (auto v = pick(overrides.workers, config.workers)) p.workers = *v;
    return p;
}

TorusWithBField build_torus(const TorusConfig& t) {
    if (t.tau) return TorusWithBField::from_tau(*t.tau);
    const std::size_t m = 2 * static_cast<std::size_t>(t.n);
    return TorusWithBField::from_forms(*t.omega, t.b_field ? *t.b_field : RatMatrix(m, m));
}

Brane build_brane(const BraneConfig& b, const TorusWithBField& t) {
    std::vector<int> bits = b.xi_or_default(t.n());
    switch (b.kind) {
    case BraneKind::graph:
        return graph_brane(t, *b.d, bits);
    case BraneKind::fiber:
        return fiber_brane(t, *b.r, *b.phi, bits);
    default: {
        const std::size_t dim = b.support->cols(), big = b.support->rows();
        return Brane::make(*b.support, b.offset ? *b.offset : RatVector(big, Rational(0)),
                           b.n_quad ? *b.n_quad : RatMatrix(dim, dim), b.phi ? *b.phi : RatVector(dim, Rational(0)),
                           bits, BraneKind::coisotropic);
    }
    }
}

}  // namespace toridouble
