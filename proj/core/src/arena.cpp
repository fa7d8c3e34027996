#include "swarmlab/arena.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "swarmlab/errors.hpp"
#include "swarmlab/text.hpp"

namespace swarmlab {

bool FloorPatch::contains(const Vec2& p) const {
    if (shape == Shape::Circle) return (p - center).norm_sq() <= radius * radius;
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
}

bool StartRegion::contains(const Vec2& p) const {
    switch (kind) {
        case Kind::All: return true;
        case Kind::Rect: return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
        case Kind::Circle: return (p - center).norm_sq() <= radius * radius;
    }
    return false;
}

GroundColor ArenaSpec::floor_color_at(const Vec2& p) const {
    GroundColor c = default_floor;
    for (const FloorPatch& patch : patches)
        if (patch.contains(p)) c = patch.color;
    return c;
}

namespace {

// A grid requires an axis-aligned rectangular boundary; returns lo/hi if the
// polygon is one, else nullopt.
std::optional<std::pair<Vec2, Vec2>> axis_rect(const ConvexPolygon& poly) {
    if (poly.vertices.size() != 4) return std::nullopt;
    auto [lo, hi] = poly.bounding_box();
    for (const Vec2& v : poly.vertices) {
        const bool on_x = v.x == lo.x || v.x == hi.x;
        const bool on_y = v.y == lo.y || v.y == hi.y;
        if (!on_x || !on_y) return std::nullopt;
    }
    return std::make_pair(lo, hi);
}

}  // namespace

int ArenaSpec::grid_cell_at(const Vec2& p) const {
    if (!grid) return -1;
    const auto rect = axis_rect(bounds);
    if (!rect) return -1;
    const auto& [lo, hi] = *rect;
    if (p.x < lo.x || p.x > hi.x || p.y < lo.y || p.y > hi.y) return -1;
    const double w = hi.x - lo.x;
    const double h = hi.y - lo.y;
    int col = static_cast<int>((p.x - lo.x) / w * grid->cols);
    int row = static_cast<int>((p.y - lo.y) / h * grid->rows);
    if (col >= grid->cols) col = grid->cols - 1;
    if (row >= grid->rows) row = grid->rows - 1;
    return row * grid->cols + col;
}

void validate(const ArenaSpec& arena) {
    if (arena.bounds.vertices.size() < 3)
        throw std::invalid_argument("arena bounds need at least 3 vertices");
    if (arena.bounds.area() <= 0.0)
        throw std::invalid_argument("arena bounds must be CCW with positive area");
    for (const FloorPatch& p : arena.patches) {
        if (p.shape == FloorPatch::Shape::Circle && !(p.radius > 0.0))
            throw std::invalid_argument("circle patch radius must be > 0");
        if (p.shape == FloorPatch::Shape::Rect && !(p.lo.x < p.hi.x && p.lo.y < p.hi.y))
            throw std::invalid_argument("rect patch corners out of order");
    }
    for (const Light& l : arena.lights)
        if (!(l.intensity > 0.0)) throw std::invalid_argument("light intensity must be > 0");
    if (arena.grid) {
        if (arena.grid->rows < 1 || arena.grid->cols < 1)
            throw std::invalid_argument("grid needs at least one row and column");
        if (!axis_rect(arena.bounds))
            throw std::invalid_argument("grid requires an axis-aligned rectangular arena");
    }
    if (arena.start.kind == StartRegion::Kind::Rect &&
        !(arena.start.lo.x < arena.start.hi.x && arena.start.lo.y < arena.start.hi.y))
        throw std::invalid_argument("start rect corners out of order");
    if (arena.start.kind == StartRegion::Kind::Circle && !(arena.start.radius > 0.0))
        throw std::invalid_argument("start circle radius must be > 0");
}

ArenaSpec scale_arena(const ArenaSpec& arena, double factor) {
    if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be > 0");
    ArenaSpec out = arena;
    for (Vec2& v : out.bounds.vertices) v = v * factor;
    for (FloorPatch& p : out.patches) {
        p.center = p.center * factor;
        p.radius *= factor;
        p.lo = p.lo * factor;
        p.hi = p.hi * factor;
    }
    for (Light& l : out.lights) l.position = l.position * factor;
    out.start.lo = out.start.lo * factor;
    out.start.hi = out.start.hi * factor;
    out.start.center = out.start.center * factor;
    out.start.radius *= factor;
    return out;
}

std::string serialize_arena(const ArenaSpec& arena) {
    std::string out;
    out += "bounds =";
    for (const Vec2& v : arena.bounds.vertices)
        out += " " + format_double(v.x) + " " + format_double(v.y);
    out += "\n";
    out += "default_floor = " + std::string(to_string(arena.default_floor)) + "\n";
    for (const FloorPatch& p : arena.patches) {
        if (p.shape == FloorPatch::Shape::Circle) {
            out += "patch = circle " + format_double(p.center.x) + " " + format_double(p.center.y) +
                   " " + format_double(p.radius) + " " + to_string(p.color) + "\n";
        } else {
            out += "patch = rect " + format_double(p.lo.x) + " " + format_double(p.lo.y) + " " +
                   format_double(p.hi.x) + " " + format_double(p.hi.y) + " " + to_string(p.color) +
                   "\n";
        }
    }
    for (const Light& l : arena.lights)
        out += "light = " + format_double(l.position.x) + " " + format_double(l.position.y) + " " +
               format_double(l.intensity) + "\n";
    if (arena.grid)
        out += "grid = " + format_int(arena.grid->rows) + " " + format_int(arena.grid->cols) + "\n";
    switch (arena.start.kind) {
        case StartRegion::Kind::All:
            out += "start = all\n";
            break;
        case StartRegion::Kind::Rect:
            out += "start = rect " + format_double(arena.start.lo.x) + " " +
                   format_double(arena.start.lo.y) + " " + format_double(arena.start.hi.x) + " " +
                   format_double(arena.start.hi.y) + "\n";
            break;
        case StartRegion::Kind::Circle:
            out += "start = circle " + format_double(arena.start.center.x) + " " +
                   format_double(arena.start.center.y) + " " + format_double(arena.start.radius) +
                   "\n";
            break;
    }
    return out;
}

namespace {

double want_double(const std::vector<std::string>& toks, std::size_t i, std::size_t lineno) {
    if (i >= toks.size()) throw ParseError(lineno, "missing number");
    double v = 0.0;
    if (!try_parse_double(toks[i], v)) throw ParseError(lineno, "bad number: " + toks[i]);
    return v;
}

}  // namespace

ArenaSpec parse_arena(const std::string& text) {
    ArenaSpec arena;
    bool saw_bounds = false;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        std::string_view sv = trim(line);
        if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = trim(sv.substr(0, hash));
        if (sv.empty()) { ++lineno; continue; }
        const auto eq = sv.find('=');
        if (eq == std::string_view::npos) throw ParseError(lineno, "expected key = value");
        const std::string key{trim(sv.substr(0, eq))};
        const std::string value{trim(sv.substr(eq + 1))};
        const std::vector<std::string> toks = tokenize(value);
        if (key == "bounds") {
            if (toks.size() < 6 || toks.size() % 2 != 0)
                throw ParseError(lineno, "bounds needs at least 3 x y pairs");
            arena.bounds.vertices.clear();
            for (std::size_t i = 0; i < toks.size(); i += 2)
                arena.bounds.vertices.push_back(
                    {want_double(toks, i, lineno), want_double(toks, i + 1, lineno)});
            saw_bounds = true;
        } else if (key == "default_floor") {
            try {
                arena.default_floor = ground_color_from_string(value);
            } catch (const std::invalid_argument& e) {
                throw ParseError(lineno, e.what());
            }
        } else if (key == "patch") {
            if (toks.empty()) throw ParseError(lineno, "empty patch");
            FloorPatch p;
            if (toks[0] == "circle") {
                if (toks.size() != 5) throw ParseError(lineno, "circle patch wants cx cy r color");
                p.shape = FloorPatch::Shape::Circle;
                p.center = {want_double(toks, 1, lineno), want_double(toks, 2, lineno)};
                p.radius = want_double(toks, 3, lineno);
                try {
                    p.color = ground_color_from_string(toks[4]);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(lineno, e.what());
                }
            } else if (toks[0] == "rect") {
                if (toks.size() != 6)
                    throw ParseError(lineno, "rect patch wants x0 y0 x1 y1 color");
                p.shape = FloorPatch::Shape::Rect;
                p.lo = {want_double(toks, 1, lineno), want_double(toks, 2, lineno)};
                p.hi = {want_double(toks, 3, lineno), want_double(toks, 4, lineno)};
                try {
                    p.color = ground_color_from_string(toks[5]);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(lineno, e.what());
                }
            } else {
                throw ParseError(lineno, "patch shape must be circle or rect");
            }
            arena.patches.push_back(p);
        } else if (key == "light") {
            if (toks.size() != 3) throw ParseError(lineno, "light wants x y intensity");
            Light l;
            l.position = {want_double(toks, 0, lineno), want_double(toks, 1, lineno)};
            l.intensity = want_double(toks, 2, lineno);
            arena.lights.push_back(l);
        } else if (key == "grid") {
            if (toks.size() != 2) throw ParseError(lineno, "grid wants rows cols");
            std::int64_t rows = 0, cols = 0;
            if (!try_parse_int(toks[0], rows) || !try_parse_int(toks[1], cols))
                throw ParseError(lineno, "grid wants integer rows cols");
            arena.grid = GridSpec{static_cast<int>(rows), static_cast<int>(cols)};
        } else if (key == "start") {
            if (toks.empty()) throw ParseError(lineno, "empty start region");
            if (toks[0] == "all") {
                if (toks.size() != 1) throw ParseError(lineno, "start all takes no arguments");
                arena.start.kind = StartRegion::Kind::All;
            } else if (toks[0] == "rect") {
                if (toks.size() != 5) throw ParseError(lineno, "start rect wants x0 y0 x1 y1");
                arena.start.kind = StartRegion::Kind::Rect;
                arena.start.lo = {want_double(toks, 1, lineno), want_double(toks, 2, lineno)};
                arena.start.hi = {want_double(toks, 3, lineno), want_double(toks, 4, lineno)};
            } else if (toks[0] == "circle") {
                if (toks.size() != 4) throw ParseError(lineno, "start circle wants cx cy r");
                arena.start.kind = StartRegion::Kind::Circle;
                arena.start.center = {want_double(toks, 1, lineno), want_double(toks, 2, lineno)};
                arena.start.radius = want_double(toks, 3, lineno);
            } else {
                throw ParseError(lineno, "start region must be all, rect, or circle");
            }
        } else {
            throw ParseError(lineno, "unknown key: " + key);
        }
        ++lineno;
    }
    if (!saw_bounds) throw ParseError(lineno, "arena is missing bounds");
    validate(arena);
    return arena;
}

ArenaSpec load_arena_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open arena file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_arena(buf.str());
}

void save_arena_file(const ArenaSpec& arena, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write arena file: " + path);
    out << serialize_arena(arena);
}

}  // namespace swarmlab
