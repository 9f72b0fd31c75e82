#include "persistlab/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "persistlab/errors.hpp"

namespace persistlab::io {

using nlohmann::json;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

// Runs `body`, turning JSON type and key errors into ParseError.
template <class F>
auto guarded(const char* what, F&& body) {
    try {
        return body();
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

std::vector<double> numbers(const json& j, const char* field) {
    if (!j.is_array()) throw ParseError(std::string("field '") + field + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : j) {
        if (!x.is_number()) throw ParseError(std::string("field '") + field + "' must hold numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

std::vector<std::size_t> counts(const json& j, const char* field) {
    if (!j.is_array()) throw ParseError(std::string("field '") + field + "' must be an array of integers");
    std::vector<std::size_t> out;
    for (const auto& x : j) {
        if (!x.is_number_unsigned() && !(x.is_number_integer() && x.get<long long>() >= 0))
            throw ParseError(std::string("field '") + field + "' must hold nonnegative integers");
        out.push_back(x.get<std::size_t>());
    }
    return out;
}

json point_json(const Point& p) {
    json a = json::array();
    for (double x : p) a.push_back(x);
    return a;
}

json bar_json(const Bar& b) {
    json j;
    j["birth"] = point_json(b.birth);
    j["death"] = b.death ? point_json(*b.death) : json("inf");
    j["sign"] = b.sign;
    return j;
}

Bar parse_bar(const json& j, std::size_t n) {
    if (!j.is_object()) throw ParseError("each bar must be an object");
    auto birth = numbers(j.at("birth"), "birth");
    if (birth.size() != n) throw ParseError("bar birth has the wrong number of coordinates");
    int sign = 1;
    if (j.contains("sign")) {
        if (!j.at("sign").is_number_integer()) throw ParseError("bar sign must be 1 or -1");
        sign = j.at("sign").get<int>();
        if (sign != 1 && sign != -1) throw ParseError("bar sign must be 1 or -1");
    }
    for (double x : birth)
        if (!std::isfinite(x)) throw Error("bar birth must be finite");
    const auto& d = j.at("death");
    if (d.is_string()) {
        if (d.get<std::string>() != "inf") throw ParseError("bar death must be a point or \"inf\"");
        return Bar::upset(std::move(birth), sign);
    }
    auto death = numbers(d, "death");
    if (death.size() != n) throw ParseError("bar death has the wrong number of coordinates");
    bool equal = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(death[i])) throw Error("bar death coordinates must be finite (use \"inf\")");
        if (death[i] < birth[i]) throw Error("bar death lies below its birth");
        equal = equal && death[i] == birth[i];
    }
    if (equal) throw Error("bar [t, t) is empty");
    return Bar::finite(std::move(birth), std::move(death), sign);
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, std::size_t line) {
    const auto t = trim(field);
    double x = 0.0;
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    if (!t.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, x);
    if (t.empty() || ec != std::errc() || ptr != last)
        throw ParseError("line " + std::to_string(line) + ": '" + t + "' is not a number");
    return x;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// ---------------------------------------------------------------- points

PointCloud parse_points_csv(const std::string& text) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw ParseError("point file is empty");
    std::istringstream in(text);
    std::string line;
    std::vector<double> coords;
    std::size_t dim = 0;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            row.push_back(parse_number(line.substr(start, comma - start), number));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (dim == 0) dim = row.size();
        if (row.size() != dim)
            throw ParseError("line " + std::to_string(number) + ": expected " + std::to_string(dim) +
                             " coordinates, found " + std::to_string(row.size()));
        coords.insert(coords.end(), row.begin(), row.end());
    }
    if (coords.empty()) throw Error("point cloud is empty");
    return PointCloud(dim, std::move(coords));
}

std::string points_csv(const PointCloud& cloud) {
    std::string out;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        for (std::size_t c = 0; c < p.size(); ++c) out += (c ? "," : "") + format_double(p[c]);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------- filtrations

MonotoneFiltration parse_filtration_json(const std::string& text) {
    const auto j = parse_json(text, "filtration");
    return guarded("filtration", [&] {
        if (!j.is_object()) throw ParseError("filtration JSON must be an object");
        const auto n = j.at("n").get<std::size_t>();
        if (n == 0) throw ParseError("filtration needs n >= 1");
        std::vector<Simplex> simplices;
        std::vector<std::vector<double>> values;
        for (const auto& s : j.at("simplices")) {
            simplices.push_back(counts(s.at("verts"), "verts"));
            auto v = numbers(s.at("value"), "value");
            if (v.size() != n) throw ParseError("simplex value must have n components");
            for (double x : v)
                if (!std::isfinite(x)) throw Error("filtration values must be finite");
            values.push_back(std::move(v));
        }
        auto complex = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_simplices(simplices));
        std::vector<double> flat(complex->size() * n);
        for (std::size_t s = 0; s < simplices.size(); ++s) {
            auto sorted = simplices[s];
            std::sort(sorted.begin(), sorted.end());
            const auto id = *complex->index_of(sorted);
            std::copy(values[s].begin(), values[s].end(), flat.begin() + static_cast<std::ptrdiff_t>(id * n));
        }
        return validate_monotone(std::move(complex), n, std::move(flat));
    });
}

std::string filtration_json(const MonotoneFiltration& filtration) {
    json j;
    j["n"] = filtration.parameters();
    j["simplices"] = json::array();
    for (std::size_t id = 0; id < filtration.size(); ++id) {
        json s;
        s["verts"] = filtration.complex().simplex(id);
        json v = json::array();
        for (double x : filtration.values(id)) v.push_back(x);
        s["value"] = v;
        j["simplices"].push_back(s);
    }
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- barcodes

BarcodeFile parse_barcode_json(const std::string& text) {
    const auto j = parse_json(text, "barcode");
    return guarded("barcode", [&] {
        if (!j.is_object()) throw ParseError("barcode JSON must be an object");
        BarcodeFile out;
        out.bars.n = j.at("n").get<std::size_t>();
        if (out.bars.n == 0) throw ParseError("barcode needs n >= 1");
        out.is_signed = j.value("signed", false);
        for (const auto& b : j.at("bars")) {
            auto bar = parse_bar(b, out.bars.n);
            if (bar.sign < 0) out.is_signed = true;
            (bar.sign > 0 ? out.bars.positive : out.bars.negative).push_back(std::move(bar));
        }
        return out;
    });
}

std::string barcode_json(const Barcode& barcode) {
    json j;
    j["n"] = barcode.n;
    j["bars"] = json::array();
    for (const auto& b : barcode.bars) j["bars"].push_back(bar_json(b));
    return j.dump(2) + "\n";
}

std::string barcode_json(const SignedBarcode& barcode) {
    json j;
    j["n"] = barcode.n;
    j["signed"] = true;
    j["bars"] = json::array();
    for (const auto* side : {&barcode.positive, &barcode.negative})
        for (const auto& b : *side) j["bars"].push_back(bar_json(b));
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- grid modules

GridModule parse_grid_module_json(const std::string& text) {
    const auto j = parse_json(text, "grid module");
    return guarded("grid module", [&] {
        if (!j.is_object()) throw ParseError("grid module JSON must be an object");
        const auto sizes = counts(j.at("sizes"), "sizes");
        if (sizes.empty()) throw ParseError("grid needs at least one axis");
        for (auto s : sizes)
            if (s == 0) throw ParseError("grid sizes must be positive");
        std::vector<std::vector<double>> coords;
        if (j.contains("coords") && !j.at("coords").is_null()) {
            for (const auto& axis : j.at("coords")) coords.push_back(numbers(axis, "coords"));
            if (coords.size() != sizes.size()) throw ParseError("one coordinate list per axis");
            for (std::size_t a = 0; a < sizes.size(); ++a) {
                if (coords[a].size() != sizes[a]) throw ParseError("coordinate list length differs from grid size");
                for (std::size_t i = 1; i < coords[a].size(); ++i)
                    if (!(coords[a][i - 1] < coords[a][i])) throw ParseError("grid coordinates must increase");
            }
        }
        Grid grid(sizes, coords);
        const auto dims = counts(j.at("dims"), "dims");
        if (dims.size() != grid.cell_count())
            throw ParseError("dims must list " + std::to_string(grid.cell_count()) + " cells (axis 0 fastest)");
        GridModule module(grid, dims);
        std::set<std::pair<std::size_t, std::size_t>> seen;
        if (j.contains("arrows"))
            for (const auto& a : j.at("arrows")) {
                const auto from = counts(a.at("from"), "from");
                const auto axis = a.at("axis").get<std::size_t>();
                if (from.size() != sizes.size()) throw ParseError("arrow 'from' has the wrong number of coordinates");
                for (std::size_t c = 0; c < from.size(); ++c)
                    if (from[c] >= sizes[c]) throw ParseError("arrow 'from' lies outside the grid");
                if (axis >= sizes.size()) throw ParseError("arrow axis out of range");
                const auto cell = grid.index(from);
                const auto target = grid.step(cell, axis);
                if (!target) throw ParseError("arrow leaves the grid");
                if (!seen.insert({cell, axis}).second) throw ParseError("arrow listed twice");
                std::vector<std::vector<int>> rows;
                for (const auto& r : a.at("matrix")) {
                    std::vector<int> row;
                    for (const auto& x : r) {
                        const auto v = x.get<int>();
                        if (v != 0 && v != 1) throw ParseError("matrix entries must be 0 or 1");
                        row.push_back(v);
                    }
                    rows.push_back(std::move(row));
                }
                if (rows.size() != dims[*target])
                    throw ParseError("arrow matrix must have dim(target) = " + std::to_string(dims[*target]) + " rows");
                for (const auto& r : rows)
                    if (r.size() != dims[cell])
                        throw ParseError("arrow matrix must have dim(source) = " + std::to_string(dims[cell]) +
                                         " columns");
                module.set_arrow(cell, axis, F2Matrix::from_rows(rows, dims[cell]));
            }
        return module;
    });
}

std::string grid_module_json(const GridModule& module) {
    const auto& grid = module.grid();
    json j;
    j["sizes"] = grid.sizes();
    if (grid.has_coords()) j["coords"] = grid.coords();
    j["dims"] = module.dims();
    j["arrows"] = json::array();
    for (std::size_t t = 0; t < grid.cell_count(); ++t)
        for (std::size_t a = 0; a < grid.parameters(); ++a) {
            if (!grid.step(t, a)) continue;
            const auto& m = module.arrow(t, a);
            if (m.empty()) continue;
            json rows = json::array();
            for (std::size_t r = 0; r < m.rows(); ++r) {
                json row = json::array();
                for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.get(r, c) ? 1 : 0);
                rows.push_back(row);
            }
            j["arrows"].push_back({{"from", grid.cell(t)}, {"axis", a}, {"matrix", rows}});
        }
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- lifted vectors and tables

std::string lifted_json(const LiftedBarcode& lifted) {
    json j;
    j["n"] = lifted.n;
    j["k"] = lifted.k;
    if (lifted.is_signed) j["signed"] = true;
    j["coords"] = lifted.coords;
    return j.dump() + "\n";
}

LiftedBarcode parse_lifted_json(const std::string& text) {
    const auto j = parse_json(text, "lifted barcode");
    return guarded("lifted barcode", [&] {
        LiftedBarcode out;
        out.n = j.at("n").get<std::size_t>();
        out.k = j.at("k").get<std::size_t>();
        out.is_signed = j.value("signed", false);
        out.coords = numbers(j.at("coords"), "coords");
        return out;
    });
}

std::string jacobian_csv(const Jacobian& jacobian) {
    std::string out;
    for (std::size_t r = 0; r < jacobian.rows; ++r) {
        for (std::size_t c = 0; c < jacobian.cols; ++c) out += (c ? "," : "") + format_double(jacobian(r, c));
        out += '\n';
    }
    return out;
}

std::string trace_csv(const std::vector<TracePoint>& trace) {
    std::string out = "step,F,grad_norm,sup_norm\n";
    for (const auto& t : trace)
        out += std::to_string(t.step) + "," + format_double(t.value) + "," + format_double(t.grad_norm) + "," +
               format_double(t.sup_norm) + "\n";
    return out;
}

ExperimentConfig parse_config_json(const std::string& text) {
    const auto j = parse_json(text, "config");
    return guarded("config", [&] {
        if (!j.is_object()) throw ParseError("config JSON must be an object");
        static const std::set<std::string> known{"seed",   "steps", "alpha0", "gamma",  "sigma",
                                                 "lambda", "r",     "bound",  "burn_in"};
        for (const auto& [key, value] : j.items())
            if (!known.count(key)) throw ParseError("unknown config key '" + key + "'");
        ExperimentConfig c;
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("steps")) c.steps = j.at("steps").get<std::size_t>();
        if (j.contains("alpha0") && !j.at("alpha0").is_null()) c.alpha0 = j.at("alpha0").get<double>();
        if (j.contains("gamma")) c.gamma = j.at("gamma").get<double>();
        if (j.contains("sigma")) c.sigma = j.at("sigma").get<double>();
        if (j.contains("lambda")) c.lambda = j.at("lambda").get<double>();
        if (j.contains("r")) c.r = j.at("r").get<std::size_t>();
        if (j.contains("bound")) c.bound = j.at("bound").get<double>();
        if (j.contains("burn_in")) c.burn_in = j.at("burn_in").get<std::size_t>();
        return c;
    });
}

// ---------------------------------------------------------------- SVG

namespace {

constexpr const char* positive_colour = "#1f5fbf";
constexpr const char* negative_colour = "#c8312b";

class Canvas {
public:
    Canvas(double lo, double hi) : lo_(lo), hi_(hi > lo ? hi : lo + 1.0) {}

    double x(double v) const { return margin + (v - lo_) / (hi_ - lo_) * plot; }
    double y(double v) const { return margin + plot - (v - lo_) / (hi_ - lo_) * plot; }
    double top() const { return margin * 0.5; }

    static constexpr double margin = 40.0;
    static constexpr double plot = 400.0;

private:
    double lo_;
    double hi_;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::pair<double, double> extent(const std::vector<const std::vector<Bar>*>& sides) {
    double lo = inf;
    double hi = -inf;
    for (const auto* side : sides)
        for (const auto& b : *side) {
            for (double v : b.birth) lo = std::min(lo, v), hi = std::max(hi, v);
            if (b.death)
                for (double v : *b.death) lo = std::min(lo, v), hi = std::max(hi, v);
        }
    if (lo > hi) return {0.0, 1.0};
    const double pad = 0.05 * std::max(hi - lo, 1e-9);
    return {lo - pad, hi + pad};
}

std::string svg(const std::vector<const std::vector<Bar>*>& sides, std::size_t n, const std::string& title) {
    const auto [lo, hi] = extent(sides);
    const Canvas c(lo, hi);
    const double size = 2 * Canvas::margin + Canvas::plot;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    if (!title.empty()) {
        std::string escaped;
        for (char ch : title) {
            if (ch == '<') escaped += "&lt;";
            else if (ch == '>') escaped += "&gt;";
            else if (ch == '&') escaped += "&amp;";
            else escaped += ch;
        }
        out << "  <title>" << escaped << "</title>\n";
    }
    out << "  <rect class=\"frame\" x=\"" << Canvas::margin << "\" y=\"" << Canvas::margin << "\" width=\""
        << Canvas::plot << "\" height=\"" << Canvas::plot << "\" fill=\"none\" stroke=\"#999\"/>\n";
    out << "  <line class=\"diagonal\" x1=\"" << num(c.x(lo)) << "\" y1=\"" << num(c.y(lo)) << "\" x2=\""
        << num(c.x(hi)) << "\" y2=\"" << num(c.y(hi)) << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
    if (n == 1)
        out << "  <line class=\"infinity\" x1=\"" << num(c.x(lo)) << "\" y1=\"" << num(c.top()) << "\" x2=\""
            << num(c.x(hi)) << "\" y2=\"" << num(c.top()) << "\" stroke=\"#ddd\"/>\n";

    for (const auto* side : sides)
        for (const auto& b : *side) {
            const char* colour = b.sign > 0 ? positive_colour : negative_colour;
            if (n == 1) {
                const double px = c.x(b.birth[0]);
                const double py = b.death ? c.y((*b.death)[0]) : c.top();
                out << "  <circle class=\"bar\" cx=\"" << num(px) << "\" cy=\"" << num(py) << "\" r=\"4\" fill=\""
                    << colour << "\" fill-opacity=\"0.7\"/>\n";
                continue;
            }
            // first two coordinates; an upset becomes a ray parallel to the diagonal
            const double bx = b.birth[0];
            const double by = b.birth.size() > 1 ? b.birth[1] : b.birth[0];
            double ex = 0.0;
            double ey = 0.0;
            if (b.death) {
                ex = (*b.death)[0];
                ey = b.death->size() > 1 ? (*b.death)[1] : ex;
            } else {
                const double reach = hi - std::max(bx, by);
                ex = bx + std::max(reach, 0.0);
                ey = by + std::max(reach, 0.0);
            }
            out << "  <line class=\"bar\" x1=\"" << num(c.x(bx)) << "\" y1=\"" << num(c.y(by)) << "\" x2=\""
                << num(c.x(ex)) << "\" y2=\"" << num(c.y(ey)) << "\" stroke=\"" << colour
                << "\" stroke-width=\"2\"" << (b.death ? "" : " stroke-dasharray=\"6 3\"") << "/>\n";
        }
    out << "</svg>\n";
    return out.str();
}

}  // namespace

std::string barcode_svg(const Barcode& barcode, const std::string& title) {
    return svg({&barcode.bars}, barcode.n, title);
}

std::string barcode_svg(const SignedBarcode& barcode, const std::string& title) {
    return svg({&barcode.positive, &barcode.negative}, barcode.n, title);
}

}  // namespace persistlab::io
