#include "persistlab/grid_module.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "persistlab/errors.hpp"

namespace persistlab {

// ---------------------------------------------------------------- Grid

Grid::Grid(std::vector<std::size_t> sizes, std::vector<std::vector<double>> coords)
    : sizes_(std::move(sizes)), coords_(std::move(coords)) {
    if (sizes_.empty()) throw std::invalid_argument("Grid: need at least one axis");
    count_ = 1;
    for (auto s : sizes_) {
        if (s == 0) throw std::invalid_argument("Grid: every axis needs at least one level");
        count_ *= s;
    }
    if (!coords_.empty()) {
        if (coords_.size() != sizes_.size()) throw std::invalid_argument("Grid: one coordinate list per axis");
        for (std::size_t a = 0; a < sizes_.size(); ++a) {
            if (coords_[a].size() != sizes_[a])
                throw std::invalid_argument("Grid: axis " + std::to_string(a) + " has the wrong number of coordinates");
            for (std::size_t i = 1; i < coords_[a].size(); ++i)
                if (!(coords_[a][i - 1] < coords_[a][i]))
                    throw std::invalid_argument("Grid: coordinates must be strictly increasing");
        }
    }
}

std::size_t Grid::index(const Cell& cell) const {
    if (cell.size() != sizes_.size()) throw std::invalid_argument("Grid::index: wrong number of coordinates");
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (std::size_t a = 0; a < sizes_.size(); ++a) {
        if (cell[a] >= sizes_[a]) throw std::out_of_range("Grid::index: cell outside the grid");
        idx += cell[a] * stride;
        stride *= sizes_[a];
    }
    return idx;
}

Cell Grid::cell(std::size_t index) const {
    Cell c(sizes_.size());
    for (std::size_t a = 0; a < sizes_.size(); ++a) {
        c[a] = index % sizes_[a];
        index /= sizes_[a];
    }
    return c;
}

std::optional<std::size_t> Grid::step(std::size_t index, std::size_t axis) const {
    std::size_t stride = 1;
    for (std::size_t a = 0; a < axis; ++a) stride *= sizes_[a];
    if ((index / stride) % sizes_[axis] + 1 >= sizes_[axis]) return std::nullopt;
    return index + stride;
}

bool Grid::leq(std::size_t a, std::size_t b) const {
    for (auto s : sizes_) {
        if (a % s > b % s) return false;
        a /= s;
        b /= s;
    }
    return true;
}

Point Grid::position(std::size_t index) const {
    const auto c = cell(index);
    Point p(c.size());
    for (std::size_t a = 0; a < c.size(); ++a)
        p[a] = coords_.empty() ? static_cast<double>(c[a]) : coords_[a][c[a]];
    return p;
}

// ---------------------------------------------------------------- hooks

std::vector<HookInterval> enumerate_hooks(const Grid& grid) {
    std::vector<HookInterval> hooks;
    for (std::size_t p = 0; p < grid.cell_count(); ++p) {
        for (std::size_t q = 0; q < grid.cell_count(); ++q)
            if (q != p && grid.leq(p, q)) hooks.push_back({p, q});
        hooks.push_back({p, std::nullopt});
    }
    std::sort(hooks.begin(), hooks.end(), [&](const HookInterval& a, const HookInterval& b) {
        const auto pa = grid.cell(a.p);
        const auto pb = grid.cell(b.p);
        if (pa != pb) return pa < pb;
        if (a.free() != b.free()) return b.free();
        if (a.free()) return false;
        return grid.cell(*a.q) < grid.cell(*b.q);
    });
    return hooks;
}

std::string describe(const Grid& grid, const HookInterval& hook) {
    auto cell_text = [&](std::size_t idx) {
        const auto c = grid.cell(idx);
        std::string s = "(";
        for (std::size_t a = 0; a < c.size(); ++a) s += (a ? "," : "") + std::to_string(c[a]);
        return s + ")";
    };
    return "[" + cell_text(hook.p) + "," + (hook.q ? cell_text(*hook.q) : std::string("inf")) + ")";
}

// ---------------------------------------------------------------- GridModule

GridModule::GridModule(Grid grid, std::vector<std::size_t> dims) : grid_(std::move(grid)), dims_(std::move(dims)) {
    if (dims_.size() != grid_.cell_count()) throw std::invalid_argument("GridModule: one dimension per cell");
    const auto n = grid_.parameters();
    arrows_.resize(grid_.cell_count() * n);
    for (std::size_t t = 0; t < grid_.cell_count(); ++t)
        for (std::size_t a = 0; a < n; ++a)
            if (auto s = grid_.step(t, a)) arrows_[slot(t, a)] = F2Matrix(dims_[*s], dims_[t]);
}

GridModule GridModule::interval(const Grid& grid, const HookInterval& hook) {
    std::vector<std::size_t> dims(grid.cell_count(), 0);
    for (std::size_t t = 0; t < grid.cell_count(); ++t) dims[t] = hook.contains(grid, t) ? 1 : 0;
    GridModule m(grid, dims);
    for (std::size_t t = 0; t < grid.cell_count(); ++t)
        for (std::size_t a = 0; a < grid.parameters(); ++a)
            if (auto s = grid.step(t, a); s && dims[t] && dims[*s]) m.set_arrow(t, a, F2Matrix::identity(1));
    return m;
}

std::size_t GridModule::total_dimension() const noexcept {
    std::size_t total = 0;
    for (auto d : dims_) total += d;
    return total;
}

const F2Matrix& GridModule::arrow(std::size_t cell, std::size_t axis) const {
    if (!grid_.step(cell, axis)) throw std::out_of_range("GridModule::arrow: no arrow leaves the grid");
    return arrows_[slot(cell, axis)];
}

void GridModule::set_arrow(std::size_t cell, std::size_t axis, F2Matrix matrix) {
    const auto target = grid_.step(cell, axis);
    if (!target) throw std::out_of_range("GridModule::set_arrow: no arrow leaves the grid");
    if (matrix.rows() != dims_[*target] || matrix.cols() != dims_[cell])
        throw std::invalid_argument("GridModule::set_arrow: matrix shape does not match the dimensions");
    arrows_[slot(cell, axis)] = std::move(matrix);
}

F2Matrix GridModule::map_between(std::size_t from, std::size_t to) const {
    if (!grid_.leq(from, to)) throw std::invalid_argument("GridModule::map_between: cells are not comparable");
    const auto target = grid_.cell(to);
    F2Matrix m = F2Matrix::identity(dims_[from]);
    std::size_t cur = from;
    for (std::size_t a = 0; a < grid_.parameters(); ++a) {
        while (grid_.cell(cur)[a] < target[a]) {
            m = arrows_[slot(cur, a)] * m;
            cur = *grid_.step(cur, a);
        }
    }
    return m;
}

std::optional<GridModule::CommutativityViolation> GridModule::find_commutativity_violation() const {
    const auto n = grid_.parameters();
    for (std::size_t t = 0; t < grid_.cell_count(); ++t)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                const auto ta = grid_.step(t, a);
                const auto tb = grid_.step(t, b);
                if (!ta || !tb) continue;
                const auto lhs = arrow(*ta, b) * arrow(t, a);
                const auto rhs = arrow(*tb, a) * arrow(t, b);
                if (!(lhs == rhs)) return CommutativityViolation{t, a, b};
            }
    return std::nullopt;
}

void GridModule::validate() const {
    if (auto v = find_commutativity_violation()) {
        const auto c = grid_.cell(v->cell);
        std::string where = "(";
        for (std::size_t a = 0; a < c.size(); ++a) where += (a ? "," : "") + std::to_string(c[a]);
        throw Error("grid module does not commute: square at cell " + where + ") along axes " +
                    std::to_string(v->axis_a) + " and " + std::to_string(v->axis_b));
    }
}

GridModule GridModule::direct_sum(const GridModule& other) const {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("GridModule::direct_sum: grids differ");
    std::vector<std::size_t> dims(dims_.size());
    for (std::size_t t = 0; t < dims.size(); ++t) dims[t] = dims_[t] + other.dims_[t];
    GridModule out(grid_, dims);
    for (std::size_t t = 0; t < grid_.cell_count(); ++t)
        for (std::size_t a = 0; a < grid_.parameters(); ++a)
            if (grid_.step(t, a)) out.set_arrow(t, a, arrow(t, a).direct_sum(other.arrow(t, a)));
    return out;
}

// ---------------------------------------------------------------- morphisms

bool is_natural(const GridMorphism& f, const GridModule& source, const GridModule& target) {
    const auto& grid = source.grid();
    if (f.components.size() != grid.cell_count()) return false;
    for (std::size_t t = 0; t < grid.cell_count(); ++t)
        if (f.components[t].rows() != target.dim(t) || f.components[t].cols() != source.dim(t)) return false;
    for (std::size_t t = 0; t < grid.cell_count(); ++t)
        for (std::size_t a = 0; a < grid.parameters(); ++a)
            if (auto s = grid.step(t, a))
                if (!(f.components[*s] * source.arrow(t, a) == target.arrow(t, a) * f.components[t])) return false;
    return true;
}

KernelModule kernel(const GridMorphism& f, const GridModule& source) {
    const auto& grid = source.grid();
    std::vector<F2Matrix> bases(grid.cell_count());
    std::vector<std::size_t> dims(grid.cell_count());
    for (std::size_t t = 0; t < grid.cell_count(); ++t) {
        bases[t] = kernel_basis(f.components[t]);
        dims[t] = bases[t].cols();
    }
    GridModule k(grid, dims);
    std::vector<F2Span> spans;
    spans.reserve(grid.cell_count());
    for (std::size_t s = 0; s < grid.cell_count(); ++s) {
        spans.emplace_back(source.dim(s));
        for (std::size_t c = 0; c < bases[s].cols(); ++c) spans.back().insert(bases[s].column(c));
    }
    for (std::size_t t = 0; t < grid.cell_count(); ++t)
        for (std::size_t a = 0; a < grid.parameters(); ++a) {
            const auto s = grid.step(t, a);
            if (!s) continue;
            const auto image = source.arrow(t, a) * bases[t];
            F2Matrix m(dims[*s], dims[t]);
            for (std::size_t c = 0; c < image.cols(); ++c) {
                const auto coords = spans[*s].coordinates(image.column(c));
                if (!coords) throw std::logic_error("kernel: structure map leaves the kernel (f is not natural)");
                m.set_column(c, *coords);
            }
            k.set_arrow(t, a, std::move(m));
        }
    return {std::move(k), GridMorphism{std::move(bases)}};
}

// ---------------------------------------------------------------- homology

std::vector<std::vector<double>> grid_levels(const MonotoneFiltration& filtration) {
    const auto n = filtration.parameters();
    std::vector<std::vector<double>> levels(n);
    for (std::size_t id = 0; id < filtration.size(); ++id)
        for (std::size_t a = 0; a < n; ++a) levels[a].push_back(filtration.value(id, a));
    for (auto& l : levels) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
        if (l.empty()) l.push_back(0.0);
    }
    return levels;
}

namespace {

struct CellHomology {
    F2Span span{0};              // boundaries first, then cycle representatives
    std::size_t boundary_rank = 0;
    std::vector<F2Vector> representatives;

    F2Vector project(const F2Vector& cycle) const {
        const auto coords = span.coordinates(cycle);
        if (!coords) throw std::logic_error("grid_homology_module: chain is not a cycle of the target complex");
        F2Vector out(representatives.size());
        for (std::size_t i = 0; i < representatives.size(); ++i)
            if (coords->get(boundary_rank + i)) out.set(i);
        return out;
    }
};

}  // namespace

GridModule grid_homology_module(const MonotoneFiltration& filtration,
                                const std::vector<std::vector<double>>& levels, std::size_t degree) {
    const auto n = filtration.parameters();
    if (levels.size() != n) throw std::invalid_argument("grid_homology_module: one level list per parameter");
    std::vector<std::size_t> sizes(n);
    for (std::size_t a = 0; a < n; ++a) sizes[a] = levels[a].size();
    Grid grid(sizes, levels);

    const auto& complex = filtration.complex();
    const auto chains = complex.simplices_of_dimension(degree);
    const auto cofaces = complex.simplices_of_dimension(degree + 1);
    const auto faces = degree > 0 ? complex.simplices_of_dimension(degree - 1) : std::vector<std::size_t>{};

    std::vector<std::size_t> chain_pos(complex.size(), 0), face_pos(complex.size(), 0);
    for (std::size_t i = 0; i < chains.size(); ++i) chain_pos[chains[i]] = i;
    for (std::size_t i = 0; i < faces.size(); ++i) face_pos[faces[i]] = i;

    auto active = [&](std::size_t id, std::size_t cell) {
        const auto c = grid.cell(cell);
        for (std::size_t a = 0; a < n; ++a)
            if (filtration.value(id, a) > levels[a][c[a]]) return false;
        return true;
    };

    std::vector<CellHomology> homology(grid.cell_count());
    std::vector<std::size_t> dims(grid.cell_count());
    for (std::size_t t = 0; t < grid.cell_count(); ++t) {
        auto& h = homology[t];
        h.span = F2Span(chains.size());
        for (auto id : cofaces) {
            if (!active(id, t)) continue;
            F2Vector b(chains.size());
            for (auto f : complex.facets(id)) b.set(chain_pos[f]);
            h.span.insert(b);
        }
        h.boundary_rank = h.span.size();

        std::vector<std::size_t> live;
        for (auto id : chains)
            if (active(id, t)) live.push_back(id);
        std::vector<F2Vector> cycles;
        if (degree == 0) {
            for (auto id : live) cycles.push_back(F2Vector::unit(chains.size(), chain_pos[id]));
        } else {
            F2Matrix boundary(faces.size(), live.size());
            for (std::size_t j = 0; j < live.size(); ++j)
                for (auto f : complex.facets(live[j])) boundary.set(face_pos[f], j);
            const auto z = kernel_basis(boundary);
            for (std::size_t c = 0; c < z.cols(); ++c) {
                F2Vector cycle(chains.size());
                for (std::size_t j = 0; j < live.size(); ++j)
                    if (z.get(j, c)) cycle.set(chain_pos[live[j]]);
                cycles.push_back(std::move(cycle));
            }
        }
        for (auto& z : cycles)
            if (h.span.insert(z)) h.representatives.push_back(z);
        dims[t] = h.representatives.size();
    }

    GridModule module(grid, dims);
    for (std::size_t t = 0; t < grid.cell_count(); ++t)
        for (std::size_t a = 0; a < n; ++a) {
            const auto s = grid.step(t, a);
            if (!s) continue;
            F2Matrix m(dims[*s], dims[t]);
            for (std::size_t i = 0; i < homology[t].representatives.size(); ++i)
                m.set_column(i, homology[*s].project(homology[t].representatives[i]));
            module.set_arrow(t, a, std::move(m));
        }
    return module;
}

// ---------------------------------------------------------------- Hom spaces

F2Matrix hom_space(const HookInterval& hook, const GridModule& module) {
    if (hook.free()) return F2Matrix::identity(module.dim(hook.p));
    return kernel_basis(module.map_between(hook.p, *hook.q));
}

std::vector<F2Matrix> hom_spaces(const std::vector<HookInterval>& hooks, const GridModule& module, Execution exec) {
    std::vector<F2Matrix> out(hooks.size());
    const auto count = static_cast<long long>(hooks.size());
    if (exec == Execution::serial) {
        for (long long i = 0; i < count; ++i)
            out[static_cast<std::size_t>(i)] = hom_space(hooks[static_cast<std::size_t>(i)], module);
        return out;
    }
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = hom_space(hooks[static_cast<std::size_t>(i)], module);
    return out;
}

std::size_t hook_hom_dimension(const Grid& grid, const HookInterval& from, const HookInterval& to) {
    if (!to.contains(grid, from.p)) return 0;
    if (from.free()) return 1;
    return to.contains(grid, *from.q) ? 0 : 1;
}

}  // namespace persistlab
