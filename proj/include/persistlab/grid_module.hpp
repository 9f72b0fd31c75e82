#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "persistlab/barcode.hpp"
#include "persistlab/f2_matrix.hpp"
#include "persistlab/filtration.hpp"
#include "persistlab/kernels.hpp"

namespace persistlab {

/// Integer coordinates of a grid cell, one per axis.
using Cell = std::vector<std::size_t>;

/// Product of n finite chains {0..g_i-1} with the product order. Cells are
/// linearized with axis 0 varying fastest. Optional real coordinates per
/// axis level turn integer cells into points of R^n.
class Grid {
public:
    Grid() = default;
    explicit Grid(std::vector<std::size_t> sizes, std::vector<std::vector<double>> coords = {});

    std::size_t parameters() const noexcept { return sizes_.size(); }
    const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
    std::size_t cell_count() const noexcept { return count_; }
    bool has_coords() const noexcept { return !coords_.empty(); }
    const std::vector<std::vector<double>>& coords() const noexcept { return coords_; }

    std::size_t index(const Cell& cell) const;
    Cell cell(std::size_t index) const;
    /// Index of cell + e_axis, if inside the grid.
    std::optional<std::size_t> step(std::size_t index, std::size_t axis) const;
    bool leq(std::size_t a, std::size_t b) const;
    /// Real coordinates of a cell (integer levels when the grid has none).
    Point position(std::size_t index) const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::vector<std::size_t> sizes_;
    std::vector<std::vector<double>> coords_;
    std::size_t count_ = 0;
};

/// [p, inf) \ [q, inf) restricted to the grid; q absent encodes [p, inf).
struct HookInterval {
    std::size_t p = 0;
    std::optional<std::size_t> q;

    bool free() const noexcept { return !q.has_value(); }
    bool contains(const Grid& grid, std::size_t t) const {
        return grid.leq(p, t) && !(q && grid.leq(*q, t));
    }

    friend auto operator<=>(const HookInterval&, const HookInterval&) = default;
    friend bool operator==(const HookInterval&, const HookInterval&) = default;
};

/// All hooks with p < q in the grid, plus the principal upsets, ordered by
/// (p, q) with q = inf last.
std::vector<HookInterval> enumerate_hooks(const Grid& grid);

std::string describe(const Grid& grid, const HookInterval& hook);

/// A persistence module on a grid over F2: a vector space per cell and one
/// matrix per covering relation (t, t + e_i).
class GridModule {
public:
    GridModule() = default;
    /// All arrows start as zero maps.
    GridModule(Grid grid, std::vector<std::size_t> dims);

    static GridModule interval(const Grid& grid, const HookInterval& hook);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t dim(std::size_t cell) const { return dims_.at(cell); }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::size_t total_dimension() const noexcept;
    bool is_zero() const noexcept { return total_dimension() == 0; }

    /// Map from `cell` to cell + e_axis (dim(target) x dim(cell)). Throws
    /// std::out_of_range at the grid boundary.
    const F2Matrix& arrow(std::size_t cell, std::size_t axis) const;
    void set_arrow(std::size_t cell, std::size_t axis, F2Matrix matrix);

    /// Structure map M(from <= to), composed axis by axis.
    F2Matrix map_between(std::size_t from, std::size_t to) const;

    struct CommutativityViolation {
        std::size_t cell;
        std::size_t axis_a;
        std::size_t axis_b;
    };
    std::optional<CommutativityViolation> find_commutativity_violation() const;
    /// Throws persistlab::Error naming the first non-commuting square.
    void validate() const;

    GridModule direct_sum(const GridModule& other) const;

    friend bool operator==(const GridModule&, const GridModule&) = default;

private:
    std::size_t slot(std::size_t cell, std::size_t axis) const { return cell * grid_.parameters() + axis; }

    Grid grid_;
    std::vector<std::size_t> dims_;
    std::vector<F2Matrix> arrows_;
};

/// Natural transformation between two modules on the same grid; one matrix
/// per cell, dim(target) x dim(source).
struct GridMorphism {
    std::vector<F2Matrix> components;
};

bool is_natural(const GridMorphism& f, const GridModule& source, const GridModule& target);

/// Pointwise kernel of f with the restricted structure maps, and its
/// inclusion into the source.
struct KernelModule {
    GridModule module;
    GridMorphism inclusion;
};
KernelModule kernel(const GridMorphism& f, const GridModule& source);

/// Distinct values per axis of a multi-parameter filtration, sorted.
std::vector<std::vector<double>> grid_levels(const MonotoneFiltration& filtration);

/// Simplicial homology in `degree` of the sublevel complexes
/// {s : values(s) <= levels at t} over the grid spanned by `levels`, with the
/// maps induced by inclusion.
GridModule grid_homology_module(const MonotoneFiltration& filtration,
                                const std::vector<std::vector<double>>& levels, std::size_t degree);

/// Columns form a basis of Hom(k_hook, M), viewed inside M(p): the kernel of
/// M(p <= q), or all of M(p) for a principal upset.
F2Matrix hom_space(const HookInterval& hook, const GridModule& module);

/// hom_space for every hook at once.
std::vector<F2Matrix> hom_spaces(const std::vector<HookInterval>& hooks, const GridModule& module,
                                 Execution exec = Execution::parallel);

/// Dimension (0 or 1) of Hom(k_from, k_to) between two hook modules.
std::size_t hook_hom_dimension(const Grid& grid, const HookInterval& from, const HookInterval& to);

}  // namespace persistlab
