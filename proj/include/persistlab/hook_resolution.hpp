#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "persistlab/barcode.hpp"
#include "persistlab/grid_module.hpp"

namespace persistlab {

/// One summand k_hook of a relative projective, with the element of
/// Hom(k_hook, X) (a vector of X(p)) defining its map to the approximated
/// module X.
struct HookSummand {
    HookInterval hook;
    F2Vector generator;
};

/// Right minimal add{k_I : I hook}-approximation of `module`: every map from
/// a hook module factors through it, and no summand factors through the
/// others.
std::vector<HookSummand> minimal_hook_approximation(const GridModule& module,
                                                    Execution exec = Execution::parallel);

/// Whether no summand's map factors through the remaining summands, and
/// whether the summands together approximate (surject onto Hom(k_J, module)
/// for every hook J).
bool is_hook_approximation(const std::vector<HookSummand>& summands, const GridModule& module);
bool is_minimal_hook_approximation(const std::vector<HookSummand>& summands, const GridModule& module);

/// Direct sum of the hook modules, summands ordered as given.
GridModule hook_sum_module(const Grid& grid, const std::vector<HookInterval>& hooks);

/// 0 -> P_r -> ... -> P_1 -> P_0 -> M -> 0, each P_i a direct sum of hook
/// modules. differentials[i-1] maps P_i to P_{i-1}; augmentation maps P_0 to M.
struct HookResolution {
    std::vector<std::vector<HookInterval>> terms;
    std::vector<GridModule> term_modules;
    GridMorphism augmentation;
    std::vector<GridMorphism> differentials;

    /// Index of the last nonzero term (0 for the zero module).
    std::size_t length() const noexcept { return terms.empty() ? 0 : terms.size() - 1; }
};

/// Iterated minimal approximations of kernels. Throws ResolutionTooLong when
/// more than 2n - 2 kernels are needed.
HookResolution minimal_hook_resolution(const GridModule& module, Execution exec = Execution::parallel);

/// Hooks of even terms are positive, of odd terms negative. Cells are mapped
/// to the grid's real coordinates when it has them.
SignedBarcode signed_barcode(const HookResolution& resolution, const Grid& grid);
SignedBarcode signed_barcode(const GridModule& module);

struct ExactnessReport {
    bool ok = true;
    std::string message;
    std::size_t degree = 0;
    std::optional<HookInterval> hook;
    std::optional<std::size_t> cell;
};

/// Verifies naturality of every differential, pointwise exactness, relative
/// exactness (surjectivity on Hom(k_J, -) for every hook J and every short
/// exact sequence of the unrolled resolution), and the pointwise Euler
/// characteristic. Returns the first violation found.
ExactnessReport check_relative_exactness(const HookResolution& resolution, const GridModule& module);

/// True iff End(M) has no idempotent besides 0 and 1. Exhaustive over End(M)
/// up to 2^20 elements; above that, a fixed-seed search for an endomorphism
/// that is neither nilpotent nor invertible. Throws CapExceeded when the
/// total dimension exceeds `cap`.
bool is_indecomposable(const GridModule& module, std::size_t cap = 30);

/// Basis of End(M) as per-cell matrices.
std::vector<GridMorphism> endomorphism_basis(const GridModule& module);

}  // namespace persistlab
