#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "persistlab/barcode.hpp"
#include "persistlab/filtration.hpp"

namespace persistlab {

/// Flat (2n+1)-blocks (birth, death, sign), one per bar. An upset [t, inf)
/// is stored as (t, t, sign). Blocks are lexicographically sorted within each
/// sign, positive blocks first.
struct LiftedBarcode {
    std::size_t n = 1;
    std::size_t k = 0;
    bool is_signed = false;
    std::vector<double> coords;

    std::size_t block_size() const noexcept { return 2 * n + 1; }
    friend bool operator==(const LiftedBarcode&, const LiftedBarcode&) = default;
};

/// The (2n+1)-vector of a single bar.
std::vector<double> bar_block(const Bar& bar);

/// Stable permutation sorting bars by their blocks.
std::vector<std::size_t> lift_order(const std::vector<Bar>& bars);

LiftedBarcode lift(const Barcode& barcode);
LiftedBarcode lift(const SignedBarcode& barcode);

/// Inverse of lift. Throws MalformedBlock when a sign is not +-1, a death
/// lies below its birth on some axis, a negative block precedes a positive
/// one, a negative block appears in an unsigned vector, or the length is not
/// a multiple of 2n+1.
Barcode unlift(const LiftedBarcode& v);
SignedBarcode unlift_signed(const LiftedBarcode& v);

/// Row-major dense matrix.
struct Jacobian {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
};

/// Birth and death simplices of the bar in each lifted block.
struct SimplexAssignment {
    std::size_t birth;
    std::optional<std::size_t> death;
};

struct PersJacobian {
    LiftedBarcode lifted;
    Jacobian matrix;  // (3k) x (d r)
    StratumSignature signature;
    std::vector<SimplexAssignment> zeta;
    std::shared_ptr<const SimplicialComplex> complex;
};

/// Lifted Rips barcode in `degree` and its derivative with respect to the
/// point coordinates. Throws StratumBoundary off the top-dimensional strata.
PersJacobian pers_jacobian(const PointCloud& cloud, std::size_t degree, Execution exec = Execution::parallel);

/// Lifted Rips barcode alone (any cloud).
LiftedBarcode lifted_rips_barcode(const PointCloud& cloud, std::size_t degree, Execution exec = Execution::parallel);

/// Sum of the lengths of the finite bars (n = 1).
double total_persistence(const Barcode& barcode);
/// The same functional on lifted vectors: sum of (death - birth) per block.
double total_persistence(const LiftedBarcode& lifted);
/// Its gradient on lifted vectors: (-1, 1, 0) repeated k times.
std::vector<double> total_persistence_gradient(std::size_t k);

/// Row vector times matrix. Throws std::invalid_argument on a size mismatch.
std::vector<double> chain_rule(const std::vector<double>& loss_gradient, const Jacobian& jacobian);

/// Gradient of dist1(barcode, target) with respect to lift(barcode), holding
/// the optimal matching fixed. Throws Error when dist1 is infinite.
std::vector<double> dist1_loss_gradient(const Barcode& barcode, const Barcode& target);

}  // namespace persistlab
