#include "persistlab/lift.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "persistlab/errors.hpp"
#include "persistlab/metrics.hpp"
#include "persistlab/persistence.hpp"

namespace persistlab {

std::vector<double> bar_block(const Bar& bar) {
    std::vector<double> block(bar.birth);
    const auto& end = bar.death ? *bar.death : bar.birth;
    block.insert(block.end(), end.begin(), end.end());
    block.push_back(static_cast<double>(bar.sign));
    return block;
}

std::vector<std::size_t> lift_order(const std::vector<Bar>& bars) {
    std::vector<std::vector<double>> blocks;
    blocks.reserve(bars.size());
    for (const auto& b : bars) blocks.push_back(bar_block(b));
    std::vector<std::size_t> order(bars.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return blocks[x] < blocks[y]; });
    return order;
}

namespace {

void append_sorted(LiftedBarcode& out, const std::vector<Bar>& bars) {
    for (const auto& b : bars)
        if (b.parameters() != out.n) throw Error("bar has the wrong number of parameters");
    for (auto i : lift_order(bars)) {
        const auto block = bar_block(bars[i]);
        out.coords.insert(out.coords.end(), block.begin(), block.end());
    }
    out.k += bars.size();
}

std::vector<Bar> read_blocks(const LiftedBarcode& v) {
    const auto size = v.block_size();
    if (v.n == 0 || v.coords.size() != size * v.k)
        throw MalformedBlock("lifted vector length " + std::to_string(v.coords.size()) + " is not " +
                             std::to_string(v.k) + " blocks of " + std::to_string(size));
    std::vector<Bar> bars;
    bool seen_negative = false;
    for (std::size_t b = 0; b < v.k; ++b) {
        const auto* block = v.coords.data() + b * size;
        const double sign = block[2 * v.n];
        if (sign != 1.0 && sign != -1.0)
            throw MalformedBlock("block " + std::to_string(b) + " has sign coordinate " + std::to_string(sign));
        if (sign < 0 && !v.is_signed) throw MalformedBlock("negative block in an unsigned lifted barcode");
        if (sign > 0 && seen_negative) throw MalformedBlock("positive block after a negative block");
        seen_negative = seen_negative || sign < 0;
        Point s(block, block + v.n);
        Point t(block + v.n, block + 2 * v.n);
        for (std::size_t i = 0; i < v.n; ++i)
            if (!(t[i] >= s[i])) throw MalformedBlock("block " + std::to_string(b) + " ends before it starts");
        const int sg = sign > 0 ? 1 : -1;
        bars.push_back(s == t ? Bar::upset(std::move(s), sg) : Bar::finite(std::move(s), std::move(t), sg));
    }
    return bars;
}

}  // namespace

LiftedBarcode lift(const Barcode& barcode) {
    LiftedBarcode out;
    out.n = barcode.n;
    append_sorted(out, barcode.bars);
    return out;
}

LiftedBarcode lift(const SignedBarcode& barcode) {
    LiftedBarcode out;
    out.n = barcode.n;
    out.is_signed = true;
    append_sorted(out, barcode.positive);
    append_sorted(out, barcode.negative);
    return out;
}

Barcode unlift(const LiftedBarcode& v) {
    if (v.is_signed) throw MalformedBlock("signed lifted barcode read as unsigned");
    return {v.n, read_blocks(v)};
}

SignedBarcode unlift_signed(const LiftedBarcode& v) {
    SignedBarcode out;
    out.n = v.n;
    for (auto& bar : read_blocks(v)) (bar.sign > 0 ? out.positive : out.negative).push_back(std::move(bar));
    return out;
}

// ---------------------------------------------------------------- Rips derivative

namespace {

struct RipsBars {
    std::vector<Bar> bars;
    std::vector<SimplexAssignment> zeta;
    std::shared_ptr<const SimplicialComplex> complex;
};

RipsBars rips_bars(const PointCloud& cloud, std::size_t degree, Execution exec) {
    RipsBars out;
    out.complex = std::make_shared<const SimplicialComplex>(SimplicialComplex::full(cloud.size(), degree + 1));
    const auto filtration = rips_filtration(cloud, out.complex, exec);
    auto pairs = reduce(filtration, degree).pairs;
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const auto& a, const auto& b) { return a.birth_simplex < b.birth_simplex; });
    for (const auto& p : pairs) {
        if (p.degree != degree) continue;
        if (p.essential()) {
            out.bars.push_back(bar1(p.birth_value));
        } else if (p.birth_value < p.death_value) {
            out.bars.push_back(bar1(p.birth_value, p.death_value));
        } else {
            continue;
        }
        out.zeta.push_back({p.birth_simplex, p.death_simplex});
    }
    return out;
}

// d value(simplex) / d coords, scattered into a row of length d r.
void simplex_row(const PointCloud& cloud, const Simplex& simplex, double* row) {
    if (simplex.size() < 2) return;
    const auto [i, j] = longest_edge(cloud, simplex);
    const auto d = cloud.dim();
    const double length = cloud.distance(i, j);
    for (std::size_t c = 0; c < d; ++c) {
        const double u = (cloud.point(i)[c] - cloud.point(j)[c]) / length;
        row[i * d + c] = u;
        row[j * d + c] = -u;
    }
}

}  // namespace

LiftedBarcode lifted_rips_barcode(const PointCloud& cloud, std::size_t degree, Execution exec) {
    return lift(Barcode{1, rips_bars(cloud, degree, exec).bars});
}

PersJacobian pers_jacobian(const PointCloud& cloud, std::size_t degree, Execution exec) {
    PersJacobian out;
    out.signature = stratum_signature(cloud);
    if (out.signature.boundary)
        throw StratumBoundary("point cloud lies on a stratum boundary (zero or repeated pairwise distance)");
    auto rb = rips_bars(cloud, degree, exec);
    out.complex = rb.complex;
    const auto order = lift_order(rb.bars);
    out.lifted = lift(Barcode{1, rb.bars});

    const auto k = rb.bars.size();
    auto& J = out.matrix;
    J.rows = 3 * k;
    J.cols = cloud.dim() * cloud.size();
    J.data.assign(J.rows * J.cols, 0.0);
    for (std::size_t l = 0; l < k; ++l) {
        const auto& z = rb.zeta[order[l]];
        out.zeta.push_back(z);
        double* birth_row = &J(3 * l, 0);
        double* death_row = &J(3 * l + 1, 0);
        simplex_row(cloud, out.complex->simplex(z.birth), birth_row);
        if (z.death)
            simplex_row(cloud, out.complex->simplex(*z.death), death_row);
        else
            std::copy(birth_row, birth_row + J.cols, death_row);
    }
    return out;
}

// ---------------------------------------------------------------- losses

double total_persistence(const Barcode& barcode) {
    if (barcode.n != 1) throw Error("total persistence needs a 1-parameter barcode");
    double total = 0.0;
    for (const auto& b : barcode.bars)
        if (b.death) total += (*b.death)[0] - b.birth[0];
    return total;
}

double total_persistence(const LiftedBarcode& lifted) {
    if (lifted.n != 1) throw Error("total persistence needs a 1-parameter barcode");
    double total = 0.0;
    for (std::size_t b = 0; b < lifted.k; ++b) total += lifted.coords[3 * b + 1] - lifted.coords[3 * b];
    return total;
}

std::vector<double> total_persistence_gradient(std::size_t k) {
    std::vector<double> g(3 * k, 0.0);
    for (std::size_t b = 0; b < k; ++b) {
        g[3 * b] = -1.0;
        g[3 * b + 1] = 1.0;
    }
    return g;
}

std::vector<double> chain_rule(const std::vector<double>& loss_gradient, const Jacobian& jacobian) {
    if (loss_gradient.size() != jacobian.rows)
        throw std::invalid_argument("chain_rule: gradient has " + std::to_string(loss_gradient.size()) +
                                    " entries but the Jacobian has " + std::to_string(jacobian.rows) + " rows");
    std::vector<double> out(jacobian.cols, 0.0);
    for (std::size_t r = 0; r < jacobian.rows; ++r) {
        if (loss_gradient[r] == 0.0) continue;
        for (std::size_t c = 0; c < jacobian.cols; ++c) out[c] += loss_gradient[r] * jacobian(r, c);
    }
    return out;
}

std::vector<double> dist1_loss_gradient(const Barcode& barcode, const Barcode& target) {
    if (barcode.n != 1 || target.n != 1) throw Error("dist1 gradient needs 1-parameter barcodes");
    const auto result = dist1(barcode, target);
    if (!std::isfinite(result.value)) throw Error("dist1 is infinite: unmatched infinite bars");
    const auto& bars = barcode.bars;
    const auto order = lift_order(bars);
    std::vector<std::size_t> slot(bars.size());
    for (std::size_t l = 0; l < order.size(); ++l) slot[order[l]] = l;

    auto sgn = [](double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); };
    std::vector<double> g(3 * bars.size(), 0.0);
    auto shrink = [&](std::size_t i) {
        g[3 * slot[i]] = -0.5;
        g[3 * slot[i] + 1] = 0.5;
    };
    for (auto [i, j] : result.matching.matched) {
        const auto& a = bars[i];
        const auto& t = target.bars[j];
        const double db = std::abs(a.birth[0] - t.birth[0]);
        const double dd = a.death ? std::abs((*a.death)[0] - (*t.death)[0]) : 0.0;
        const double del_a = bar_deletion_cost(a);
        if (std::max(db, dd) <= std::max(del_a, bar_deletion_cost(t))) {
            if (db >= dd)
                g[3 * slot[i]] = sgn(a.birth[0] - t.birth[0]);
            else
                g[3 * slot[i] + 1] = sgn((*a.death)[0] - (*t.death)[0]);
        } else if (del_a >= bar_deletion_cost(t)) {
            shrink(i);
        }
    }
    for (auto i : result.matching.unmatched1) shrink(i);
    return g;
}

}  // namespace persistlab
