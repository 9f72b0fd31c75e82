#include "persistlab/persistence.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace persistlab {

bool same_bars(std::vector<Bar> a, std::vector<Bar> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

namespace {

using Column = std::vector<std::size_t>;

// a <- a + b over F2 for sorted index lists.
void add_column(Column& a, const Column& b) {
    Column out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    a.swap(out);
}

}  // namespace

PersistencePairs reduce(const MonotoneFiltration& filtration, std::size_t max_degree) {
    if (filtration.parameters() != 1) throw std::invalid_argument("reduce: requires a 1-parameter filtration");
    PersistencePairs result;
    if (filtration.size() == 0) return result;

    const auto& complex = filtration.complex();
    std::vector<std::size_t> order;
    for (auto id : simplex_order(filtration))
        if (complex.dimension(id) <= max_degree + 1) order.push_back(id);

    constexpr auto none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> position(complex.size(), none);
    for (std::size_t j = 0; j < order.size(); ++j) position[order[j]] = j;

    std::vector<Column> columns(order.size());
    std::vector<std::size_t> owner_of_low(order.size(), none);  // row -> column whose pivot it is
    std::vector<bool> destroyed(order.size(), false);
    std::vector<bool> is_creator(order.size(), false);

    for (std::size_t j = 0; j < order.size(); ++j) {
        const auto id = order[j];
        Column col;
        for (auto f : complex.facets(id)) col.push_back(position[f]);
        std::sort(col.begin(), col.end());
        while (!col.empty() && owner_of_low[col.back()] != none) add_column(col, columns[owner_of_low[col.back()]]);
        if (col.empty()) {
            is_creator[j] = true;
        } else {
            const auto low = col.back();
            owner_of_low[low] = j;
            destroyed[low] = true;
            const auto birth_id = order[low];
            const auto degree = complex.dimension(birth_id);
            if (degree <= max_degree)
                result.pairs.push_back({birth_id, id, degree, filtration.value(birth_id), filtration.value(id)});
        }
        columns[j] = std::move(col);
    }
    for (std::size_t j = 0; j < order.size(); ++j) {
        if (!is_creator[j] || destroyed[j]) continue;
        const auto id = order[j];
        const auto degree = complex.dimension(id);
        if (degree > max_degree) continue;
        result.pairs.push_back({id, std::nullopt, degree, filtration.value(id),
                                std::numeric_limits<double>::infinity()});
    }
    return result;
}

Barcode barcode(const PersistencePairs& pairs, std::size_t degree) {
    Barcode out;
    out.n = 1;
    for (const auto& p : pairs.pairs) {
        if (p.degree != degree) continue;
        if (p.essential())
            out.bars.push_back(bar1(p.birth_value));
        else if (p.birth_value < p.death_value)
            out.bars.push_back(bar1(p.birth_value, p.death_value));
    }
    return out;
}

void AnModule::validate() const {
    if (dims.empty()) {
        if (!maps.empty()) throw std::invalid_argument("AnModule: maps without vertices");
        return;
    }
    if (maps.size() + 1 != dims.size()) throw std::invalid_argument("AnModule: need exactly k-1 maps");
    for (std::size_t i = 0; i < maps.size(); ++i)
        if (maps[i].cols() != dims[i] || maps[i].rows() != dims[i + 1])
            throw std::invalid_argument("AnModule: map " + std::to_string(i) + " has the wrong shape");
}

std::size_t AnModule::rank_between(std::size_t i, std::size_t j) const {
    if (i > j || j >= dims.size()) throw std::out_of_range("AnModule::rank_between: bad indices");
    F2Matrix composite = F2Matrix::identity(dims[i]);
    for (std::size_t t = i; t < j; ++t) composite = maps[t] * composite;
    return rank(composite);
}

Barcode barcode_of_an_module(const AnModule& module) {
    module.validate();
    const auto k = module.dims.size();
    Barcode out;
    out.n = 1;
    if (k == 0) return out;

    // ranks[i][j] = r(i, j) for i <= j; composites built incrementally from each i.
    std::vector<std::vector<long long>> ranks(k, std::vector<long long>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
        F2Matrix composite = F2Matrix::identity(module.dims[i]);
        ranks[i][i] = static_cast<long long>(module.dims[i]);
        for (std::size_t j = i + 1; j < k; ++j) {
            composite = module.maps[j - 1] * composite;
            ranks[i][j] = static_cast<long long>(rank(composite));
        }
    }
    auto r = [&](long long i, long long j) -> long long {
        if (i < 0 || j >= static_cast<long long>(k) || i > j) return 0;
        return ranks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    };
    for (long long i = 0; i < static_cast<long long>(k); ++i) {
        for (long long j = i; j < static_cast<long long>(k); ++j) {
            const bool last = j + 1 == static_cast<long long>(k);
            const long long mult = r(i, j) - r(i - 1, j) - (last ? 0 : r(i, j + 1) - r(i - 1, j + 1));
            if (mult < 0) throw std::logic_error("barcode_of_an_module: negative multiplicity");
            for (long long m = 0; m < mult; ++m)
                out.bars.push_back(last ? bar1(static_cast<double>(i))
                                        : bar1(static_cast<double>(i), static_cast<double>(j + 1)));
        }
    }
    return out;
}

}  // namespace persistlab
