#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace oracle {

using namespace persistlab;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Span of byte vectors remembering how each reduced row combines the inputs.
class DenseSpan {
public:
    explicit DenseSpan(std::size_t dim) : dim_(dim) {}

    bool insert(const Bits& v) {
        Bits r = v;
        Bits combo(rows_.size() + 1, 0);
        combo.back() = 1;
        reduce(r, combo);
        const auto pivot = std::find(r.begin(), r.end(), 1);
        if (pivot == r.end()) return false;
        for (auto& c : combos_) c.push_back(0);
        rows_.push_back(std::move(r));
        pivots_.push_back(static_cast<std::size_t>(pivot - rows_.back().begin()));
        combos_.push_back(std::move(combo));
        return true;
    }

    // Coefficients of v over the inserted (accepted) vectors, or empty when v is outside.
    std::optional<Bits> coordinates(const Bits& v) const {
        Bits r = v;
        Bits combo(rows_.size(), 0);
        reduce(r, combo);
        if (std::find(r.begin(), r.end(), 1) != r.end()) return std::nullopt;
        return combo;
    }

    std::size_t size() const { return rows_.size(); }

private:
    void reduce(Bits& r, Bits& combo) const {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            if (!r[pivots_[k]]) continue;
            for (std::size_t i = 0; i < dim_; ++i) r[i] ^= rows_[k][i];
            for (std::size_t i = 0; i < combos_[k].size(); ++i) combo[i] ^= combos_[k][i];
        }
    }

    std::size_t dim_;
    std::vector<Bits> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<Bits> combos_;  // over accepted vectors
};

bool active(const MonotoneFiltration& f, std::size_t id, const std::vector<double>& bound) {
    for (std::size_t c = 0; c < f.parameters(); ++c)
        if (f.value(id, c) > bound[c]) return false;
    return true;
}

struct ChainData {
    std::vector<std::size_t> chains;   // ids of dimension d
    std::vector<std::size_t> position; // id -> index among chains / faces
    std::vector<std::size_t> faces;    // ids of dimension d-1
};

ChainData chain_data(const MonotoneFiltration& f, std::size_t degree) {
    ChainData cd;
    const auto& K = f.complex();
    cd.position.assign(K.size(), 0);
    for (std::size_t id = 0; id < K.size(); ++id) {
        if (K.dimension(id) == degree) {
            cd.position[id] = cd.chains.size();
            cd.chains.push_back(id);
        } else if (degree > 0 && K.dimension(id) + 1 == degree) {
            cd.position[id] = cd.faces.size();
            cd.faces.push_back(id);
        }
    }
    return cd;
}

// Cycle basis of the active d-chains, in coordinates of all d-chains.
std::vector<Bits> cycles(const MonotoneFiltration& f, const ChainData& cd, std::size_t degree,
                         const std::vector<double>& bound) {
    std::vector<std::size_t> live;
    for (auto id : cd.chains)
        if (active(f, id, bound)) live.push_back(id);
    std::vector<Bits> out;
    if (degree == 0) {
        for (auto id : live) {
            Bits v(cd.chains.size(), 0);
            v[cd.position[id]] = 1;
            out.push_back(std::move(v));
        }
        return out;
    }
    // kernel of the boundary: eliminate boundary rows while tracking chain combinations
    std::vector<Bits> rows;
    std::vector<Bits> combos;
    for (std::size_t j = 0; j < live.size(); ++j) {
        Bits b(cd.faces.size(), 0);
        for (auto face : f.complex().facets(live[j])) b[cd.position[face]] ^= 1;
        Bits c(cd.chains.size(), 0);
        c[cd.position[live[j]]] = 1;
        rows.push_back(std::move(b));
        combos.push_back(std::move(c));
    }
    std::size_t next = 0;
    for (std::size_t col = 0; col < cd.faces.size() && next < rows.size(); ++col) {
        std::size_t pick = next;
        while (pick < rows.size() && !rows[pick][col]) ++pick;
        if (pick == rows.size()) continue;
        std::swap(rows[pick], rows[next]);
        std::swap(combos[pick], combos[next]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == next || !rows[r][col]) continue;
            for (std::size_t i = 0; i < rows[r].size(); ++i) rows[r][i] ^= rows[next][i];
            for (std::size_t i = 0; i < combos[r].size(); ++i) combos[r][i] ^= combos[next][i];
        }
        ++next;
    }
    for (std::size_t r = next; r < rows.size(); ++r) out.push_back(combos[r]);
    return out;
}

std::vector<Bits> boundaries(const MonotoneFiltration& f, const ChainData& cd, std::size_t degree,
                             const std::vector<double>& bound) {
    std::vector<Bits> out;
    const auto& K = f.complex();
    for (std::size_t id = 0; id < K.size(); ++id) {
        if (K.dimension(id) != degree + 1 || !active(f, id, bound)) continue;
        Bits b(cd.chains.size(), 0);
        for (auto face : K.facets(id)) b[cd.position[face]] ^= 1;
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace

std::size_t rank_of(std::vector<Bits> vectors) {
    std::size_t rank = 0;
    if (vectors.empty()) return 0;
    const auto width = vectors.front().size();
    for (std::size_t col = 0; col < width && rank < vectors.size(); ++col) {
        std::size_t pick = rank;
        while (pick < vectors.size() && !vectors[pick][col]) ++pick;
        if (pick == vectors.size()) continue;
        std::swap(vectors[pick], vectors[rank]);
        for (std::size_t r = 0; r < vectors.size(); ++r)
            if (r != rank && vectors[r][col])
                for (std::size_t i = 0; i < width; ++i) vectors[r][i] ^= vectors[rank][i];
        ++rank;
    }
    return rank;
}

std::size_t homology_map_rank(const MonotoneFiltration& f, std::size_t degree, double level_i, double level_j) {
    const auto cd = chain_data(f, degree);
    if (cd.chains.empty()) return 0;
    auto z = cycles(f, cd, degree, {level_i});
    const auto b = boundaries(f, cd, degree, {level_j});
    const auto rb = rank_of(b);
    z.insert(z.end(), b.begin(), b.end());
    return rank_of(z) - rb;
}

std::size_t sublevel_betti(const MonotoneFiltration& f, std::size_t degree, const std::vector<double>& bound) {
    const auto cd = chain_data(f, degree);
    if (cd.chains.empty()) return 0;
    return rank_of(cycles(f, cd, degree, bound)) - rank_of(boundaries(f, cd, degree, bound));
}

LevelModule homology_an_module(const MonotoneFiltration& f, std::size_t degree) {
    LevelModule out;
    for (std::size_t id = 0; id < f.size(); ++id) out.levels.push_back(f.value(id));
    std::sort(out.levels.begin(), out.levels.end());
    out.levels.erase(std::unique(out.levels.begin(), out.levels.end()), out.levels.end());

    const auto cd = chain_data(f, degree);
    struct Level {
        DenseSpan span{0};
        std::size_t boundary_rank = 0;
        std::vector<Bits> reps;
    };
    std::vector<Level> data;
    for (double level : out.levels) {
        Level L{DenseSpan(cd.chains.size()), 0, {}};
        for (const auto& b : boundaries(f, cd, degree, {level})) L.span.insert(b);
        L.boundary_rank = L.span.size();
        for (const auto& z : cycles(f, cd, degree, {level}))
            if (L.span.insert(z)) L.reps.push_back(z);
        out.module.dims.push_back(L.reps.size());
        data.push_back(std::move(L));
    }
    for (std::size_t k = 0; k + 1 < data.size(); ++k) {
        F2Matrix m(data[k + 1].reps.size(), data[k].reps.size());
        for (std::size_t c = 0; c < data[k].reps.size(); ++c) {
            const auto coords = data[k + 1].span.coordinates(data[k].reps[c]);
            if (!coords) throw std::logic_error("oracle: cycle lost under inclusion");
            for (std::size_t r = 0; r < data[k + 1].reps.size(); ++r)
                if ((*coords)[data[k + 1].boundary_rank + r]) m.set(r, c);
        }
        out.module.maps.push_back(std::move(m));
    }
    return out;
}

MonotoneFiltration random_monotone(std::shared_ptr<const SimplicialComplex> complex, std::size_t n,
                                   std::mt19937_64& rng, int max_value, bool integer_values) {
    std::uniform_int_distribution<int> pick(0, max_value);
    std::uniform_real_distribution<double> real(0.0, static_cast<double>(max_value));
    std::vector<double> values(complex->size() * n);
    for (std::size_t id = 0; id < complex->size(); ++id)
        for (std::size_t c = 0; c < n; ++c) {
            double v = integer_values ? static_cast<double>(pick(rng)) : real(rng);
            for (auto face : complex->facets(id)) v = std::max(v, values[face * n + c]);
            values[id * n + c] = v;
        }
    return validate_monotone(std::move(complex), n, std::move(values));
}

std::vector<Bar> random_bars(std::size_t n, std::size_t count, std::mt19937_64& rng, double infinite_probability,
                             int range, int sign) {
    std::uniform_int_distribution<int> coord(0, range);
    std::uniform_int_distribution<int> length(0, range);
    std::bernoulli_distribution infinite(infinite_probability);
    std::vector<Bar> bars;
    for (std::size_t k = 0; k < count; ++k) {
        Point birth(n);
        for (auto& x : birth) x = coord(rng);
        if (infinite(rng)) {
            bars.push_back(Bar::upset(birth, sign));
            continue;
        }
        Point death(n);
        bool positive = false;
        for (std::size_t i = 0; i < n; ++i) {
            const int l = length(rng);
            positive = positive || l > 0;
            death[i] = birth[i] + l;
        }
        if (!positive) death[0] += 1;
        bars.push_back(Bar::finite(birth, death, sign));
    }
    return bars;
}

GridModule random_presented_module(const Grid& grid, std::mt19937_64& rng, std::size_t max_generators,
                                   std::size_t max_relations) {
    std::uniform_int_distribution<std::size_t> cell(0, grid.cell_count() - 1);
    std::uniform_int_distribution<std::size_t> gens_count(1, max_generators);
    std::uniform_int_distribution<std::size_t> rels_count(0, max_relations);
    std::bernoulli_distribution coin(0.5);

    const auto g = gens_count(rng);
    std::vector<std::size_t> gens(g);
    for (auto& p : gens) p = cell(rng);
    const auto m = rels_count(rng);
    std::vector<std::size_t> rels(m);
    std::vector<F2Vector> rel_vectors;
    for (auto& r : rels) {
        r = cell(rng);
        F2Vector v(g);
        for (std::size_t i = 0; i < g; ++i)
            if (grid.leq(gens[i], r) && coin(rng)) v.set(i);
        rel_vectors.push_back(v);
    }

    // quotient of span{active generators} by the active relations, per cell
    struct CellQuotient {
        F2Span span{0};
        std::size_t relation_rank = 0;
        std::vector<F2Vector> basis;
    };
    std::vector<CellQuotient> q(grid.cell_count());
    std::vector<std::size_t> dims(grid.cell_count());
    for (std::size_t t = 0; t < grid.cell_count(); ++t) {
        q[t].span = F2Span(g);
        for (std::size_t j = 0; j < m; ++j)
            if (grid.leq(rels[j], t)) q[t].span.insert(rel_vectors[j]);
        q[t].relation_rank = q[t].span.size();
        for (std::size_t i = 0; i < g; ++i)
            if (grid.leq(gens[i], t)) {
                const auto e = F2Vector::unit(g, i);
                if (q[t].span.insert(e)) q[t].basis.push_back(e);
            }
        dims[t] = q[t].basis.size();
    }
    GridModule module(grid, dims);
    for (std::size_t t = 0; t < grid.cell_count(); ++t)
        for (std::size_t a = 0; a < grid.parameters(); ++a) {
            const auto s = grid.step(t, a);
            if (!s) continue;
            F2Matrix mat(dims[*s], dims[t]);
            for (std::size_t c = 0; c < dims[t]; ++c) {
                const auto coords = q[*s].span.coordinates(q[t].basis[c]);
                for (std::size_t r = 0; r < dims[*s]; ++r)
                    if (coords->get(q[*s].relation_rank + r)) mat.set(r, c);
            }
            module.set_arrow(t, a, std::move(mat));
        }
    return module;
}

namespace {

double cost(const Bar& a, const Bar& b) {
    if (a.sign != b.sign) return inf;
    auto sup = [](const Point& x, const Point& y) {
        double d = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
        return d;
    };
    auto del = [](const Bar& x) {
        if (!x.death) return inf;
        double d = 0.0;
        for (std::size_t i = 0; i < x.birth.size(); ++i) d = std::max(d, (*x.death)[i] - x.birth[i]);
        return d / 2;
    };
    double shift = sup(a.birth, b.birth);
    if (a.death.has_value() != b.death.has_value())
        shift = inf;
    else if (a.death)
        shift = std::max(shift, sup(*a.death, *b.death));
    return std::min(shift, std::max(del(a), del(b)));
}

double deletion(const Bar& x) {
    if (!x.death) return inf;
    double d = 0.0;
    for (std::size_t i = 0; i < x.birth.size(); ++i) d = std::max(d, (*x.death)[i] - x.birth[i]);
    return d / 2;
}

}  // namespace

double dist1_bruteforce(const std::vector<Bar>& a, const std::vector<Bar>& b) {
    std::vector<bool> used(b.size(), false);
    double best = inf;
    std::function<void(std::size_t, double)> walk = [&](std::size_t i, double total) {
        if (i == a.size()) {
            for (std::size_t j = 0; j < b.size(); ++j)
                if (!used[j]) total += deletion(b[j]);
            best = std::min(best, total);
            return;
        }
        walk(i + 1, total + deletion(a[i]));
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            used[j] = true;
            walk(i + 1, total + cost(a[i], b[j]));
            used[j] = false;
        }
    };
    walk(0, 0.0);
    return best;
}

double interleaving_oracle_1d(int a, int b, int c, int d) {
    // half-unit grid: u stands for u / 2
    const int a2 = 2 * a, b2 = 2 * b, c2 = 2 * c, d2 = 2 * d;
    auto in_m = [&](int u) { return a2 <= u && u < b2; };
    auto in_n = [&](int u) { return c2 <= u && u < d2; };
    const int longest = std::max(b - a, d - c);

    // all natural scalar families X -> Y[k] supported on X ∩ (Y - k)
    auto natural_maps = [&](auto in_x, auto in_y, int k, int lo, int hi) {
        std::vector<int> support;
        for (int u = lo; u <= hi; ++u)
            if (in_x(u) && in_y(u + k)) support.push_back(u);
        if (support.size() > 20) throw std::logic_error("interleaving oracle: support too large");
        std::vector<std::vector<int>> maps;  // indexed by u - lo
        for (std::uint32_t mask = 0; mask < (1u << support.size()); ++mask) {
            std::vector<int> phi(static_cast<std::size_t>(hi - lo + 2), 0);
            for (std::size_t s = 0; s < support.size(); ++s) phi[static_cast<std::size_t>(support[s] - lo)] = (mask >> s) & 1;
            bool ok = true;
            for (int u = lo; u < hi && ok; ++u) {
                if (!in_x(u) || !in_y(u + k + 1)) continue;
                const int lhs = in_x(u + 1) ? phi[static_cast<std::size_t>(u + 1 - lo)] : 0;
                const int rhs = in_y(u + k) ? phi[static_cast<std::size_t>(u - lo)] : 0;
                ok = lhs == rhs;
            }
            if (ok) maps.push_back(std::move(phi));
        }
        return maps;
    };

    for (int k = 0; k <= longest; ++k) {  // eps = k / 2, shift k half-units
        const int lo = std::min(a2, c2) - 2 * k - 2;
        const int hi = std::max(b2, d2) + 2 * k + 2;
        const auto phis = natural_maps(in_m, in_n, k, lo, hi);
        const auto psis = natural_maps(in_n, in_m, k, lo, hi);
        auto at = [&](const std::vector<int>& f, int u) {
            return (u >= lo && u <= hi) ? f[static_cast<std::size_t>(u - lo)] : 0;
        };
        for (const auto& phi : phis)
            for (const auto& psi : psis) {
                bool ok = true;
                for (int u = lo; u <= hi && ok; ++u) {
                    if (in_m(u) && in_m(u + 2 * k)) ok = (at(psi, u + k) & at(phi, u)) == 1;
                    if (ok && in_n(u) && in_n(u + 2 * k)) ok = (at(phi, u + k) & at(psi, u)) == 1;
                }
                if (ok) return k / 2.0;
            }
    }
    throw std::logic_error("interleaving oracle: no interleaving found");
}

double deletion_oracle(const std::vector<int>& p, const std::vector<int>& q) {
    const auto n = p.size();
    auto in_hook = [&](const std::vector<int>& t2) {  // half-units
        bool above_p = true, above_q = true;
        for (std::size_t i = 0; i < n; ++i) {
            above_p = above_p && t2[i] >= 2 * p[i];
            above_q = above_q && t2[i] >= 2 * q[i];
        }
        return above_p && !above_q;
    };
    for (int k = 0;; ++k) {  // eps = k / 2, 2 eps = 2k half-units
        bool ok = true;
        std::vector<int> t(n);
        for (std::size_t i = 0; i < n; ++i) t[i] = 2 * p[i];
        while (ok) {
            if (in_hook(t)) {
                auto s = t;
                for (auto& x : s) x += 2 * k;
                ok = !in_hook(s);
            }
            std::size_t i = 0;
            for (; i < n; ++i) {
                if (++t[i] <= 2 * q[i] + 2) break;
                t[i] = 2 * p[i];
            }
            if (i == n) break;
        }
        if (ok) return k / 2.0;
    }
}

std::vector<std::vector<double>> finite_difference_jacobian(
    const std::function<std::vector<double>(const std::vector<double>&)>& fn, const std::vector<double>& x,
    double h) {
    std::vector<std::vector<double>> columns;
    for (std::size_t c = 0; c < x.size(); ++c) {
        auto plus = x, minus = x;
        plus[c] += h;
        minus[c] -= h;
        const auto fp = fn(plus);
        const auto fm = fn(minus);
        if (fp.size() != fm.size()) throw std::runtime_error("finite differences crossed a stratum");
        std::vector<double> col(fp.size());
        for (std::size_t r = 0; r < fp.size(); ++r) col[r] = (fp[r] - fm[r]) / (2 * h);
        columns.push_back(std::move(col));
    }
    return columns;
}

PointCloud generic_cloud(std::size_t r, std::size_t d, std::mt19937_64& rng, double gap) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<double> coords(r * d);
        for (auto& x : coords) x = u(rng);
        std::vector<double> dist;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j) {
                double s = 0.0;
                for (std::size_t c = 0; c < d; ++c) s += (coords[i * d + c] - coords[j * d + c]) * (coords[i * d + c] - coords[j * d + c]);
                dist.push_back(std::sqrt(s));
            }
        std::sort(dist.begin(), dist.end());
        bool ok = dist.empty() || dist.front() >= gap;
        for (std::size_t k = 1; k < dist.size() && ok; ++k) ok = dist[k] - dist[k - 1] >= gap;
        if (ok) return PointCloud(d, std::move(coords));
    }
    throw std::runtime_error("generic_cloud: no generic sample found");
}

}  // namespace oracle
