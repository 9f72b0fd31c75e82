#include "persistlab/hook_resolution.hpp"

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "persistlab/errors.hpp"

namespace persistlab {

namespace {

// Memoized structure maps X(a <= b).
class Transport {
public:
    explicit Transport(const GridModule& module)
        : module_(module), cache_(module.grid().cell_count() * module.grid().cell_count()) {}

    const F2Matrix& operator()(std::size_t from, std::size_t to) {
        auto& slot = cache_[from * module_.grid().cell_count() + to];
        if (!slot) slot = module_.map_between(from, to);
        return *slot;
    }

private:
    const GridModule& module_;
    std::vector<std::optional<F2Matrix>> cache_;
};

// Images in X(p_target) of the summands whose hook receives a nonzero map
// from k_target, skipping index `skip`.
F2Span reachable_span(const std::vector<HookSummand>& summands, const std::vector<bool>& alive,
                      const HookInterval& target, std::size_t skip, const GridModule& module,
                      Transport& transport) {
    const auto& grid = module.grid();
    F2Span span(module.dim(target.p));
    for (std::size_t u = 0; u < summands.size(); ++u) {
        if (u == skip || !alive[u]) continue;
        if (hook_hom_dimension(grid, target, summands[u].hook) == 0) continue;
        span.insert(transport(summands[u].hook.p, target.p) * summands[u].generator);
    }
    return span;
}

GridMorphism approximation_map(const std::vector<HookSummand>& summands, const GridModule& p0,
                               const GridModule& module, Transport& transport) {
    const auto& grid = module.grid();
    std::vector<F2Matrix> components(grid.cell_count());
    for (std::size_t t = 0; t < grid.cell_count(); ++t) {
        F2Matrix m(module.dim(t), p0.dim(t));
        std::size_t col = 0;
        for (const auto& s : summands) {
            if (!s.hook.contains(grid, t)) continue;
            m.set_column(col++, transport(s.hook.p, t) * s.generator);
        }
        components[t] = std::move(m);
    }
    return {std::move(components)};
}

GridMorphism compose(const GridMorphism& g, const GridMorphism& f) {
    GridMorphism out;
    out.components.reserve(f.components.size());
    for (std::size_t t = 0; t < f.components.size(); ++t) out.components.push_back(g.components[t] * f.components[t]);
    return out;
}

std::vector<HookInterval> hooks_of(const std::vector<HookSummand>& summands) {
    std::vector<HookInterval> out;
    out.reserve(summands.size());
    for (const auto& s : summands) out.push_back(s.hook);
    return out;
}

}  // namespace

// ---------------------------------------------------------------- approximations

std::vector<HookSummand> minimal_hook_approximation(const GridModule& module, Execution exec) {
    const auto hooks = enumerate_hooks(module.grid());
    const auto homs = hom_spaces(hooks, module, exec);

    std::vector<HookSummand> candidates;
    for (std::size_t h = 0; h < hooks.size(); ++h)
        for (std::size_t c = 0; c < homs[h].cols(); ++c) candidates.push_back({hooks[h], homs[h].column(c)});

    Transport transport(module);
    std::vector<bool> alive(candidates.size(), true);
    for (std::size_t s = 0; s < candidates.size(); ++s) {
        const auto span = reachable_span(candidates, alive, candidates[s].hook, s, module, transport);
        if (span.contains(candidates[s].generator)) alive[s] = false;
    }
    std::vector<HookSummand> kept;
    for (std::size_t s = 0; s < candidates.size(); ++s)
        if (alive[s]) kept.push_back(std::move(candidates[s]));
    return kept;
}

bool is_hook_approximation(const std::vector<HookSummand>& summands, const GridModule& module) {
    const auto& grid = module.grid();
    Transport transport(module);
    for (const auto& s : summands) {
        if (s.generator.size() != module.dim(s.hook.p)) return false;
        // the generator must define a morphism out of k_hook
        if (s.hook.q && !(transport(s.hook.p, *s.hook.q) * s.generator).is_zero()) return false;
    }
    const std::vector<bool> alive(summands.size(), true);
    for (const auto& hook : enumerate_hooks(grid)) {
        const auto span = reachable_span(summands, alive, hook, summands.size(), module, transport);
        const auto basis = hom_space(hook, module);
        for (std::size_t c = 0; c < basis.cols(); ++c)
            if (!span.contains(basis.column(c))) return false;
    }
    return true;
}

bool is_minimal_hook_approximation(const std::vector<HookSummand>& summands, const GridModule& module) {
    if (!is_hook_approximation(summands, module)) return false;
    Transport transport(module);
    const std::vector<bool> alive(summands.size(), true);
    for (std::size_t s = 0; s < summands.size(); ++s) {
        const auto span = reachable_span(summands, alive, summands[s].hook, s, module, transport);
        if (span.contains(summands[s].generator)) return false;
    }
    return true;
}

GridModule hook_sum_module(const Grid& grid, const std::vector<HookInterval>& hooks) {
    GridModule out(grid, std::vector<std::size_t>(grid.cell_count(), 0));
    for (const auto& h : hooks) out = out.direct_sum(GridModule::interval(grid, h));
    return out;
}

// ---------------------------------------------------------------- resolutions

HookResolution minimal_hook_resolution(const GridModule& module, Execution exec) {
    const auto& grid = module.grid();
    const std::size_t max_length = 2 * grid.parameters() - 2;
    HookResolution res;

    GridModule current = module;
    GridMorphism inclusion;  // current -> previous term
    for (std::size_t degree = 0; !current.is_zero(); ++degree) {
        if (degree > max_length)
            throw ResolutionTooLong("hook resolution needs more than " + std::to_string(max_length) + " steps");
        const auto summands = minimal_hook_approximation(current, exec);
        auto hooks = hooks_of(summands);
        auto term = hook_sum_module(grid, hooks);
        Transport transport(current);
        auto eps = approximation_map(summands, term, current, transport);
        auto next = kernel(eps, term);
        if (degree == 0)
            res.augmentation = eps;
        else
            res.differentials.push_back(compose(inclusion, eps));
        res.terms.push_back(std::move(hooks));
        res.term_modules.push_back(std::move(term));
        current = std::move(next.module);
        inclusion = std::move(next.inclusion);
    }
    return res;
}

SignedBarcode signed_barcode(const HookResolution& resolution, const Grid& grid) {
    SignedBarcode out;
    out.n = grid.parameters();
    for (std::size_t i = 0; i < resolution.terms.size(); ++i) {
        const int sign = i % 2 == 0 ? +1 : -1;
        auto& side = sign > 0 ? out.positive : out.negative;
        for (const auto& h : resolution.terms[i]) {
            if (h.q)
                side.push_back(Bar::finite(grid.position(h.p), grid.position(*h.q), sign));
            else
                side.push_back(Bar::upset(grid.position(h.p), sign));
        }
    }
    return out;
}

SignedBarcode signed_barcode(const GridModule& module) {
    return signed_barcode(minimal_hook_resolution(module), module.grid());
}

// ---------------------------------------------------------------- exactness

namespace {

ExactnessReport failure(std::string message, std::size_t degree, std::optional<HookInterval> hook = std::nullopt,
                        std::optional<std::size_t> cell = std::nullopt) {
    return {false, std::move(message), degree, hook, cell};
}

// Rank of f restricted to the subspace spanned by the columns of basis.
std::size_t restricted_rank(const F2Matrix& f, const F2Matrix& basis) { return rank(f * basis); }

}  // namespace

ExactnessReport check_relative_exactness(const HookResolution& res, const GridModule& module) {
    const auto& grid = module.grid();
    const auto len = res.terms.size();
    if (len == 0) {
        if (!module.is_zero()) return failure("empty resolution of a nonzero module", 0);
        return {};
    }
    if (res.term_modules.size() != len || res.differentials.size() + 1 != len)
        return failure("resolution terms and differentials do not line up", 0);

    // maps[i]: P_i -> P_{i-1}, maps[0]: P_0 -> M
    std::vector<const GridMorphism*> maps{&res.augmentation};
    for (const auto& d : res.differentials) maps.push_back(&d);
    auto target_of = [&](std::size_t i) -> const GridModule& { return i == 0 ? module : res.term_modules[i - 1]; };

    for (std::size_t i = 0; i < len; ++i) {
        if (!(res.term_modules[i] == hook_sum_module(grid, res.terms[i])))
            return failure("term does not match its hooks", i);
        if (!is_natural(*maps[i], res.term_modules[i], target_of(i))) return failure("map is not natural", i);
    }

    for (std::size_t t = 0; t < grid.cell_count(); ++t) {
        long long euler = 0;
        for (std::size_t i = 0; i < len; ++i)
            euler += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(res.term_modules[i].dim(t));
        if (euler != static_cast<long long>(module.dim(t)))
            return failure("Euler characteristic differs from the dimension", 0, std::nullopt, t);

        if (rank(maps[0]->components[t]) != module.dim(t)) return failure("augmentation not surjective", 0, std::nullopt, t);
        for (std::size_t i = 0; i < len; ++i) {
            const auto& out = maps[i]->components[t];
            const auto kernel_dim = out.cols() - rank(out);
            const auto incoming = i + 1 < len ? rank(maps[i + 1]->components[t]) : 0;
            if (i + 1 < len && !(out * maps[i + 1]->components[t]).is_zero())
                return failure("consecutive maps do not compose to zero", i + 1, std::nullopt, t);
            if (kernel_dim != incoming) return failure("not exact", i, std::nullopt, t);
        }
    }

    for (const auto& hook : enumerate_hooks(grid)) {
        const auto hom_m = hom_space(hook, module);
        std::vector<F2Matrix> hom_p;
        for (std::size_t i = 0; i < len; ++i) hom_p.push_back(hom_space(hook, res.term_modules[i]));
        if (restricted_rank(maps[0]->components[hook.p], hom_p[0]) != hom_m.cols())
            return failure("Hom from hook not surjective onto the module", 0, hook);
        for (std::size_t i = 0; i < len; ++i) {
            const auto image = maps[i]->components[hook.p] * hom_p[i];
            const auto kernel_dim = hom_p[i].cols() - rank(image);
            const auto incoming = i + 1 < len ? restricted_rank(maps[i + 1]->components[hook.p], hom_p[i + 1]) : 0;
            if (kernel_dim != incoming) return failure("Hom from hook not exact", i, hook);
        }
    }
    return {};
}

// ---------------------------------------------------------------- endomorphisms

std::vector<GridMorphism> endomorphism_basis(const GridModule& module) {
    const auto& grid = module.grid();
    std::vector<std::size_t> offset(grid.cell_count() + 1, 0);
    for (std::size_t t = 0; t < grid.cell_count(); ++t) offset[t + 1] = offset[t] + module.dim(t) * module.dim(t);
    const auto unknowns = offset.back();
    auto var = [&](std::size_t t, std::size_t r, std::size_t c) { return offset[t] + r * module.dim(t) + c; };

    // phi_s A = A phi_t for every arrow A: t -> s
    std::vector<F2Vector> equations;
    for (std::size_t t = 0; t < grid.cell_count(); ++t)
        for (std::size_t a = 0; a < grid.parameters(); ++a) {
            const auto s = grid.step(t, a);
            if (!s) continue;
            const auto& arrow = module.arrow(t, a);
            const auto ds = module.dim(*s);
            const auto dt = module.dim(t);
            for (std::size_t r = 0; r < ds; ++r)
                for (std::size_t c = 0; c < dt; ++c) {
                    F2Vector eq(unknowns);
                    for (std::size_t k = 0; k < ds; ++k)
                        if (arrow.get(k, c)) eq.flip(var(*s, r, k));
                    for (std::size_t k = 0; k < dt; ++k)
                        if (arrow.get(r, k)) eq.flip(var(t, k, c));
                    if (!eq.is_zero()) equations.push_back(std::move(eq));
                }
        }
    F2Matrix system(equations.size(), unknowns);
    for (std::size_t e = 0; e < equations.size(); ++e)
        for (std::size_t v = 0; v < unknowns; ++v)
            if (equations[e].get(v)) system.set(e, v);
    const auto solutions = kernel_basis(system);

    std::vector<GridMorphism> basis;
    for (std::size_t b = 0; b < solutions.cols(); ++b) {
        GridMorphism phi;
        for (std::size_t t = 0; t < grid.cell_count(); ++t) {
            F2Matrix m(module.dim(t), module.dim(t));
            for (std::size_t r = 0; r < module.dim(t); ++r)
                for (std::size_t c = 0; c < module.dim(t); ++c)
                    if (solutions.get(var(t, r, c), b)) m.set(r, c);
            phi.components.push_back(std::move(m));
        }
        basis.push_back(std::move(phi));
    }
    return basis;
}

namespace {

F2Vector flatten(const GridMorphism& phi, std::size_t total) {
    F2Vector v(total);
    std::size_t pos = 0;
    for (const auto& m : phi.components)
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c, ++pos)
                if (m.get(r, c)) v.set(pos);
    return v;
}

std::uint32_t to_mask(const F2Vector& coords) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords.get(i)) mask |= std::uint32_t{1} << i;
    return mask;
}

// Neither nilpotent nor invertible means M splits (Fitting).
bool splits_module(const GridMorphism& phi) {
    bool some_singular = false;
    bool some_non_nilpotent = false;
    for (const auto& m : phi.components) {
        if (m.rows() == 0) continue;
        const auto r = rank(m);
        if (r < m.rows()) some_singular = true;
        F2Matrix power = m;
        for (std::size_t k = 1; k < m.rows(); ++k) power = power * m;
        if (!power.is_zero()) some_non_nilpotent = true;
    }
    return some_singular && some_non_nilpotent;
}

constexpr std::size_t exhaustive_limit = 20;

}  // namespace

bool is_indecomposable(const GridModule& module, std::size_t cap) {
    const auto total = module.total_dimension();
    if (total > cap)
        throw CapExceeded("module total dimension " + std::to_string(total) + " exceeds the cap of " +
                          std::to_string(cap));
    if (total == 0) return false;

    const auto basis = endomorphism_basis(module);
    const auto e = basis.size();
    const auto& grid = module.grid();

    if (e > exhaustive_limit) {
        std::mt19937_64 rng(0x5eed);
        std::bernoulli_distribution coin(0.5);
        for (int trial = 0; trial < 4096; ++trial) {
            GridMorphism x;
            for (std::size_t t = 0; t < grid.cell_count(); ++t) x.components.emplace_back(module.dim(t), module.dim(t));
            for (const auto& b : basis)
                if (coin(rng))
                    for (std::size_t t = 0; t < grid.cell_count(); ++t) x.components[t] += b.components[t];
            if (splits_module(x)) return false;
        }
        return true;
    }

    std::size_t flat = 0;
    for (std::size_t t = 0; t < grid.cell_count(); ++t) flat += module.dim(t) * module.dim(t);
    F2Span span(flat);
    for (const auto& b : basis) span.insert(flatten(b, flat));

    GridMorphism id;
    for (std::size_t t = 0; t < grid.cell_count(); ++t) id.components.push_back(F2Matrix::identity(module.dim(t)));
    const auto identity = to_mask(*span.coordinates(flatten(id, flat)));

    // product[i][j] = coordinates of basis_i * basis_j
    std::vector<std::vector<std::uint32_t>> product(e, std::vector<std::uint32_t>(e));
    for (std::size_t i = 0; i < e; ++i)
        for (std::size_t j = 0; j < e; ++j) {
            const auto coords = span.coordinates(flatten(compose(basis[i], basis[j]), flat));
            if (!coords) throw std::logic_error("is_indecomposable: End(M) not closed under composition");
            product[i][j] = to_mask(*coords);
        }

    // Gray-code walk over all x = sum c_i b_i, tracking the coordinates of x^2.
    std::uint32_t c = 0;
    std::uint32_t square = 0;
    const std::uint64_t count = std::uint64_t{1} << e;
    for (std::uint64_t step = 1; step < count; ++step) {
        const auto i = static_cast<std::size_t>(std::countr_zero(step));
        std::uint32_t delta = product[i][i];
        for (std::uint32_t rest = c & ~(std::uint32_t{1} << i); rest; rest &= rest - 1) {
            const auto j = static_cast<std::size_t>(std::countr_zero(rest));
            delta ^= product[i][j] ^ product[j][i];
        }
        square ^= delta;
        c ^= std::uint32_t{1} << i;
        if (square == c && c != identity) return false;
    }
    return true;
}

}  // namespace persistlab
