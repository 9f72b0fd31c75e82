// persistlab command-line front end. Exit codes: 0 success, 1 domain error,
// 2 usage or parse error.
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "persistlab/errors.hpp"
#include "persistlab/hook_resolution.hpp"
#include "persistlab/io.hpp"
#include "persistlab/lift.hpp"
#include "persistlab/metrics.hpp"
#include "persistlab/optim.hpp"
#include "persistlab/persistence.hpp"

namespace fs = std::filesystem;
using namespace persistlab;

namespace {

void emit(const std::string& text, const std::string& path) {
    if (path.empty())
        std::cout << text;
    else
        io::write_file(path, text);
}

int cmd_rips(const std::string& points, std::size_t maxdim, const std::string& out) {
    const auto cloud = io::parse_points_csv(io::read_file(points));
    emit(io::filtration_json(rips_filtration(cloud, maxdim)), out);
    return 0;
}

int cmd_barcode(const std::string& filt, std::size_t degree, const std::string& out, const std::string& svg) {
    const auto f = io::parse_filtration_json(io::read_file(filt));
    if (f.parameters() != 1)
        throw Error("barcode needs a 1-parameter filtration; for n = " + std::to_string(f.parameters()) +
                    " build a grid module and use signed-barcode");
    const auto bars = barcode(reduce(f, degree), degree);
    emit(io::barcode_json(bars), out);
    if (!svg.empty()) io::write_file(svg, io::barcode_svg(bars, "H" + std::to_string(degree)));
    return 0;
}

void print_witness(const PartialMatching& m) {
    for (auto [i, j] : m.matched) std::cout << "match " << i << " " << j << "\n";
    for (auto i : m.unmatched1) std::cout << "delete a " << i << "\n";
    for (auto j : m.unmatched2) std::cout << "delete b " << j << "\n";
}

int cmd_distance(const std::string& a_path, const std::string& b_path, const std::string& metric, bool witness) {
    const auto a = io::parse_barcode_json(io::read_file(a_path));
    const auto b = io::parse_barcode_json(io::read_file(b_path));
    if (a.bars.n != b.bars.n) throw Error("barcodes have different parameter counts");
    if (metric == "signed") {
        if (!a.is_signed || !b.is_signed) throw Error("--metric signed needs two signed barcodes");
        std::cout << io::format_double(signed_bottleneck(a.bars, b.bars)) << "\n";
        return 0;
    }
    if (a.is_signed || b.is_signed) throw Error("--metric " + metric + " needs unsigned barcodes; use --metric signed");
    const auto result = metric == "dist1" ? dist1(a.unsigned_barcode(), b.unsigned_barcode())
                                          : bottleneck(a.unsigned_barcode(), b.unsigned_barcode());
    std::cout << io::format_double(result.value) << "\n";
    if (witness) print_witness(result.matching);
    return 0;
}

int cmd_signed_barcode(const std::string& module_path, const std::string& out, const std::string& svg) {
    const auto module = io::parse_grid_module_json(io::read_file(module_path));
    module.validate();
    const auto res = minimal_hook_resolution(module);
    const auto bars = signed_barcode(res, module.grid());
    emit(io::barcode_json(bars), out);
    if (!svg.empty()) io::write_file(svg, io::barcode_svg(bars, "signed barcode"));
    std::cerr << "resolution length " << res.length() << ", " << bars.positive.size() << " positive, "
              << bars.negative.size() << " negative bars\n";
    return 0;
}

int cmd_optimize(const std::string& config_path, const std::string& out_dir) {
    auto config = io::parse_config_json(io::read_file(config_path));
    if (const char* env = std::getenv("PERSISTLAB_SEED")) {
        try {
            std::size_t used = 0;
            config.seed = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
        } catch (const std::exception&) {
            throw ParseError(std::string("PERSISTLAB_SEED is not an unsigned integer: ") + env);
        }
    }
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    auto warn = [](const DescentState& s) {
        std::cerr << "warning: iterates left the bounded region at step " << s.i << " (sup norm "
                  << io::format_double(s.sup_norm) << "); the descent may not converge\n";
    };
    const auto result = experiment_holes(config, warn);
    io::write_file(dir / "initial_points.csv", io::points_csv(result.initial));
    io::write_file(dir / "initial_barcode.json", io::barcode_json(result.initial_barcode));
    io::write_file(dir / "initial_barcode.svg", io::barcode_svg(result.initial_barcode, "H1 before"));
    if (config.steps > 0) {
        io::write_file(dir / "trace.csv", io::trace_csv(result.state.trace));
        io::write_file(dir / "final_points.csv", io::points_csv(result.final));
        io::write_file(dir / "final_barcode.json", io::barcode_json(result.final_barcode));
        io::write_file(dir / "final_barcode.svg", io::barcode_svg(result.final_barcode, "H1 after"));
    }
    std::cout << "total persistence " << io::format_double(total_persistence(result.initial_barcode)) << " -> "
              << io::format_double(total_persistence(result.final_barcode)) << " after " << config.steps
              << " steps\n";
    return 0;
}

int cmd_check_grad(const std::string& points, std::size_t degree, double tolerance, double step) {
    const auto cloud = io::parse_points_csv(io::read_file(points));
    const auto jac = pers_jacobian(cloud, degree);
    const auto analytic = chain_rule(total_persistence_gradient(jac.lifted.k), jac.matrix);

    const double h = step * std::max(cloud.diameter(), 1e-300);
    auto value = [&](const std::vector<double>& x) {
        return total_persistence(lifted_rips_barcode(PointCloud(cloud.dim(), x), degree));
    };
    double worst = 0.0;
    double scale = 1.0;
    for (double g : analytic) scale = std::max(scale, std::abs(g));
    for (std::size_t c = 0; c < analytic.size(); ++c) {
        auto plus = cloud.coords();
        auto minus = cloud.coords();
        plus[c] += h;
        minus[c] -= h;
        const double fd = (value(plus) - value(minus)) / (2 * h);
        worst = std::max(worst, std::abs(fd - analytic[c]) / scale);
    }
    std::cout << "max relative error " << io::format_double(worst) << "\n";
    if (worst > tolerance) {
        std::cerr << "gradient check failed: error above tolerance " << io::format_double(tolerance) << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"persistlab: persistence barcodes, signed barcodes, distances and descent"};
    app.require_subcommand(1);

    std::string points, out, filt, svg, a_path, b_path, metric = "bottleneck", module, config, out_dir;
    std::size_t maxdim = 2, degree = 1;
    bool witness = false;
    double eps = 1e-6, step = 1e-6;

    auto* rips = app.add_subcommand("rips", "Rips filtration of a point cloud");
    rips->add_option("--points", points, "point CSV")->required();
    rips->add_option("--maxdim", maxdim, "largest simplex dimension")->capture_default_str();
    rips->add_option("--out", out, "filtration JSON (default stdout)");

    auto* bc = app.add_subcommand("barcode", "barcode of a 1-parameter filtration");
    bc->add_option("--filt", filt, "filtration JSON")->required();
    bc->add_option("--degree", degree, "homology degree")->capture_default_str();
    bc->add_option("--out", out, "barcode JSON (default stdout)");
    bc->add_option("--svg", svg, "persistence diagram SVG");

    auto* dist = app.add_subcommand("distance", "distance between two barcodes");
    dist->add_option("--a", a_path, "first barcode JSON")->required();
    dist->add_option("--b", b_path, "second barcode JSON")->required();
    dist->add_option("--metric", metric, "bottleneck, dist1 or signed")
        ->check(CLI::IsMember({"bottleneck", "dist1", "signed"}))
        ->capture_default_str();
    dist->add_flag("--witness", witness, "print the optimal matching");

    auto* sb = app.add_subcommand("signed-barcode", "signed barcode of a grid module");
    sb->add_option("--module", module, "grid module JSON")->required();
    sb->add_option("--out", out, "signed barcode JSON (default stdout)");
    sb->add_option("--svg", svg, "signed barcode SVG");

    auto* opt = app.add_subcommand("optimize", "maximize degree-1 total persistence of a random cloud");
    opt->add_option("--config", config, "run config JSON")->required();
    opt->add_option("--out-dir", out_dir, "artifact directory")->required();

    auto* cg = app.add_subcommand("check-grad", "compare the total persistence gradient with finite differences");
    cg->add_option("--points", points, "point CSV")->required();
    cg->add_option("--degree", degree, "homology degree")->capture_default_str();
    cg->add_option("--eps", eps, "tolerance on the relative error")->check(CLI::PositiveNumber)->capture_default_str();
    cg->add_option("--step", step, "finite-difference step relative to the cloud diameter")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*rips) return cmd_rips(points, maxdim, out);
        if (*bc) return cmd_barcode(filt, degree, out, svg);
        if (*dist) return cmd_distance(a_path, b_path, metric, witness);
        if (*sb) return cmd_signed_barcode(module, out, svg);
        if (*opt) return cmd_optimize(config, out_dir);
        if (*cg) return cmd_check_grad(points, degree, eps, step);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const StratumBoundary& e) {
        std::cerr << "error: stratum boundary: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
