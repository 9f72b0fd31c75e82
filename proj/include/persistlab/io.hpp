#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "persistlab/barcode.hpp"
#include "persistlab/filtration.hpp"
#include "persistlab/grid_module.hpp"
#include "persistlab/lift.hpp"
#include "persistlab/optim.hpp"

// Text formats. Malformed text raises ParseError; well-formed text describing
// an invalid object (non-monotone values, a non-commuting square) raises the
// corresponding domain Error.
namespace persistlab::io {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

/// One point per line, comma separated. Blank lines and lines starting with
/// '#' are skipped.
PointCloud parse_points_csv(const std::string& text);
std::string points_csv(const PointCloud& cloud);

MonotoneFiltration parse_filtration_json(const std::string& text);
std::string filtration_json(const MonotoneFiltration& filtration);

/// Barcodes and signed barcodes share one format; a file is signed when it
/// says "signed": true or holds a bar of sign -1. Unsigned bars land in
/// `positive`.
struct BarcodeFile {
    bool is_signed = false;
    SignedBarcode bars;

    Barcode unsigned_barcode() const { return {bars.n, bars.positive}; }
};
BarcodeFile parse_barcode_json(const std::string& text);
std::string barcode_json(const Barcode& barcode);
std::string barcode_json(const SignedBarcode& barcode);

/// Arrows not listed are zero maps. Does not check commutativity.
GridModule parse_grid_module_json(const std::string& text);
std::string grid_module_json(const GridModule& module);

std::string lifted_json(const LiftedBarcode& lifted);
LiftedBarcode parse_lifted_json(const std::string& text);

std::string jacobian_csv(const Jacobian& jacobian);
std::string trace_csv(const std::vector<TracePoint>& trace);

/// Keys: seed, steps, alpha0, gamma, sigma, lambda, r, and optionally bound
/// and burn_in. Unknown keys are rejected.
ExperimentConfig parse_config_json(const std::string& text);

/// One element of class "bar" per bar. n = 1: persistence diagram with the
/// diagonal, upsets drawn on a line above the plot. n = 2: segments from
/// birth to death, upsets as diagonal rays; positive blue, negative red.
std::string barcode_svg(const Barcode& barcode, const std::string& title = "");
std::string barcode_svg(const SignedBarcode& barcode, const std::string& title = "");

}  // namespace persistlab::io
