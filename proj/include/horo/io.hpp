#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "horo/diagnostics.hpp"
#include "horo/flows.hpp"
#include "horo/models.hpp"

namespace horo {

/// %.17g: round-trips every double.
std::string format_double(double x);

// Orbit CSV: `#` legend lines, then `time,c1,...,cN`, one row per sample.
void write_orbit_header(std::ostream& os, const Model& model, const FlowKind& flow, long long steps,
                        std::uint64_t seed);
void write_orbit_row(std::ostream& os, const Model& model, const OrbitSample& s);
void write_orbit_csv(std::ostream& os, const Model& model, const OrbitSegment& orbit);

struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Throws ParseError on a missing header, ragged rows or non-numeric cells.
CsvTable parse_csv(std::istream& in);

/// Flat object: model, flow, steps, seed, bins, visited, total, fraction.
std::string density_json(const DensityReport& r);

/// Scatter of two columns with axis labels; byte-identical for equal input.
/// Throws InvalidArgument for unknown columns.
std::string svg_plot(const CsvTable& t, const std::string& xcol, const std::string& ycol);

/// Writes to a sibling temp file and renames over path; the temp file is
/// removed if fill throws.
void write_stream_atomic(const std::string& path, const std::function<void(std::ostream&)>& fill);
void write_file_atomic(const std::string& path, const std::string& content);

/// `key = value` lines; '#' starts a comment. Throws ParseError on a line
/// without '=', an empty key or a repeated key.
std::map<std::string, std::string> parse_key_values(std::istream& in);

/// "a b c d" -> (a, b; c, d) over Z.
IntMatrix2 parse_int_matrix(const std::string& s);

struct ModelDescriptor {
    std::string model = "octagon";
    IntMatrix2 A{2, 1, 1, 1};
    std::uint64_t seed = 0;
};

/// Names: t3a, octagon, octagon_so3, octagon_boundary, modular,
/// modular_boundary. Throws InvalidArgument on an unknown name.
Model build_model(const ModelDescriptor& d);

}  // namespace horo
