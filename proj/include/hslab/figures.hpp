#pragma once

#include <filesystem>
#include <span>
#include <string>

namespace hslab::figures {

/// What to draw from a set of run artifacts.
enum class FigureKind {
    InterfaceOverlay, ///< one polyline per CSV of interface markers
    FieldHeatmap,     ///< a field snapshot rendered as an embedded raster
    DispersionCurve,  ///< growth rate vs wavenumber from a two-column table
};

const char* to_string(FigureKind kind);
FigureKind kind_from_string(const std::string& name);

/// Renders `artifacts` as a standalone SVG at `out_path`.
///
/// InterfaceOverlay accepts marker CSVs: files with step/marker_index columns
/// contribute their final recorded step; plain x,y files are drawn in row
/// order.  FieldHeatmap takes exactly one field-snapshot path.
/// DispersionCurve takes tables with k and rate columns (or the first two
/// columns of each file).  Output is byte-deterministic for fixed inputs.
///
/// Throws MissingArtifact if a path does not exist, MalformedCsv/Io if an
/// artifact cannot be interpreted.
void emit_figure(std::span<const std::string> artifacts, FigureKind kind,
                 const std::filesystem::path& out_path);

} // namespace hslab::figures
