#include "hslab/figures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "hslab/errors.hpp"
#include "hslab/field.hpp"
#include "hslab/io.hpp"

namespace hslab::figures {
namespace {

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

// ------------------------------------------------------------------ plot frame

constexpr double kWidth = 640.0, kHeight = 480.0;
constexpr double kLeft = 70.0, kRight = 620.0, kTop = 40.0, kBottom = 430.0;

struct Frame {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;

    double px(double x) const {
        return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft);
    }
    double py(double y) const {
        return kBottom - (y - ymin) / (ymax - ymin) * (kBottom - kTop);
    }
};

void pad_range(double& lo, double& hi) {
    if (hi > lo) {
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    } else {
        const double pad = 0.05 * std::max(std::abs(lo), 1.0);
        lo -= pad;
        hi += pad;
    }
}

void open_svg(std::ostringstream& svg) {
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\""
           " xmlns:xlink=\"http://www.w3.org/1999/xlink\""
           " width=\"640\" height=\"480\" viewBox=\"0 0 640 480\""
           " font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
}

void draw_axes(std::ostringstream& svg, const Frame& f, const std::string& xlabel,
               const std::string& ylabel, const std::string& title) {
    svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
        << kRight - kLeft << "\" height=\"" << kBottom - kTop
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i < 5; ++i) {
        const double frac = i / 4.0;
        const double xv = f.xmin + frac * (f.xmax - f.xmin);
        const double yv = f.ymin + frac * (f.ymax - f.ymin);
        const double xp = f.px(xv);
        const double yp = f.py(yv);
        svg << "<line x1=\"" << fmt(xp) << "\" y1=\"" << kBottom << "\" x2=\""
            << fmt(xp) << "\" y2=\"" << kBottom + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt(xp) << "\" y=\"" << kBottom + 18
            << "\" text-anchor=\"middle\">" << fmt(xv, "%.3g") << "</text>\n";
        svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(yp) << "\" x2=\""
            << kLeft << "\" y2=\"" << fmt(yp) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(yp + 4)
            << "\" text-anchor=\"end\">" << fmt(yv, "%.3g") << "</text>\n";
    }
    svg << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kBottom + 36
        << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    svg << "<text x=\"18\" y=\"" << (kTop + kBottom) / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << (kTop + kBottom) / 2 << ")\">" << ylabel << "</text>\n";
    if (!title.empty())
        svg << "<text x=\"" << (kLeft + kRight) / 2
            << "\" y=\"24\" text-anchor=\"middle\">" << title << "</text>\n";
}

void close_svg(std::ostringstream& svg, const std::filesystem::path& out_path) {
    svg << "</svg>\n";
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorCode::Io, out_path.string() + ": cannot open for writing");
    const std::string body = svg.str();
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out)
        fail(ErrorCode::Io, out_path.string() + ": write failed");
}

void require_exists(const std::string& path) {
    if (!std::filesystem::exists(path))
        fail(ErrorCode::MissingArtifact, path + ": artifact not found");
}

// fixed palette, cycled per artifact
constexpr std::array<const char*, 8> kPalette = {
    "#1b6ca8", "#c0392b", "#1e8449", "#8e44ad",
    "#d68910", "#17808a", "#6d4c41", "#34495e"};

// --------------------------------------------------------------- PNG encoding
// Tiny RGB8 encoder: zlib stream of stored (uncompressed) deflate blocks.
// Good enough for an embedded raster and fully deterministic.

std::uint32_t crc32(const std::uint8_t* data, std::size_t n) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k)
                c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t c = 0xFFFFFFFFu;
    for (std::size_t i = 0; i < n; ++i)
        c = table[(c ^ data[i]) & 0xFFu] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

std::uint32_t adler32(const std::uint8_t* data, std::size_t n) {
    std::uint32_t a = 1, b = 0;
    for (std::size_t i = 0; i < n; ++i) {
        a = (a + data[i]) % 65521u;
        b = (b + a) % 65521u;
    }
    return (b << 16) | a;
}

void put_be32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    v.push_back(static_cast<std::uint8_t>(x >> 24));
    v.push_back(static_cast<std::uint8_t>(x >> 16));
    v.push_back(static_cast<std::uint8_t>(x >> 8));
    v.push_back(static_cast<std::uint8_t>(x));
}

void put_chunk(std::vector<std::uint8_t>& png, const char* type,
               const std::vector<std::uint8_t>& data) {
    put_be32(png, static_cast<std::uint32_t>(data.size()));
    const std::size_t start = png.size();
    png.insert(png.end(), type, type + 4);
    png.insert(png.end(), data.begin(), data.end());
    put_be32(png, crc32(png.data() + start, png.size() - start));
}

std::vector<std::uint8_t> encode_png_rgb(std::size_t w, std::size_t h,
                                         const std::vector<std::uint8_t>& rgb) {
    std::vector<std::uint8_t> raw;
    raw.reserve(h * (1 + 3 * w));
    for (std::size_t r = 0; r < h; ++r) {
        raw.push_back(0); // filter: none
        raw.insert(raw.end(), rgb.begin() + static_cast<std::ptrdiff_t>(r * 3 * w),
                   rgb.begin() + static_cast<std::ptrdiff_t>((r + 1) * 3 * w));
    }

    std::vector<std::uint8_t> z;
    z.push_back(0x78);
    z.push_back(0x01);
    std::size_t off = 0;
    do {
        const std::size_t n = std::min<std::size_t>(65535, raw.size() - off);
        const bool last = off + n == raw.size();
        z.push_back(last ? 1 : 0);
        z.push_back(static_cast<std::uint8_t>(n & 0xFF));
        z.push_back(static_cast<std::uint8_t>((n >> 8) & 0xFF));
        z.push_back(static_cast<std::uint8_t>(~n & 0xFF));
        z.push_back(static_cast<std::uint8_t>((~n >> 8) & 0xFF));
        z.insert(z.end(), raw.begin() + static_cast<std::ptrdiff_t>(off),
                 raw.begin() + static_cast<std::ptrdiff_t>(off + n));
        off += n;
    } while (off < raw.size());
    put_be32(z, adler32(raw.data(), raw.size()));

    std::vector<std::uint8_t> png = {137, 80, 78, 71, 13, 10, 26, 10};
    std::vector<std::uint8_t> ihdr;
    put_be32(ihdr, static_cast<std::uint32_t>(w));
    put_be32(ihdr, static_cast<std::uint32_t>(h));
    ihdr.push_back(8); // bit depth
    ihdr.push_back(2); // RGB
    ihdr.push_back(0);
    ihdr.push_back(0);
    ihdr.push_back(0);
    put_chunk(png, "IHDR", ihdr);
    put_chunk(png, "IDAT", z);
    put_chunk(png, "IEND", {});
    return png;
}

std::string base64(const std::vector<std::uint8_t>& data) {
    static const char tbl[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= data.size(); i += 3) {
        const std::uint32_t v = (static_cast<std::uint32_t>(data[i]) << 16) |
                                (static_cast<std::uint32_t>(data[i + 1]) << 8) |
                                data[i + 2];
        out += tbl[(v >> 18) & 63];
        out += tbl[(v >> 12) & 63];
        out += tbl[(v >> 6) & 63];
        out += tbl[v & 63];
    }
    if (i + 1 == data.size()) {
        const std::uint32_t v = static_cast<std::uint32_t>(data[i]) << 16;
        out += tbl[(v >> 18) & 63];
        out += tbl[(v >> 12) & 63];
        out += "==";
    } else if (i + 2 == data.size()) {
        const std::uint32_t v = (static_cast<std::uint32_t>(data[i]) << 16) |
                                (static_cast<std::uint32_t>(data[i + 1]) << 8);
        out += tbl[(v >> 18) & 63];
        out += tbl[(v >> 12) & 63];
        out += tbl[(v >> 6) & 63];
        out += '=';
    }
    return out;
}

// diverging blue-white-red map on t in [-1, 1]
std::array<std::uint8_t, 3> diverging(double t) {
    constexpr double lo[3] = {33, 102, 172};
    constexpr double mid[3] = {247, 247, 247};
    constexpr double hi[3] = {178, 24, 43};
    t = std::clamp(t, -1.0, 1.0);
    std::array<std::uint8_t, 3> c{};
    for (int k = 0; k < 3; ++k) {
        const double v =
            t < 0 ? mid[k] + (-t) * (lo[k] - mid[k]) : mid[k] + t * (hi[k] - mid[k]);
        c[k] = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
    }
    return c;
}

// ------------------------------------------------------------------ renderers

using PointList = std::vector<std::pair<double, double>>;

PointList overlay_points(const io::CsvTable& t, const std::string& path) {
    if (!t.has_col("x") || !t.has_col("y"))
        fail(ErrorCode::MalformedCsv, path + ": need x and y columns");
    const std::size_t cx = t.col("x"), cy = t.col("y");
    PointList pts;
    if (t.has_col("step") && t.has_col("marker_index")) {
        const std::size_t cs = t.col("step"), cm = t.col("marker_index");
        double smax = -std::numeric_limits<double>::infinity();
        for (const auto& row : t.rows)
            smax = std::max(smax, row[cs]);
        std::vector<std::pair<double, std::pair<double, double>>> keyed;
        for (const auto& row : t.rows)
            if (row[cs] == smax)
                keyed.emplace_back(row[cm], std::make_pair(row[cx], row[cy]));
        std::stable_sort(keyed.begin(), keyed.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [key, p] : keyed)
            pts.push_back(p);
    } else {
        for (const auto& row : t.rows)
            pts.emplace_back(row[cx], row[cy]);
    }
    if (pts.size() < 2)
        fail(ErrorCode::MalformedCsv, path + ": need at least two marker points");
    return pts;
}

void polyline(std::ostringstream& svg, const Frame& f, const PointList& pts,
              const char* color) {
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i)
            svg << " ";
        svg << fmt(f.px(pts[i].first)) << "," << fmt(f.py(pts[i].second));
    }
    svg << "\"/>\n";
}

void render_overlay(std::span<const std::string> artifacts,
                    const std::filesystem::path& out_path) {
    if (artifacts.empty())
        fail(ErrorCode::MissingArtifact, "interface overlay needs at least one CSV");
    std::vector<PointList> curves;
    for (const auto& path : artifacts) {
        require_exists(path);
        curves.push_back(overlay_points(io::read_csv(path), path));
    }

    Frame f;
    f.xmin = f.ymin = std::numeric_limits<double>::infinity();
    f.xmax = f.ymax = -std::numeric_limits<double>::infinity();
    for (const auto& c : curves)
        for (const auto& [x, y] : c) {
            f.xmin = std::min(f.xmin, x);
            f.xmax = std::max(f.xmax, x);
            f.ymin = std::min(f.ymin, y);
            f.ymax = std::max(f.ymax, y);
        }
    pad_range(f.xmin, f.xmax);
    pad_range(f.ymin, f.ymax);

    std::ostringstream svg;
    open_svg(svg);
    draw_axes(svg, f, "x / W", "y / W", "interface overlay");
    for (std::size_t i = 0; i < curves.size(); ++i)
        polyline(svg, f, curves[i], kPalette[i % kPalette.size()]);
    close_svg(svg, out_path);
}

void render_heatmap(std::span<const std::string> artifacts,
                    const std::filesystem::path& out_path) {
    if (artifacts.size() != 1)
        fail(ErrorCode::MissingArtifact, "field heatmap takes exactly one snapshot");
    require_exists(artifacts[0]);
    const io::FieldSnapshot snap = io::read_field_snapshot(artifacts[0]);
    const ScalarField2D& field = snap.field;

    double vmax = 0.0;
    for (double v : field.values())
        vmax = std::max(vmax, std::abs(v));

    const std::size_t nx = field.nx(), ny = field.ny();
    std::vector<std::uint8_t> rgb(3 * nx * ny);
    for (std::size_t r = 0; r < ny; ++r) {
        const std::size_t j = ny - 1 - r; // raster rows run top-down, field y is up
        for (std::size_t i = 0; i < nx; ++i) {
            const double t = vmax > 0.0 ? field.at(i, j) / vmax : 0.0;
            const auto c = diverging(t);
            const std::size_t o = 3 * (r * nx + i);
            rgb[o] = c[0];
            rgb[o + 1] = c[1];
            rgb[o + 2] = c[2];
        }
    }
    const std::string uri = "data:image/png;base64," + base64(encode_png_rgb(nx, ny, rgb));

    Frame f{0.0, field.Lx(), 0.0, field.Ly()};
    std::ostringstream svg;
    open_svg(svg);
    svg << "<image x=\"" << fmt(f.px(0.0)) << "\" y=\"" << fmt(f.py(field.Ly()))
        << "\" width=\"" << fmt(f.px(field.Lx()) - f.px(0.0)) << "\" height=\""
        << fmt(f.py(0.0) - f.py(field.Ly()))
        << "\" preserveAspectRatio=\"none\" image-rendering=\"pixelated\" xlink:href=\""
        << uri << "\"/>\n";
    draw_axes(svg, f, "x / W", "y / W",
              "field at t = " + fmt(snap.t, "%.6g") + ", eps = " + fmt(snap.eps, "%.6g") +
                  ", max|value| = " + fmt(vmax, "%.3g"));
    close_svg(svg, out_path);
}

void render_dispersion(std::span<const std::string> artifacts,
                       const std::filesystem::path& out_path) {
    if (artifacts.empty())
        fail(ErrorCode::MissingArtifact, "dispersion curve needs at least one table");
    std::vector<PointList> series;
    for (const auto& path : artifacts) {
        require_exists(path);
        const io::CsvTable t = io::read_csv(path);
        std::size_t ck = 0, cr = 1;
        if (t.has_col("k") && t.has_col("rate")) {
            ck = t.col("k");
            cr = t.col("rate");
        } else if (t.columns.size() < 2) {
            fail(ErrorCode::MalformedCsv, path + ": need k and rate columns");
        }
        PointList pts;
        for (const auto& row : t.rows)
            pts.emplace_back(row[ck], row[cr]);
        if (pts.empty())
            fail(ErrorCode::MalformedCsv, path + ": table has no rows");
        series.push_back(std::move(pts));
    }

    Frame f;
    f.xmin = f.ymin = std::numeric_limits<double>::infinity();
    f.xmax = f.ymax = -std::numeric_limits<double>::infinity();
    for (const auto& s : series)
        for (const auto& [k, rate] : s) {
            f.xmin = std::min(f.xmin, k);
            f.xmax = std::max(f.xmax, k);
            f.ymin = std::min(f.ymin, rate);
            f.ymax = std::max(f.ymax, rate);
        }
    pad_range(f.xmin, f.xmax);
    pad_range(f.ymin, f.ymax);

    std::ostringstream svg;
    open_svg(svg);
    draw_axes(svg, f, "k W", "growth rate (W / U* units)", "linear dispersion");
    if (f.ymin < 0.0 && f.ymax > 0.0)
        svg << "<line x1=\"" << kLeft << "\" y1=\"" << fmt(f.py(0.0)) << "\" x2=\""
            << kRight << "\" y2=\"" << fmt(f.py(0.0))
            << "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % kPalette.size()];
        polyline(svg, f, series[s], color);
        for (const auto& [k, rate] : series[s])
            svg << "<circle cx=\"" << fmt(f.px(k)) << "\" cy=\"" << fmt(f.py(rate))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    close_svg(svg, out_path);
}

} // namespace

const char* to_string(FigureKind kind) {
    switch (kind) {
    case FigureKind::InterfaceOverlay: return "interface-overlay";
    case FigureKind::FieldHeatmap: return "field-heatmap";
    case FigureKind::DispersionCurve: return "dispersion-curve";
    }
    return "?";
}

FigureKind kind_from_string(const std::string& name) {
    if (name == "interface-overlay")
        return FigureKind::InterfaceOverlay;
    if (name == "field-heatmap")
        return FigureKind::FieldHeatmap;
    if (name == "dispersion-curve")
        return FigureKind::DispersionCurve;
    fail(ErrorCode::ConfigInvalid, "unknown figure kind '" + name + "'");
}

void emit_figure(std::span<const std::string> artifacts, FigureKind kind,
                 const std::filesystem::path& out_path) {
    switch (kind) {
    case FigureKind::InterfaceOverlay: render_overlay(artifacts, out_path); return;
    case FigureKind::FieldHeatmap: render_heatmap(artifacts, out_path); return;
    case FigureKind::DispersionCurve: render_dispersion(artifacts, out_path); return;
    }
    fail(ErrorCode::ConfigInvalid, "unknown figure kind");
}

} // namespace hslab::figures
