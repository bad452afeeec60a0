#pragma once

// Filled contour plot of a field on the sphere in equirectangular
// projection, written as standalone SVG.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "tetra/spectral.hpp"
#include "tetra/verify.hpp"

namespace tetra {

/// Samples on a uniform latitude-longitude lattice, poles and both
/// longitude seams included.
struct LatLonSamples {
    int nLat = 0;
    int nLon = 0;
    std::vector<double> theta;
    std::vector<double> phi;
    std::vector<double> values; // row-major, latitude first

    [[nodiscard]] double at(int i, int j) const { return values[static_cast<std::size_t>(i * nLon + j)]; }
};

inline LatLonSamples sample_lat_lon(const SpectralField& u, int nLat = 91, int nLon = 181)
{
    const double pi = std::numbers::pi;
    LatLonSamples s;
    s.nLat = nLat;
    s.nLon = nLon;
    for (int i = 0; i < nLat; ++i)
        s.theta.push_back(-pi / 2 + pi * i / (nLat - 1));
    for (int j = 0; j < nLon; ++j)
        s.phi.push_back(2.0 * pi * j / (nLon - 1));
    s.values.reserve(static_cast<std::size_t>(nLat * nLon));
    for (int i = 0; i < nLat; ++i)
        for (int j = 0; j < nLon; ++j)
            s.values.push_back(evaluate(u, s.theta[static_cast<std::size_t>(i)], s.phi[static_cast<std::size_t>(j)]).value);
    return s;
}

struct ContourOptions {
    int levels = 21;
    double width = 720.0;
    double height = 360.0;
    std::string title;
};

namespace detail {

struct Vertex {
    double x, y, v;
};

// Sutherland-Hodgman against v >= level (keepAbove) or v <= level.
inline std::vector<Vertex> clip_level(const std::vector<Vertex>& poly, double level, bool keepAbove)
{
    std::vector<Vertex> out;
    const auto inside = [&](const Vertex& p) { return keepAbove ? p.v >= level : p.v <= level; };
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const Vertex& a = poly[k];
        const Vertex& b = poly[(k + 1) % poly.size()];
        const bool ia = inside(a), ib = inside(b);
        if (ia)
            out.push_back(a);
        if (ia != ib) {
            const double t = (level - a.v) / (b.v - a.v);
            out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), level});
        }
    }
    return out;
}

// Blue - white - red, s in [0, 1].
inline std::string diverging_color(double s)
{
    s = std::clamp(s, 0.0, 1.0);
    constexpr std::array<double, 3> lo{33, 102, 172}, mid{247, 247, 247}, hi{178, 24, 43};
    std::array<int, 3> c{};
    for (std::size_t k = 0; k < 3; ++k) {
        const double v = s < 0.5 ? lo[k] + (mid[k] - lo[k]) * (s / 0.5) : mid[k] + (hi[k] - mid[k]) * ((s - 0.5) / 0.5);
        c[k] = static_cast<int>(std::lround(v));
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
    return buf;
}

inline std::string fmt(double v, const char* spec = "%.2f")
{
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

} // namespace detail

/// Writes the contour plot. Extrema are marked, and the legend reports the
/// largest |value| among northern and southern extrema.
inline void write_contour_svg(std::ostream& os, const LatLonSamples& s, const std::vector<CriticalPoint>& extrema,
                              const ContourOptions& opt = {})
{
    const double pi = std::numbers::pi;
    const double W = opt.width, H = opt.height, legendH = 70.0;
    double amax = 0.0;
    for (double v : s.values)
        amax = std::max(amax, std::abs(v));

    const auto px = [&](double phi) { return W * phi / (2.0 * pi); };
    const auto py = [&](double theta) { return H * (0.5 - theta / pi); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H + legendH
       << "\" viewBox=\"0 0 " << W << ' ' << H + legendH << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"#f7f7f7\" stroke=\"none\"/>\n";

    const int nb = opt.levels;
    std::vector<double> edges(static_cast<std::size_t>(nb + 1));
    for (int k = 0; k <= nb; ++k)
        edges[static_cast<std::size_t>(k)] = -amax + 2.0 * amax * k / nb;
    const auto bandOf = [&](double v) {
        return std::clamp(static_cast<int>(std::floor((v + amax) / (2.0 * amax) * nb)), 0, nb - 1);
    };
    const auto colorOf = [&](int b) { return detail::diverging_color((b + 0.5) / nb); };

    if (amax > 0.0) {
        std::vector<std::string> paths(static_cast<std::size_t>(nb));
        const auto emit = [&](int b, const std::vector<detail::Vertex>& poly) {
            if (poly.size() < 3)
                return;
            auto& p = paths[static_cast<std::size_t>(b)];
            p += 'M';
            for (std::size_t k = 0; k < poly.size(); ++k) {
                if (k > 0)
                    p += 'L';
                p += detail::fmt(poly[k].x) + ',' + detail::fmt(poly[k].y);
            }
            p += 'Z';
        };
        for (int i = 0; i + 1 < s.nLat; ++i)
            for (int j = 0; j + 1 < s.nLon; ++j) {
                const detail::Vertex v00{px(s.phi[j]), py(s.theta[i]), s.at(i, j)};
                const detail::Vertex v01{px(s.phi[j + 1]), py(s.theta[i]), s.at(i, j + 1)};
                const detail::Vertex v10{px(s.phi[j]), py(s.theta[i + 1]), s.at(i + 1, j)};
                const detail::Vertex v11{px(s.phi[j + 1]), py(s.theta[i + 1]), s.at(i + 1, j + 1)};
                const int b00 = bandOf(v00.v);
                if (b00 == bandOf(v01.v) && b00 == bandOf(v10.v) && b00 == bandOf(v11.v)) {
                    emit(b00, {v00, v01, v11, v10});
                    continue;
                }
                for (const auto& tri : {std::vector<detail::Vertex>{v00, v01, v11}, std::vector<detail::Vertex>{v00, v11, v10}}) {
                    double lo = tri[0].v, hi = tri[0].v;
                    for (const auto& t : tri) {
                        lo = std::min(lo, t.v);
                        hi = std::max(hi, t.v);
                    }
                    for (int b = bandOf(lo); b <= bandOf(hi); ++b) {
                        auto poly = detail::clip_level(tri, edges[static_cast<std::size_t>(b)], true);
                        poly = detail::clip_level(poly, edges[static_cast<std::size_t>(b + 1)], false);
                        emit(b, poly);
                    }
                }
            }
        for (int b = 0; b < nb; ++b)
            if (!paths[static_cast<std::size_t>(b)].empty())
                os << "<path fill=\"" << colorOf(b) << "\" stroke=\"" << colorOf(b) << "\" stroke-width=\"0.3\" d=\""
                   << paths[static_cast<std::size_t>(b)] << "\"/>\n";
    }

    // graticule
    os << "<g stroke=\"#555\" stroke-width=\"0.5\" stroke-dasharray=\"3,3\" fill=\"none\">\n";
    for (int k = 1; k < 4; ++k)
        os << "<line x1=\"" << W * k / 4 << "\" y1=\"0\" x2=\"" << W * k / 4 << "\" y2=\"" << H << "\"/>\n";
    os << "<line x1=\"0\" y1=\"" << H / 2 << "\" x2=\"" << W << "\" y2=\"" << H / 2 << "\"/>\n</g>\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"none\" stroke=\"#222\"/>\n";

    double north = 0.0, south = 0.0;
    for (const auto& c : extrema) {
        double& slot = c.theta > 0 ? north : south;
        slot = std::max(slot, std::abs(c.value));
        os << "<circle cx=\"" << detail::fmt(px(c.phi)) << "\" cy=\"" << detail::fmt(py(c.theta))
           << "\" r=\"4\" fill=\"" << (c.maximum ? "#000" : "#fff") << "\" stroke=\"#000\"/>\n";
    }

    // legend
    const double barY = H + 12.0, barH = 12.0, barW = W * 0.6;
    for (int b = 0; b < nb; ++b)
        os << "<rect x=\"" << detail::fmt(10.0 + barW * b / nb) << "\" y=\"" << barY << "\" width=\""
           << detail::fmt(barW / nb + 0.5) << "\" height=\"" << barH << "\" fill=\"" << colorOf(b) << "\"/>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
    os << "<text x=\"10\" y=\"" << barY + barH + 14 << "\">" << detail::fmt(-amax, "%.4g") << "</text>\n";
    os << "<text x=\"" << 10 + barW << "\" y=\"" << barY + barH + 14 << "\" text-anchor=\"end\">"
       << detail::fmt(amax, "%.4g") << "</text>\n";
    os << "<text x=\"" << 20 + barW << "\" y=\"" << barY + 10 << "\">north max |psi| = " << detail::fmt(north, "%.6g")
       << "</text>\n";
    os << "<text x=\"" << 20 + barW << "\" y=\"" << barY + 26 << "\">south max |psi| = " << detail::fmt(south, "%.6g")
       << "</text>\n";
    os << "<text x=\"" << 20 + barW << "\" y=\"" << barY + 42 << "\">mirror asymmetry = "
       << detail::fmt(mirror_asymmetry(extrema), "%.6g") << "</text>\n";
    if (!opt.title.empty())
        os << "<text x=\"10\" y=\"" << H + legendH - 8 << "\">" << opt.title << "</text>\n";
    os << "</g>\n</svg>\n";
}

} // namespace tetra
