#include "mongesym/chart.hpp"

namespace mongesym {

std::string_view name(Coord c)
{
    switch (c) {
    case Coord::x: return "x";
    case Coord::y: return "y";
    case Coord::y1: return "y1";
    case Coord::y2: return "y2";
    case Coord::z: return "z";
    }
    return "?";
}

std::string_view name(Chart chart)
{
    switch (chart) {
    case Chart::J20: return "J20";
    case Chart::J2: return "J2";
    case Chart::Plane: return "Plane";
    }
    return "?";
}

std::optional<Coord> coord_from_name(std::string_view text)
{
    for (Coord c : kAllCoords)
        if (name(c) == text) return c;
    return std::nullopt;
}

std::optional<Chart> chart_from_name(std::string_view text)
{
    for (Chart chart : {Chart::J20, Chart::J2, Chart::Plane})
        if (name(chart) == text) return chart;
    return std::nullopt;
}

} // namespace mongesym
