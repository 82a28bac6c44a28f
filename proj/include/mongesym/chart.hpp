#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace mongesym {

/// Jet-space coordinates. The numeric value is the global slot used by
/// monomials, so a J2 or Plane expression is simply one that never touches
/// the trailing slots.
enum class Coord : std::uint8_t { x = 0, y = 1, y1 = 2, y2 = 3, z = 4 };

inline constexpr int kCoordCount = 5;

inline constexpr std::array<Coord, kCoordCount> kAllCoords = {Coord::x, Coord::y, Coord::y1,
                                                              Coord::y2, Coord::z};

/// J20 = (x, y, y1, y2, z); J2 = (x, y, y1, y2); Plane = (x, y).
enum class Chart : std::uint8_t { J20, J2, Plane };

constexpr int index(Coord c) { return static_cast<int>(c); }

constexpr int dimension(Chart chart)
{
    switch (chart) {
    case Chart::J20: return 5;
    case Chart::J2: return 4;
    case Chart::Plane: return 2;
    }
    return 0;
}

/// Charts are prefixes of the J20 coordinate list.
inline std::span<const Coord> coordinates(Chart chart)
{
    return std::span<const Coord>(kAllCoords.data(), static_cast<std::size_t>(dimension(chart)));
}

constexpr bool contains(Chart chart, Coord c) { return index(c) < dimension(chart); }

std::string_view name(Coord c);
std::string_view name(Chart chart);
std::optional<Coord> coord_from_name(std::string_view text);
std::optional<Chart> chart_from_name(std::string_view text);

} // namespace mongesym
