#pragma once

#include <string>
#include <vector>

#include "khlab/gt.hpp"
#include "khlab/subset.hpp"

namespace khlab {

/// JSON {"points": [[...], ...]}. Throws Error(Parse) with a location.
std::vector<LatticePoint> parse_points_json(const std::string& text);

/// One point per line, coordinates separated by commas. Blank lines and
/// lines starting with '#' are skipped.
std::vector<LatticePoint> parse_points_text(const std::string& text);

/// Picks the parser from the extension (.json, otherwise text).
std::vector<LatticePoint> read_points_file(const std::string& path);

/// JSON {"n": int, "moduli": [...], "rows": [[...], ...]}, validated.
CongruenceSystem parse_system_json(const std::string& text);

CongruenceSystem read_system_file(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace khlab
