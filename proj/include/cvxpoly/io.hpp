#pragma once

#include "enumerator.hpp"
#include "geometry.hpp"

#include <json.hpp>

#include <string>

namespace cvx {

// `x b u` per line, or {"cells": [[x,y],...]}; '#' starts a comment in the text form.
ConvexPolyomino read_polyomino(const std::string& text);
ConvexPolyomino read_polyomino_file(const std::string& path);

std::string spans_text(const ConvexPolyomino& p);
nlohmann::json cells_json(const ConvexPolyomino& p);
nlohmann::json stats_json(const StatVector& s);

std::string census_csv(const CensusTable& t);
nlohmann::json census_json(const CensusTable& t);

} // namespace cvx
