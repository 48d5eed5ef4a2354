#pragma once

#include <string>

#include "json.hpp"

#include "biholo/types.hpp"

namespace biholo::report {

using json = nlohmann::ordered_json;

/// Doubles rounded to 15 significant digits so artifacts are reproducible
/// across runs and platforms.
double num(double x);
json complex_json(cplx z);
json point_json(const Point& p);

/// Write-then-rename so readers never observe a partial artifact.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace biholo::report
