// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "degeo/geometry.hpp"
#include "degeo/inversion.hpp"
#include "degeo/regions.hpp"
#include "degeo/system.hpp"

// JSON documents use a fixed key order and print doubles with 17
// significant digits, so equal inputs give byte-identical files.

namespace degeo {

std::string classify_json(std::string_view system, const Classification& c,
                          const DegeneracyDirections& dirs);

/// {"system", "level", "class": {"g", "kappa"}, "points", "projected"}
std::string point_cloud_json(std::string_view system, const RegionSample& sample, int sites,
                             int particles);
/// One density per row, no header.
std::string point_cloud_csv(const RegionSample& sample);

/// [{"params", "g", "kappa", "points_projected"}, ...]
std::string sweep_json(const std::vector<SweepEntry>& entries);

/// {"system", "n", "accepted", "degenerate", "ratio", "stderr", "seed", "thresholds"}
std::string ratio_json(std::string_view system, const RatioEstimate& est);

std::string scan_json(std::string_view system, std::string_view mode, const ScanReport& rep);

std::string functional_json(std::string_view system, const std::vector<FunctionalPoint>& points);
std::string functional_csv(const std::vector<FunctionalPoint>& points);

/// Shortest text with 17 significant digits ("%.17g").
std::string format_double(double x);

}  // namespace degeo
