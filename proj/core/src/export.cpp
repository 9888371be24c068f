// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#include "degeo/export.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace degeo {

using Json = nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

bool is_flat_array(const Json& j) {
  for (const auto& e : j)
    if (e.is_structured()) return false;
  return true;
}

void write(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        write(value, out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (is_flat_array(j)) {
        out += "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out += ", ";
          write(j[k], out, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        out += pad;
        write(j[k], out, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

std::string render(const Json& j) {
  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

Json vec(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

Json vecs(const std::vector<Vector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(vec(v));
  return a;
}

Json mat_cols(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(vec(m.col(c)));
  return a;
}

// Infinite gaps (fully degenerate spectrum) are written as null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

std::string classify_json(std::string_view system, const Classification& c,
                          const DegeneracyDirections& dirs) {
  const DegeneracyClass& dc = c.dc;
  Json j;
  j["system"] = std::string(system);
  j["g"] = dc.degree;
  j["kappa"] = dc.kappa;
  j["dimD"] = dc.dim_region;
  j["energy"] = c.ground.energy;
  j["gap"] = number(c.ground.gap);
  j["ambiguous_gap"] = c.ground.ambiguous_gap;
  Json f;
  f["diag"] = vecs(dc.factors_diag);
  f["off"] = vecs(dc.factors_off);
  j["factors"] = f;
  j["central"] = vec(dc.central);
  j["singular_values"] = vec(dc.singular_values);
  j["kernel_dim"] = dirs.raw_kernel.cols();
  j["ullrich_kohn_bound"] = dirs.bound;
  j["directions"] = mat_cols(dirs.basis);
  return render(j);
}

std::string point_cloud_json(std::string_view system, const RegionSample& sample, int sites,
                             int particles) {
  Json j;
  j["system"] = std::string(system);
  j["level"] = std::string(to_string(sample.level));
  j["class"] = Json{{"g", sample.degree}, {"kappa", sample.kappa}};
  j["points"] = vecs(sample.points);
  j["projected"] = vecs(barycentric_project(sample.points, sites, particles));
  return render(j);
}

std::string point_cloud_csv(const RegionSample& sample) {
  std::string out;
  for (const auto& p : sample.points) {
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      if (k) out += ",";
      out += format_double(p(k));
    }
    out += "\n";
  }
  return out;
}

std::string sweep_json(const std::vector<SweepEntry>& entries) {
  Json a = Json::array();
  for (const auto& e : entries) {
    Json j;
    j["params"] = e.params;
    j["g"] = e.degree;
    j["kappa"] = e.kappa;
    j["points_projected"] = vecs(e.points_projected);
    a.push_back(std::move(j));
  }
  return render(a);
}

std::string ratio_json(std::string_view system, const RatioEstimate& est) {
  Json j;
  j["system"] = std::string(system);
  j["n"] = est.options.samples;
  j["accepted"] = est.accepted;
  j["degenerate"] = est.degenerate;
  j["ratio"] = est.ratio;
  j["stderr"] = est.standard_error;
  j["seed"] = est.options.seed;
  Json t;
  t["deg_tol"] = est.options.deg_tol;
  t["inv_tol"] = est.options.inv_tol;
  t["shrink"] = est.options.shrink;
  j["thresholds"] = t;
  j["drawn"] = est.drawn;
  j["unconverged"] = est.unconverged;
  return render(j);
}

std::string scan_json(std::string_view system, std::string_view mode, const ScanReport& rep) {
  Json j;
  j["system"] = std::string(system);
  j["mode"] = std::string(mode);
  j["grid"] = rep.grid;
  j["energies"] = rep.energies;
  Json gaps = Json::array();
  for (double g : rep.gaps) gaps.push_back(number(g));
  j["gaps"] = gaps;
  j["g"] = rep.degrees;
  j["densities"] = vecs(rep.densities);
  j["crossings"] = rep.crossings;
  j["shared_density"] = rep.shared_density;
  j["shared_point"] = rep.shared_density ? vec(rep.shared_point) : Json(nullptr);
  j["max_deviation"] = rep.max_deviation;
  j["boundary_site"] = rep.boundary_site >= 0 ? Json(rep.boundary_site + 1) : Json(nullptr);
  j["membership_residuals"] = rep.membership_residuals;
  j["notes"] = rep.notes;
  return render(j);
}

std::string functional_json(std::string_view system, const std::vector<FunctionalPoint>& points) {
  Json j;
  j["system"] = std::string(system);
  Json a = Json::array();
  for (const auto& p : points) {
    Json e;
    e["coords"] = Json::array({p.s1, p.s2});
    e["in_domain"] = p.in_domain;
    e["density"] = vec(p.density);
    e["converged"] = p.converged;
    e["F"] = p.in_domain ? Json(p.value) : Json(nullptr);
    e["g"] = p.degree;
    a.push_back(std::move(e));
  }
  j["points"] = a;
  return render(j);
}

std::string functional_csv(const std::vector<FunctionalPoint>& points) {
  std::string out = "s1,s2,in_domain,converged,g,F\n";
  for (const auto& p : points) {
    out += format_double(p.s1) + "," + format_double(p.s2) + "," + (p.in_domain ? "1" : "0") + "," +
           (p.converged ? "1" : "0") + "," + std::to_string(p.degree) + "," +
           (p.in_domain ? format_double(p.value) : std::string()) + "\n";
  }
  return out;
}

}  // namespace degeo
