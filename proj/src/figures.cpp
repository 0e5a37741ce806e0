/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <sstream>

#include "sbmlab/error.hpp"
#include "sbmlab/harness.hpp"
#include "sbmlab/threshold.hpp"

namespace sbmlab {

namespace {

constexpr double kBeta = 10.0;
constexpr double kFig2Alpha2 = 12.43;

std::ostringstream csv_stream() {
  std::ostringstream out;
  out << std::setprecision(17);
  return out;
}

std::string cloud_csv(const std::vector<CloudPoint>& pts) {
  auto out = csv_stream();
  out << "x,y,exponent\n";
  for (const auto& p : pts) out << p.x << ',' << p.y << ',' << p.exponent << '\n';
  return out.str();
}

double max_segment(const std::vector<CloudPoint>& pts) {
  double m = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& a = pts[k];
    const auto& b = pts[(k + 1) % pts.size()];
    m = std::max(m, std::hypot(a.x - b.x, a.y - b.y));
  }
  return m;
}

// The line x - y = 0 clipped to the joint bounding box of both clouds.
std::string separator_csv(const std::vector<CloudPoint>& c1, const std::vector<CloudPoint>& c2) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto* c : {&c1, &c2})
    for (const auto& p : *c) {
      lo = std::min({lo, p.x, p.y});
      hi = std::max({hi, p.x, p.y});
    }
  auto out = csv_stream();
  out << "x,y\n" << lo << ',' << lo << '\n' << hi << ',' << hi << '\n';
  return out.str();
}

struct Emitter {
  std::filesystem::path dir;
  Json files = Json::object();

  void write(const std::string& role, const std::string& name, const std::string& text) {
    write_text_file((dir / name).string(), text);
    files[role] = name;
  }
};

Json rates_json(const Rates& r) {
  return {{"alpha1", r.alpha1}, {"alpha2", r.alpha2}, {"beta", r.beta}};
}

Json emit_clouds(Emitter& e, const std::string& prefix, const Rates& r, int points) {
  const auto c1 = cloud_boundary(1, r, points);
  const auto c2 = cloud_boundary(2, r, points);
  e.write("cloud1", prefix + "_cloud1.csv", cloud_csv(c1));
  e.write("cloud2", prefix + "_cloud2.csv", cloud_csv(c2));
  e.write("separator", prefix + "_separator.csv", separator_csv(c1, c2));
  return {{"points", points},
          {"level", CloudOptions{}.level},
          {"max_segment", std::max(max_segment(c1), max_segment(c2))}};
}

Json figure1(Emitter& e, int points) {
  const double alpha = boundary_alpha_symmetric(kBeta);
  const Rates r{alpha, alpha, kBeta};
  Json m;
  m["rates"] = rates_json(r);
  m["it"] = it_value(r).value;
  m["boundary"] = emit_clouds(e, "fig1", r, points);
  const auto t = touch_point(r);
  auto out = csv_stream();
  out << "label,x,y,exponent1,exponent2\n";
  out << "touch," << t.x << ',' << t.y << ',' << cloud_exponent(1, t.x, t.y, r) << ','
      << cloud_exponent(2, t.x, t.y, r) << '\n';
  e.write("points", "fig1_points.csv", out.str());
  m["touch_point"] = to_json(t);
  return m;
}

Json figure2(Emitter& e, int points) {
  const double alpha1 = boundary_alpha(kBeta, kFig2Alpha2);
  const Rates r{alpha1, kFig2Alpha2, kBeta};
  Json m;
  m["rates"] = rates_json(r);
  m["it"] = it_value(r).value;
  m["boundary"] = emit_clouds(e, "fig2", r, points);
  const auto w = find_witness(r);
  auto out = csv_stream();
  out << "label,x,y,exponent\n";
  if (w) {
    out << "witness1," << w->p1.x << ',' << w->p1.y << ',' << w->p1.exponent << '\n';
    out << "witness2," << w->p2.x << ',' << w->p2.y << ',' << w->p2.exponent << '\n';
  }
  e.write("witness", "fig2_witness.csv", out.str());
  m["witness"] = w ? to_json(*w) : Json(nullptr);
  return m;
}

Json figure3(Emitter& e, int resolution) {
  const Range axis{10.0, 40.0};
  const auto raster = witness_region(kBeta, axis, axis, resolution, resolution);
  std::ostringstream out;
  write_region_csv(raster, out);
  e.write("region", "fig3_region.csv", out.str());
  std::array<long long, 3> counts{0, 0, 0};
  for (auto c : raster.cells) ++counts[static_cast<std::size_t>(c)];
  Json m;
  m["beta"] = kBeta;
  m["alpha1_range"] = {axis.lo, axis.hi};
  m["alpha2_range"] = {axis.lo, axis.hi};
  m["resolution"] = resolution;
  Json classes = Json::object();
  for (auto c : {RegionClass::Infeasible, RegionClass::FeasibleNoWitness, RegionClass::FeasibleWitness})
    classes[region_name(c)] = {{"code", static_cast<int>(c)},
                               {"cells", counts[static_cast<std::size_t>(c)]}};
  m["classes"] = classes;
  return m;
}

}  // namespace

std::string emit_figure_data(int which, const std::string& out_dir, int resolution) {
  require(which >= 1 && which <= 3, "figure must be 1, 2 or 3");
  require(resolution >= (which == 3 ? 2 : 8), "figure resolution too small");
  Emitter e{out_dir};
  Json m;
  m["tool"] = "sbmlab";
  m["version"] = "0.1.0";
  m["figure"] = which;
  m["resolution"] = resolution;
  if (which == 1) m["data"] = figure1(e, resolution);
  else if (which == 2) m["data"] = figure2(e, resolution);
  else m["data"] = figure3(e, resolution);
  m["files"] = e.files;
  const std::string path =
      (std::filesystem::path(out_dir) / ("fig" + std::to_string(which) + ".manifest.json")).string();
  write_text_file(path, m.dump(2) + "\n");
  return path;
}

}  // namespace sbmlab
