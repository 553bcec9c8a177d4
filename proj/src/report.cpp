// Copyright 2026 The ccontour Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ccontour/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "ccontour/aggregate.hpp"
#include "ccontour/error.hpp"
#include "ccontour/metrics.hpp"
#include "ccontour/stats.hpp"

namespace ccontour {

using nlohmann::json;

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> boundary_disagreement(const std::vector<const SegMask*>& masks) {
  std::vector<Contour> curves;
  for (const SegMask* m : masks) {
    if (!m->empty()) curves.push_back(boundary(*m));
  }
  if (curves.size() < 2) return std::nullopt;
  return disagreement(curves);
}

json test_json(const stats::TestResult& r, const char* stat_name) {
  return {{stat_name, r.statistic}, {"p_value", r.p_value}, {"n", r.n}};
}

template <typename Fn>
json run_test(Fn fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {{"error", e.what()}};
  }
}

using Field = std::optional<double> ImageMetrics::*;

// Values of both fields over images where both are present.
std::pair<std::vector<double>, std::vector<double>> paired(
    const std::vector<ImageMetrics>& images, Field a, Field b) {
  std::pair<std::vector<double>, std::vector<double>> out;
  for (const auto& m : images) {
    if (m.*a && m.*b) {
      out.first.push_back(*(m.*a));
      out.second.push_back(*(m.*b));
    }
  }
  return out;
}

json field_mean(const std::vector<ImageMetrics>& images, Field f) {
  std::vector<double> v;
  for (const auto& m : images) {
    if (m.*f) v.push_back(*(m.*f));
  }
  return v.empty() ? json(nullptr) : json(stats::mean(v));
}

std::string fmt(const json& v, const char* spec = "%.4f") {
  if (!v.is_number()) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v.get<double>());
  return buf;
}

}  // namespace

json ImageMetrics::to_json() const {
  return {{"image_id", image_id},
          {"n_singular", n_singular},
          {"n_cc", n_cc},
          {"expected_underflow", opt(expected_underflow)},
          {"expected_overflow", opt(expected_overflow)},
          {"baseline_underflow", opt(baseline_underflow)},
          {"baseline_overflow", opt(baseline_overflow)},
          {"uncertain_area", opt(uncertain_area)},
          {"ensemble_spread", opt(ensemble_spread)},
          {"disagreement_singular", opt(disagreement_singular)},
          {"disagreement_min", opt(disagreement_min)},
          {"disagreement_max", opt(disagreement_max)}};
}

ImageMetrics image_metrics(const ImageAnnotations& image) {
  ImageMetrics m;
  m.image_id = image.image_id;
  m.n_singular = image.singular.size();
  m.n_cc = image.cc.size();

  if (!image.singular.empty()) {
    const AnnotationSet set(image.image_id, image.singular);
    m.ensemble_spread = static_cast<double>(ensemble_spread(image.singular));
    if (set.size() >= 2) {
      const CapacityReport base = leave_one_out_capacity(set);
      m.baseline_underflow = base.expected_underflow;
      m.baseline_overflow = base.expected_overflow;
    }
    if (!image.cc.empty()) {
      double u = 0.0, o = 0.0;
      for (const auto& cc : image.cc) {
        const CapacityReport r = cc_capacity(cc, set);
        u += r.expected_underflow;
        o += r.expected_overflow;
      }
      m.expected_underflow = u / static_cast<double>(image.cc.size());
      m.expected_overflow = o / static_cast<double>(image.cc.size());
    }
    std::vector<const SegMask*> masks;
    for (const auto& s : image.singular) masks.push_back(&s.mask);
    m.disagreement_singular = boundary_disagreement(masks);
  }

  if (!image.cc.empty()) {
    double ua = 0.0;
    std::vector<const SegMask*> mins;
    std::vector<const SegMask*> maxs;
    for (const auto& cc : image.cc) {
      ua += static_cast<double>(uncertain_area(cc));
      mins.push_back(&cc.min());
      maxs.push_back(&cc.max());
    }
    m.uncertain_area = ua / static_cast<double>(image.cc.size());
    m.disagreement_min = boundary_disagreement(mins);
    m.disagreement_max = boundary_disagreement(maxs);
  }
  return m;
}

json summarize(const std::vector<ImageMetrics>& images) {
  auto t_test = [&](Field a, Field b) {
    return run_test([&] {
      auto [x, y] = paired(images, a, b);
      return test_json(stats::paired_t_test(x, y), "t");
    });
  };
  json tests{
      {"underflow_cc_vs_base",
       t_test(&ImageMetrics::expected_underflow, &ImageMetrics::baseline_underflow)},
      {"overflow_cc_vs_base",
       t_test(&ImageMetrics::expected_overflow, &ImageMetrics::baseline_overflow)},
      {"disagreement_min_vs_singular",
       t_test(&ImageMetrics::disagreement_min, &ImageMetrics::disagreement_singular)},
      {"disagreement_max_vs_singular",
       t_test(&ImageMetrics::disagreement_max, &ImageMetrics::disagreement_singular)},
      {"uncertain_area_vs_ensemble_spread", run_test([&] {
         auto [x, y] = paired(images, &ImageMetrics::uncertain_area,
                              &ImageMetrics::ensemble_spread);
         return test_json(stats::spearman(x, y), "rho");
       })}};
  json means{
      {"underflow_cc", field_mean(images, &ImageMetrics::expected_underflow)},
      {"underflow_base", field_mean(images, &ImageMetrics::baseline_underflow)},
      {"overflow_cc", field_mean(images, &ImageMetrics::expected_overflow)},
      {"overflow_base", field_mean(images, &ImageMetrics::baseline_overflow)},
      {"disagreement_singular", field_mean(images, &ImageMetrics::disagreement_singular)},
      {"disagreement_min", field_mean(images, &ImageMetrics::disagreement_min)},
      {"disagreement_max", field_mean(images, &ImageMetrics::disagreement_max)},
      {"uncertain_area", field_mean(images, &ImageMetrics::uncertain_area)},
      {"ensemble_spread", field_mean(images, &ImageMetrics::ensemble_spread)}};
  return {{"images", images.size()}, {"means", means}, {"tests", tests}};
}

std::string metrics_report(std::vector<ImageAnnotations> images) {
  std::sort(images.begin(), images.end(),
            [](const auto& a, const auto& b) { return a.image_id < b.image_id; });
  std::vector<ImageMetrics> rows;
  rows.reserve(images.size());
  std::string out;
  for (const auto& img : images) {
    rows.push_back(image_metrics(img));
    out += rows.back().to_json().dump();
    out += '\n';
  }
  out += json{{"summary", summarize(rows)}}.dump();
  out += '\n';
  return out;
}

std::string headline_text(const json& summary) {
  const json& m = summary.at("means");
  const json& t = summary.at("tests");
  auto p = [&](const char* key) {
    const json& r = t.at(key);
    return r.contains("p_value") ? fmt(r.at("p_value"), "%.3g") : std::string("n/a");
  };
  std::ostringstream ss;
  ss << "images: " << summary.at("images").get<std::size_t>() << "\n"
     << "underflow  cc " << fmt(m.at("underflow_cc")) << "  base "
     << fmt(m.at("underflow_base")) << "  p " << p("underflow_cc_vs_base") << "\n"
     << "overflow   cc " << fmt(m.at("overflow_cc")) << "  base "
     << fmt(m.at("overflow_base")) << "  p " << p("overflow_cc_vs_base") << "\n"
     << "disagreement  singular " << fmt(m.at("disagreement_singular")) << "  min "
     << fmt(m.at("disagreement_min")) << " (p " << p("disagreement_min_vs_singular")
     << ")  max " << fmt(m.at("disagreement_max")) << " (p "
     << p("disagreement_max_vs_singular") << ")\n";
  const json& c = t.at("uncertain_area_vs_ensemble_spread");
  ss << "uncertain area vs ensemble spread  rho "
     << (c.contains("rho") ? fmt(c.at("rho")) : std::string("n/a")) << "  p "
     << p("uncertain_area_vs_ensemble_spread") << "\n";
  return ss.str();
}

}  // namespace ccontour
