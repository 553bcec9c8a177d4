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

#include "ccontour/simulation.hpp"

#include "ccontour/error.hpp"
#include "ccontour/png.hpp"
#include "ccontour/rng.hpp"

namespace ccontour {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint64_t kSingularSeedStream = 1;
constexpr std::uint64_t kSensitivityStream = 2;
constexpr std::uint64_t kCCSeedStream = 3;

json parse_json_file(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace

void SimulationPlan::validate() const {
  if (sensitivity_range.lo < 0.0 || sensitivity_range.hi > 1.0 ||
      sensitivity_range.lo > sensitivity_range.hi) {
    throw InvalidArgument("simulation: sensitivity range must be ordered within [0, 1]");
  }
  AnnotatorProfile probe;
  probe.boundary_jitter = std::max(singular_jitter, cc_jitter);
  probe.low_threshold = cc_low_threshold;
  probe.high_threshold = cc_high_threshold;
  if (singular_jitter < 0.0 || cc_jitter < 0.0) {
    throw InvalidArgument("simulation: negative jitter");
  }
  probe.validate();
}

SimulationPlan plan_from_json(const json& j, SimulationPlan p) {
  try {
    if (j.contains("singular")) {
      const json& s = j.at("singular");
      p.singular_annotators = s.value("count", p.singular_annotators);
      if (s.contains("sensitivity")) {
        const json& v = s.at("sensitivity");
        if (v.is_number()) {
          p.sensitivity_range = {v.get<double>(), v.get<double>()};
        } else {
          p.sensitivity_range = {v.at(0).get<double>(), v.at(1).get<double>()};
        }
      }
      p.singular_jitter = s.value("jitter", p.singular_jitter);
    }
    if (j.contains("cc")) {
      const json& c = j.at("cc");
      p.cc_annotators = c.value("count", p.cc_annotators);
      p.cc_low_threshold = c.value("low", p.cc_low_threshold);
      p.cc_high_threshold = c.value("high", p.cc_high_threshold);
      p.cc_jitter = c.value("jitter", p.cc_jitter);
    }
    p.seed = j.value("seed", p.seed);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("profile spec: ") + e.what());
  }
  p.validate();
  return p;
}

json to_json(const SimulationPlan& p) {
  return {{"singular",
           {{"count", p.singular_annotators},
            {"sensitivity", {p.sensitivity_range.lo, p.sensitivity_range.hi}},
            {"jitter", p.singular_jitter}}},
          {"cc",
           {{"count", p.cc_annotators},
            {"low", p.cc_low_threshold},
            {"high", p.cc_high_threshold},
            {"jitter", p.cc_jitter}}},
          {"seed", p.seed}};
}

std::vector<AnnotatorProfile> singular_profiles(const SimulationPlan& plan,
                                                std::uint64_t sample_seed) {
  std::vector<AnnotatorProfile> out;
  for (std::size_t k = 0; k < plan.singular_annotators; ++k) {
    AnnotatorProfile a;
    a.seed = derive_seed({plan.seed, kSingularSeedStream, k});
    Rng rng(derive_seed({plan.seed, kSensitivityStream, k, sample_seed}));
    a.sensitivity = rng.uniform(plan.sensitivity_range.lo, plan.sensitivity_range.hi);
    a.boundary_jitter = plan.singular_jitter;
    out.push_back(a);
  }
  return out;
}

std::vector<AnnotatorProfile> cc_profiles(const SimulationPlan& plan, std::uint64_t) {
  std::vector<AnnotatorProfile> out;
  for (std::size_t k = 0; k < plan.cc_annotators; ++k) {
    AnnotatorProfile a;
    a.seed = derive_seed({plan.seed, kCCSeedStream, k});
    a.low_threshold = plan.cc_low_threshold;
    a.high_threshold = plan.cc_high_threshold;
    a.boundary_jitter = plan.cc_jitter;
    out.push_back(a);
  }
  return out;
}

ImageAnnotations simulate_image(const FoggySample& sample, const SimulationPlan& plan) {
  ImageAnnotations img;
  img.image_id = sample_id(sample.index);
  for (const auto& p : singular_profiles(plan, sample.sample_seed)) img.singular.push_back(simulate_singular(sample, p));
  for (const auto& p : cc_profiles(plan, sample.sample_seed)) img.cc.push_back(simulate_cc(sample, p));
  return img;
}

DatasetManifest read_dataset_manifest(const fs::path& path) {
  const fs::path file = fs::is_directory(path) ? path / "manifest.json" : path;
  if (!fs::exists(file)) throw IoError("dataset manifest not found: " + file.string());
  DatasetManifest m;
  m.root = file.parent_path();
  m.doc = parse_json_file(file);
  if (!m.doc.contains("config") || !m.doc.contains("samples")) {
    throw IoError("not a dataset manifest: " + file.string());
  }
  try {
    m.config = config_from_json(m.doc.at("config"));
  } catch (const InvalidArgument& e) {
    throw IoError(file.string() + ": " + e.what());
  }
  for (const auto& s : m.doc.at("samples")) m.ids.push_back(s.at("id").get<std::string>());
  return m;
}

json simulate_study(const fs::path& dataset_manifest, const SimulationPlan& plan,
                    const fs::path& out_dir) {
  plan.validate();
  const DatasetManifest ds = read_dataset_manifest(dataset_manifest);
  std::error_code ec;
  fs::create_directories(out_dir / "singular", ec);
  if (!ec) fs::create_directories(out_dir / "cc", ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  json images = json::array();
  for (std::size_t i = 0; i < ds.ids.size(); ++i) {
    const FoggySample sample = generate_sample(ds.config, i);
    if (sample_id(i) != ds.ids[i]) {
      throw IoError("dataset manifest sample order does not match its config");
    }
    const ImageAnnotations ann = simulate_image(sample, plan);
    json singular = json::array();
    for (std::size_t k = 0; k < ann.singular.size(); ++k) {
      const std::string who = "s" + std::to_string(k);
      const std::string p = "singular/" + ann.image_id + "_" + who + ".png";
      write_mask(out_dir / p, ann.singular[k].mask);
      singular.push_back({{"annotator", who}, {"mask", p}});
    }
    json cc = json::array();
    for (std::size_t k = 0; k < ann.cc.size(); ++k) {
      const std::string who = "c" + std::to_string(k);
      const std::string pmin = "cc/" + ann.image_id + "_" + who + "_min.png";
      const std::string pmax = "cc/" + ann.image_id + "_" + who + "_max.png";
      write_mask(out_dir / pmin, ann.cc[k].min());
      write_mask(out_dir / pmax, ann.cc[k].max());
      cc.push_back({{"annotator", who}, {"min", pmin}, {"max", pmax}});
    }
    images.push_back({{"id", ann.image_id},
                      {"width", sample.core_mask.width()},
                      {"height", sample.core_mask.height()},
                      {"singular", singular},
                      {"cc", cc}});
  }
  json index{{"version", 1},
             {"dataset", fs::absolute(dataset_manifest).lexically_normal().string()},
             {"plan", to_json(plan)},
             {"images", images}};
  write_file(out_dir / "annotations.json", index.dump(2) + "\n");
  return index;
}

std::vector<ImageAnnotations> load_annotation_index(const fs::path& path) {
  const fs::path file = fs::is_directory(path) ? path / "annotations.json" : path;
  if (!fs::exists(file)) throw IoError("annotation index not found: " + file.string());
  const json doc = parse_json_file(file);
  if (doc.value("version", 0) != 1 || !doc.contains("images")) {
    throw IoError("not an annotation index: " + file.string());
  }
  const fs::path root = file.parent_path();
  std::vector<ImageAnnotations> out;
  try {
    for (const auto& e : doc.at("images")) {
      ImageAnnotations img;
      img.image_id = e.at("id").get<std::string>();
      for (const auto& s : e.value("singular", json::array())) {
        img.singular.push_back({read_mask(root / s.at("mask").get<std::string>())});
      }
      for (const auto& c : e.value("cc", json::array())) {
        img.cc.emplace_back(read_mask(root / c.at("min").get<std::string>()),
                            read_mask(root / c.at("max").get<std::string>()));
      }
      out.push_back(std::move(img));
    }
  } catch (const json::exception& e) {
    throw IoError(file.string() + ": " + e.what());
  } catch (const InvalidArgument& e) {
    throw IoError(file.string() + ": " + e.what());
  }
  return out;
}

}  // namespace ccontour
