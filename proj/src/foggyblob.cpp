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

#include "ccontour/foggyblob.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "ccontour/error.hpp"
#include "ccontour/geometry.hpp"
#include "ccontour/rng.hpp"

namespace ccontour {

namespace fs = std::filesystem;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kCoreVertices = 256;
constexpr int kBranchSegments = 16;
// Fraction of the local core radius at which a branch is rooted, so that its
// stroke overlaps the core.
constexpr double kRootDepth = 0.85;
constexpr double kMaxBranchTurn = 0.6;  // radians over the full branch
constexpr double kTipWidthFraction = 0.3;
constexpr int kBackgroundLevel = 24;
constexpr int kCoreLevel = 224;
constexpr int kKernelScale = 1024;

// Stream tags for derive_seed.
constexpr std::uint64_t kSampleStream = 0x5a3d1e0fULL;
constexpr std::uint64_t kNoiseStream = 0x401531ULL;
constexpr std::uint64_t kBranchDrawStream = 0xb7a9c4ULL;
constexpr std::uint64_t kJitterStream = 0x7177e2ULL;

template <typename T>
void require_ordered(const Range<T>& r, const char* name) {
  if (!(r.lo <= r.hi)) {
    throw InvalidArgument(std::string("FoggyConfig: ") + name + " range is inverted");
  }
}

struct Harmonic {
  int frequency;
  double phase;
  double amplitude;
};

double core_radius_at(double r0, const std::vector<Harmonic>& hs, double theta) {
  double mod = 1.0;
  for (const Harmonic& h : hs) mod += h.amplitude * std::sin(h.frequency * theta + h.phase);
  return r0 * mod;
}

std::vector<int> gaussian_kernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<int> k(2 * radius + 1);
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-(i * i) / (2.0 * sigma * sigma));
    k[i + radius] = std::max(1, static_cast<int>(std::lround(w * kKernelScale)));
  }
  return k;
}

// Separable integer convolution with clamp-to-edge borders.
std::vector<std::uint8_t> blur(const std::vector<int>& src, int n, double sigma) {
  const std::vector<int> k = gaussian_kernel(sigma);
  const int radius = static_cast<int>(k.size() / 2);
  std::uint64_t ksum = 0;
  for (int v : k) ksum += static_cast<std::uint64_t>(v);
  std::vector<std::uint64_t> tmp(src.size());
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      std::uint64_t acc = 0;
      for (int i = -radius; i <= radius; ++i) {
        const int sx = std::clamp(x + i, 0, n - 1);
        acc += static_cast<std::uint64_t>(k[i + radius]) *
               static_cast<std::uint64_t>(src[static_cast<std::size_t>(y) * n + sx]);
      }
      tmp[static_cast<std::size_t>(y) * n + x] = acc;
    }
  }
  const std::uint64_t norm = ksum * ksum;
  std::vector<std::uint8_t> out(src.size());
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      std::uint64_t acc = 0;
      for (int i = -radius; i <= radius; ++i) {
        const int sy = std::clamp(y + i, 0, n - 1);
        acc += static_cast<std::uint64_t>(k[i + radius]) *
               tmp[static_cast<std::size_t>(sy) * n + x];
      }
      out[static_cast<std::size_t>(y) * n + x] =
          static_cast<std::uint8_t>(std::min<std::uint64_t>(255, (acc + norm / 2) / norm));
    }
  }
  return out;
}

// Tapered stroke outline: left edge out to the tip, right edge back.
std::vector<Point> branch_outline(Point root, double heading, double length,
                                  double width, double turn) {
  std::vector<Point> left;
  std::vector<Point> right;
  Point p = root;
  double h = heading;
  const double step = length / kBranchSegments;
  for (int s = 0; s <= kBranchSegments; ++s) {
    const double t = static_cast<double>(s) / kBranchSegments;
    const double half_w = 0.5 * width * (1.0 - (1.0 - kTipWidthFraction) * t);
    const double nx = -std::sin(h);
    const double ny = std::cos(h);
    left.push_back({p.x + nx * half_w, p.y + ny * half_w});
    right.push_back({p.x - nx * half_w, p.y - ny * half_w});
    h += turn / kBranchSegments;
    p = {p.x + std::cos(h) * step, p.y + std::sin(h) * step};
  }
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

SegMask apply_jitter(SegMask m, int offset) {
  if (offset > 0) return dilate(m, offset);
  if (offset < 0) return erode(m, -offset);
  return m;
}

SegMask with_branches(const FoggySample& sample, const std::vector<bool>& include) {
  SegMask m = sample.core_mask;
  for (std::size_t b = 0; b < include.size(); ++b) {
    if (include[b]) m = mask_union(m, sample.branch_masks[b]);
  }
  return m;
}

nlohmann::json range_json(const Range<double>& r) { return {r.lo, r.hi}; }
nlohmann::json range_json(const Range<int>& r) { return {r.lo, r.hi}; }

template <typename T>
Range<T> range_from(const nlohmann::json& j, const char* key, Range<T> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2) {
    throw InvalidArgument(std::string("FoggyConfig: ") + key + " must be [lo, hi]");
  }
  return {v[0].get<T>(), v[1].get<T>()};
}

}  // namespace

void FoggyConfig::validate() const {
  if (image_size < 32) throw InvalidArgument("FoggyConfig: image_size must be >= 32");
  if (!(blur_sigma > 0.0)) throw InvalidArgument("FoggyConfig: blur_sigma must be > 0");
  if (core_perturb_harmonics < 0) throw InvalidArgument("FoggyConfig: negative harmonics");
  if (!(core_perturb_amp >= 0.0 && core_perturb_amp < 1.0)) {
    throw InvalidArgument("FoggyConfig: core_perturb_amp must be in [0, 1)");
  }
  if (noise_amp < 0) throw InvalidArgument("FoggyConfig: negative noise_amp");
  require_ordered(core_radius_range, "core_radius");
  require_ordered(branch_count_range, "branch_count");
  require_ordered(branch_length_range, "branch_length");
  require_ordered(branch_width_range, "branch_width");
  require_ordered(branch_intensity_range, "branch_intensity");
  if (core_radius_range.lo <= 0.0 || core_radius_range.hi > 1.0) {
    throw InvalidArgument("FoggyConfig: core_radius_range must lie in (0, 1]");
  }
  if (branch_count_range.lo < 0) throw InvalidArgument("FoggyConfig: negative branch count");
  if (branch_length_range.lo < 0.0 || branch_width_range.lo <= 0.0) {
    throw InvalidArgument("FoggyConfig: branch length/width must be positive");
  }
  if (branch_intensity_range.lo < 0.0 || branch_intensity_range.hi > 1.0) {
    throw InvalidArgument("FoggyConfig: branch intensities must lie in [0, 1]");
  }
}

nlohmann::json to_json(const FoggyConfig& cfg) {
  return {{"image_size", cfg.image_size},
          {"core_radius_range", range_json(cfg.core_radius_range)},
          {"core_perturb_harmonics", cfg.core_perturb_harmonics},
          {"core_perturb_amp", cfg.core_perturb_amp},
          {"branch_count_range", range_json(cfg.branch_count_range)},
          {"branch_length_range", range_json(cfg.branch_length_range)},
          {"branch_width_range", range_json(cfg.branch_width_range)},
          {"branch_intensity_range", range_json(cfg.branch_intensity_range)},
          {"blur_sigma", cfg.blur_sigma},
          {"noise_amp", cfg.noise_amp},
          {"seed", cfg.seed}};
}

FoggyConfig config_from_json(const nlohmann::json& j) {
  FoggyConfig c;
  try {
    c.image_size = j.value("image_size", c.image_size);
    c.core_radius_range = range_from(j, "core_radius_range", c.core_radius_range);
    c.core_perturb_harmonics = j.value("core_perturb_harmonics", c.core_perturb_harmonics);
    c.core_perturb_amp = j.value("core_perturb_amp", c.core_perturb_amp);
    c.branch_count_range = range_from(j, "branch_count_range", c.branch_count_range);
    c.branch_length_range = range_from(j, "branch_length_range", c.branch_length_range);
    c.branch_width_range = range_from(j, "branch_width_range", c.branch_width_range);
    c.branch_intensity_range =
        range_from(j, "branch_intensity_range", c.branch_intensity_range);
    c.blur_sigma = j.value("blur_sigma", c.blur_sigma);
    c.noise_amp = j.value("noise_amp", c.noise_amp);
    c.seed = j.value("seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("FoggyConfig: ") + e.what());
  }
  c.validate();
  return c;
}

void AnnotatorProfile::validate() const {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(sensitivity)) throw InvalidArgument("AnnotatorProfile: sensitivity outside [0, 1]");
  if (!(boundary_jitter >= 0.0)) throw InvalidArgument("AnnotatorProfile: negative jitter");
  if (!unit(low_threshold) || !unit(high_threshold) || low_threshold > high_threshold) {
    throw InvalidArgument("AnnotatorProfile: thresholds need 0 <= low <= high <= 1");
  }
}

std::string sample_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fb_%04zu", index);
  return buf;
}

FoggySample generate_sample(const FoggyConfig& cfg, std::size_t index) {
  cfg.validate();
  FoggySample s;
  s.index = index;
  s.sample_seed = derive_seed({cfg.seed, static_cast<std::uint64_t>(index), kSampleStream});
  Rng rng(s.sample_seed);

  const int n = cfg.image_size;
  const double half = n / 2.0;
  const Point center{half, half};

  // Core: perturbed circle.
  s.core_radius = rng.uniform(cfg.core_radius_range.lo, cfg.core_radius_range.hi) * half;
  std::vector<Harmonic> harmonics;
  for (int k = 0; k < cfg.core_perturb_harmonics; ++k) {
    const double phase = rng.uniform(0.0, kTwoPi);
    const double weight = rng.uniform();
    harmonics.push_back(
        {k + 2, phase, cfg.core_perturb_amp * weight / cfg.core_perturb_harmonics});
  }
  std::vector<Point> core_poly;
  core_poly.reserve(kCoreVertices);
  for (int m = 0; m < kCoreVertices; ++m) {
    const double theta = kTwoPi * m / kCoreVertices;
    const double r = core_radius_at(s.core_radius, harmonics, theta);
    core_poly.push_back({center.x + r * std::cos(theta), center.y + r * std::sin(theta)});
  }
  s.core_mask = rasterize(core_poly, n, n);

  // Branches: tapered strokes rooted inside the core, spread around it.
  const auto count = static_cast<int>(
      rng.uniform_int(cfg.branch_count_range.lo, cfg.branch_count_range.hi));
  const double base_angle = rng.uniform(0.0, kTwoPi);
  std::vector<SegMask> strokes;
  for (int b = 0; b < count; ++b) {
    const double sector = kTwoPi / count;
    const double theta = base_angle + sector * b + rng.uniform(-0.25, 0.25) * sector;
    const double length = rng.uniform(cfg.branch_length_range.lo, cfg.branch_length_range.hi) * half;
    const double width = rng.uniform(cfg.branch_width_range.lo, cfg.branch_width_range.hi);
    const double intensity =
        rng.uniform(cfg.branch_intensity_range.lo, cfg.branch_intensity_range.hi);
    const double turn = rng.uniform(-kMaxBranchTurn, kMaxBranchTurn);

    const double r = core_radius_at(s.core_radius, harmonics, theta);
    const Point root{center.x + kRootDepth * r * std::cos(theta),
                     center.y + kRootDepth * r * std::sin(theta)};
    const double reach = length + (1.0 - kRootDepth) * r;
    SegMask stroke = rasterize(branch_outline(root, theta, reach, width, turn), n, n);
    s.branch_masks.push_back(mask_difference(stroke, s.core_mask));
    s.branch_intensities.push_back(intensity);
    strokes.push_back(std::move(stroke));
  }

  // Render: branches at their fractional level, core on top; blur; noise.
  std::vector<int> canvas(static_cast<std::size_t>(n) * n, kBackgroundLevel);
  for (std::size_t b = 0; b < strokes.size(); ++b) {
    const int level = kBackgroundLevel + static_cast<int>(std::lround(
                          s.branch_intensities[b] * (kCoreLevel - kBackgroundLevel)));
    for (std::size_t i = 0; i < canvas.size(); ++i) {
      if (strokes[b].at(i)) canvas[i] = std::max(canvas[i], level);
    }
  }
  for (std::size_t i = 0; i < canvas.size(); ++i) {
    if (s.core_mask.at(i)) canvas[i] = kCoreLevel;
  }
  std::vector<std::uint8_t> pixels = blur(canvas, n, cfg.blur_sigma);
  Rng noise(derive_seed({s.sample_seed, kNoiseStream}));
  for (auto& p : pixels) {
    const int v = p + static_cast<int>(noise.uniform_int(-cfg.noise_amp, cfg.noise_amp));
    p = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
  }
  s.image = {n, n, std::move(pixels)};
  return s;
}

nlohmann::json generate_dataset(const FoggyConfig& cfg, std::size_t n,
                                const fs::path& out_dir) {
  cfg.validate();
  if (n < 1) throw InvalidArgument("generate_dataset: n must be >= 1");
  std::error_code ec;
  fs::create_directories(out_dir / "images", ec);
  if (!ec) fs::create_directories(out_dir / "masks", ec);
  if (ec) throw IoError("generate_dataset: cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<nlohmann::json> entries(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const FoggySample s = generate_sample(cfg, i);
        const std::string id = sample_id(i);
        const std::string image = "images/" + id + ".png";
        const std::string core = "masks/" + id + "_core.png";
        write_file(out_dir / image, encode_png(s.image));
        write_mask(out_dir / core, s.core_mask);
        nlohmann::json branches = nlohmann::json::array();
        for (std::size_t b = 0; b < s.branch_masks.size(); ++b) {
          const std::string p = "masks/" + id + "_branch_" + std::to_string(b) + ".png";
          write_mask(out_dir / p, s.branch_masks[b]);
          branches.push_back(p);
        }
        entries[i] = {{"id", id},
                      {"image", image},
                      {"core_mask", core},
                      {"branch_masks", branches},
                      {"branch_intensities", s.branch_intensities}};
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  const std::size_t threads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::min<std::size_t>(n, 8));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  nlohmann::json manifest{{"version", 1},
                          {"id", "foggyblob-" + std::to_string(cfg.seed)},
                          {"config", to_json(cfg)},
                          {"samples", entries}};
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

double branch_draw(const FoggySample& sample, const AnnotatorProfile& profile,
                   std::size_t branch) {
  Rng rng(derive_seed({profile.seed, sample.sample_seed, kBranchDrawStream,
                       static_cast<std::uint64_t>(branch)}));
  return rng.uniform();
}

int jitter_offset(const FoggySample& sample, const AnnotatorProfile& profile) {
  const auto j = static_cast<int>(std::floor(profile.boundary_jitter));
  if (j <= 0) return 0;
  Rng rng(derive_seed({profile.seed, sample.sample_seed, kJitterStream}));
  return static_cast<int>(rng.uniform_int(-j, j));
}

SingularAnnotation simulate_singular(const FoggySample& sample,
                                     const AnnotatorProfile& profile) {
  profile.validate();
  std::vector<bool> include(sample.branch_masks.size());
  for (std::size_t b = 0; b < include.size(); ++b) {
    include[b] = sample.branch_intensities[b] >=
                 1.0 - profile.sensitivity * branch_draw(sample, profile, b);
  }
  return {apply_jitter(with_branches(sample, include), jitter_offset(sample, profile))};
}

CCAnnotation simulate_cc(const FoggySample& sample, const AnnotatorProfile& profile) {
  profile.validate();
  const std::size_t nb = sample.branch_masks.size();
  std::vector<bool> sure(nb);
  std::vector<bool> maybe(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    sure[b] = sample.branch_intensities[b] >= profile.high_threshold;
    maybe[b] = sample.branch_intensities[b] >= profile.low_threshold;
  }
  const int offset = jitter_offset(sample, profile);
  return CCAnnotation(apply_jitter(with_branches(sample, sure), offset),
                      apply_jitter(with_branches(sample, maybe), offset));
}

}  // namespace ccontour
