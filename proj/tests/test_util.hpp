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

#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ccontour/geometry.hpp"
#include "ccontour/seg_mask.hpp"

namespace testutil {

namespace fs = std::filesystem;

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "cc") {
    static std::random_device rd;
    for (;;) {
      path_ = fs::temp_directory_path() / (tag + "-" + std::to_string(rd()));
      if (fs::create_directory(path_)) break;
    }
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& s) const { return path_ / s; }

 private:
  fs::path path_;
};

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Relative path -> file bytes for every regular file under root.
inline std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = slurp(e.path());
  }
  return out;
}

inline ccontour::SegMask random_mask(std::mt19937_64& rng, int w, int h, double p) {
  std::bernoulli_distribution bit(p);
  ccontour::SegMask m(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) m.set(x, y, bit(rng));
  }
  return m;
}

// Vertices with consecutive (cyclic) duplicates removed.
inline std::vector<ccontour::Point> random_polygon(std::mt19937_64& rng, int n, double lo,
                                                   double hi, bool integral = false) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<ccontour::Point> pts;
  while (static_cast<int>(pts.size()) < n) {
    ccontour::Point p{u(rng), u(rng)};
    if (integral) p = {std::floor(p.x), std::floor(p.y)};
    if (!pts.empty() && pts.back() == p) continue;
    if (n > 1 && static_cast<int>(pts.size()) == n - 1 && pts.front() == p) continue;
    pts.push_back(p);
  }
  return pts;
}

}  // namespace testutil
