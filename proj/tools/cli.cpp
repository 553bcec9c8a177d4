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

#include "cli.hpp"

#include <CLI11.hpp>
#include <pthread.h>
#include <signal.h>

#include <atomic>
#include <filesystem>
#include <limits>
#include <ostream>
#include <thread>

#include "ccontour/aggregate.hpp"
#include "ccontour/error.hpp"
#include "ccontour/foggyblob.hpp"
#include "ccontour/http_api.hpp"
#include "ccontour/png.hpp"
#include "ccontour/report.hpp"
#include "ccontour/service.hpp"
#include "ccontour/simulation.hpp"
#include "ccontour/store.hpp"

namespace ccontour::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct FoggyArgs {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
  FoggyConfig cfg;
  std::vector<double> core_radius, branch_length, branch_width, branch_intensity;
  std::vector<int> branch_count;
};

struct SimulateArgs {
  std::string dataset;
  std::string out;
  std::string profile_spec;
  std::size_t annotators = 3;
  std::size_t cc_annotators = 1;
  std::uint64_t seed = 0;
};

struct ReportArgs {
  std::string annotations;
  std::string out;
  bool json = false;
};

struct LabelArgs {
  std::string in;
  std::string out;
};

struct ServeArgs {
  std::vector<std::string> datasets;
  std::string store;
  std::string host = "127.0.0.1";
  std::string static_dir;
  int port = 8080;
};

template <typename T>
void set_range(Range<T>& r, const std::vector<T>& v) {
  if (v.size() == 2) r = {v[0], v[1]};
}

int cmd_foggyblob(FoggyArgs& a, std::ostream& out) {
  a.cfg.seed = a.seed;
  set_range(a.cfg.core_radius_range, a.core_radius);
  set_range(a.cfg.branch_count_range, a.branch_count);
  set_range(a.cfg.branch_length_range, a.branch_length);
  set_range(a.cfg.branch_width_range, a.branch_width);
  set_range(a.cfg.branch_intensity_range, a.branch_intensity);
  a.cfg.validate();
  generate_dataset(a.cfg, a.n, a.out);
  out << (fs::path(a.out) / "manifest.json").string() << "\n";
  return kOk;
}

int cmd_simulate(const SimulateArgs& a, const CLI::App& sub, std::ostream& out) {
  SimulationPlan plan;
  plan.singular_annotators = a.annotators;
  plan.cc_annotators = a.cc_annotators;
  plan.seed = a.seed;
  if (!a.profile_spec.empty()) {
    json spec;
    try {
      spec = json::parse(read_file(a.profile_spec));
    } catch (const json::exception& e) {
      throw InvalidArgument("profile spec " + a.profile_spec + ": " + e.what());
    }
    plan = plan_from_json(spec, plan);
    // Explicit flags win over the spec file.
    if (sub.count("--annotators")) plan.singular_annotators = a.annotators;
    if (sub.count("--cc-annotators")) plan.cc_annotators = a.cc_annotators;
    if (sub.count("--seed")) plan.seed = a.seed;
  }
  plan.validate();
  simulate_study(a.dataset, plan, a.out);
  out << (fs::path(a.out) / "annotations.json").string() << "\n";
  return kOk;
}

int cmd_report(const ReportArgs& a, std::ostream& out) {
  const std::string doc = metrics_report(load_annotation_index(a.annotations));
  if (!a.out.empty()) {
    fs::path target = a.out;
    if (fs::is_directory(target) || a.out.back() == '/') target /= "report.jsonl";
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    write_file(target, doc);
  }
  const auto last = doc.rfind('\n', doc.size() - 2);
  const json summary = json::parse(doc.substr(last + 1)).at("summary");
  if (a.json) {
    out << summary.dump() << "\n";
  } else {
    out << headline_text(summary);
  }
  return kOk;
}

int cmd_pseudo_cc(const LabelArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<TrainingLabel> labels;
  for (auto& img : load_annotation_index(a.in)) {
    if (img.singular.empty()) {
      err << "skipping " << img.image_id << ": no singular annotations\n";
      continue;
    }
    const CCAnnotation cc = pseudo_cc(AnnotationSet(img.image_id, std::move(img.singular)));
    labels.emplace_back(img.image_id, cc.min(), cc.max());
  }
  export_labels(labels, a.out);
  out << (fs::path(a.out) / "manifest.json").string() << "\n";
  return kOk;
}

// Accepts an annotation index (cc annotations become labels) or a labels
// manifest (re-exported as is).
std::vector<TrainingLabel> labels_from(const fs::path& in) {
  fs::path file = in;
  if (fs::is_directory(in)) {
    file = fs::exists(in / "annotations.json") ? in / "annotations.json" : in / "manifest.json";
  }
  if (!fs::exists(file)) throw IoError("no annotation index or label manifest at " + in.string());
  json doc;
  try {
    doc = json::parse(read_file(file));
  } catch (const json::exception& e) {
    throw IoError(file.string() + ": " + e.what());
  }
  if (doc.contains("labels")) return read_labels(file);

  std::vector<TrainingLabel> labels;
  for (const auto& img : load_annotation_index(file)) {
    for (std::size_t k = 0; k < img.cc.size(); ++k) {
      labels.emplace_back(img.image_id + "_c" + std::to_string(k), img.cc[k].min(),
                          img.cc[k].max());
    }
  }
  return labels;
}

int cmd_export_labels(const LabelArgs& a, std::ostream& out) {
  export_labels(labels_from(a.in), a.out);
  out << (fs::path(a.out) / "manifest.json").string() << "\n";
  return kOk;
}

int cmd_serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<Dataset> datasets;
  for (const auto& d : a.datasets) datasets.push_back(load_dataset(d));
  Store store(a.store);
  StudyService service(store, std::move(datasets));
  HttpApi api(service, a.static_dir);
  if (!api.bind(a.host, a.port)) {
    err << "error: cannot bind " << a.host << ":" << a.port << "\n";
    return kRuntime;
  }

  // Signals are taken by a dedicated thread; server threads inherit the mask.
  sigset_t sigs, old;
  sigemptyset(&sigs);
  sigaddset(&sigs, SIGINT);
  sigaddset(&sigs, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &sigs, &old);
  std::atomic<bool> done{false};
  std::thread watcher([&] {
    int sig = 0;
    sigwait(&sigs, &sig);
    if (!done.exchange(true)) api.stop();
  });

  out << "listening on http://" << a.host << ":" << a.port << std::endl;
  const bool clean = api.listen_after_bind();
  if (!done.exchange(true)) pthread_kill(watcher.native_handle(), SIGTERM);
  watcher.join();
  pthread_sigmask(SIG_SETMASK, &old, nullptr);
  return clean ? kOk : kRuntime;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Confidence contour annotation toolkit", "ccontour"};
  app.require_subcommand(1);

  FoggyArgs fa;
  auto* foggy = app.add_subcommand("foggyblob", "Generate a synthetic FoggyBlob dataset");
  foggy->add_option("--n", fa.n, "Number of samples")
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  foggy->add_option("--seed", fa.seed, "Dataset seed");
  foggy->add_option("--out", fa.out, "Output directory")->required();
  foggy->add_option("--image-size", fa.cfg.image_size);
  foggy->add_option("--core-radius", fa.core_radius, "Core radius range, fraction of half-size")
      ->expected(2);
  foggy->add_option("--harmonics", fa.cfg.core_perturb_harmonics);
  foggy->add_option("--perturb-amp", fa.cfg.core_perturb_amp);
  foggy->add_option("--branch-count", fa.branch_count)->expected(2);
  foggy->add_option("--branch-length", fa.branch_length)->expected(2);
  foggy->add_option("--branch-width", fa.branch_width)->expected(2);
  foggy->add_option("--branch-intensity", fa.branch_intensity)->expected(2);
  foggy->add_option("--blur-sigma", fa.cfg.blur_sigma);
  foggy->add_option("--noise-amp", fa.cfg.noise_amp);

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Simulate singular and cc annotators");
  sim->add_option("--dataset", sa.dataset, "Dataset manifest or directory")->required();
  sim->add_option("--annotators", sa.annotators, "Singular annotators per image");
  sim->add_option("--cc-annotators", sa.cc_annotators, "CC annotators per image");
  sim->add_option("--profile-spec", sa.profile_spec, "JSON annotator profile spec");
  sim->add_option("--seed", sa.seed, "Simulation seed");
  sim->add_option("--out", sa.out, "Output directory")->required();

  ReportArgs ra;
  auto* rep = app.add_subcommand("report", "Compute the metrics report");
  rep->add_option("--annotations", ra.annotations, "Annotation index or directory")->required();
  rep->add_option("--out", ra.out, "Report file, or directory for report.jsonl");
  rep->add_flag("--json", ra.json, "Print the summary as JSON");

  LabelArgs pa;
  auto* pcc = app.add_subcommand("pseudo-cc", "Derive pseudo-CC labels from singular annotations");
  pcc->add_option("--annotations", pa.in, "Annotation index or directory")->required();
  pcc->add_option("--out", pa.out, "Output directory")->required();

  LabelArgs ea;
  auto* exp = app.add_subcommand("export-labels", "Export cc annotations as two-channel labels");
  exp->add_option("--cc", ea.in, "Annotation index or label manifest")->required();
  exp->add_option("--out", ea.out, "Output directory")->required();

  ServeArgs va;
  auto* srv = app.add_subcommand("serve", "Run the annotation service");
  srv->add_option("--dataset", va.datasets, "Dataset manifest or directory")->required();
  srv->add_option("--store", va.store, "Store directory")->envname("CC_STORE_DIR")->required();
  srv->add_option("--port", va.port)->check(CLI::Range(0, 65535));
  srv->add_option("--host", va.host);
  srv->add_option("--static", va.static_dir, "Directory of UI assets");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*foggy) return cmd_foggyblob(fa, out);
    if (*sim) return cmd_simulate(sa, *sim, out);
    if (*rep) return cmd_report(ra, out);
    if (*pcc) return cmd_pseudo_cc(pa, out, err);
    if (*exp) return cmd_export_labels(ea, out);
    if (*srv) return cmd_serve(va, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}

}  // namespace ccontour::cli
