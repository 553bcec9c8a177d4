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

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "ccontour/error.hpp"
#include "ccontour/mask.hpp"
#include "ccontour/store.hpp"
#include "test_util.hpp"

namespace ccontour {
namespace {

Session session(const std::string& id) {
  Session s;
  s.session_id = id;
  s.annotator_id = "a";
  s.dataset_id = "d";
  s.created_at = "2026-01-01T00:00:00.000Z";
  s.tasks = {{id + "-t0", id, "fb_0000", Method::kSingular, 0}};
  return s;
}

AnnotationRecord singular(const std::string& task, SegMask m) {
  AnnotationRecord r;
  r.session_id = "s";
  r.task_id = task;
  r.image_id = "fb_0000";
  r.method = Method::kSingular;
  r.contours = nlohmann::json::array();
  r.masks = {std::move(m)};
  r.server_received_at = "2026-01-01T00:00:00.000Z";
  return r;
}

AnnotationRecord cc(const std::string& task, SegMask min, SegMask max) {
  AnnotationRecord r = singular(task, std::move(min));
  r.method = Method::kCC;
  r.contours = {{"min", nlohmann::json::array()}, {"max", nlohmann::json::array()}};
  r.masks.push_back(std::move(max));
  return r;
}

SurveyRecord survey(const std::string& sess) {
  SurveyRecord s;
  s.session_id = sess;
  s.mental_demand = s.physical_demand = s.temporal_demand = 5;
  s.performance = s.effort = s.frustration = 5;
  return s;
}

TEST(Store, AppendScanAndReopen) {
  testutil::TempDir d;
  std::mt19937_64 rng(71);
  const SegMask m = testutil::random_mask(rng, 9, 7, 0.5);
  const SegMask lo = testutil::random_mask(rng, 9, 7, 0.2);
  const SegMask hi = mask_union(lo, testutil::random_mask(rng, 9, 7, 0.3));
  {
    Store st(d.path());
    EXPECT_EQ(st.append(session("s")), 1u);
    EXPECT_EQ(st.append(singular("s-t0", m)), 2u);
    EXPECT_EQ(st.append(cc("s-t1", lo, hi)), 3u);
    EXPECT_EQ(st.append(survey("s")), 4u);
  }
  Store st(d.path());
  EXPECT_EQ(st.size(), 4u);
  EXPECT_EQ(st.last_id(), 4u);
  const auto sessions = st.scan<Session>();
  ASSERT_EQ(sessions.size(), 1u);
  EXPECT_EQ(sessions[0].id, 1u);
  EXPECT_EQ(sessions[0].record.to_json(), session("s").to_json());

  const auto anns = st.scan<AnnotationRecord>();
  ASSERT_EQ(anns.size(), 2u);
  EXPECT_EQ(anns[0].record.mask_paths, (std::vector<std::string>{"masks/s-t0.png"}));
  EXPECT_EQ(st.load_mask(anns[0].record.mask_paths[0]), m);
  EXPECT_EQ(anns[1].record.mask_paths,
            (std::vector<std::string>{"masks/s-t1_min.png", "masks/s-t1_max.png"}));
  EXPECT_EQ(st.load_mask(anns[1].record.mask_paths[0]), lo);
  EXPECT_EQ(st.load_mask(anns[1].record.mask_paths[1]), hi);

  const auto ccs = st.scan<AnnotationRecord>(
      [](const AnnotationRecord& r) { return r.method == Method::kCC; });
  ASSERT_EQ(ccs.size(), 1u);
  EXPECT_EQ(ccs[0].id, 3u);
  EXPECT_EQ(st.scan<SurveyRecord>().size(), 1u);
}

TEST(Store, IdsStrictlyIncrease) {
  testutil::TempDir d;
  Store st(d.path());
  std::uint64_t prev = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t id = st.append(survey("s" + std::to_string(i)));
    ASSERT_GT(id, prev);
    prev = id;
  }
  Store again(d.path());
  EXPECT_EQ(again.size(), 1000u);
  const auto all = again.scan<SurveyRecord>();
  for (std::size_t i = 0; i < all.size(); ++i) ASSERT_EQ(all[i].record.session_id, "s" + std::to_string(i));
}

TEST(Store, LineFormat) {
  const std::string line = Store::format_line("survey", R"({"id":1,"data":{}})");
  ASSERT_EQ(line.back(), '\n');
  const auto t1 = line.find('\t'), t2 = line.rfind('\t');
  EXPECT_EQ(line.substr(0, t1), "survey");
  EXPECT_EQ(line.substr(t1 + 1, t2 - t1 - 1), R"({"id":1,"data":{}})");
  EXPECT_EQ(line.size() - t2 - 2, 8u);  // crc32 in hex
}

TEST(Store, TornTailIsDroppedOnReopen) {
  testutil::TempDir d;
  {
    Store st(d.path());
    st.append(survey("a"));
    st.append(survey("b"));
  }
  const std::string intact = testutil::slurp(d / "records.jsonl");
  {
    std::ofstream out(d / "records.jsonl", std::ios::app | std::ios::binary);
    out << "survey\t{\"id\":3,\"data\":{\"sess";
  }
  {
    Store st(d.path());
    EXPECT_EQ(st.size(), 2u);
    EXPECT_EQ(testutil::slurp(d / "records.jsonl"), intact);
    EXPECT_EQ(st.append(survey("c")), 3u);
  }
  Store st(d.path());
  EXPECT_EQ(st.size(), 3u);
}

TEST(Store, DamagedMiddleLineIsAnError) {
  testutil::TempDir d;
  {
    Store st(d.path());
    for (const char* s : {"a", "b", "c"}) st.append(survey(s));
  }
  std::string data = testutil::slurp(d / "records.jsonl");
  const auto second = data.find('\n') + 1;
  const auto at = data.find("\"b\"", second);
  ASSERT_NE(at, std::string::npos);
  data[at + 1] = 'x';
  {
    std::ofstream(d / "records.jsonl", std::ios::binary | std::ios::trunc) << data;
  }
  EXPECT_THROW(Store{d.path()}, IoError);
}

TEST(Store, TruncatedPrefixStillVerifies) {
  // Any whole-line prefix of a log is itself a valid log.
  testutil::TempDir d;
  {
    Store st(d.path());
    for (int i = 0; i < 10; ++i) st.append(survey(std::to_string(i)));
  }
  const std::string data = testutil::slurp(d / "records.jsonl");
  std::size_t pos = 0;
  for (int keep = 0; keep <= 10; ++keep) {
    testutil::TempDir e;
    {
      std::ofstream(e / "records.jsonl", std::ios::binary) << data.substr(0, pos);
    }
    ASSERT_EQ(Store(e.path()).size(), std::size_t(keep));
    pos = data.find('\n', pos) + 1;
  }
}

TEST(Store, RejectedRecordLeavesStoreUnchanged) {
  testutil::TempDir d;
  Store st(d.path());
  st.append(session("s"));
  const std::string before = testutil::slurp(d / "records.jsonl");
  EXPECT_THROW(st.append(cc("s-t0", SegMask::Full(4, 4), SegMask(4, 4))), Unprocessable);
  EXPECT_THROW(st.append(survey("")), InvalidArgument);
  EXPECT_EQ(testutil::slurp(d / "records.jsonl"), before);
  EXPECT_EQ(st.size(), 1u);
  EXPECT_TRUE(testutil::tree(d / "masks").empty());
}

TEST(Store, ExportImportRoundTrip) {
  testutil::TempDir d, e;
  std::string exported;
  {
    Store st(d.path());
    st.append(session("s"));
    st.append(singular("s-t0", SegMask::Full(5, 5)));
    st.append(survey("s"));
    exported = st.export_string();
  }
  const auto nl = exported.find('\n');
  const nlohmann::json header = nlohmann::json::parse(exported.substr(0, nl));
  EXPECT_EQ(header["format"], "ccontour-records");
  EXPECT_EQ(header["schema_version"], 1);
  EXPECT_EQ(exported.substr(nl + 1), testutil::slurp(d / "records.jsonl"));

  std::istringstream in(exported);
  Store::import_from(in, e / "copy");
  Store copy(e / "copy");
  EXPECT_EQ(copy.size(), 3u);
  EXPECT_EQ(copy.export_string(), exported);

  std::istringstream again(exported);
  EXPECT_THROW(Store::import_from(again, e / "copy"), IoError);
}

TEST(Store, ImportRejectsBadStreams) {
  testutil::TempDir d;
  std::istringstream empty("");
  EXPECT_THROW(Store::import_from(empty, d / "a"), IoError);
  std::istringstream wrong(R"({"format":"other","schema_version":1})" "\n");
  EXPECT_THROW(Store::import_from(wrong, d / "b"), IoError);
  std::istringstream damaged(std::string(R"({"format":"ccontour-records","schema_version":1})") +
                             "\nsurvey\t{\"id\":1}\tdeadbeef\n");
  EXPECT_THROW(Store::import_from(damaged, d / "c"), IoError);
  EXPECT_FALSE(std::filesystem::exists(d / "c" / "records.jsonl"));
}

TEST(Store, ConcurrentAppendsAndScans) {
  testutil::TempDir d;
  Store st(d.path());
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&st, t] {
      for (int i = 0; i < 50; ++i) st.append(survey(std::to_string(t) + "-" + std::to_string(i)));
    });
  }
  threads.emplace_back([&st] {
    for (int i = 0; i < 50; ++i) (void)st.scan<SurveyRecord>();
  });
  for (auto& th : threads) th.join();
  EXPECT_EQ(st.size(), 200u);
  EXPECT_EQ(Store(d.path()).size(), 200u);
}

}  // namespace
}  // namespace ccontour
