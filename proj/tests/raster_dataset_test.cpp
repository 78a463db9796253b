// Copyright 2026 The HINT Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "hint/dataset.hpp"
#include "hint/error.hpp"
#include "hint/raster.hpp"

namespace hint {
namespace {

std::string parse_error(const std::string& line) {
  try {
    example_from_json(line, 7);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    return e.what();
  }
  ADD_FAILURE() << "no error for " << line;
  return {};
}

TEST(RasterTest, ValidatesValues) {
  EXPECT_THROW(AttentionRaster(2, 2, {1, 2, 3}), Error);
  EXPECT_THROW(AttentionRaster(1, 2, {1, -0.5}), Error);
  const AttentionRaster r(2, 2, {0, 1, 2, 3});
  EXPECT_DOUBLE_EQ(r.total(), 6.0);
  EXPECT_DOUBLE_EQ(r.max(), 3.0);
  EXPECT_FALSE(r.all_zero());
  EXPECT_TRUE(AttentionRaster(1, 1, {0.0}).all_zero());
}

TEST(RasterTest, BoxesAreHalfOpen) {
  const Box b{1, 2, 3, 5};
  EXPECT_EQ(b.area(), 6);
  EXPECT_TRUE(b.contains(2, 1));
  EXPECT_FALSE(b.contains(5, 1));
  EXPECT_FALSE(b.contains(2, 3));
  EXPECT_TRUE(b.fits(5, 3));
  EXPECT_FALSE(b.fits(4, 3));
}

TEST(RasterTest, JsonRoundTrip) {
  const AttentionRaster r(2, 3, {0, 0.25, 1, 2, 0, 0.5});
  EXPECT_EQ(parse_raster(emit_raster(r)), r);
  EXPECT_EQ(parse_raster(R"({"h":1,"w":2,"data":[3,4]})"), AttentionRaster(1, 2, {3, 4}));
}

TEST(RasterTest, ParseRejectsMalformedInput) {
  EXPECT_THROW(parse_raster("{"), Error);
  EXPECT_THROW(parse_raster(R"({"h":2,"w":2,"data":[1,2,3]})"), Error);
  EXPECT_THROW(parse_raster(R"({"h":1,"w":1,"data":[-1]})"), Error);
  EXPECT_THROW(parse_raster(R"({"h":1,"w":1,"data":["x"]})"), Error);
}

TEST(RasterTest, AverageIsElementwiseMean) {
  const std::vector<AttentionRaster> maps{AttentionRaster(1, 2, {1, 0}),
                                          AttentionRaster(1, 2, {0, 2}),
                                          AttentionRaster(1, 2, {2, 1})};
  EXPECT_EQ(average_rasters(maps), AttentionRaster(1, 2, {1, 1}));
  const std::vector<AttentionRaster> mismatched{AttentionRaster(1, 2, {1, 0}),
                                                AttentionRaster(2, 1, {1, 0})};
  EXPECT_THROW(average_rasters(mismatched), Error);
}

Example sample_example() {
  Example ex;
  ex.id = "ex-1";
  ex.question = {0, 3};
  ex.answer = 2;
  ex.proposals = {{Box{0, 0, 2, 2}, {0.5, -1.25}}, {Box{1, 1, 4, 3}, {1e-3, 2.0}}};
  ex.attention = AttentionRaster(3, 4, {0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0.5});
  ex.referent = 1;
  return ex;
}

TEST(DatasetTest, ExampleJsonRoundTripIsExact) {
  const Example ex = sample_example();
  EXPECT_EQ(example_from_json(example_to_json(ex), 1), ex);
  Example bare = ex;
  bare.attention.reset();
  bare.referent.reset();
  EXPECT_EQ(example_from_json(example_to_json(bare), 1), bare);
}

TEST(DatasetTest, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "hint_dataset_test.jsonl";
  Dataset data{sample_example(), sample_example()};
  data[1].id = "ex-2";
  data[1].attention.reset();
  write_jsonl(path, data);
  EXPECT_EQ(read_jsonl(path), data);
  std::filesystem::remove(path);
}

TEST(DatasetTest, MissingAndNullAttentionMeanUnsupervised) {
  const std::string base =
      R"({"id":"a","question":[0,1],"answer":0,"proposals":[{"box":[0,0,1,1],"feature":[1]}])";
  EXPECT_FALSE(example_from_json(base + "}", 1).attention.has_value());
  EXPECT_FALSE(example_from_json(base + R"(,"attention":null})", 1).attention.has_value());
}

TEST(DatasetTest, MultipleRastersAreAveraged) {
  const std::string line =
      R"({"id":"a","question":[0,1],"answer":0,"proposals":[{"box":[0,0,1,1],"feature":[1]}],)"
      R"("attention":[{"h":1,"w":2,"data":[1,0]},{"h":1,"w":2,"data":[0,1]}]})";
  EXPECT_EQ(*example_from_json(line, 1).attention, AttentionRaster(1, 2, {0.5, 0.5}));
}

TEST(DatasetTest, ErrorsCarryLineNumbers) {
  EXPECT_NE(parse_error("not json").find("line 7"), std::string::npos);
  EXPECT_NE(parse_error(R"({"id":"a"})").find("line 7"), std::string::npos);
  parse_error(R"({"id":"a","question":[0],"answer":-1,"proposals":[{"box":[0,0,1,1],"feature":[1]}]})");
  parse_error(R"({"id":"a","question":[0],"answer":0,"proposals":[{"box":[2,0,1,1],"feature":[1]}]})");
  parse_error(R"({"id":"a","question":[0],"answer":0,"proposals":[{"box":[0,0,1,1],"feature":[]}]})");
  parse_error(R"({"id":"a","question":[0],"answer":0,"proposals":[]})");
  parse_error(R"({"id":"a","question":[0],"answer":0,"proposals":[{"box":[0,0,1,1],"feature":[1]}],)"
              R"("attention":{"h":1,"w":1,"data":[-2]}})");
}

TEST(DatasetTest, ReadReportsFailingLine) {
  const auto path = std::filesystem::temp_directory_path() / "hint_dataset_bad.jsonl";
  {
    std::ofstream out(path);
    out << example_to_json(sample_example()) << "\n\n" << "{broken\n";
  }
  try {
    read_jsonl(path);
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST(DatasetTest, MissingFileIsIoError) {
  try {
    read_jsonl("/nonexistent/dir/data.jsonl");
    FAIL() << "expected an io error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace hint
