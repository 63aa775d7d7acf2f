#include <gtest/gtest.h>

#include <sstream>

#include "tnn/json_io.hpp"
#include "tnn/sampling.hpp"

using namespace tnn;

TEST(MatrixJson, ExactRoundTrip) {
  Rng rng(61);
  for (int rep = 0; rep < 50; ++rep) {
    RatMatrix m = random_rat_matrix(rng, 1 + rep % 6);
    m(0, 0) = parse_rat("-123456789012345678901234567891/7");  // beyond 64 bits
    const std::string text = matrix_to_json(m).dump();
    const auto back = parse_matrix(text);
    EXPECT_EQ(back, m);
    EXPECT_EQ(matrix_to_json(back).dump(), text);
  }
}

TEST(MatrixJson, Format) {
  RatMatrix m = RatMatrix::identity(2);
  m(0, 1) = make_rat(-3, 6);
  EXPECT_EQ(matrix_to_json(m).dump(), R"({"n":2,"entries":[["1","-1/2"],["0","1"]]})");
  // integers are accepted as JSON numbers too
  EXPECT_EQ(parse_matrix(R"({"n":2,"entries":[[1,"-1/2"],[0,1]]})"), m);
}

TEST(MatrixJson, Errors) {
  for (const char* bad : {
           "not json",
           R"({"entries":[["1"]]})",
           R"({"n":2,"entries":[["1","0"]]})",
           R"({"n":2,"entries":[["1","0"],["0"]]})",
           R"({"n":1,"entries":[["1/0"]]})",
           R"({"n":1,"entries":[[1.5]]})",
           R"({"n":"1","entries":[["1"]]})",
       }) {
    try {
      parse_matrix(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::Parse) << bad;
    }
  }
}

TEST(CellPointJson, RoundTrip) {
  const auto p = lusztig_point(parse_word("s1.s2.s1", 3), {Rat(1), Rat(2), Rat(1, 2)});
  const auto j = cell_point_to_json(p);
  EXPECT_EQ(j["cell"], "3,2,1");
  EXPECT_EQ(j["tnn"], true);
  const auto back = cell_point_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.matrix, p.matrix);
  EXPECT_EQ(back.cell, p.cell);
  EXPECT_EQ(back.tnn, p.tnn);
  EXPECT_THROW(cell_point_from_json(matrix_to_json(p.matrix)), Error);
}

TEST(FloatJson, DoublesRoundTripBitExactly) {
  FloatMatrix m = FloatMatrix::identity(3);
  m(0, 1) = 0.1;
  m(0, 2) = 1.0 / 3.0;
  m(1, 2) = 6.02214076e23;
  const auto j = json::parse(matrix_to_json(m).dump());
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) EXPECT_EQ(j["entries"][i][k].get<double>(), m(i, k));
}

TEST(TrajectoryJson, OneObjectPerSnapshot) {
  RatMatrix x = RatMatrix::identity(3);
  x(0, 1) = 1;
  x(1, 2) = 1;
  x(0, 2) = Rat(1, 2);
  FlowOptions opt;
  opt.snapshot_every = 3;
  const auto traj = flow(to_float(x), Permutation::identity(3), Direction::Forward,
                         StopRule::for_time(0.5), opt);
  std::ostringstream os;
  write_trajectory_jsonl(os, traj);
  std::istringstream is(os.str());
  std::string line;
  std::size_t count = 0;
  while (std::getline(is, line)) {
    const auto j = json::parse(line);
    ASSERT_TRUE(j.contains("t") && j.contains("str") && j.contains("entries"));
    EXPECT_EQ(j["entries"].size(), 3u);
    EXPECT_DOUBLE_EQ(j["str"].get<double>(), traj.states[count].str_value);
    ++count;
  }
  EXPECT_EQ(count, traj.states.size());
}

TEST(LinkSampleJson, Shape) {
  const auto s = link_sample(Permutation::identity(3), Permutation::longest(3), Rat(1), 1, 1);
  const auto j = link_sample_to_json(s);
  EXPECT_EQ(j["u"], "1,2,3");
  EXPECT_EQ(j["v"], "3,2,1");
  EXPECT_EQ(j["epsilon"], "1");
  EXPECT_EQ(j["euler_characteristic"], 1);
  EXPECT_EQ(j["strata"].size(), 5u);
  EXPECT_EQ(j["points"].size(), 5u);
}
