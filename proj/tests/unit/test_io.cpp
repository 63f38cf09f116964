#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>

#include "caputolab/io.hpp"

using namespace caputolab;
using namespace caputolab::dynamics;

TEST(Io, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 12345.678901234567, 0.99975}) {
    EXPECT_EQ(std::strtod(io::format_double(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(io::format_double(1.0), "1");
}

TEST(Io, EmptyMaximaWritesHeaderOnly) {
  BifurcationDataset bd;
  bd.parameter = "q";
  bd.values = {0.99, 1.0};
  bd.ics = {{"IC1", {0, 0, 0}}};
  bd.cells.resize(2);
  std::ostringstream os;
  io::write_bifurcation_csv(os, bd);
  EXPECT_EQ(os.str(), "param,ic_id,h,maximum\n");
}

TEST(Io, BifurcationRows) {
  BifurcationDataset bd;
  bd.values = {0.5};
  bd.ics = {{"A", {0, 0, 0}}};
  bd.config.h = 0.01;
  bd.cells.resize(1);
  bd.cells[0].maxima.values = {0.25, 1.5};
  std::ostringstream os;
  io::write_bifurcation_csv(os, bd);
  EXPECT_EQ(os.str(), "param,ic_id,h,maximum\n0.5,A,0.01,0.25\n0.5,A,0.01,1.5\n");
}

TEST(Io, TwoByTwoBasin) {
  BasinGrid g;
  g.plane.n_u = 2;
  g.plane.n_v = 2;
  g.points.resize(4);
  g.points[0].label = BasinLabel::minus;
  g.points[1].label = BasinLabel::plus;
  g.points[2].label = BasinLabel::undecided;
  g.points[3].label = BasinLabel::unbounded;
  std::ostringstream csv;
  io::write_basin_csv(csv, g);
  const std::string text = csv.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  std::ostringstream pgm;
  io::write_basin_pgm(pgm, g);
  const std::string header = "P5\n2 2\n255\n";
  const std::string img = pgm.str();
  ASSERT_EQ(img.size(), header.size() + 4);
  EXPECT_EQ(img.substr(0, header.size()), header);
  // Top row holds the largest v (b = 1).
  EXPECT_EQ(static_cast<unsigned char>(img[header.size() + 0]), 127);
  EXPECT_EQ(static_cast<unsigned char>(img[header.size() + 1]), 64);
  EXPECT_EQ(static_cast<unsigned char>(img[header.size() + 2]), 0);
  EXPECT_EQ(static_cast<unsigned char>(img[header.size() + 3]), 255);
}

TEST(Io, TrajectoryHeader) {
  Trajectory tr(3, 0.5, 2);
  const std::vector<double> x{1, 2, 3}, f{0, 0, 0};
  tr.push(0.0, x, f);
  std::ostringstream os;
  io::write_trajectory_csv(os, tr);
  EXPECT_EQ(os.str(), "t,x1,x2,x3\n0,1,2,3\n");
}

TEST(Io, UnwritablePathThrows) {
  EXPECT_THROW(io::write_text_file("/nonexistent-dir/x/y.csv", "a"), std::runtime_error);
}
