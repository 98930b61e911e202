#include <gtest/gtest.h>

#include "dscc/fulldyn.hpp"
#include "fulldyn_harness.hpp"

namespace dscc {
namespace {

TEST(FullyDynamic, SingleSourceNoEdges) {
  FullyDynamicReach fd(3, {}, std::vector<VertexId>{1}, 1);
  EXPECT_TRUE(fd.query(1, 1));
  EXPECT_FALSE(fd.query(1, 0));
  EXPECT_FALSE(fd.query(1, 2));
  EXPECT_EQ(fd.last_query_probes(), 1u);
  EXPECT_EQ(fd.rebuilds(), 0u);
}

TEST(FullyDynamic, InvalidArguments) {
  const std::vector<VertexId> two = {0, 1};
  EXPECT_THROW(FullyDynamicReach(2, {}, two, 3), InputError);
  EXPECT_THROW(FullyDynamicReach(2, {}, two, 0), InputError);
  EXPECT_THROW(FullyDynamicReach(2, {}, std::vector<VertexId>{}, 1), InputError);
  FullyDynamicReach fd(2, {}, two, 2);
  EXPECT_THROW(fd.query(1, 5), InputError);
}

TEST(FullyDynamic, InsertAndDelete) {
  // s = 0, t = 2 so the inserted vertex stays pending.
  const std::vector<VertexId> sources = {0, 1};
  FullyDynamicReach fd(2, {}, sources, 2);
  fd.insert_vertex(2, std::vector<EdgePair>{});
  EXPECT_FALSE(fd.query(0, 2));
  EXPECT_TRUE(fd.present(2));
  EXPECT_THROW(fd.insert_vertex(2, std::vector<EdgePair>{}), InputError);
  fd.delete_vertex(2);
  EXPECT_FALSE(fd.present(2));
  EXPECT_THROW(fd.query(0, 2), InputError);
  EXPECT_THROW(fd.delete_vertex(2), InputError);
  EXPECT_EQ(fd.rebuilds(), 0u);

  // Inserting u with s -> u makes u reachable, and u -> 1 opens 0 -> 1.
  fd.insert_vertex(2, std::vector<EdgePair>{{0, 2}, {2, 1}});
  EXPECT_EQ(fd.rebuilds(), 1u);
  EXPECT_TRUE(fd.query(0, 2));
  EXPECT_TRUE(fd.query(0, 1));
  EXPECT_FALSE(fd.query(1, 0));
}

TEST(FullyDynamic, PathThroughInsertedVertexNeedsItsProbe) {
  // 0 -> 1 exists at the snapshot; 2 arrives later with 1 -> 2.
  const std::vector<VertexId> sources = {0, 1};
  FullyDynamicReach fd(2, std::vector<EdgePair>{{0, 1}}, sources, 2);
  fd.insert_vertex(2, std::vector<EdgePair>{{1, 2}});
  EXPECT_TRUE(fd.query(0, 2));
  EXPECT_EQ(fd.last_query_probes(), 2u);
  EXPECT_TRUE(fd.query(0, 1));
  EXPECT_EQ(fd.last_query_probes(), 1u);
  fd.delete_vertex(1);
  EXPECT_FALSE(fd.query(0, 2));
}

TEST(FullyDynamic, InsertRejectsForeignEdges) {
  FullyDynamicReach fd(3, {}, std::vector<VertexId>{0}, 1);
  fd.delete_vertex(2);
  EXPECT_THROW(fd.insert_vertex(2, std::vector<EdgePair>{{0, 1}}), InputError);
  EXPECT_FALSE(fd.present(2));
}

TEST(FullyDynamic, RandomScriptsMatchOracle) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    for (int t_choice = 0; t_choice < 3; ++t_choice) {
      const auto r = testing::run_random_script(seed, t_choice);
      ASSERT_EQ(r.error, "") << "seed " << seed << " t choice " << t_choice;
    }
  }
}

TEST(FullyDynamic, TinyScriptsExhaustive) {
  int scripts = 0;
  for (int t : {1, 2}) {
    testing::for_each_tiny_script(4, t, {{0, 1}, {1, 2}, {2, 0}}, [&](const auto& r) {
      ++scripts;
      EXPECT_EQ(r.error, "");
      return r.error.empty();
    });
  }
  EXPECT_GT(scripts, 1000);
}

}  // namespace
}  // namespace dscc
