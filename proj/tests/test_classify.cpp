#include <gtest/gtest.h>

#include <limits>

#include "wholo/classify.hpp"

using namespace wholo;

namespace {

std::vector<std::int64_t> rows_of(std::int64_t s, std::int64_t m_max, OrderClass want) {
  std::vector<std::int64_t> out;
  for (const auto& r : class_table(s, m_max)) {
    if (r.order == want) out.push_back(r.m);
  }
  return out;
}

}  // namespace

TEST(FunctionIndex, Examples) {
  EXPECT_EQ(function_index(2, 3), 6);
  EXPECT_EQ(function_index(4, 1), 4);
  EXPECT_EQ(function_index(3, 5), 15);
}

TEST(FunctionIndex, RangeAndOverflow) {
  EXPECT_THROW(function_index(1, 3), std::invalid_argument);
  EXPECT_THROW(function_index(2, 0), std::invalid_argument);
  EXPECT_EQ(function_index(std::int64_t{1} << 31, std::int64_t{1} << 31), std::int64_t{1} << 62);
  EXPECT_THROW(function_index(std::numeric_limits<std::int64_t>::max() / 2, 3), std::overflow_error);
}

TEST(OrderClass, Examples) {
  EXPECT_TRUE(rows_of(2, 30, OrderClass::Intermediate).empty());
  EXPECT_EQ(order_class(2, 3), OrderClass::Lower);
  EXPECT_EQ(order_class(2, 4), OrderClass::High);
  EXPECT_EQ(order_class(3, 5), OrderClass::Intermediate);
  EXPECT_EQ(order_class(4, 6), OrderClass::Intermediate);
  EXPECT_EQ(order_class(4, 9), OrderClass::High);
}

TEST(OrderClass, RangeErrors) {
  EXPECT_THROW(order_class(1, 3), std::invalid_argument);
  EXPECT_THROW(order_class(3, 1), std::invalid_argument);
}

TEST(OrderClass, BoundaryExactness) {
  for (std::int64_t s = 2; s <= 64; ++s) {
    EXPECT_EQ(order_class(s, s + 1), OrderClass::Lower);
    EXPECT_EQ(order_class(s, s * (s - 1) / 2 + 3), OrderClass::High);
    if (s > 2) EXPECT_EQ(order_class(s, s * (s - 1) / 2 + 2), OrderClass::Intermediate);
  }
}

TEST(OrderClass, IntermediateEmptyOnlyForS2) {
  for (std::int64_t s = 2; s <= 64; ++s) {
    EXPECT_EQ(rows_of(s, s * (s - 1) / 2 + 5, OrderClass::Intermediate).empty(), s == 2) << "s = " << s;
  }
}

TEST(OrderClass, PartitionsEveryM) {
  for (std::int64_t s = 2; s <= 12; ++s) {
    const auto table = class_table(s, 80);
    ASSERT_EQ(table.size(), 79u);
    // Lower, then Intermediate, then High, each a contiguous run.
    for (std::size_t k = 1; k < table.size(); ++k) {
      EXPECT_LE(static_cast<int>(table[k - 1].order), static_cast<int>(table[k].order));
    }
  }
}

TEST(ClassTable, Examples) {
  EXPECT_EQ(class_table(2, 5), (std::vector<ClassRow>{{2, OrderClass::Lower, 4},
                                                     {3, OrderClass::Lower, 6},
                                                     {4, OrderClass::High, 8},
                                                     {5, OrderClass::High, 10}}));
  EXPECT_EQ(rows_of(4, 9, OrderClass::Intermediate), (std::vector<std::int64_t>{6, 7, 8}));
  EXPECT_EQ(rows_of(3, 6, OrderClass::Intermediate), (std::vector<std::int64_t>{5}));
  const auto s10 = class_table(10, 12);
  for (const auto& r : s10) EXPECT_EQ(r.order, r.m <= 11 ? OrderClass::Lower : OrderClass::Intermediate);
}

TEST(ClassTable, ConsistentWithOrderClassAndIndex) {
  for (const auto& r : class_table(7, 40)) {
    EXPECT_EQ(r.order, order_class(7, r.m));
    EXPECT_EQ(r.n, function_index(7, r.m));
  }
  EXPECT_THROW(class_table(3, 1), std::invalid_argument);
}
