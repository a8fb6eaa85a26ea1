#pragma once

// Order classes of m-point functions in s space-time dimensions.
//
//   Lower         m <= s + 1
//   High          m >  s(s-1)/2 + 2
//   Intermediate  otherwise (empty for s = 2)

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wholo {

enum class OrderClass { Lower, Intermediate, High };

inline std::string_view to_string(OrderClass c) {
  switch (c) {
    case OrderClass::Lower: return "lower";
    case OrderClass::Intermediate: return "intermediate";
    case OrderClass::High: return "high";
  }
  return "lower";
}

// n = s m, the total number of complex variables.
inline std::int64_t function_index(std::int64_t s, std::int64_t m) {
  if (s < 2) throw std::invalid_argument("function_index: s must be >= 2");
  if (m < 1) throw std::invalid_argument("function_index: m must be >= 1");
  std::int64_t n = 0;
  if (__builtin_mul_overflow(s, m, &n)) {
    throw std::overflow_error("function_index: s*m = " + std::to_string(s) + "*" + std::to_string(m) +
                              " exceeds the 64-bit range");
  }
  return n;
}

// s(s-1)/2 + 2, the last m outside the high class.
inline std::int64_t high_order_threshold(std::int64_t s) {
  if (s < 2) throw std::invalid_argument("high_order_threshold: s must be >= 2");
  // s(s-1)/2 fits for s < 2^32.
  if (s > (std::int64_t{1} << 32)) throw std::overflow_error("high_order_threshold: s too large");
  return s * (s - 1) / 2 + 2;
}

inline OrderClass order_class(std::int64_t s, std::int64_t m) {
  if (s < 2) throw std::invalid_argument("order_class: s must be >= 2");
  if (m < 2) throw std::invalid_argument("order_class: m must be >= 2");
  if (m <= s + 1) return OrderClass::Lower;
  if (m > high_order_threshold(s)) return OrderClass::High;
  return OrderClass::Intermediate;
}

struct ClassRow {
  std::int64_t m;
  OrderClass order;
  std::int64_t n;
  friend bool operator==(const ClassRow&, const ClassRow&) = default;
};

inline std::vector<ClassRow> class_table(std::int64_t s, std::int64_t m_max) {
  if (m_max < 2) throw std::invalid_argument("class_table: m_max must be >= 2");
  std::vector<ClassRow> rows;
  for (std::int64_t m = 2; m <= m_max; ++m) rows.push_back({m, order_class(s, m), function_index(s, m)});
  return rows;
}

}  // namespace wholo
