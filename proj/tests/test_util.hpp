#pragma once

// gtest pretty-printers for the core value types.

#include "qgl/qfield.hpp"
#include "qgl/superop.hpp"

#include <ostream>

namespace qgl {

inline void PrintTo(const QScalar& s, std::ostream* os) { *os << s.str(); }

inline void PrintTo(const LaurentPoly& p, std::ostream* os) { *os << p.str(); }

inline void PrintTo(const SuperOperator& op, std::ostream* os) {
  *os << op.rows() << "x" << op.cols() << "{";
  for (auto& [i, j, v] : op.triplets()) *os << " (" << i << "," << j << ")=" << v;
  *os << " }";
}

}  // namespace qgl
