#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cylcert/curves.hpp"

namespace cylcert {

/// Declared du Val singular point: an ADE type plus the ordered list of its
/// exceptional (-2)-curves.
///
/// Node ordering conventions for the declared list c1..cn:
///   A_n: the chain c1-c2-...-cn.
///   D_n: the chain c1-...-c(n-2) with both c(n-1) and cn attached to c(n-2).
///   E_n: the chain c1-...-c(n-1) with cn attached to c3.
struct SingularityDecl {
    char family = 'A';  // 'A', 'D' or 'E'
    int index = 1;
    std::vector<std::string> exc_curves;

    std::string kind() const { return family + std::to_string(index); }
};

/// Expected edge set (pairs of 0-based node positions) of the named diagram.
std::vector<std::pair<int, int>> dynkin_edges(char family, int index);

/// True iff all declared curves are (-2), intersections within the set are
/// 0/1, and the adjacency graph matches the named diagram in declared order.
bool check_dynkin(const SingularityDecl& s, const CurveConfig& cfg);

}  // namespace cylcert
