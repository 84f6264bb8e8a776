#include "cylcert/dynkin.hpp"

#include <algorithm>

#include "cylcert/errors.hpp"

namespace cylcert {

std::vector<std::pair<int, int>> dynkin_edges(char family, int index) {
    std::vector<std::pair<int, int>> edges;
    switch (family) {
        case 'A':
            for (int i = 0; i + 1 < index; ++i) edges.emplace_back(i, i + 1);
            break;
        case 'D':
            if (index < 4) throw Error(ErrorCode::SchemaError, "D_n requires n >= 4");
            for (int i = 0; i + 1 < index - 2; ++i) edges.emplace_back(i, i + 1);
            edges.emplace_back(index - 3, index - 2);
            edges.emplace_back(index - 3, index - 1);
            break;
        case 'E':
            if (index < 6 || index > 8) throw Error(ErrorCode::SchemaError, "E_n requires n in 6..8");
            for (int i = 0; i + 2 < index; ++i) edges.emplace_back(i, i + 1);
            edges.emplace_back(2, index - 1);
            break;
        default:
            throw Error(ErrorCode::SchemaError, std::string("unknown singularity family ") + family);
    }
    return edges;
}

bool check_dynkin(const SingularityDecl& s, const CurveConfig& cfg) {
    const int n = static_cast<int>(s.exc_curves.size());
    if (n != s.index) return false;
    for (const auto& name : s.exc_curves) {
        if (!cfg.has(name)) throw Error(ErrorCode::UnknownCurve, name);
        if (cfg.at(name).self_int != -2) return false;
    }
    auto expected = dynkin_edges(s.family, s.index);
    std::vector<std::pair<int, int>> actual;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            int m = cfg.inter(s.exc_curves[i], s.exc_curves[j]);
            if (m < 0 || m > 1) return false;
            if (m == 1) actual.emplace_back(i, j);
        }
    }
    auto norm = [](std::vector<std::pair<int, int>> v) {
        for (auto& [a, b] : v)
            if (a > b) std::swap(a, b);
        std::sort(v.begin(), v.end());
        return v;
    };
    return norm(std::move(expected)) == norm(std::move(actual));
}

}  // namespace cylcert
