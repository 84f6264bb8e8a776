#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cylcert/rational.hpp"

namespace cylcert {

/// A smooth rational curve. The K-degree is never stored: K.C = -self - 2.
struct Curve {
    std::string name;
    int self_int = 0;
};

/// Dual-graph model of a curve configuration together with the ambient
/// invariants K^2 and the Picard rank.
class CurveConfig {
public:
    CurveConfig() = default;
    CurveConfig(std::vector<Curve> curves, int k_self, int rho)
        : curves_(std::move(curves)), k_self_(k_self), rho_(rho) {}

    const std::vector<Curve>& curves() const { return curves_; }
    int k_self() const { return k_self_; }
    int rho() const { return rho_; }
    void set_k_self(int v) { k_self_ = v; }
    void set_rho(int v) { rho_ = v; }

    bool has(const std::string& name) const { return find(name).has_value(); }
    std::optional<std::size_t> find(const std::string& name) const;
    const Curve& at(const std::string& name) const;

    void add_curve(Curve c);
    void remove_curve(const std::string& name);

    /// Pairwise intersection number; omitted pairs are 0, and the table is
    /// symmetric by construction (unordered keys).
    int inter(const std::string& a, const std::string& b) const;
    void set_inter(const std::string& a, const std::string& b, int value);

    int k_degree(const std::string& name) const { return -at(name).self_int - 2; }

    const std::map<std::pair<std::string, std::string>, int>& inter_table() const { return inter_; }

    bool operator==(const CurveConfig& other) const;

private:
    static std::pair<std::string, std::string> key(const std::string& a, const std::string& b) {
        return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
    }

    std::vector<Curve> curves_;
    std::map<std::pair<std::string, std::string>, int> inter_;
    int k_self_ = 0;
    int rho_ = 0;
};

}  // namespace cylcert
