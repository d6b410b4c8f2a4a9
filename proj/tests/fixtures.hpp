#pragma once

#include <algorithm>
#include <vector>

#include "crepant/special_data.hpp"

namespace fixtures {

using crepant::ForestShape;
using crepant::SpecialDatum;

inline ForestShape leaf() { return ForestShape{}; }

inline ForestShape node(std::int64_t k, std::vector<ForestShape> children) {
    return ForestShape{k, std::move(children)};
}

inline SpecialDatum datum(std::vector<ForestShape> components) {
    return crepant::from_forest(crepant::forest_from_shapes(components));
}

inline SpecialDatum star(int d, std::int64_t k) {
    return datum({node(k, std::vector<ForestShape>(static_cast<std::size_t>(d), leaf()))});
}

inline SpecialDatum figure6a(std::int64_t k14, std::int64_t k13) {
    return datum({node(k14, {node(k13, {leaf(), leaf(), leaf()}), leaf()})});
}

inline SpecialDatum figure6b(std::int64_t k14, std::int64_t k12) {
    return datum({node(k14, {node(k12, {leaf(), leaf()}), leaf(), leaf()})});
}

inline SpecialDatum figure6c(std::int64_t k14, std::int64_t k12, std::int64_t k34) {
    return datum({node(k14, {node(k12, {leaf(), leaf()}), node(k34, {leaf(), leaf()})})});
}

inline SpecialDatum figure6d(std::int64_t k14, std::int64_t k13, std::int64_t k12) {
    return datum({node(k14, {node(k13, {node(k12, {leaf(), leaf()}), leaf()}), leaf()})});
}

inline SpecialDatum figure8(std::int64_t k17, std::int64_t k12, std::int64_t k47, std::int64_t k45,
                            std::int64_t k67) {
    return datum({node(k17, {node(k12, {leaf(), leaf()}), leaf(),
                             node(k47, {node(k45, {leaf(), leaf()}), node(k67, {leaf(), leaf()})})})});
}

inline SpecialDatum figure9(std::int64_t k12, std::int64_t k34) {
    return datum({node(k12, {leaf(), leaf()}), node(k34, {leaf(), leaf()})});
}

/// All plane forests over d leaves whose free parameters range over params.
inline std::vector<std::vector<ForestShape>> all_forests(int d, const std::vector<std::int64_t>& params);

namespace detail {

inline std::vector<ForestShape> trees(int leaves, const std::vector<std::int64_t>& params);

// Ordered sequences of trees with the given leaf total and at least min_parts parts.
inline std::vector<std::vector<ForestShape>> sequences(int leaves, std::size_t min_parts,
                                                       const std::vector<std::int64_t>& params) {
    std::vector<std::vector<ForestShape>> out;
    if (leaves == 0) {
        if (min_parts == 0) out.push_back({});
        return out;
    }
    const int reserve = min_parts > 1 ? static_cast<int>(min_parts) - 1 : 0;
    for (int first = 1; first <= leaves - reserve; ++first)
        for (const auto& t : trees(first, params))
            for (auto rest : sequences(leaves - first, min_parts > 0 ? min_parts - 1 : 0, params)) {
                rest.insert(rest.begin(), t);
                out.push_back(std::move(rest));
            }
    return out;
}

inline std::vector<ForestShape> trees(int leaves, const std::vector<std::int64_t>& params) {
    if (leaves == 1) return {leaf()};
    std::vector<ForestShape> out;
    for (auto kids : sequences(leaves, 2, params))
        for (auto k : params) out.push_back(node(k, kids));
    return out;
}

}  // namespace detail

inline std::vector<std::vector<ForestShape>> all_forests(int d, const std::vector<std::int64_t>& params) {
    return detail::sequences(d, 1, params);
}

/// One representative forest per isomorphism class of data (canonical forms deduplicated).
inline std::vector<std::vector<ForestShape>> canonical_forests(int d, const std::vector<std::int64_t>& params) {
    std::vector<std::vector<ForestShape>> out;
    std::vector<std::vector<std::pair<crepant::IndexSet, std::int64_t>>> seen;
    for (auto& f : all_forests(d, params)) {
        auto key = crepant::canonicalize(datum(f)).datum.entries();
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(std::move(key));
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace fixtures
