#pragma once

#include <map>
#include <string>

#include "mf/generators.hpp"

namespace testing_helpers {

inline const mf::BasicData& theory(const std::string& name) {
    static std::map<std::string, mf::BasicData> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, mf::generate_theory(name)).first;
    return it->second;
}

/// Copy with one F entry shifted by delta (block index bi within the sorted
/// block list, flat entry ei).
inline mf::BasicData perturb_f(const mf::BasicData& bd, std::size_t bi, long ei, double delta) {
    std::map<mf::FBlockKey, mf::FBlock> F(bd.f_blocks().begin(), bd.f_blocks().end());
    auto it = F.begin();
    std::advance(it, bi);
    it->second.m(ei / it->second.m.cols(), ei % it->second.m.cols()) += delta;
    return mf::BasicData(bd.labels(), bd.dims(), bd.r_family(), bd.b_family(), std::move(F),
                         bd.twists(), bd.has_S() ? std::optional<mf::Matrix>(bd.S()) : std::nullopt,
                         bd.tol(), bd.comment());
}

inline mf::BasicData without_s(const mf::BasicData& bd) {
    return mf::BasicData(bd.labels(), bd.dims(), bd.r_family(), bd.b_family(),
                         std::map<mf::FBlockKey, mf::FBlock>(bd.f_blocks().begin(),
                                                             bd.f_blocks().end()),
                         bd.twists(), std::nullopt, bd.tol(), bd.comment());
}

}  // namespace testing_helpers
