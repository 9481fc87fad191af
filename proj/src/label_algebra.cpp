#include "mf/label_algebra.hpp"

#include <algorithm>
#include <set>

namespace mf {

LabelSet::LabelSet(std::vector<std::string> names, std::vector<Label> dagger)
    : names_(std::move(names)), dagger_(std::move(dagger)) {
    if (names_.empty()) throw InvalidTheory("label set is empty");
    if (dagger_.size() != names_.size()) throw InvalidTheory("dagger table size mismatch");
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size()) throw InvalidTheory("labels are not pairwise distinct");
    for (Label l = 0; l < names_.size(); ++l) {
        if (dagger_[l] >= names_.size()) throw InvalidTheory("dagger maps outside the label set");
        if (dagger_[dagger_[l]] != l) throw InvalidTheory("dagger is not an involution");
    }
    if (dagger_[0] != 0) throw InvalidTheory("dagger(unit) must be the unit");
}

Label LabelSet::index(const std::string& name) const {
    auto found = find(name);
    if (!found) throw InvalidTheory("label not in \xce\x9b: " + name);
    return *found;
}

std::optional<Label> LabelSet::find(const std::string& name) const {
    for (Label l = 0; l < names_.size(); ++l)
        if (names_[l] == name) return l;
    return std::nullopt;
}

DimTable::DimTable(std::size_t nlabels, std::map<Triple, unsigned> dims) : n_(nlabels) {
    for (auto& [t, d] : dims) {
        if (t.a >= n_ || t.b >= n_ || t.c >= n_) throw InvalidTheory("dims entry uses unknown label");
        if (d > 0) dims_.emplace(t, d);
    }
}

void DimTable::validate(const LabelSet& ls) const {
    const Label n = static_cast<Label>(n_);
    for (Label a = 0; a < n; ++a)
        for (Label b = 0; b < n; ++b)
            for (Label c = 0; c < n; ++c) {
                Triple t{a, b, c};
                unsigned d = dim(t);
                if (dim(rot(t)) != d || dim(swap23(t)) != d)
                    throw InvalidTheory("dim table is not symmetric at (" + ls.name(a) + "," +
                                        ls.name(b) + "," + ls.name(c) + ")");
            }
    for (Label mu = 0; mu < n; ++mu)
        for (Label nu = 0; nu < n; ++nu) {
            unsigned want = (nu == ls.dag(mu)) ? 1u : 0u;
            if (dim(0, mu, nu) != want)
                throw InvalidTheory("twice punctured sphere axiom fails at (0," + ls.name(mu) +
                                    "," + ls.name(nu) + ")");
        }
}

FusionMatrixFamily::FusionMatrixFamily(const LabelSet& ls, const DimTable& dt) {
    const std::size_t n = ls.size();
    mats_.resize(n);
    for (Label l = 0; l < n; ++l) {
        mats_[l].assign(n, std::vector<long>(n, 0));
        for (Label mu = 0; mu < n; ++mu)
            for (Label nu = 0; nu < n; ++nu)
                mats_[l][mu][nu] = static_cast<long>(dt.dim(l, mu, ls.dag(nu)));
    }
}

bool FusionMatrixFamily::unit_is_identity() const {
    const auto& m = mats_[0];
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

bool FusionMatrixFamily::all_commute() const {
    const std::size_t n = mats_.size();
    auto mul = [&](const std::vector<std::vector<long>>& x, const std::vector<std::vector<long>>& y) {
        std::vector<std::vector<long>> z(n, std::vector<long>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (x[i][k])
                    for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
        return z;
    };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (mul(mats_[a], mats_[b]) != mul(mats_[b], mats_[a])) return false;
    return true;
}

namespace {

// dim of genus-0 surface with the given boundary labels, folding left-to-right.
unsigned long long genus0_dim(const LabelSet& ls, const DimTable& dt, std::vector<Label> bd) {
    const std::size_t n = ls.size();
    if (bd.empty()) return 1;
    if (bd.size() == 1) return bd[0] == ls.unit() ? 1 : 0;
    if (bd.size() == 2) return bd[1] == ls.dag(bd[0]) ? 1 : 0;
    if (bd.size() == 3) return dt.dim(bd[0], bd[1], bd[2]);
    // fuse the first two legs through a pants, recurse
    unsigned long long total = 0;
    for (Label nu = 0; nu < n; ++nu) {
        unsigned d = dt.dim(bd[0], bd[1], nu);
        if (!d) continue;
        std::vector<Label> rest;
        rest.push_back(ls.dag(nu));
        rest.insert(rest.end(), bd.begin() + 2, bd.end());
        total += d * genus0_dim(ls, dt, rest);
    }
    return total;
}

}  // namespace

unsigned long long verlinde_dim(const LabelSet& ls, const DimTable& dt, unsigned genus,
                                const std::vector<Label>& boundary, PantsTree tree) {
    const std::size_t n = ls.size();
    if (genus == 0) {
        if (tree == PantsTree::CaterpillarHandlesFirst) return genus0_dim(ls, dt, boundary);
        // fold the same labeled sphere from the other end
        std::vector<Label> rev(boundary.rbegin(), boundary.rend());
        return genus0_dim(ls, dt, rev);
    }
    unsigned long long total = 0;
    if (tree == PantsTree::CaterpillarHandlesFirst) {
        // cut one handle: two new boundary legs (mu, mu^dag) on the left
        for (Label mu = 0; mu < n; ++mu) {
            std::vector<Label> bd;
            bd.push_back(mu);
            bd.push_back(ls.dag(mu));
            bd.insert(bd.end(), boundary.begin(), boundary.end());
            total += verlinde_dim(ls, dt, genus - 1, bd, tree);
        }
    } else {
        // same cut, legs appended on the right
        for (Label mu = 0; mu < n; ++mu) {
            std::vector<Label> bd(boundary);
            bd.push_back(mu);
            bd.push_back(ls.dag(mu));
            total += verlinde_dim(ls, dt, genus - 1, bd, tree);
        }
    }
    return total;
}

bool check_flip_dim_consistency(const LabelSet& ls, const DimTable& dt, Label mu, Label xi,
                                Label la, Label ka) {
    unsigned long long lhs = 0, rhs = 0;
    for (Label nu = 0; nu < ls.size(); ++nu) {
        lhs += static_cast<unsigned long long>(dt.dim(nu, mu, la)) * dt.dim(ls.dag(nu), ka, xi);
        rhs += static_cast<unsigned long long>(dt.dim(nu, la, ka)) * dt.dim(ls.dag(nu), xi, mu);
    }
    return lhs == rhs;
}

}  // namespace mf
