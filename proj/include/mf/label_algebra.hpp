#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mf {

using Label = std::uint32_t;

struct Triple {
    Label a, b, c;
    friend bool operator<(const Triple& x, const Triple& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    }
    friend bool operator==(const Triple& x, const Triple& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }
};

inline Triple rot(Triple t) { return {t.b, t.c, t.a}; }
inline Triple rot2(Triple t) { return {t.c, t.a, t.b}; }
inline Triple swap23(Triple t) { return {t.a, t.c, t.b}; }

class InvalidTheory : public std::runtime_error {
  public:
    explicit InvalidTheory(const std::string& what) : std::runtime_error(what) {}
};

/// Finite label alphabet with involution and unit. The unit is always index 0.
class LabelSet {
  public:
    LabelSet(std::vector<std::string> names, std::vector<Label> dagger);

    std::size_t size() const { return names_.size(); }
    const std::string& name(Label l) const { return names_.at(l); }
    Label dag(Label l) const { return dagger_.at(l); }
    Label unit() const { return 0; }

    /// Index of a named label; throws InvalidTheory for unknown names.
    Label index(const std::string& name) const;
    std::optional<Label> find(const std::string& name) const;

  private:
    std::vector<std::string> names_;
    std::vector<Label> dagger_;
};

/// dim Z_{a,b,c} as a total table on label triples. Immutable after construction.
class DimTable {
  public:
    DimTable(std::size_t nlabels, std::map<Triple, unsigned> dims);

    unsigned dim(Triple t) const {
        auto it = dims_.find(t);
        return it == dims_.end() ? 0u : it->second;
    }
    unsigned dim(Label a, Label b, Label c) const { return dim(Triple{a, b, c}); }
    std::size_t label_count() const { return n_; }
    const std::map<Triple, unsigned>& nonzero() const { return dims_; }

    /// Throws InvalidTheory unless the table is S3-symmetric and satisfies the
    /// small-sphere axioms for the given involution.
    void validate(const LabelSet& ls) const;

  private:
    std::size_t n_;
    std::map<Triple, unsigned> dims_;  // zero entries omitted
};

/// N^l matrices with entries N^l[mu][nu] = dim Z_{l,mu,nu^dag}.
class FusionMatrixFamily {
  public:
    FusionMatrixFamily(const LabelSet& ls, const DimTable& dt);

    const std::vector<std::vector<long>>& matrix(Label l) const { return mats_.at(l); }
    std::size_t size() const { return mats_.size(); }

    bool unit_is_identity() const;
    bool all_commute() const;

  private:
    std::vector<std::vector<std::vector<long>>> mats_;
};

/// Verlinde dimension of genus-g surface with ordered boundary labels, computed
/// over a pants decomposition. Two tree shapes are exposed so decomposition
/// independence can be checked rather than assumed.
enum class PantsTree { CaterpillarHandlesFirst, CaterpillarBoundaryFirst };

unsigned long long verlinde_dim(const LabelSet& ls, const DimTable& dt, unsigned genus,
                                const std::vector<Label>& boundary,
                                PantsTree tree = PantsTree::CaterpillarHandlesFirst);

/// Dimension count of both sides of the F-isomorphism at (mu, xi, la, ka).
bool check_flip_dim_consistency(const LabelSet& ls, const DimTable& dt, Label mu, Label xi,
                                Label la, Label ka);

}  // namespace mf
