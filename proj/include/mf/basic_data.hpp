#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "mf/label_algebra.hpp"

namespace mf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline double max_norm(const Matrix& m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

struct Quad {
    Label mu, xi, la, ka;
    friend bool operator<(const Quad& x, const Quad& y) {
        if (x.mu != y.mu) return x.mu < y.mu;
        if (x.xi != y.xi) return x.xi < y.xi;
        if (x.la != y.la) return x.la < y.la;
        return x.ka < y.ka;
    }
};

struct FBlockKey {
    Quad quad;
    Label nu, nutilde;
    friend bool operator<(const FBlockKey& x, const FBlockKey& y) {
        if (!(x.quad < y.quad) && !(y.quad < x.quad)) {
            if (x.nu != y.nu) return x.nu < y.nu;
            return x.nutilde < y.nutilde;
        }
        return x.quad < y.quad;
    }
};

/// An F block stored source-major: entry(i*dj + j, k*dl + l) is the coefficient
/// of zeta_k(nt,la,ka) (x) zeta_l(nt*,xi,mu) in the image of
/// zeta_i(nu,mu,la) (x) zeta_j(nu*,ka,xi).
struct FBlock {
    unsigned di = 0, dj = 0, dk = 0, dl = 0;
    Matrix m;  // (di*dj) x (dk*dl)
    Complex at(unsigned i, unsigned j, unsigned k, unsigned l) const {
        return m(i * dj + j, k * dl + l);
    }
};

/// The full numeric payload of a theory's basic data.
class BasicData {
  public:
    BasicData(LabelSet labels, DimTable dims, std::map<Triple, Matrix> R,
              std::map<Triple, Matrix> B, std::map<FBlockKey, FBlock> F,
              std::vector<Complex> d, std::optional<Matrix> S, double tol,
              std::string comment = "");

    const LabelSet& labels() const { return labels_; }
    const DimTable& dims() const { return dims_; }
    std::size_t n() const { return labels_.size(); }
    Label dag(Label l) const { return labels_.dag(l); }
    unsigned dim(Triple t) const { return dims_.dim(t); }
    double tol() const { return tol_; }
    void set_tol(double t) { tol_ = t; }
    const std::string& comment() const { return comment_; }
    Complex twist(Label l) const { return d_.at(l); }
    const std::vector<Complex>& twists() const { return d_; }
    bool has_S() const { return S_.has_value(); }
    const Matrix& S() const { return *S_; }
    void set_S(Matrix s) { S_ = std::move(s); }
    void drop_S() { S_.reset(); }

    /// Stored R at t (dim x dim over V(t) -> V(rot t)); empty when dim 0.
    Matrix R(Triple t) const;
    Matrix B(Triple t) const;
    /// Power p in {1,2,-1,-2}: forward rotations are stored matrices, negative
    /// powers are inverse matrices of the stored rotations ending at t's orbit.
    Matrix R_pow(Triple t, int p) const;

    const FBlock& f_block(const FBlockKey& key) const;
    FBlock f_block_or_empty(Quad q, Label nu, Label nt) const;
    const std::map<FBlockKey, FBlock>& f_blocks() const { return F_; }
    const std::map<Triple, Matrix>& r_family() const { return R_; }
    const std::map<Triple, Matrix>& b_family() const { return B_; }

    /// E_lambda = the 1x1 F block at quadruple (la, la*, la*, la), pair (0,0).
    Complex e_scalar(Label la) const;

    /// Twisted F block at (quad; nu, nutilde), same index layout as FBlock.
    FBlock twisted_f_block(Quad q, Label nu, Label nt) const;

    /// Assembled F matrix over all (nu, nutilde) pairs of a quadruple,
    /// rows = (nu,i,j) stacked, cols = (nt,k,l) stacked.
    Matrix assembled_f(Quad q) const;

    /// Scalar of R^3 along the rot-orbit of t (recorded; nothing asserted).
    /// Returns the max-norm deviation of R^3 from scalar*Id through `scalar`.
    double r_cube_scalar(Triple t, Complex& scalar) const;

    /// In-place basis change of V(t): new zeta_i = sum_j G(i,j) zeta_j, applied
    /// consistently to F, R and B. Used by covariance tests.
    void change_basis(Triple t, const Matrix& G);

  private:
    LabelSet labels_;
    DimTable dims_;
    std::map<Triple, Matrix> R_, B_;
    std::map<FBlockKey, FBlock> F_;
    std::vector<Complex> d_;
    std::optional<Matrix> S_;
    double tol_;
    std::string comment_;
};

/// Parse a basic-data JSON document. Throws InvalidTheory with a position or
/// tensor name on malformed input.
BasicData load_basic_data(const std::string& json_text);
BasicData load_basic_data_file(const std::string& path);
std::string save_basic_data(const BasicData& bd);

}  // namespace mf
