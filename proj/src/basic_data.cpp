#include "mf/basic_data.hpp"

#include <fstream>
#include <sstream>

namespace mf {

BasicData::BasicData(LabelSet labels, DimTable dims, std::map<Triple, Matrix> R,
                     std::map<Triple, Matrix> B, std::map<FBlockKey, FBlock> F,
                     std::vector<Complex> d, std::optional<Matrix> S, double tol,
                     std::string comment)
    : labels_(std::move(labels)),
      dims_(std::move(dims)),
      R_(std::move(R)),
      B_(std::move(B)),
      F_(std::move(F)),
      d_(std::move(d)),
      S_(std::move(S)),
      tol_(tol),
      comment_(std::move(comment)) {
    if (tol_ <= 0) throw InvalidTheory("tolerance must be positive");
    if (d_.size() != labels_.size()) throw InvalidTheory("twist table size mismatch");
    for (Label l = 0; l < d_.size(); ++l)
        if (std::abs(d_[l]) == 0.0)
            throw InvalidTheory("zero twist scalar at label " + labels_.name(l));
    dims_.validate(labels_);
    // shape checks
    for (auto& [t, m] : R_) {
        unsigned ds = dims_.dim(t), dt = dims_.dim(rot(t));
        if (m.rows() != ds || m.cols() != dt)
            throw InvalidTheory("R shape mismatch at (" + labels_.name(t.a) + "," +
                                labels_.name(t.b) + "," + labels_.name(t.c) + "): expected " +
                                std::to_string(ds) + "x" + std::to_string(dt));
    }
    for (auto& [t, m] : B_) {
        unsigned ds = dims_.dim(t), dt = dims_.dim(swap23(t));
        if (m.rows() != ds || m.cols() != dt)
            throw InvalidTheory("B shape mismatch at (" + labels_.name(t.a) + "," +
                                labels_.name(t.b) + "," + labels_.name(t.c) + ")");
    }
    const Label n = static_cast<Label>(labels_.size());
    for (Label a = 0; a < n; ++a)
        for (Label b = 0; b < n; ++b)
            for (Label c = 0; c < n; ++c) {
                Triple t{a, b, c};
                if (dims_.dim(t) > 0) {
                    if (!R_.count(t))
                        throw InvalidTheory("missing R instance at (" + labels_.name(a) + "," +
                                            labels_.name(b) + "," + labels_.name(c) + ")");
                    if (!B_.count(t))
                        throw InvalidTheory("missing B instance at (" + labels_.name(a) + "," +
                                            labels_.name(b) + "," + labels_.name(c) + ")");
                }
            }
    // F block shapes and completeness
    for (Label mu = 0; mu < n; ++mu)
        for (Label xi = 0; xi < n; ++xi)
            for (Label la = 0; la < n; ++la)
                for (Label ka = 0; ka < n; ++ka)
                    for (Label nu = 0; nu < n; ++nu)
                        for (Label nt = 0; nt < n; ++nt) {
                            Quad q{mu, xi, la, ka};
                            unsigned di = dims_.dim(nu, mu, la);
                            unsigned dj = dims_.dim(dag(nu), ka, xi);
                            unsigned dk = dims_.dim(nt, la, ka);
                            unsigned dl = dims_.dim(dag(nt), xi, mu);
                            FBlockKey key{q, nu, nt};
                            auto it = F_.find(key);
                            if (di * dj == 0 || dk * dl == 0) {
                                if (it != F_.end())
                                    throw InvalidTheory("F block present for zero-dimensional space");
                                continue;
                            }
                            if (it == F_.end())
                                throw InvalidTheory(
                                    "missing F block at quad (" + labels_.name(mu) + "," +
                                    labels_.name(xi) + "," + labels_.name(la) + "," +
                                    labels_.name(ka) + ") nu=" + labels_.name(nu) +
                                    " nutilde=" + labels_.name(nt));
                            const FBlock& b = it->second;
                            if (b.di != di || b.dj != dj || b.dk != dk || b.dl != dl ||
                                b.m.rows() != static_cast<long>(di * dj) ||
                                b.m.cols() != static_cast<long>(dk * dl))
                                throw InvalidTheory(
                                    "F shape mismatch at quad (" + labels_.name(mu) + "," +
                                    labels_.name(xi) + "," + labels_.name(la) + "," +
                                    labels_.name(ka) + "): expected " + std::to_string(di * dj) +
                                    "x" + std::to_string(dk * dl));
                        }
    if (S_) {
        if (S_->rows() != static_cast<long>(n) || S_->cols() != static_cast<long>(n))
            throw InvalidTheory("S shape mismatch: expected " + std::to_string(n) + "x" +
                                std::to_string(n));
    }
}

Matrix BasicData::R(Triple t) const {
    auto it = R_.find(t);
    if (it == R_.end()) return Matrix(0, 0);
    return it->second;
}

Matrix BasicData::B(Triple t) const {
    auto it = B_.find(t);
    if (it == B_.end()) return Matrix(0, 0);
    return it->second;
}

Matrix BasicData::R_pow(Triple t, int p) const {
    unsigned d = dims_.dim(t);
    if (d == 0) return Matrix(0, 0);
    switch (p) {
        case 1: return R(t);
        case 2: return R(t) * R(rot(t));
        case -1: return R(rot2(t)).inverse();
        case -2: return (R(rot(t)) * R(rot2(t))).inverse();
        default: throw std::logic_error("unsupported R power");
    }
}

const FBlock& BasicData::f_block(const FBlockKey& key) const {
    auto it = F_.find(key);
    if (it == F_.end()) throw InvalidTheory("F block absent");
    return it->second;
}

FBlock BasicData::f_block_or_empty(Quad q, Label nu, Label nt) const {
    auto it = F_.find(FBlockKey{q, nu, nt});
    if (it != F_.end()) return it->second;
    FBlock b;
    b.di = dims_.dim(nu, q.mu, q.la);
    b.dj = dims_.dim(dag(nu), q.ka, q.xi);
    b.dk = dims_.dim(nt, q.la, q.ka);
    b.dl = dims_.dim(dag(nt), q.xi, q.mu);
    b.m = Matrix::Zero(b.di * b.dj, b.dk * b.dl);
    return b;
}

Complex BasicData::e_scalar(Label la) const {
    Label ld = dag(la);
    const FBlock b = f_block_or_empty(Quad{la, ld, ld, la}, 0, 0);
    if (b.m.size() == 0) throw InvalidTheory("E block absent at label " + labels_.name(la));
    return b.m(0, 0);
}

FBlock BasicData::twisted_f_block(Quad q, Label nu, Label nt) const {
    // head: i over V(ka, nu*, xi) -> r over V(nu*, ka, xi) via R then B;
    // tail: s over V(nt, la, ka) -> j over V(ka, la, nt) via R^2 then B.
    FBlock out;
    Label nud = dag(nu);
    out.di = dims_.dim(nu, q.mu, q.la);
    out.dj = dims_.dim(Triple{q.ka, nud, q.xi});
    out.dk = dims_.dim(Triple{q.ka, q.la, nt});
    out.dl = dims_.dim(dag(nt), q.xi, q.mu);
    out.m = Matrix::Zero(out.di * out.dj, out.dk * out.dl);
    const FBlock f = f_block_or_empty(q, nu, nt);
    if (f.m.size() == 0 || out.m.size() == 0) return out;
    Matrix head = R_pow(Triple{q.ka, nud, q.xi}, 1) * B(Triple{nud, q.xi, q.ka});
    Matrix tail = R_pow(Triple{nt, q.la, q.ka}, -2) * B(Triple{q.ka, nt, q.la});
    if (head.size() == 0 || tail.size() == 0) return out;
    for (unsigned k = 0; k < f.di; ++k)
        for (unsigned i = 0; i < out.dj; ++i)
            for (unsigned j = 0; j < out.dk; ++j)
                for (unsigned m2 = 0; m2 < f.dl; ++m2) {
                    Complex acc = 0;
                    for (unsigned r = 0; r < f.dj; ++r)
                        for (unsigned s = 0; s < f.dk; ++s)
                            acc += head(i, r) * f.at(k, r, s, m2) * tail(s, j);
                    out.m(k * out.dj + i, j * out.dl + m2) = acc;
                }
    return out;
}

Matrix BasicData::assembled_f(Quad q) const {
    const Label n = static_cast<Label>(labels_.size());
    std::vector<unsigned> row_off(n + 1, 0), col_off(n + 1, 0);
    for (Label nu = 0; nu < n; ++nu)
        row_off[nu + 1] = row_off[nu] + dims_.dim(nu, q.mu, q.la) * dims_.dim(dag(nu), q.ka, q.xi);
    for (Label nt = 0; nt < n; ++nt)
        col_off[nt + 1] = col_off[nt] + dims_.dim(nt, q.la, q.ka) * dims_.dim(dag(nt), q.xi, q.mu);
    Matrix out = Matrix::Zero(row_off[n], col_off[n]);
    for (Label nu = 0; nu < n; ++nu)
        for (Label nt = 0; nt < n; ++nt) {
            FBlock b = f_block_or_empty(q, nu, nt);
            if (b.m.size())
                out.block(row_off[nu], col_off[nt], b.m.rows(), b.m.cols()) = b.m;
        }
    return out;
}

double BasicData::r_cube_scalar(Triple t, Complex& scalar) const {
    unsigned d = dims_.dim(t);
    scalar = 1.0;
    if (d == 0) return 0.0;
    Matrix r3 = R(t) * R(rot(t)) * R(rot2(t));
    scalar = r3.trace() / static_cast<double>(d);
    return max_norm(r3 - scalar * Matrix::Identity(d, d));
}

void BasicData::change_basis(Triple t, const Matrix& G) {
    unsigned d = dims_.dim(t);
    if (d == 0 || G.rows() != d || G.cols() != d) throw InvalidTheory("bad basis change");
    Matrix Gi = G.inverse();
    for (auto& [tr, m] : R_) {
        if (tr == t) m = G * m;            // source space
        if (rot(tr) == t) m = m * Gi;      // target space
    }
    for (auto& [tr, m] : B_) {
        if (tr == t) m = G * m;
        if (swap23(tr) == t) m = m * Gi;
    }
    for (auto& [key, blk] : F_) {
        const Quad& q = key.quad;
        Triple s1{key.nu, q.mu, q.la}, s2{dag(key.nu), q.ka, q.xi};
        Triple t1{key.nutilde, q.la, q.ka}, t2{dag(key.nutilde), q.xi, q.mu};
        if (s1 == t) {  // row pair index i
            Matrix nm = Matrix::Zero(blk.m.rows(), blk.m.cols());
            for (unsigned i = 0; i < blk.di; ++i)
                for (unsigned a = 0; a < blk.di; ++a)
                    nm.middleRows(i * blk.dj, blk.dj) +=
                        G(i, a) * blk.m.middleRows(a * blk.dj, blk.dj);
            blk.m = nm;
        }
        if (s2 == t) {
            Matrix nm = Matrix::Zero(blk.m.rows(), blk.m.cols());
            for (unsigned i = 0; i < blk.di; ++i)
                for (unsigned j = 0; j < blk.dj; ++j)
                    for (unsigned b = 0; b < blk.dj; ++b)
                        nm.row(i * blk.dj + j) += G(j, b) * blk.m.row(i * blk.dj + b);
            blk.m = nm;
        }
        if (t1 == t) {
            Matrix nm = Matrix::Zero(blk.m.rows(), blk.m.cols());
            for (unsigned k = 0; k < blk.dk; ++k)
                for (unsigned a = 0; a < blk.dk; ++a)
                    nm.middleCols(k * blk.dl, blk.dl) +=
                        Gi(a, k) * blk.m.middleCols(a * blk.dl, blk.dl);
            blk.m = nm;
        }
        if (t2 == t) {
            Matrix nm = Matrix::Zero(blk.m.rows(), blk.m.cols());
            for (unsigned k = 0; k < blk.dk; ++k)
                for (unsigned l = 0; l < blk.dl; ++l)
                    for (unsigned b = 0; b < blk.dl; ++b)
                        nm.col(k * blk.dl + l) += Gi(b, l) * blk.m.col(k * blk.dl + b);
            blk.m = nm;
        }
    }
}

}  // namespace mf
