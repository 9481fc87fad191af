#include "mf/relations.hpp"

#include <Eigen/LU>
#include <cstdio>
#include <thread>

namespace mf {

RelationReport make_report(const BasicData& bd, std::string relation, std::string labels,
                           double residual) {
    RelationReport r;
    r.relation = std::move(relation);
    r.labels = std::move(labels);
    r.residual = residual;
    r.pass = residual < bd.tol();
    return r;
}

std::string format_report_line(const RelationReport& r) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2e", r.residual);
    return r.relation + "\t" + r.labels + "\t" + buf + "\t" + (r.pass ? "PASS" : "FAIL");
}

namespace {

std::string tup(const BasicData& bd, std::initializer_list<Label> ls) {
    std::string out;
    for (Label l : ls) {
        if (!out.empty()) out += ",";
        out += bd.labels().name(l);
    }
    return out;
}

}  // namespace

std::vector<RelationReport> check_unit_f_cases(const BasicData& bd) {
    std::vector<RelationReport> out;
    const Label n = static_cast<Label>(bd.n());
    auto dag = [&](Label l) { return bd.dag(l); };
    // la = 0 : F[mu,xi,0,ka]_{mu*,ka*} (1,j)->(1,l) equals R(mu,ka,xi)
    for (Label mu = 0; mu < n; ++mu)
        for (Label xi = 0; xi < n; ++xi)
            for (Label ka = 0; ka < n; ++ka) {
                if (!bd.dim(Triple{mu, ka, xi})) continue;
                FBlock b = bd.f_block_or_empty(Quad{mu, xi, 0, ka}, dag(mu), dag(ka));
                double res;
                if (b.m.size() == 0) {
                    res = std::numeric_limits<double>::infinity();
                } else {
                    Matrix r = bd.R_pow(Triple{mu, ka, xi}, 1);
                    Matrix got(b.dj, b.dl);
                    for (unsigned j = 0; j < b.dj; ++j)
                        for (unsigned l = 0; l < b.dl; ++l) got(j, l) = b.at(0, j, 0, l);
                    res = max_norm(got - r);
                }
                out.push_back(make_report(bd, "unitF.lambda", tup(bd, {mu, xi, ka}), res));
            }
    // mu = 0 : F[0,xi,la,ka]_{la*,xi} (1,j)->(k,1) equals R^2(la,ka,xi)
    for (Label xi = 0; xi < n; ++xi)
        for (Label la = 0; la < n; ++la)
            for (Label ka = 0; ka < n; ++ka) {
                if (!bd.dim(Triple{la, ka, xi})) continue;
                FBlock b = bd.f_block_or_empty(Quad{0, xi, la, ka}, dag(la), xi);
                double res;
                if (b.m.size() == 0) {
                    res = std::numeric_limits<double>::infinity();
                } else {
                    Matrix r = bd.R_pow(Triple{la, ka, xi}, 2);
                    Matrix got(b.dj, b.dk);
                    for (unsigned j = 0; j < b.dj; ++j)
                        for (unsigned k = 0; k < b.dk; ++k) got(j, k) = b.at(0, j, k, 0);
                    res = max_norm(got - r);
                }
                out.push_back(make_report(bd, "unitF.mu", tup(bd, {xi, la, ka}), res));
            }
    // xi = 0 : F[mu,0,la,ka]_{ka,mu} (i,1)->(k,1) equals R(ka,mu,la)
    for (Label mu = 0; mu < n; ++mu)
        for (Label la = 0; la < n; ++la)
            for (Label ka = 0; ka < n; ++ka) {
                if (!bd.dim(Triple{ka, mu, la})) continue;
                FBlock b = bd.f_block_or_empty(Quad{mu, 0, la, ka}, ka, mu);
                double res;
                if (b.m.size() == 0) {
                    res = std::numeric_limits<double>::infinity();
                } else {
                    Matrix r = bd.R_pow(Triple{ka, mu, la}, 1);
                    Matrix got(b.di, b.dk);
                    for (unsigned i = 0; i < b.di; ++i)
                        for (unsigned k = 0; k < b.dk; ++k) got(i, k) = b.at(i, 0, k, 0);
                    res = max_norm(got - r);
                }
                out.push_back(make_report(bd, "unitF.xi", tup(bd, {mu, la, ka}), res));
            }
    // ka = 0 : F[mu,xi,la,0]_{xi,la*} (i,1)->(1,l) equals R^2(xi,mu,la)
    for (Label mu = 0; mu < n; ++mu)
        for (Label xi = 0; xi < n; ++xi)
            for (Label la = 0; la < n; ++la) {
                if (!bd.dim(Triple{xi, mu, la})) continue;
                FBlock b = bd.f_block_or_empty(Quad{mu, xi, la, 0}, xi, dag(la));
                double res;
                if (b.m.size() == 0) {
                    res = std::numeric_limits<double>::infinity();
                } else {
                    Matrix r = bd.R_pow(Triple{xi, mu, la}, 2);
                    Matrix got(b.di, b.dl);
                    for (unsigned i = 0; i < b.di; ++i)
                        for (unsigned l = 0; l < b.dl; ++l) got(i, l) = b.at(i, 0, 0, l);
                    res = max_norm(got - r);
                }
                out.push_back(make_report(bd, "unitF.kappa", tup(bd, {mu, xi, la}), res));
            }
    return out;
}

std::vector<RelationReport> check_ess(const BasicData& bd) {
    std::vector<RelationReport> out;
    if (!bd.has_S()) throw InvalidTheory("S required");
    const Matrix& S = bd.S();
    out.push_back(make_report(bd, "ess.S00_nonzero", "-",
                              std::abs(S(0, 0)) > bd.tol() ? 0.0
                                                           : std::numeric_limits<double>::infinity()));
    for (Label la = 0; la < bd.n(); ++la) {
        double res = std::abs(S(0, 0) * bd.e_scalar(la) - S(0, bd.dag(la)));
        out.push_back(make_report(bd, "ess", bd.labels().name(la), res));
    }
    return out;
}

namespace {

/// RelPent LHS as a matrix on V(nu*, mu, la*), identity expected.
Matrix pentagon_lhs(const BasicData& bd, Label la, Label mu, Label nu) {
    auto dag = [&](Label l) { return bd.dag(l); };
    Triple P{dag(nu), mu, dag(la)};
    unsigned dP = bd.dim(P);
    if (dP == 0) return Matrix(0, 0);
    FBlock F1 = bd.f_block_or_empty(Quad{la, nu, dag(la), dag(nu)}, 0, mu);
    FBlock F2 = bd.f_block_or_empty(Quad{la, dag(la), dag(mu), mu}, nu, 0);
    if (F1.m.size() == 0 || F2.m.size() == 0) return Matrix::Zero(dP, dP);
    Matrix A(F1.dk, F1.dl);  // [i,j] over V(mu,la*,nu*) x V(mu*,nu,la)
    for (unsigned i = 0; i < F1.dk; ++i)
        for (unsigned j = 0; j < F1.dl; ++j) A(i, j) = F1.at(0, 0, i, j);
    Matrix G(F2.di, F2.dj);  // [r,l]
    for (unsigned r = 0; r < F2.di; ++r)
        for (unsigned l = 0; l < F2.dj; ++l) G(r, l) = F2.at(r, l, 0, 0);
    Matrix Rj = bd.R_pow(Triple{dag(mu), nu, la}, -1);
    Matrix R2i = bd.R_pow(Triple{mu, dag(la), dag(nu)}, -2);
    return bd.e_scalar(dag(la)) * (R2i.transpose() * A * Rj * G);
}

}  // namespace

RelationReport check_pentagon_delta(const BasicData& bd, Label la, Label mu, Label nu) {
    Matrix M = pentagon_lhs(bd, la, mu, nu);
    double res = M.rows() ? max_norm(M - Matrix::Identity(M.rows(), M.rows())) : 0.0;
    return make_report(bd, "pentagon", tup(bd, {la, mu, nu}), res);
}

RelationReport check_abba(const BasicData& bd, Label la, Label mu, Label nu) {
    auto dag = [&](Label l) { return bd.dag(l); };
    Triple P{dag(mu), dag(nu), la};
    unsigned dP = bd.dim(P);
    if (dP == 0) return make_report(bd, "abba", tup(bd, {la, mu, nu}), 0.0);
    Complex Einv = 1.0 / bd.e_scalar(dag(la));
    FBlock F1 = bd.f_block_or_empty(Quad{la, dag(nu), dag(la), nu}, 0, mu);
    FBlock F2 = bd.f_block_or_empty(Quad{la, dag(la), dag(mu), mu}, dag(nu), 0);
    if (F1.m.size() == 0 || F2.m.size() == 0) {
        // empty contraction against a nonzero right-hand side
        return make_report(bd, "abba", tup(bd, {la, mu, nu}), std::abs(Einv) * dP);
    }
    Matrix A(F1.dk, F1.dl);
    for (unsigned l = 0; l < F1.dk; ++l)
        for (unsigned m = 0; m < F1.dl; ++m) A(l, m) = F1.at(0, 0, l, m);
    Matrix G(F2.di, F2.dj);
    for (unsigned v = 0; v < F2.di; ++v)
        for (unsigned u = 0; u < F2.dj; ++u) G(v, u) = F2.at(v, u, 0, 0);
    Matrix R2l = bd.R_pow(Triple{mu, dag(la), nu}, -2);
    Matrix Rt = bd.R_pow(Triple{dag(mu), dag(nu), la}, -1);
    Matrix M = Rt * G * R2l.transpose() * A;
    double res = max_norm(M - Einv * Matrix::Identity(dP, dP));
    return make_report(bd, "abba", tup(bd, {la, mu, nu}), res);
}

RelationReport check_pentsum(const BasicData& bd, Label la, Label mu, Label nu) {
    Matrix M = pentagon_lhs(bd, la, mu, nu);
    Complex tr = M.rows() ? M.trace() : Complex(0, 0);
    double expected = bd.dim(Triple{bd.dag(nu), mu, bd.dag(la)});
    return make_report(bd, "pentsum", tup(bd, {la, mu, nu}), std::abs(tr - expected));
}

namespace {

std::vector<RelationReport> invertibility_reports(const BasicData& bd) {
    std::vector<RelationReport> out;
    for (auto& [t, m] : bd.r_family()) {
        double res = max_norm(m * m.inverse() - Matrix::Identity(m.rows(), m.rows()));
        out.push_back(make_report(bd, "invert.R", tup(bd, {t.a, t.b, t.c}),
                                  res < 10 * bd.tol() ? 0.0 : res));
    }
    for (auto& [t, m] : bd.b_family()) {
        double res = max_norm(m * m.inverse() - Matrix::Identity(m.rows(), m.rows()));
        out.push_back(make_report(bd, "invert.B", tup(bd, {t.a, t.b, t.c}),
                                  res < 10 * bd.tol() ? 0.0 : res));
    }
    const Label n = static_cast<Label>(bd.n());
    for (Label mu = 0; mu < n; ++mu)
        for (Label xi = 0; xi < n; ++xi)
            for (Label la = 0; la < n; ++la)
                for (Label ka = 0; ka < n; ++ka) {
                    Matrix f = bd.assembled_f(Quad{mu, xi, la, ka});
                    if (f.rows() == 0 && f.cols() == 0) continue;
                    double res;
                    if (f.rows() != f.cols()) {
                        res = std::numeric_limits<double>::infinity();
                    } else {
                        res = max_norm(f * f.inverse() - Matrix::Identity(f.rows(), f.rows()));
                        res = res < 10 * bd.tol() ? 0.0 : res;
                    }
                    out.push_back(make_report(bd, "invert.F", tup(bd, {mu, xi, la, ka}), res));
                }
    if (bd.has_S()) {
        const Matrix& S = bd.S();
        double res = max_norm(S * S.inverse() - Matrix::Identity(S.rows(), S.rows()));
        out.push_back(make_report(bd, "invert.S", "-", res < 10 * bd.tol() ? 0.0 : res));
    }
    return out;
}

}  // namespace

std::vector<RelationReport> run_all(const BasicData& bd, unsigned jobs) {
    std::vector<RelationReport> out = check_unit_f_cases(bd);

    const Label n = static_cast<Label>(bd.n());
    struct Item {
        Label la, mu, nu;
        int kind;
    };
    std::vector<Item> items;
    for (Label la = 0; la < n; ++la)
        for (Label mu = 0; mu < n; ++mu)
            for (Label nu = 0; nu < n; ++nu)
                for (int kind = 0; kind < 3; ++kind) items.push_back({la, mu, nu, kind});

    std::vector<RelationReport> sweep(items.size());
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const Item& it = items[idx];
            switch (it.kind) {
                case 0: sweep[idx] = check_pentagon_delta(bd, it.la, it.mu, it.nu); break;
                case 1: sweep[idx] = check_abba(bd, it.la, it.mu, it.nu); break;
                default: sweep[idx] = check_pentsum(bd, it.la, it.mu, it.nu); break;
            }
        }
    };
    jobs = std::max(1u, jobs);
    if (jobs == 1 || items.size() < 2 * jobs) {
        work(0, items.size());
    } else {
        std::vector<std::thread> threads;
        std::size_t chunk = (items.size() + jobs - 1) / jobs;
        for (unsigned j = 0; j < jobs; ++j) {
            std::size_t lo = j * chunk, hi = std::min(items.size(), lo + chunk);
            if (lo >= hi) break;
            threads.emplace_back(work, lo, hi);
        }
        for (auto& t : threads) t.join();
    }
    out.insert(out.end(), sweep.begin(), sweep.end());

    for (Label la = 0; la < n; ++la) {
        double res = std::abs(bd.e_scalar(la)) > bd.tol()
                         ? 0.0
                         : std::numeric_limits<double>::infinity();
        out.push_back(make_report(bd, "E.nonzero", bd.labels().name(la), res));
    }
    auto inv = invertibility_reports(bd);
    out.insert(out.end(), inv.begin(), inv.end());
    if (bd.has_S()) {
        auto ess = check_ess(bd);
        out.insert(out.end(), ess.begin(), ess.end());
        for (Label la = 0; la < n; ++la) {
            double res = std::abs(bd.S()(0, la)) > bd.tol()
                             ? 0.0
                             : std::numeric_limits<double>::infinity();
            out.push_back(make_report(bd, "S0.nonzero", bd.labels().name(la), res));
        }
    }
    return out;
}

bool all_pass(const std::vector<RelationReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return true;
}

}  // namespace mf
