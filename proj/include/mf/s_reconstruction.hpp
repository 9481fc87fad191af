#pragma once

#include <array>
#include <optional>

#include "mf/curve_ops.hpp"

namespace mf {

/// A primitive integer vector up to sign: a Lagrangian line in (Z^2, omega).
struct LagrangianLine {
    long x = 1, y = 0;
};

/// Wall signature cocycle for a triple of Lagrangian lines in the symplectic
/// plane; 0 whenever two of the lines coincide. Exact integer arithmetic.
int wall_sigma(LagrangianLine l1, LagrangianLine l2, LagrangianLine l3);

/// 2x2 integer symplectic matrix, framing integer, source Lagrangian line.
struct FramedMapClass {
    std::array<std::array<long, 2>, 2> m{{{1, 0}, {0, 1}}};
    long framing = 0;
    LagrangianLine lagrangian;
};

LagrangianLine line_image(const std::array<std::array<long, 2>, 2>& m, LagrangianLine l);

/// (f2, s2) o (f1, s1) = (f2 f1, s2 + s1 - sigma((f2 f1)_* L1, f2_* L2, L3))
/// with L1 = f1's source line, L2 = f2's source line, L3 = f2's target line
/// (equal to f2's source for the endomorphism bookkeeping used here).
FramedMapClass compose_framed(const FramedMapClass& f2, const FramedMapClass& f1);

enum class MainVariant { Proof, Theorem };

struct SLambdaResult {
    Label point = 0;
    std::vector<std::pair<Label, unsigned>> blocks;
    Matrix m;
    std::string variant;
    double self_residual = -1.0;  // vs input S when point = 0 and S present
};

/// Closed-form reconstruction of S(la) from twisted F blocks and the
/// S_{kappa*,0} column.
/// The proof variant reads S(la) = diag(d)^{-1} (sum_k d_{k*} s_col[k*] Z(beta,k)) diag(d)^{-1};
/// the theorem-display variant keeps the printed prefactor d_k^{-1} d_mu.
SLambdaResult s_lambda_main(const BasicData& bd, Label la, const std::vector<Complex>& s_column,
                            MainVariant variant = MainVariant::Proof);

/// S(la) from the twist sandwich: diag(d)^{-1} (sum_k ct_k Z(beta,k)) diag(d)^{-1}
/// with ct solving the inverse-twist Dehn system. Needs no S data.
SLambdaResult s_from_twist_sandwich(const BasicData& bd, Label la, const CMatrix& C);

struct McgReport {
    Complex rho = 1.0;       // best-fit scalar in (S T)^3 = rho S^2
    double residual = 0.0;   // relative max-norm residual
};

McgReport mcg_relation_check(const BasicData& bd, const SLambdaResult& s);

/// Recover the S(0) matrix of a theory without stored S: eigen C-matrix,
/// column assignment by the sandwich self-consistency fixed point.
/// Returns the recovered S and the assigned C; throws when no assignment
/// satisfies the fixed point within tolerance.
struct Recovered {
    Matrix s;
    CMatrix c;
    bool ambiguous = false;
    double residual = 0.0;
};
Recovered recover_s_matrix(const BasicData& bd);

/// Reports covering self-consistency, route equivalence, MCG and invertibility
/// for every point label (format shared with genus_zero_relations).
std::vector<RelationReport> s_reconstruction_reports(const BasicData& bd);

/// SLambdaResult as a JSON document fragment in the basic-data matrix encoding.
std::string s_lambda_to_json(const BasicData& bd, const SLambdaResult& s,
                             double route_residual);

}  // namespace mf
