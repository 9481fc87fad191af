#pragma once

#include <vector>

#include "mf/basic_data.hpp"
#include "mf/relations.hpp"

namespace mf {

/// Operator on the graded once-punctured-torus space +_mu V(la, mu, mu*),
/// rows/cols indexed by (mu, i) blocks in label order.
struct TorusBlockOperator {
    Label point = 0;
    std::vector<std::pair<Label, unsigned>> blocks;  // (mu, dim), dim > 0
    Matrix m;

    unsigned dim() const { return static_cast<unsigned>(m.rows()); }
    /// Diagonal of the point-la twist operator T(la) over (mu, i).
    static TorusBlockOperator twist_diagonal(const BasicData& bd, Label la);
};

std::vector<std::pair<Label, unsigned>> torus_blocks(const BasicData& bd, Label la);

/// Which reading of the curve-operator formula to use: the lemma's proof
/// carries d_mu^{-1}, its statement d_nu^{-1}. The proof version passes the
/// point-0 cross-check; the statement version is kept for comparison.
enum class CofVariant { Proof, Statement };

/// Curve operator along beta on the once-punctured torus with point label la.
TorusBlockOperator curve_op_torus(const BasicData& bd, Label point, Label curve,
                                  CofVariant variant = CofVariant::Proof);

/// Point-0 curve operator: the fusion matrix N^la, cross-checked against the
/// independent three-F-block chain. Throws InvalidTheory on calibration failure.
Matrix curve_op_unlabeled(const BasicData& bd, Label curve);
/// The chain route alone (no cross-check), for tests and reports.
Matrix curve_op_unlabeled_chain(const BasicData& bd, Label curve);

/// S_{0,la}/S_{0,0} computed without S as E_{la*}; cross-checked against S
/// entries when S is present.
Complex contractible_scalar(const BasicData& bd, Label la);

struct CMatrix {
    Matrix c;               // rows = curve label, cols = cylinder sector
    bool from_s = false;
    bool ambiguous = false; // eigenvalue collision during eigen-route matching
};

/// C from the S quotient when S is present, else from the joint left
/// eigenvectors of the fusion family (quotient convention, columns assigned by
/// the E-profile rule plus the sandwich self-consistency fixed point).
CMatrix c_matrix(const BasicData& bd);

/// Solve sum_la c_la C[la,mu] = d_mu (or d_mu^{-1} with inverse=true).
std::vector<Complex> dehn_coefficients(const BasicData& bd, const CMatrix& C,
                                       bool inverse = false);

/// Reports: the definitional residual of the Dehn system, the closed
/// form against the inverse-twist coefficients, and eigenvector multiplicativity.
std::vector<RelationReport> curve_op_reports(const BasicData& bd);

}  // namespace mf
