#pragma once

#include <string>
#include <vector>

#include "mf/basic_data.hpp"

namespace mf {

struct RelationReport {
    std::string relation;
    std::string labels;
    double residual = 0.0;
    bool pass = false;
};

RelationReport make_report(const BasicData& bd, std::string relation, std::string labels,
                           double residual);
std::string format_report_line(const RelationReport& r);

/// The four unit-label F identities, checked entrywise for every applicable tuple.
std::vector<RelationReport> check_unit_f_cases(const BasicData& bd);

/// |S_00 E_la - S_{0,la*}| per label, plus the S_00 != 0 assertion.
std::vector<RelationReport> check_ess(const BasicData& bd);

RelationReport check_pentagon_delta(const BasicData& bd, Label la, Label mu, Label nu);
RelationReport check_abba(const BasicData& bd, Label la, Label mu, Label nu);
RelationReport check_pentsum(const BasicData& bd, Label la, Label mu, Label nu);

/// Exhaustive sweep: unit cases, pentagon family over all label triples,
/// E != 0, invertibility of R/B/assembled-F (and S when present), ESS.
/// Deterministic order regardless of the parallelism degree.
std::vector<RelationReport> run_all(const BasicData& bd, unsigned jobs = 1);

bool all_pass(const std::vector<RelationReport>& reports);

}  // namespace mf
