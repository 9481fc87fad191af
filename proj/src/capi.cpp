#include "modfunc.h"

#include <cstring>
#include <json.hpp>
#include <sstream>

#include "mf/basic_data.hpp"
#include "mf/curve_ops.hpp"
#include "mf/generators.hpp"
#include "mf/relations.hpp"
#include "mf/s_reconstruction.hpp"

struct mf_theory {
    mf::BasicData data;
};

namespace {

thread_local std::string g_last_error;

mf_status fail(mf_status code, const std::string& what) {
    g_last_error = what;
    return code;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string join_reports(const std::vector<mf::RelationReport>& reports) {
    std::string out;
    for (const auto& r : reports) {
        out += mf::format_report_line(r);
        out += "\n";
    }
    return out;
}

template <typename Fn>
mf_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const mf::InvalidTheory& e) {
        return fail(MF_PARSE_ERROR, e.what());
    } catch (const mf::GeneratorError& e) {
        return fail(MF_GENERATOR_ERROR, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(MF_BAD_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(MF_NUMERIC_ERROR, e.what());
    }
}

}  // namespace

extern "C" {

mf_status mf_theory_from_json(const char* text, size_t len, mf_theory** out) {
    if (!text || !out) return fail(MF_BAD_ARGUMENT, "null argument");
    return guarded([&]() {
        *out = new mf_theory{mf::load_basic_data(std::string(text, len))};
        return MF_OK;
    });
}

mf_status mf_theory_from_file(const char* path, mf_theory** out) {
    if (!path || !out) return fail(MF_BAD_ARGUMENT, "null argument");
    return guarded([&]() {
        *out = new mf_theory{mf::load_basic_data_file(path)};
        return MF_OK;
    });
}

mf_status mf_theory_generate(const char* name, mf_theory** out) {
    if (!name || !out) return fail(MF_BAD_ARGUMENT, "null argument");
    return guarded([&]() {
        *out = new mf_theory{mf::generate_theory(name)};
        return MF_OK;
    });
}

void mf_theory_free(mf_theory* t) { delete t; }

char* mf_theory_to_json(const mf_theory* t) {
    if (!t) return nullptr;
    try {
        return dup_string(mf::save_basic_data(t->data));
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

void mf_string_free(char* s) { std::free(s); }

const char* mf_last_error(void) { return g_last_error.c_str(); }

size_t mf_label_count(const mf_theory* t) { return t ? t->data.n() : 0; }

const char* mf_label_name(const mf_theory* t, size_t index) {
    if (!t || index >= t->data.n()) return nullptr;
    return t->data.labels().name(static_cast<mf::Label>(index)).c_str();
}

int mf_has_s_matrix(const mf_theory* t) { return t && t->data.has_S() ? 1 : 0; }

double mf_tolerance(const mf_theory* t) { return t ? t->data.tol() : 0.0; }

mf_status mf_set_tolerance(mf_theory* t, double tol) {
    if (!t) return fail(MF_BAD_ARGUMENT, "null theory");
    if (!(tol > 0)) return fail(MF_BAD_ARGUMENT, "tolerance must be positive");
    t->data.set_tol(tol);
    return MF_OK;
}

mf_status mf_drop_s_matrix(mf_theory* t) {
    if (!t) return fail(MF_BAD_ARGUMENT, "null theory");
    t->data.drop_S();
    return MF_OK;
}

mf_status mf_structural_report(const mf_theory* t, char** report, int* all_pass) {
    if (!t || !report) return fail(MF_BAD_ARGUMENT, "null argument");
    return guarded([&]() {
        std::vector<mf::RelationReport> out;
        const mf::BasicData& bd = t->data;
        const auto& ls = bd.labels();
        mf::FusionMatrixFamily fam(ls, bd.dims());
        out.push_back(mf::make_report(bd, "fusion.unit_identity", "-",
                                      fam.unit_is_identity() ? 0.0 : 1.0));
        out.push_back(mf::make_report(bd, "fusion.commuting", "-", fam.all_commute() ? 0.0 : 1.0));
        bool flip = true;
        for (mf::Label mu = 0; mu < bd.n() && flip; ++mu)
            for (mf::Label xi = 0; xi < bd.n() && flip; ++xi)
                for (mf::Label la = 0; la < bd.n() && flip; ++la)
                    for (mf::Label ka = 0; ka < bd.n(); ++ka)
                        if (!mf::check_flip_dim_consistency(ls, bd.dims(), mu, xi, la, ka)) {
                            flip = false;
                            break;
                        }
        out.push_back(mf::make_report(bd, "dims.flip_consistency", "-", flip ? 0.0 : 1.0));
        *report = dup_string(join_reports(out));
        if (all_pass) *all_pass = mf::all_pass(out) ? 1 : 0;
        return MF_OK;
    });
}

mf_status mf_relations_report(const mf_theory* t, unsigned jobs, char** report, int* all_pass) {
    if (!t || !report) return fail(MF_BAD_ARGUMENT, "null argument");
    return guarded([&]() {
        auto out = mf::run_all(t->data, jobs);
        *report = dup_string(join_reports(out));
        if (all_pass) *all_pass = mf::all_pass(out) ? 1 : 0;
        return MF_OK;
    });
}

mf_status mf_curve_op_report(const mf_theory* t, char** report, int* all_pass) {
    if (!t || !report) return fail(MF_BAD_ARGUMENT, "null argument");
    return guarded([&]() {
        auto out = mf::curve_op_reports(t->data);
        *report = dup_string(join_reports(out));
        if (all_pass) *all_pass = mf::all_pass(out) ? 1 : 0;
        return MF_OK;
    });
}

mf_status mf_s_reconstruction_report(const mf_theory* t, char** report, int* all_pass) {
    if (!t || !report) return fail(MF_BAD_ARGUMENT, "null argument");
    return guarded([&]() {
        auto out = mf::s_reconstruction_reports(t->data);
        *report = dup_string(join_reports(out));
        if (all_pass) *all_pass = mf::all_pass(out) ? 1 : 0;
        return MF_OK;
    });
}

mf_status mf_verlinde_dim(const mf_theory* t, unsigned genus, const char* const* boundary,
                          size_t n_boundary, unsigned long long* out) {
    if (!t || !out || (n_boundary && !boundary)) return fail(MF_BAD_ARGUMENT, "null argument");
    return guarded([&]() {
        std::vector<mf::Label> bd;
        for (size_t i = 0; i < n_boundary; ++i)
            bd.push_back(t->data.labels().index(boundary[i]));
        *out = mf::verlinde_dim(t->data.labels(), t->data.dims(), genus, bd);
        return MF_OK;
    });
}

mf_status mf_e_scalar(const mf_theory* t, const char* label, double* re, double* im) {
    if (!t || !label || !re || !im) return fail(MF_BAD_ARGUMENT, "null argument");
    return guarded([&]() {
        mf::Complex e = t->data.e_scalar(t->data.labels().index(label));
        if (std::abs(e) <= t->data.tol()) return fail(MF_CHECK_FAILED, "vanishing E");
        *re = e.real();
        *im = e.imag();
        return MF_OK;
    });
}

mf_status mf_contractible_scalar(const mf_theory* t, const char* label, double* re, double* im) {
    if (!t || !label || !re || !im) return fail(MF_BAD_ARGUMENT, "null argument");
    return guarded([&]() {
        mf::Complex z = mf::contractible_scalar(t->data, t->data.labels().index(label));
        *re = z.real();
        *im = z.imag();
        return MF_OK;
    });
}

mf_status mf_c_matrix_json(const mf_theory* t, char** out) {
    if (!t || !out) return fail(MF_BAD_ARGUMENT, "null argument");
    return guarded([&]() {
        mf::CMatrix c = mf::c_matrix(t->data);
        nlohmann::json doc;
        doc["from_s"] = c.from_s;
        doc["ambiguous"] = c.ambiguous;
        nlohmann::json rows = nlohmann::json::array();
        for (long r = 0; r < c.c.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (long cc = 0; cc < c.c.cols(); ++cc)
                row.push_back(nlohmann::json::array({c.c(r, cc).real(), c.c(r, cc).imag()}));
            rows.push_back(row);
        }
        doc["matrix"] = rows;
        *out = dup_string(doc.dump(1));
        return MF_OK;
    });
}

mf_status mf_dehn_coefficients_json(const mf_theory* t, int inverse, char** out) {
    if (!t || !out) return fail(MF_BAD_ARGUMENT, "null argument");
    return guarded([&]() {
        mf::CMatrix c = mf::c_matrix(t->data);
        auto coeffs = mf::dehn_coefficients(t->data, c, inverse != 0);
        nlohmann::json doc = nlohmann::json::object();
        for (mf::Label l = 0; l < t->data.n(); ++l)
            doc[t->data.labels().name(l)] =
                nlohmann::json::array({coeffs[l].real(), coeffs[l].imag()});
        *out = dup_string(doc.dump(1));
        return MF_OK;
    });
}

mf_status mf_s_lambda(const mf_theory* t, const char* label, const char* route, int variant,
                      char** json_fragment, double* route_residual, double* self_residual) {
    if (!t || !label || !route || !json_fragment)
        return fail(MF_BAD_ARGUMENT, "null argument");
    return guarded([&]() {
        const mf::BasicData& bd = t->data;
        mf::Label la = bd.labels().index(label);
        mf::Recovered rec = mf::recover_s_matrix(bd);
        std::vector<mf::Complex> s_col(bd.n());
        for (mf::Label ka = 0; ka < bd.n(); ++ka) s_col[ka] = rec.s(ka, 0);
        mf::SLambdaResult sand = mf::s_from_twist_sandwich(bd, la, rec.c);
        mf::SLambdaResult main = mf::s_lambda_main(
            bd, la, s_col, variant == 0 ? mf::MainVariant::Proof : mf::MainVariant::Theorem);
        double rr = mf::max_norm(sand.m - main.m);
        if (route_residual) *route_residual = rr;
        mf::SLambdaResult& chosen = std::string(route) == "sandwich" ? sand : main;
        if (!bd.has_S() && la == 0)
            chosen.self_residual = rec.residual;  // reconstruction fixed-point residual
        if (self_residual)
            *self_residual = chosen.self_residual >= 0 ? chosen.self_residual : -1.0;
        *json_fragment = dup_string(mf::s_lambda_to_json(bd, chosen, rr));
        return MF_OK;
    });
}

}  // extern "C"
