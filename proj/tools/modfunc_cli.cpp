// Command-line front end. Links only the public C API.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "modfunc.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitFormatError = 2;
constexpr int kExitGeneratorError = 3;

int status_to_exit(mf_status s) {
    switch (s) {
        case MF_OK: return kExitPass;
        case MF_CHECK_FAILED: return kExitCheckFailed;
        case MF_PARSE_ERROR: return kExitFormatError;
        case MF_GENERATOR_ERROR: return kExitGeneratorError;
        default: return kExitFormatError;
    }
}

struct TheoryHandle {
    mf_theory* t = nullptr;
    ~TheoryHandle() { mf_theory_free(t); }
};

int load_theory(const std::string& path, double tol, TheoryHandle& th) {
    mf_status s = mf_theory_from_file(path.c_str(), &th.t);
    if (s != MF_OK) {
        std::cerr << "error: " << mf_last_error() << "\n";
        return status_to_exit(s);
    }
    if (tol > 0) mf_set_tolerance(th.t, tol);
    return kExitPass;
}

void print_report(const char* report, bool machine) {
    if (machine) {
        std::cout << report;
        return;
    }
    std::istringstream in(report);
    std::string line;
    while (std::getline(in, line)) {
        std::string pretty = line;
        for (auto& ch : pretty)
            if (ch == '\t') ch = ' ';
        std::cout << "  " << pretty << "\n";
    }
}

bool report_all_pass(int flag) { return flag == 1; }

int run_validate(const std::string& input, double tol, unsigned jobs, bool machine) {
    TheoryHandle th;
    if (int rc = load_theory(input, tol, th)) return rc;
    bool ok = true;
    for (auto fn : {mf_structural_report, mf_curve_op_report}) {
        char* rep = nullptr;
        int pass = 0;
        mf_status s = fn(th.t, &rep, &pass);
        if (s != MF_OK) {
            std::cerr << "error: " << mf_last_error() << "\n";
            return status_to_exit(s);
        }
        print_report(rep, machine);
        mf_string_free(rep);
        ok = ok && report_all_pass(pass);
    }
    {
        char* rep = nullptr;
        int pass = 0;
        mf_status s = mf_relations_report(th.t, jobs, &rep, &pass);
        if (s != MF_OK) {
            std::cerr << "error: " << mf_last_error() << "\n";
            return status_to_exit(s);
        }
        print_report(rep, machine);
        mf_string_free(rep);
        ok = ok && report_all_pass(pass);
    }
    {
        char* rep = nullptr;
        int pass = 0;
        mf_status s = mf_s_reconstruction_report(th.t, &rep, &pass);
        if (s != MF_OK) {
            std::cerr << "error: " << mf_last_error() << "\n";
            return status_to_exit(s);
        }
        print_report(rep, machine);
        mf_string_free(rep);
        ok = ok && report_all_pass(pass);
    }
    if (!machine) std::cout << (ok ? "all checks passed\n" : "FAILED\n");
    return ok ? kExitPass : kExitCheckFailed;
}

int run_relations(const std::string& input, double tol, unsigned jobs, bool machine) {
    TheoryHandle th;
    if (int rc = load_theory(input, tol, th)) return rc;
    char* rep = nullptr;
    int pass = 0;
    mf_status s = mf_relations_report(th.t, jobs, &rep, &pass);
    if (s != MF_OK) {
        std::cerr << "error: " << mf_last_error() << "\n";
        return status_to_exit(s);
    }
    print_report(rep, machine);
    mf_string_free(rep);
    return report_all_pass(pass) ? kExitPass : kExitCheckFailed;
}

int run_s_matrix(const std::string& input, double tol, const std::string& label,
                 const std::string& route, const std::string& reading, bool machine) {
    TheoryHandle th;
    if (int rc = load_theory(input, tol, th)) return rc;
    char* json = nullptr;
    double route_res = 0, self_res = -1;
    int variant = reading == "theorem" ? 1 : 0;
    mf_status s = mf_s_lambda(th.t, label.c_str(), route.c_str(), variant, &json, &route_res,
                              &self_res);
    if (s != MF_OK) {
        std::cerr << "error: " << mf_last_error() << "\n";
        return status_to_exit(s);
    }
    std::cout << json << "\n";
    mf_string_free(json);
    double tolv = mf_tolerance(th.t);
    bool ok = route_res < tolv && (self_res < 0 || self_res < tolv);
    if (!machine)
        std::printf("route residual %.3e%s\n", route_res,
                    self_res >= 0 ? (" self residual " + std::to_string(self_res)).c_str() : "");
    return ok ? kExitPass : kExitCheckFailed;
}

int run_dims(const std::string& input, double tol, unsigned genus,
             const std::string& boundary) {
    TheoryHandle th;
    if (int rc = load_theory(input, tol, th)) return rc;
    std::vector<std::string> labels;
    std::string token;
    std::istringstream in(boundary);
    while (std::getline(in, token, ','))
        if (!token.empty()) labels.push_back(token);
    std::vector<const char*> ptrs;
    for (auto& l : labels) ptrs.push_back(l.c_str());
    unsigned long long dim = 0;
    mf_status s = mf_verlinde_dim(th.t, genus, ptrs.data(), ptrs.size(), &dim);
    if (s != MF_OK) {
        std::cerr << "error: " << mf_last_error() << "\n";
        return status_to_exit(s);
    }
    std::cout << dim << "\n";
    return kExitPass;
}

int run_generate(const std::string& name) {
    mf_theory* t = nullptr;
    mf_status s = mf_theory_generate(name.c_str(), &t);
    if (s != MF_OK) {
        std::cerr << "error: " << mf_last_error() << "\n";
        return status_to_exit(s);
    }
    char* json = mf_theory_to_json(t);
    if (!json) {
        std::cerr << "error: " << mf_last_error() << "\n";
        mf_theory_free(t);
        return kExitFormatError;
    }
    std::cout << json << "\n";
    mf_string_free(json);
    mf_theory_free(t);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modular-functor basic data: validation, relations, and S(lambda) reconstruction"};
    app.require_subcommand(1);
    app.fallthrough();
    app.footer(
        "exit codes: 0 all checks pass, 1 a relation or consistency check failed,\n"
        "            2 parse or shape error, 3 generator failure");

    double tol = -1;
    unsigned jobs = 1;
    bool machine = false;
    app.add_option("--tol", tol, "tolerance override for residual checks");
    app.add_option("--jobs", jobs, "parallelism degree for relation sweeps")
        ->check(CLI::Range(1u, 64u));
    app.add_flag("--machine", machine, "machine-readable tab-separated report lines");

    std::string input, label = "0", route = "main", reading = "proof", boundary, name;
    unsigned genus = 0;

    auto* validate = app.add_subcommand("validate", "load a document and run every check suite");
    validate->add_option("input", input, "basic-data JSON document")->required();

    auto* relations = app.add_subcommand("relations", "run the genus-zero relation suite");
    relations->add_option("input", input, "basic-data JSON document")->required();

    auto* smatrix = app.add_subcommand("s-matrix", "compute S(lambda) via both routes");
    smatrix->add_option("input", input, "basic-data JSON document")->required();
    smatrix->add_option("--label", label, "point label lambda (default unit)");
    smatrix->add_option("--variant", route, "which route to print")
        ->check(CLI::IsMember({"main", "sandwich"}));
    smatrix->add_option("--reading", reading, "Main' prefactor reading")
        ->check(CLI::IsMember({"proof", "theorem"}));

    auto* dims = app.add_subcommand("dims", "Verlinde dimension of a labeled surface");
    dims->add_option("input", input, "basic-data JSON document")->required();
    dims->add_option("--genus", genus, "genus")->required();
    dims->add_option("--boundary", boundary, "comma-separated boundary labels");

    auto* generate = app.add_subcommand("generate", "emit a built-in example theory");
    generate->add_option("name", name, "trivial | abelian-K | fibonacci")->required();

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return run_validate(input, tol, jobs, machine);
    if (relations->parsed()) return run_relations(input, tol, jobs, machine);
    if (smatrix->parsed()) return run_s_matrix(input, tol, label, route, reading, machine);
    if (dims->parsed()) return run_dims(input, tol, genus, boundary);
    if (generate->parsed()) return run_generate(name);
    return kExitFormatError;
}
