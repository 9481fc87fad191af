#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "mf/basic_data.hpp"

namespace mf {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InvalidTheory("expected [re,im] pair in " + where);
    Complex z(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidTheory("non-finite complex number in " + where);
    return z;
}

Matrix parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array()) throw InvalidTheory("expected matrix (array of rows) in " + where);
    std::size_t rows = j.size();
    std::size_t cols = rows ? j[0].size() : 0;
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw InvalidTheory("ragged matrix in " + where);
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_complex(j[r][c], where);
    }
    return m;
}

json dump_complex(Complex z) { return json::array({z.real(), z.imag()}); }

json dump_matrix(const Matrix& m) {
    json rows = json::array();
    for (long r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (long c = 0; c < m.cols(); ++c) row.push_back(dump_complex(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

BasicData load_basic_data(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidTheory(std::string("parse error: ") + e.what());
    }
    if (!doc.is_object()) throw InvalidTheory("document root must be an object");

    static const std::set<std::string> known = {"labels", "dagger", "unit", "dims", "F",
                                               "R",      "B",      "d",    "S",    "tol",
                                               "comment"};
    for (auto& [key, _] : doc.items())
        if (!known.count(key)) throw InvalidTheory("unknown key: " + key);
    for (const char* req : {"labels", "dagger", "unit", "dims", "F", "R", "B", "d"})
        if (!doc.contains(req)) throw InvalidTheory(std::string("missing key: ") + req);

    std::vector<std::string> names;
    for (auto& j : doc["labels"]) {
        if (!j.is_string()) throw InvalidTheory("labels must be strings");
        names.push_back(j.get<std::string>());
    }
    if (names.empty()) throw InvalidTheory("empty label set");
    std::string unit = doc["unit"].get<std::string>();
    // the unit is index 0 internally; reorder if the document lists it elsewhere
    std::vector<std::string> doc_order = names;
    auto pos = std::find(names.begin(), names.end(), unit);
    if (pos == names.end()) throw InvalidTheory("missing unit label: " + unit);
    std::size_t unit_pos = static_cast<std::size_t>(pos - names.begin());
    if (pos != names.begin()) std::rotate(names.begin(), pos, pos + 1);

    auto lookup = [&](const std::string& s) -> Label {
        for (Label l = 0; l < names.size(); ++l)
            if (names[l] == s) return l;
        throw InvalidTheory("label not in \xce\x9b: " + s);
    };

    std::vector<Label> dagger(names.size());
    if (!doc["dagger"].is_object()) throw InvalidTheory("dagger must be an object");
    if (doc["dagger"].size() != names.size()) throw InvalidTheory("dagger must cover every label");
    for (auto& [k, v] : doc["dagger"].items()) dagger[lookup(k)] = lookup(v.get<std::string>());
    LabelSet ls(names, dagger);

    std::map<Triple, unsigned> dims;
    for (auto& e : doc["dims"]) {
        if (!e.is_array() || e.size() != 4) throw InvalidTheory("dims entries must be [a,b,c,n]");
        Triple t{lookup(e[0].get<std::string>()), lookup(e[1].get<std::string>()),
                 lookup(e[2].get<std::string>())};
        if (!e[3].is_number_integer() || e[3].get<long>() < 0)
            throw InvalidTheory("dims values must be non-negative integers");
        dims[t] = e[3].get<unsigned>();
    }
    DimTable dt(ls.size(), dims);

    std::map<Triple, Matrix> R, B;
    for (const char* fam : {"R", "B"}) {
        for (auto& e : doc[fam]) {
            if (!e.is_object() || !e.contains("triple") || !e.contains("matrix"))
                throw InvalidTheory(std::string(fam) + " entries need triple and matrix");
            auto& tj = e["triple"];
            Triple t{lookup(tj[0].get<std::string>()), lookup(tj[1].get<std::string>()),
                     lookup(tj[2].get<std::string>())};
            Matrix m = parse_matrix(e["matrix"], fam);
            (*fam == 'R' ? R : B)[t] = std::move(m);
        }
    }

    std::map<FBlockKey, FBlock> F;
    for (auto& e : doc["F"]) {
        for (const char* req : {"quad", "nu", "nutilde", "matrix"})
            if (!e.contains(req)) throw InvalidTheory(std::string("F entry missing ") + req);
        auto& qj = e["quad"];
        if (!qj.is_array() || qj.size() != 4) throw InvalidTheory("F quad must have 4 labels");
        Quad q{lookup(qj[0].get<std::string>()), lookup(qj[1].get<std::string>()),
               lookup(qj[2].get<std::string>()), lookup(qj[3].get<std::string>())};
        Label nu = lookup(e["nu"].get<std::string>());
        Label nt = lookup(e["nutilde"].get<std::string>());
        FBlock b;
        b.di = dt.dim(nu, q.mu, q.la);
        b.dj = dt.dim(ls.dag(nu), q.ka, q.xi);
        b.dk = dt.dim(nt, q.la, q.ka);
        b.dl = dt.dim(ls.dag(nt), q.xi, q.mu);
        // wire format: rows are (k,l) target pairs, columns are (i,j) source pairs
        Matrix wire = parse_matrix(e["matrix"], "F");
        if (wire.rows() != static_cast<long>(b.dk * b.dl) ||
            wire.cols() != static_cast<long>(b.di * b.dj))
            throw InvalidTheory("F shape mismatch at quad (" + ls.name(q.mu) + "," +
                                ls.name(q.xi) + "," + ls.name(q.la) + "," + ls.name(q.ka) +
                                "): expected " + std::to_string(b.dk * b.dl) + "x" +
                                std::to_string(b.di * b.dj));
        b.m = wire.transpose();
        if (F.count(FBlockKey{q, nu, nt})) throw InvalidTheory("duplicate F block");
        F[FBlockKey{q, nu, nt}] = std::move(b);
    }

    if (!doc["d"].is_object()) throw InvalidTheory("d must be an object");
    std::vector<Complex> d(ls.size(), Complex(0, 0));
    for (auto& [k, v] : doc["d"].items()) d[lookup(k)] = parse_complex(v, "d");

    std::optional<Matrix> S;
    if (doc.contains("S")) {
        Matrix raw = parse_matrix(doc["S"], "S");
        if (raw.rows() != static_cast<long>(names.size()) || raw.cols() != raw.rows())
            throw InvalidTheory("S shape mismatch: expected " + std::to_string(names.size()) +
                                "x" + std::to_string(names.size()));
        if (unit_pos == 0) {
            S = std::move(raw);
        } else {
            // S is indexed in document label order; permute to internal order
            std::vector<std::size_t> perm;
            perm.push_back(unit_pos);
            for (std::size_t i = 0; i < doc_order.size(); ++i)
                if (i != unit_pos) perm.push_back(i);
            Matrix m(raw.rows(), raw.cols());
            for (long r = 0; r < m.rows(); ++r)
                for (long c = 0; c < m.cols(); ++c) m(r, c) = raw(perm[r], perm[c]);
            S = std::move(m);
        }
    }

    double tol = doc.value("tol", 1e-9);
    std::string comment = doc.value("comment", "");

    return BasicData(std::move(ls), std::move(dt), std::move(R), std::move(B), std::move(F),
                     std::move(d), std::move(S), tol, std::move(comment));
}

BasicData load_basic_data_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidTheory("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_basic_data(ss.str());
}

std::string save_basic_data(const BasicData& bd) {
    json doc;
    const LabelSet& ls = bd.labels();
    json labels = json::array();
    for (Label l = 0; l < ls.size(); ++l) labels.push_back(ls.name(l));
    doc["labels"] = labels;
    json dagger = json::object();
    for (Label l = 0; l < ls.size(); ++l) dagger[ls.name(l)] = ls.name(ls.dag(l));
    doc["dagger"] = dagger;
    doc["unit"] = ls.name(0);
    json dims = json::array();
    for (auto& [t, d] : bd.dims().nonzero())
        dims.push_back(json::array({ls.name(t.a), ls.name(t.b), ls.name(t.c), d}));
    doc["dims"] = dims;
    json rf = json::array(), bf = json::array();
    for (auto& [t, m] : bd.r_family())
        rf.push_back({{"triple", {ls.name(t.a), ls.name(t.b), ls.name(t.c)}},
                      {"matrix", dump_matrix(m)}});
    for (auto& [t, m] : bd.b_family())
        bf.push_back({{"triple", {ls.name(t.a), ls.name(t.b), ls.name(t.c)}},
                      {"matrix", dump_matrix(m)}});
    doc["R"] = rf;
    doc["B"] = bf;
    json ff = json::array();
    for (auto& [key, blk] : bd.f_blocks()) {
        const Quad& q = key.quad;
        ff.push_back({{"quad", {ls.name(q.mu), ls.name(q.xi), ls.name(q.la), ls.name(q.ka)}},
                      {"nu", ls.name(key.nu)},
                      {"nutilde", ls.name(key.nutilde)},
                      {"matrix", dump_matrix(blk.m.transpose())}});
    }
    doc["F"] = ff;
    json dd = json::object();
    for (Label l = 0; l < ls.size(); ++l) dd[ls.name(l)] = dump_complex(bd.twist(l));
    doc["d"] = dd;
    if (bd.has_S()) doc["S"] = dump_matrix(bd.S());
    doc["tol"] = bd.tol();
    if (!bd.comment().empty()) doc["comment"] = bd.comment();
    return doc.dump(1);
}

}  // namespace mf
