#include <doctest.h>

#include <json.hpp>
#include <cmath>

#include "helpers.hpp"
#include "mf/basic_data.hpp"

using namespace mf;
using testing_helpers::theory;

namespace {
const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;
}

TEST_CASE("round trip keeps the document content") {
    for (const char* name : {"trivial", "fibonacci", "abelian-3"}) {
        const BasicData& bd = theory(name);
        std::string doc = save_basic_data(bd);
        BasicData back = load_basic_data(doc);
        CHECK(back.n() == bd.n());
        for (auto& [t, m] : bd.r_family()) CHECK(max_norm(back.R(t) - m) == 0.0);
        for (auto& [t, m] : bd.b_family()) CHECK(max_norm(back.B(t) - m) == 0.0);
        for (auto& [key, blk] : bd.f_blocks())
            CHECK(max_norm(back.f_block(key).m - blk.m) == 0.0);
        for (Label l = 0; l < bd.n(); ++l) CHECK(back.twist(l) == bd.twist(l));
        REQUIRE(back.has_S());
        CHECK(max_norm(back.S() - bd.S()) == 0.0);
        CHECK(back.tol() == bd.tol());
    }
}

TEST_CASE("loader rejects malformed documents") {
    std::string good = save_basic_data(theory("fibonacci"));
    nlohmann::json base = nlohmann::json::parse(good);

    CHECK_THROWS_WITH_AS(load_basic_data("{"), doctest::Contains("parse error"), InvalidTheory);

    {
        nlohmann::json doc = base;
        doc["d"]["tau"] = {0.0, 0.0};
        CHECK_THROWS_WITH_AS(load_basic_data(doc.dump()), doctest::Contains("zero twist"),
                             InvalidTheory);
    }
    {
        nlohmann::json doc = base;
        doc["flavor"] = "strange";  // unknown keys rejected
        CHECK_THROWS_WITH_AS(load_basic_data(doc.dump()), doctest::Contains("unknown key"),
                             InvalidTheory);
    }
    {
        nlohmann::json doc = base;
        doc.erase("unit");
        CHECK_THROWS_WITH_AS(load_basic_data(doc.dump()), doctest::Contains("missing key"),
                             InvalidTheory);
    }
    {
        nlohmann::json doc = base;
        doc["dagger"]["tau"] = "0";  // not an involution (and unit not fixed)
        CHECK_THROWS_AS(load_basic_data(doc.dump()), InvalidTheory);
    }
    {
        nlohmann::json doc = base;
        doc["dims"].push_back({"tau", "tau", "sigma", 1});
        CHECK_THROWS_WITH_AS(load_basic_data(doc.dump()), doctest::Contains("label"),
                             InvalidTheory);
    }
    {
        nlohmann::json doc = base;
        doc["d"]["tau"] = {std::numeric_limits<double>::quiet_NaN(), 0.0};
        CHECK_THROWS_AS(load_basic_data(doc.dump()), InvalidTheory);
    }
}

TEST_CASE("loader names the offending tensor on shape mismatch") {
    const BasicData& fib = theory("fibonacci");
    // drop one F block
    std::map<FBlockKey, FBlock> F(fib.f_blocks().begin(), fib.f_blocks().end());
    F.erase(F.find(FBlockKey{Quad{1, 1, 1, 1}, 0, 0}));
    CHECK_THROWS_WITH_AS(
        BasicData(fib.labels(), fib.dims(), fib.r_family(), fib.b_family(), std::move(F),
                  fib.twists(), std::nullopt, fib.tol()),
        doctest::Contains("missing F block"), InvalidTheory);
    // wrong R shape
    std::map<Triple, Matrix> R(fib.r_family());
    R[Triple{1, 1, 1}] = Matrix::Identity(2, 2);
    CHECK_THROWS_WITH_AS(
        BasicData(fib.labels(), fib.dims(), std::move(R), fib.b_family(),
                  std::map<FBlockKey, FBlock>(fib.f_blocks().begin(), fib.f_blocks().end()),
                  fib.twists(), std::nullopt, fib.tol()),
        doctest::Contains("R shape mismatch"), InvalidTheory);
}

TEST_CASE("E scalars") {
    CHECK(theory("trivial").e_scalar(0) == Complex(1.0, 0.0));
    for (const char* name : {"trivial", "fibonacci", "abelian-2", "abelian-3"})
        CHECK(std::abs(theory(name).e_scalar(0) - Complex(1, 0)) < 1e-12);
    // Fibonacci E_tau is the Perron eigenvalue of [[0,1],[1,1]]
    CHECK(std::abs(theory("fibonacci").e_scalar(1) - Complex(kPhi, 0)) < 1e-12);
    // and equals S_{0,tau*}/S_{0,0} of the generator S (Lemma ESS form)
    const BasicData& fib = theory("fibonacci");
    CHECK(std::abs(fib.e_scalar(1) - fib.S()(0, fib.dag(1)) / fib.S()(0, 0)) < 1e-12);
}

TEST_CASE("twisted F blocks") {
    const BasicData& tr = theory("trivial");
    FBlock t = tr.twisted_f_block(Quad{0, 0, 0, 0}, 0, 0);
    REQUIRE(t.m.size() == 1);
    CHECK(std::abs(t.m(0, 0) - Complex(1, 0)) < 1e-14);

    // with every participating dimension 1 the entry collapses to a product
    // of five scalars: head R, head B, F, tail R^2-inverse, tail B
    const BasicData& fib = theory("fibonacci");
    Quad q{1, 1, 1, 1};
    FBlock tw = fib.twisted_f_block(q, 1, 1);
    REQUIRE(tw.m.size() == 1);
    Complex head = fib.R(Triple{1, 1, 1})(0, 0) * fib.B(Triple{1, 1, 1})(0, 0);
    Complex tail = fib.R_pow(Triple{1, 1, 1}, -2)(0, 0) * fib.B(Triple{1, 1, 1})(0, 0);
    Complex f = fib.f_block(FBlockKey{q, 1, 1}).m(0, 0);
    CHECK(std::abs(tw.m(0, 0) - head * f * tail) < 1e-12);
}

TEST_CASE("R cube scalar is recorded") {
    const BasicData& fib = theory("fibonacci");
    Complex scalar;
    double res = fib.r_cube_scalar(Triple{1, 1, 1}, scalar);
    CHECK(res < 1e-12);  // 1x1: exactly a scalar
    // r(tau,tau,tau) = phi^2 so the cube is phi^6
    CHECK(std::abs(scalar - Complex(std::pow(kPhi, 6.0), 0)) < 1e-9);
}

TEST_CASE("assembled F matrices are square and invertible") {
    for (const char* name : {"fibonacci", "abelian-3"}) {
        const BasicData& bd = theory(name);
        for (Label mu = 0; mu < bd.n(); ++mu)
            for (Label xi = 0; xi < bd.n(); ++xi)
                for (Label la = 0; la < bd.n(); ++la)
                    for (Label ka = 0; ka < bd.n(); ++ka) {
                        Matrix f = bd.assembled_f(Quad{mu, xi, la, ka});
                        if (f.size() == 0) continue;
                        REQUIRE(f.rows() == f.cols());
                        Matrix err = f * f.inverse() - Matrix::Identity(f.rows(), f.rows());
                        CHECK(max_norm(err) < 10 * bd.tol());
                    }
    }
}

TEST_CASE("S permutes with the document label order") {
    // a document listing the unit second still loads with unit at index 0
    std::string doc = R"({
      "labels": ["x", "e"], "unit": "e",
      "dagger": {"e": "e", "x": "x"},
      "dims": [["e","e","e",1], ["e","x","x",1], ["x","e","x",1], ["x","x","e",1]],
      "R": [{"triple":["e","e","e"],"matrix":[[[1,0]]]},
            {"triple":["e","x","x"],"matrix":[[[1,0]]]},
            {"triple":["x","e","x"],"matrix":[[[1,0]]]},
            {"triple":["x","x","e"],"matrix":[[[1,0]]]}],
      "B": [{"triple":["e","e","e"],"matrix":[[[1,0]]]},
            {"triple":["e","x","x"],"matrix":[[[1,0]]]},
            {"triple":["x","e","x"],"matrix":[[[1,0]]]},
            {"triple":["x","x","e"],"matrix":[[[0,1]]]}],
      "F": [],
      "d": {"e": [1,0], "x": [0,1]},
      "S": [[[1,0],[2,0]],[[3,0],[4,0]]]
    })";
    // F blocks are required; expect the missing-block error, but only after
    // the S permutation validates, so probe S via a fuller doc instead.
    CHECK_THROWS_WITH_AS(load_basic_data(doc), doctest::Contains("missing F block"),
                         InvalidTheory);
    // semantic check through save/load of a generated theory with S present
    const BasicData& ab2 = theory("abelian-2");
    BasicData back = load_basic_data(save_basic_data(ab2));
    CHECK(max_norm(back.S() - ab2.S()) == 0.0);
}
