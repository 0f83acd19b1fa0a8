#include "qplab/relations.hpp"

#include <doctest.h>

using namespace qp;

namespace {

struct Env {
    explicit Env(Perturbation p = {}, int depth = 3) : lat(p), fock(lat), l3(fock), suite(l3, config(depth)) {}
    static SuiteConfig config(int depth) {
        SuiteConfig c;
        c.depth = depth;
        c.window = 2;
        c.reduced_depth = 2;
        return c;
    }
    TwistedLattice lat;
    FockEngine fock;
    Level3 l3;
    RelationSuite suite;
};

CheckReport one(RelationSuite& s, const std::string& id) { return s.run({id}).front(); }

}  // namespace

TEST_SUITE("relations") {

TEST_CASE("probe sets") {
    auto ps = ambient_probes(3);
    std::size_t want = 0;
    for (int n = 0; n <= 3; ++n) want += graded_component_basis(n).size();
    CHECK(ps.size() == want);
    for (const auto& p : ps) CHECK(homogeneous_degree(p.v) == p.degree);
    TwistedLattice lat;
    FockEngine fock(lat);
    Level3 l3(fock);
    auto ms = module_probes(l3, 4);
    CHECK(ms.size() == 1 + 1 + 2 + 3 + 4);
}

TEST_CASE("commutators and exchanges at small depth") {
    Env e;
    for (const char* id : {"e22", "e220", "e24", "e25", "EE", "L21a", "L21b", "L21c", "order2", "Rrel"}) {
        CheckReport r = one(e.suite, id);
        INFO(id << ": " << r.failure);
        CHECK(r.pass);
        CHECK(r.nonzero > 0);
    }
}

TEST_CASE("the exponent +<nu^p x, y> in the exchange relations fails") {
    Env e;
    for (const char* id : {"e24_flipped", "e25_flipped", "L21b_flipped", "L21c_flipped"}) {
        INFO(id);
        CHECK_FALSE(one(e.suite, id).pass);
    }
}

TEST_CASE("fitted constants") {
    Env e;
    RelationFit xaa = e.suite.fit("XAA2");
    REQUIRE(xaa.valid());
    // two quasi-particles of color alpha sitting in different slots: 2 c_alpha P_{a,a}(1), P_{a,a}(1) = 12
    CHECK(xaa.constants.front() == e.lat.c_alpha() * CycScalar(24));
    for (const char* id : {"rel12_e", "rel12_f"}) {
        RelationFit f = e.suite.fit(id);
        INFO(id);
        CHECK(f.valid());
        CHECK_FALSE(f.identically_zero);
    }
    RelationFit x = e.suite.fit("XABAB");
    CHECK(x.valid());
    CHECK(x.identically_zero);
}

TEST_CASE("the power of P making every derivative limit exist") { CHECK(Env().suite.discover_n() == 4); }

TEST_CASE("initial conditions via the filtration") {
    Env e;
    TensorVector v0 = tensor_vacuum();
    CHECK(e.suite.filtration_membership(0, e.l3.x1(-1, v0), 1, "X1(-1)v").member);
    CHECK(e.suite.filtration_membership(1, e.l3.x2(-3, v0), 3, "X2(-3)v").member);
    CHECK_FALSE(e.suite.filtration_membership(0, e.l3.x1(-2, v0), 2, "X1(-2)v").member);
    // the whole component is reached once enough X1 factors are allowed
    CHECK(e.suite.filtration_membership(2, e.l3.x1(-2, v0), 2, "X1(-2)v").member);
}

TEST_CASE("lemma instances") {
    Env e;
    Probe v{"v", tensor_vacuum(), 0};
    MembershipReport m = e.suite.lemma_membership("L41", {-2, -3}, v);
    CHECK(m.member);
    CHECK(m.degree == 5);
    CHECK(m.family_rank <= m.component_dimension);
    CHECK(e.suite.lemma_membership("L42", {-5}, v).member);
    CHECK_THROWS_AS(e.suite.lemma_membership("L42", {-6}, v), std::invalid_argument);
    CHECK_THROWS_AS(e.suite.lemma_membership("L41", {-1, -6}, v), std::invalid_argument);
    MembershipReport l46 = e.suite.lemma_membership("L46", {-2, 0}, v);
    CHECK(l46.member);
    CHECK(l46.strict_member.has_value());
    CHECK_THROWS(e.suite.lemma_probe("w"));
}

TEST_CASE("default lemma instances stay within degree 12 and give five per lemma") {
    Env e;
    std::map<std::string, int> count;
    for (const auto& inst : default_lemma_instances()) {
        ++count[inst.id];
        Probe p = e.suite.lemma_probe(inst.probe);
        int total = 0;
        if (inst.id == "L41") total = inst.params[0] + inst.params[1];
        else if (inst.id == "L42") total = inst.params[0];
        else if (inst.id == "L44") total = inst.params[0];
        else if (inst.id == "L45a") total = 6 * inst.params[0];
        else if (inst.id == "L45b") total = 6 * inst.params[0] - 3;
        else if (inst.id == "L46") total = inst.params[0] + 3 * inst.params[1] - 3;
        CHECK(p.degree - total <= 12);
    }
    for (const char* id : {"L41", "L42", "L44", "L45a", "L45b", "L46"}) CHECK(count[id] >= 5);
}

TEST_CASE("commutation modulo the filtration") {
    Env e;
    for (const auto& r : e.suite.commutation_mod_filtration(1, {-2, -3})) CHECK(r.member);
}

TEST_CASE("corrupted data is detected") {
    SUBCASE("cocycle") {
        Perturbation p;
        p.epsilon_factor = CycScalar(-1);
        Env e(p);
        CHECK_FALSE(one(e.suite, "e220").pass);
    }
    SUBCASE("c_alpha") {
        Perturbation p;
        p.c_alpha_shift = CycScalar(ratio(1, 36));
        Env e(p);
        CHECK_FALSE(one(e.suite, "e220").pass);
    }
    SUBCASE("P coefficient") {
        Perturbation p;
        p.p_coeff_index = 1;
        p.p_coeff_shift = CycScalar(1);
        Env e(p);
        CHECK_FALSE(one(e.suite, "order2").pass);
        CHECK_THROWS_AS(e.l3.closed_form({kAlpha, kBeta}), std::domain_error);
    }
}

TEST_CASE("unknown ids are rejected") { CHECK_THROWS_AS(Env().suite.run({"nope"}), std::invalid_argument); }

}
