#pragma once

#include "qplab/basis.hpp"
#include "qplab/echelon.hpp"
#include "qplab/level3.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qp {

struct Probe {
    std::string label;
    TensorVector v;
    int degree = 0;
};

// All ambient basis states of degree <= max_degree. Since every identity checked here
// is linear in the probe, this covers every homogeneous vector of those degrees.
std::vector<Probe> ambient_probes(int max_degree);
// Vectors of valid basis monomials of degree <= max_degree.
std::vector<Probe> module_probes(const Level3& l3, int max_degree);

struct CheckReport {
    std::string id;
    bool pass = false;
    long coefficients = 0;  // number of coefficient vectors compared
    long nonzero = 0;       // how many of them were nonzero (guards against vacuous passes)
    int probes = 0;
    int depth = 0;
    double seconds = 0;
    std::string failure;  // first failing coefficient, both sides
    std::map<std::string, std::string> info;
};

struct RelationFit {
    std::string id;
    std::vector<CycScalar> constants;
    std::string fit_probe;
    long fit_index = 0;
    std::vector<std::pair<long, bool>> residuals;  // (coefficient index, exactly zero)
    bool identically_zero = false;  // both sides vanish on every probe; the constant is unconstrained
    bool valid() const;
};

struct MembershipReport {
    std::string target;
    std::string family;
    int degree = 0;
    bool member = false;
    std::map<std::string, CycScalar> coordinates;  // over family labels, when member
    std::size_t family_size = 0;
    std::size_t family_rank = 0;
    std::size_t component_dimension = 0;  // dimension of the module component (basis count)
    bool family_spans_component = false;  // membership then holds for dimension reasons alone
    std::optional<bool> strict_member;     // membership in the explicit family without lower-charge vectors
};

struct SuiteConfig {
    int depth = 8;          // maximal probe degree
    int window = 3;         // how far indices go below zero
    int reduced_depth = 6;  // probes for the expensive checks (three-fold products, derivatives)
    Budget budget;
};

// A lemma, its integer parameters and the module vector it is applied to
// ("v", "a(-1)v" or "X1(-2)v").
struct LemmaInstance {
    std::string id;
    std::vector<int> params;
    std::string probe = "v";
};

class RelationSuite {
public:
    RelationSuite(const Level3& l3, SuiteConfig cfg);

    const Level3& level3() const { return l3_; }
    const SuiteConfig& config() const { return cfg_; }

    // [alpha(a), X(alpha; b)] = [a = +-1 mod 6] X(alpha; a+b)
    CheckReport commutator_heis();
    // [X(x; a), X(y; b)] against the explicit right-hand side, x, y in {alpha, beta}
    CheckReport commutator_xx();
    // E+(x) X(y) and X(x) E-(y) exchanges. `flipped_sign` uses the exponent
    // +<nu^p x, y> instead of -<nu^p x, y>; that variant is expected to fail.
    CheckReport exchange_plus(bool flipped_sign = false);
    CheckReport exchange_minus(bool flipped_sign = false);
    CheckReport exchange_ee();
    CheckReport charge_two_heis();
    CheckReport charge_two_minus(bool flipped_sign = false);
    CheckReport charge_two_plus(bool flipped_sign = false);
    // P_{xy} X(x) X(y) = P_{xy} X(y) X(x) coefficientwise
    CheckReport order_independence_pairs();
    CheckReport order_independence_triple();
    // X(alpha, beta) closed form against the raw summable family
    CheckReport charge_two_raw();

    CheckReport rrel();
    RelationFit fit(const std::string& id, CheckReport* report = nullptr);
    CheckReport derivative_pairs();  // P^{n+m+1}[D^n X(x), D^m X(y)] = 0, n + m <= 3
    CheckReport xabab_derivatives(const CycScalar& kappa, int n_power);
    // Smallest N for which every limit of the derivative family exists.
    int discover_n(int max_n = 8) const;

    MembershipReport lemma_membership(const std::string& id, const std::vector<int>& params, const Probe& probe);
    MembershipReport filtration_membership(int j, const TensorVector& target, int degree, const std::string& label);
    // (53)/(54) for adjacent transpositions of the given index sequence.
    std::vector<MembershipReport> commutation_mod_filtration(int charge, const std::vector<int>& m);
    Probe lemma_probe(const std::string& label) const;

    // Runs everything; `ids` empty means the full suite.
    std::vector<CheckReport> run(const std::vector<std::string>& ids);
    static std::vector<std::string> all_ids();

private:
    const Level3& l3_;
    SuiteConfig cfg_;
    std::vector<Probe> probes_;
    std::vector<Probe> small_probes_;
    MonomialApplier applier_;
    std::map<int, std::vector<TensorVector>> lower_family_cache_;
};

// The standard lemma instances exercised by the suite.
std::vector<LemmaInstance> default_lemma_instances();

}  // namespace qp
