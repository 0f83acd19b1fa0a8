#pragma once

#include "qplab/basis.hpp"
#include "qplab/relations.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qp {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

// Every number that is not a count is written as an exact string.
Json to_json(const CycScalar& x);
Json to_json(const CheckReport& r);
Json to_json(const RelationFit& f);
Json to_json(const MembershipReport& m);
Json to_json(const RankAudit& a);
Json to_json(const QPMonomial& m);
// Terms sorted by state key: [{"state": "...", "coef": "..."}]
Json to_json(const TensorVector& v);

// Gram matrix, nu, roots, pairings, cocycle, pair polynomials, mode weights.
Json lattice_tables(const TwistedLattice& lat);

struct SeriesRow {
    int n = 0;
    BigInt product_side;
    BigInt sum_side;
    BigInt congruence_count;
    BigInt difference_count;
    long basis_count = -1;  // -1 when not enumerated
};
// Rows 0..order; basis counts are enumerated up to basis_order.
std::vector<SeriesRow> series_table(int order, int basis_order);

// Minimal CSV: fields containing a comma or quote get quoted.
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace qp
