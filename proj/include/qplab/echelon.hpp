#pragma once

#include "qplab/level3.hpp"

#include <chrono>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace qp {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Wall-clock and size limits shared by the elimination-heavy operations.
struct Budget {
    std::size_t max_dimension = std::numeric_limits<std::size_t>::max();
    double seconds = 0;  // 0 = unlimited
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void check_time(const char* what) const;
};

// Incremental row echelon form over Q(w). Each stored row has a pivot entry equal to 1
// and zeros in the pivot columns of all earlier rows; the pivot is the entry with the
// smallest representation, which keeps coefficient growth in check.
class Echelon {
public:
    explicit Echelon(bool track_coordinates = false, Budget budget = {})
        : track_(track_coordinates), budget_(budget) {}

    // Returns true when v is independent of the rows so far. `label` indexes v for coordinates.
    bool insert(const TensorVector& v, std::size_t label = 0);
    bool in_span(const TensorVector& v) const;
    // Coordinates of v over the inserted labels when v is in the span.
    std::optional<std::unordered_map<std::size_t, CycScalar>> coordinates(const TensorVector& v) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t columns_seen() const { return cols_.size(); }

private:
    using Row = std::vector<std::pair<int, CycScalar>>;
    using Dense = std::unordered_map<int, CycScalar>;
    using Combo = std::unordered_map<std::size_t, CycScalar>;

    Dense to_dense(const TensorVector& v, bool extend_columns);
    Dense to_dense_const(const TensorVector& v, bool& unknown_column) const;
    void reduce(Dense& d, Combo* combo) const;

    bool track_;
    Budget budget_;
    std::unordered_map<TensorKey, int> cols_;
    std::vector<Row> rows_;
    std::vector<int> pivots_;
    std::vector<Combo> combos_;
};

std::size_t rank_of(const std::vector<TensorVector>& vectors, int degree, Budget budget = {});

}  // namespace qp
