#include "qplab/echelon.hpp"

#include <algorithm>

namespace qp {

void Budget::check_time(const char* what) const {
    if (seconds <= 0) return;
    double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (el > seconds) throw BudgetExceeded(std::string(what) + ": time budget exceeded");
}

Echelon::Dense Echelon::to_dense(const TensorVector& v, bool extend_columns) {
    Dense d;
    for (const auto& [k, c] : v) {
        auto it = cols_.find(k);
        if (it == cols_.end()) {
            if (!extend_columns) continue;
            if (cols_.size() >= budget_.max_dimension) throw BudgetExceeded("component too large for elimination budget");
            it = cols_.emplace(k, static_cast<int>(cols_.size())).first;
        }
        d.emplace(it->second, c);
    }
    return d;
}

Echelon::Dense Echelon::to_dense_const(const TensorVector& v, bool& unknown_column) const {
    Dense d;
    unknown_column = false;
    for (const auto& [k, c] : v) {
        auto it = cols_.find(k);
        if (it == cols_.end()) {
            unknown_column = true;
            continue;
        }
        d.emplace(it->second, c);
    }
    return d;
}

void Echelon::reduce(Dense& d, Combo* combo) const {
    for (std::size_t i = 0; i < rows_.size() && !d.empty(); ++i) {
        auto it = d.find(pivots_[i]);
        if (it == d.end()) continue;
        CycScalar f = it->second;
        for (const auto& [col, val] : rows_[i]) {
            auto [jt, fresh] = d.try_emplace(col, -(f * val));
            if (!fresh) {
                jt->second -= f * val;
                if (jt->second.is_zero()) d.erase(jt);
            }
        }
        if (combo)
            for (const auto& [lab, val] : combos_[i]) {
                CycScalar& t = (*combo)[lab];
                t -= f * val;
            }
    }
}

bool Echelon::insert(const TensorVector& v, std::size_t label) {
    budget_.check_time("elimination");
    Dense d = to_dense(v, true);
    Combo combo;
    if (track_) combo[label] = CycScalar(1);
    reduce(d, track_ ? &combo : nullptr);
    if (d.empty()) return false;
    int piv = -1;
    std::size_t best = 0;
    for (const auto& [col, val] : d) {
        std::size_t sz = val.bit_size();
        if (piv < 0 || sz < best || (sz == best && col < piv)) {
            piv = col;
            best = sz;
        }
    }
    CycScalar inv = d[piv].inv();
    Row row;
    row.reserve(d.size());
    for (auto& [col, val] : d) row.emplace_back(col, col == piv ? CycScalar(1) : val * inv);
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    rows_.push_back(std::move(row));
    pivots_.push_back(piv);
    if (track_) {
        for (auto& [lab, val] : combo) val *= inv;
        combos_.push_back(std::move(combo));
    } else {
        combos_.emplace_back();
    }
    return true;
}

bool Echelon::in_span(const TensorVector& v) const {
    bool unknown = false;
    Dense d = to_dense_const(v, unknown);
    if (unknown) return false;
    reduce(d, nullptr);
    return d.empty();
}

std::optional<std::unordered_map<std::size_t, CycScalar>> Echelon::coordinates(const TensorVector& v) const {
    bool unknown = false;
    Dense d = to_dense_const(v, unknown);
    if (unknown) return std::nullopt;
    Combo combo;
    reduce(d, &combo);
    if (!d.empty()) return std::nullopt;
    // v - sum f_i row_i = 0 and combo accumulated -sum f_i combo_i
    std::unordered_map<std::size_t, CycScalar> out;
    for (auto& [lab, val] : combo)
        if (!val.is_zero()) out[lab] = -val;
    return out;
}

std::size_t rank_of(const std::vector<TensorVector>& vectors, int degree, Budget budget) {
    Echelon e(false, budget);
    for (const auto& v : vectors) {
        int d = homogeneous_degree(v);
        if (d >= 0 && d != degree) throw std::invalid_argument("rank_of: vector of wrong degree");
        e.insert(v);
    }
    return e.rank();
}

}  // namespace qp
