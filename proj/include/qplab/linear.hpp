#pragma once

#include "qplab/scalars.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qp {

// Finite linear combination of basis keys; zero coefficients are never stored.
template <class K, class Hash = std::hash<K>>
class LinComb {
public:
    using Map = std::unordered_map<K, CycScalar, Hash>;

    LinComb() = default;
    LinComb(const K& k, const CycScalar& c) { add(k, c); }

    void add(const K& k, const CycScalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = m_.try_emplace(k, c);
        if (fresh) return;
        it->second += c;
        if (it->second.is_zero()) m_.erase(it);
    }
    void add_scaled(const LinComb& o, const CycScalar& c) {
        if (c.is_zero()) return;
        for (const auto& [k, v] : o.m_) add(k, v * c);
    }
    LinComb& operator+=(const LinComb& o) {
        for (const auto& [k, v] : o.m_) add(k, v);
        return *this;
    }
    LinComb& operator-=(const LinComb& o) {
        for (const auto& [k, v] : o.m_) add(k, -v);
        return *this;
    }
    LinComb& operator*=(const CycScalar& c) {
        if (c.is_zero()) {
            m_.clear();
            return *this;
        }
        for (auto& [k, v] : m_) v *= c;
        return *this;
    }
    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    friend LinComb operator*(LinComb a, const CycScalar& c) { return a *= c; }
    friend bool operator==(const LinComb& a, const LinComb& b) { return a.m_ == b.m_; }
    friend bool operator!=(const LinComb& a, const LinComb& b) { return !(a == b); }

    bool is_zero() const { return m_.empty(); }
    std::size_t size() const { return m_.size(); }
    CycScalar get(const K& k) const {
        auto it = m_.find(k);
        return it == m_.end() ? CycScalar() : it->second;
    }
    const Map& terms() const { return m_; }
    auto begin() const { return m_.begin(); }
    auto end() const { return m_.end(); }

    template <class Less>
    std::vector<std::pair<K, CycScalar>> sorted(Less less) const {
        std::vector<std::pair<K, CycScalar>> v(m_.begin(), m_.end());
        std::sort(v.begin(), v.end(), [&](const auto& x, const auto& y) { return less(x.first, y.first); });
        return v;
    }

private:
    Map m_;
};

}  // namespace qp
