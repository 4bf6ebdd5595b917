#include "mantel/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mantel {

Edge Edge::of(std::span<const Vertex> vertices) {
    if (vertices.size() > static_cast<std::size_t>(kMaxUniformity))
        throw InputError("vertex tuple longer than " + std::to_string(kMaxUniformity));
    Edge e;
    e.size_ = static_cast<int>(vertices.size());
    std::copy(vertices.begin(), vertices.end(), e.v_.begin());
    std::sort(e.v_.begin(), e.v_.begin() + e.size_);
    return e;
}

Edge Edge::from_key(std::uint64_t key, int size) {
    Edge e;
    e.size_ = size;
    for (int i = size - 1; i >= 0; --i) {
        e.v_[static_cast<std::size_t>(i)] = static_cast<Vertex>(key & 0xFFFFu);
        key >>= 16;
    }
    return e;
}

std::uint64_t Edge::key() const {
    std::uint64_t key = 0;
    for (int i = 0; i < size_; ++i) key = (key << 16) | v_[static_cast<std::size_t>(i)];
    return key;
}

bool Edge::contains(Vertex x) const {
    for (int i = 0; i < size_; ++i)
        if (v_[static_cast<std::size_t>(i)] == x) return true;
    return false;
}

bool Edge::is_proper() const {
    for (int i = 1; i < size_; ++i)
        if (v_[static_cast<std::size_t>(i)] == v_[static_cast<std::size_t>(i - 1)]) return false;
    return true;
}

bool Edge::disjoint_from(const Edge& other) const { return intersection_size(other) == 0; }

int Edge::intersection_size(const Edge& other) const {
    int i = 0, j = 0, common = 0;
    while (i < size_ && j < other.size_) {
        if (v_[static_cast<std::size_t>(i)] < other.v_[static_cast<std::size_t>(j)]) {
            ++i;
        } else if (other.v_[static_cast<std::size_t>(j)] < v_[static_cast<std::size_t>(i)]) {
            ++j;
        } else {
            ++common;
            ++i;
            ++j;
        }
    }
    return common;
}

Edge Edge::without(Vertex x) const {
    Edge e;
    for (int i = 0; i < size_; ++i)
        if (v_[static_cast<std::size_t>(i)] != x) e.v_[static_cast<std::size_t>(e.size_++)] = v_[static_cast<std::size_t>(i)];
    return e;
}

Edge Edge::with(Vertex x) const {
    if (size_ >= kMaxUniformity) throw InputError("edge capacity exceeded");
    Edge e = *this;
    int pos = e.size_++;
    while (pos > 0 && e.v_[static_cast<std::size_t>(pos - 1)] > x) {
        e.v_[static_cast<std::size_t>(pos)] = e.v_[static_cast<std::size_t>(pos - 1)];
        --pos;
    }
    e.v_[static_cast<std::size_t>(pos)] = x;
    return e;
}

Edge Edge::united(const Edge& other) const {
    Edge e = *this;
    for (Vertex x : other) e = e.with(x);
    return e;
}

bool operator<(const Edge& a, const Edge& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string Edge::to_string() const {
    std::ostringstream os;
    os << '{';
    for (int i = 0; i < size_; ++i) os << (i ? "," : "") << v_[static_cast<std::size_t>(i)];
    os << '}';
    return os.str();
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    if (n <= 65536 && k <= 4) {
        // every intermediate product stays below 2^64
        std::uint64_t acc = 1;
        for (std::uint64_t i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
        return acc;
    }
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > UINT64_MAX) throw std::overflow_error("binomial coefficient exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

double binomial_real(double n, int k) {
    if (k < 0 || n < k) return 0.0;
    double acc = 1.0;
    for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return acc;
}

std::uint64_t colex_rank(std::span<const Vertex> sorted_subset) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < sorted_subset.size(); ++i) r += binomial(sorted_subset[i], i + 1);
    return r;
}

Edge colex_unrank(std::uint64_t rank, int k) {
    std::array<Vertex, kMaxUniformity> out{};
    for (int i = k; i >= 1; --i) {
        // largest c with C(c, i) <= rank
        std::uint64_t lo = static_cast<std::uint64_t>(i - 1), hi = lo + 1;
        while (binomial(hi, static_cast<std::uint64_t>(i)) <= rank) hi *= 2;
        while (hi - lo > 1) {
            std::uint64_t mid = lo + (hi - lo) / 2;
            if (binomial(mid, static_cast<std::uint64_t>(i)) <= rank) lo = mid; else hi = mid;
        }
        out[static_cast<std::size_t>(i - 1)] = static_cast<Vertex>(lo);
        rank -= binomial(lo, static_cast<std::uint64_t>(i));
    }
    return Edge::of(std::span<const Vertex>(out.data(), static_cast<std::size_t>(k)));
}

bool colex_next(std::span<Vertex> subset, std::size_t n) {
    const std::size_t k = subset.size();
    if (k == 0) return false;
    for (std::size_t i = 0; i < k; ++i) {
        const Vertex limit = i + 1 < k ? subset[i + 1] : static_cast<Vertex>(n);
        if (subset[i] + 1 < limit) {
            ++subset[i];
            for (std::size_t j = 0; j < i; ++j) subset[j] = static_cast<Vertex>(j);
            return true;
        }
    }
    return false;
}

}  // namespace mantel
