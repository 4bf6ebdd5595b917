#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace mantel {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/// Largest supported uniformity. Edges pack into a 64-bit key, 16 bits per vertex.
inline constexpr int kMaxUniformity = 4;
inline constexpr std::size_t kMaxVertices = std::size_t{1} << 16;

/// Raised for malformed input: bad edges, out-of-range vertices, arity mismatches.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what,
                        std::optional<std::size_t> item = std::nullopt)
        : std::invalid_argument(what), item_(item) {}

    /// Index of the offending item (edge, line, set element) when one is known.
    std::optional<std::size_t> item() const { return item_; }

private:
    std::optional<std::size_t> item_;
};

/// A small sorted vertex set of at most kMaxUniformity elements.
///
/// Used both for hyperedges and for the cores, remainders and tuples that
/// appear around them (link triples, co-neighborhood pairs, ...).
class Edge {
public:
    Edge() = default;

    /// Sorts the given vertices; duplicates are the caller's problem (see is_proper()).
    static Edge of(std::span<const Vertex> vertices);
    static Edge of(std::initializer_list<Vertex> vertices) {
        return of(std::span<const Vertex>(vertices.begin(), vertices.size()));
    }
    static Edge from_key(std::uint64_t key, int size);

    std::uint64_t key() const;
    int size() const { return size_; }
    bool empty() const { return size_ == 0; }
    Vertex operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
    const Vertex* begin() const { return v_.data(); }
    const Vertex* end() const { return v_.data() + size_; }
    Vertex front() const { return v_[0]; }
    Vertex back() const { return v_[static_cast<std::size_t>(size_ - 1)]; }

    bool contains(Vertex x) const;
    /// True when all vertices are distinct.
    bool is_proper() const;
    bool disjoint_from(const Edge& other) const;
    int intersection_size(const Edge& other) const;

    Edge without(Vertex x) const;
    Edge with(Vertex x) const;
    Edge united(const Edge& other) const;

    friend bool operator==(const Edge& a, const Edge& b) {
        if (a.size_ != b.size_) return false;
        for (int i = 0; i < a.size_; ++i)
            if (a.v_[static_cast<std::size_t>(i)] != b.v_[static_cast<std::size_t>(i)]) return false;
        return true;
    }
    friend bool operator<(const Edge& a, const Edge& b);

    std::string to_string() const;

private:
    std::array<Vertex, kMaxUniformity> v_{};
    int size_ = 0;
};

}  // namespace mantel
