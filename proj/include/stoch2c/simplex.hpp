#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>

namespace stoch2c {

using VertexId = std::int32_t;

// A simplex of dimension 0, 1 or 2 over non-negative integer vertex ids,
// stored with strictly increasing vertices.  Value type, totally ordered by
// (dim, vertices) so per-dimension containers iterate in canonical order.
class Simplex {
public:
    Simplex(std::initializer_list<VertexId> vs) : Simplex(std::span<const VertexId>(vs.begin(), vs.size())) {}

    explicit Simplex(std::span<const VertexId> vs) {
        if (vs.empty() || vs.size() > 3)
            throw std::invalid_argument("Simplex: needs 1-3 vertices");
        dim_ = static_cast<int>(vs.size()) - 1;
        VertexId prev = -1;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (vs[i] < 0)
                throw std::invalid_argument("Simplex: negative vertex id");
            if (vs[i] <= prev)
                throw std::invalid_argument("Simplex: vertex ids must be strictly increasing");
            prev = vs[i];
            v_[i] = vs[i];
        }
        for (std::size_t i = vs.size(); i < 3; ++i) v_[i] = -1;
    }

    static Simplex vertex(VertexId a) { return Simplex{a}; }
    static Simplex edge(VertexId a, VertexId b) { return Simplex{a, b}; }
    static Simplex triangle(VertexId a, VertexId b, VertexId c) { return Simplex{a, b, c}; }

    int dim() const { return dim_; }
    VertexId operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
    std::span<const VertexId> vertices() const { return {v_.data(), static_cast<std::size_t>(dim_ + 1)}; }

    bool contains_vertex(VertexId v) const {
        for (int i = 0; i <= dim_; ++i)
            if (v_[static_cast<std::size_t>(i)] == v) return true;
        return false;
    }

    // Codimension-1 faces (boundary); a vertex has none.
    template <typename Out>
    void boundary(Out&& emit) const {
        if (dim_ == 1) {
            emit(Simplex{v_[0]});
            emit(Simplex{v_[1]});
        } else if (dim_ == 2) {
            emit(Simplex{v_[0], v_[1]});
            emit(Simplex{v_[0], v_[2]});
            emit(Simplex{v_[1], v_[2]});
        }
    }

    // All proper faces, down to vertices.
    template <typename Out>
    void proper_faces(Out&& emit) const {
        if (dim_ >= 1) {
            for (int i = 0; i <= dim_; ++i) emit(Simplex{v_[static_cast<std::size_t>(i)]});
        }
        if (dim_ == 2) {
            emit(Simplex{v_[0], v_[1]});
            emit(Simplex{v_[0], v_[2]});
            emit(Simplex{v_[1], v_[2]});
        }
    }

    std::string to_string() const {
        std::string s;
        for (int i = 0; i <= dim_; ++i) {
            if (i) s += '-';
            s += std::to_string(v_[static_cast<std::size_t>(i)]);
        }
        return s;
    }

    friend auto operator<=>(const Simplex&, const Simplex&) = default;

private:
    int dim_ = 0;
    std::array<VertexId, 3> v_{-1, -1, -1};
};

} // namespace stoch2c
