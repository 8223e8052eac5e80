#include "stoch2c/complex.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace stoch2c {

SimplicialComplex2 SimplicialComplex2::from_maximal_simplices(std::span<const Simplex> maximal) {
    {
        std::vector<Simplex> copy(maximal.begin(), maximal.end());
        std::sort(copy.begin(), copy.end());
        if (std::adjacent_find(copy.begin(), copy.end()) != copy.end())
            throw std::invalid_argument("from_maximal_simplices: duplicate simplex in input");
    }
    std::array<std::vector<Simplex>, 3> cells;
    for (const Simplex& s : maximal) {
        cells[static_cast<std::size_t>(s.dim())].push_back(s);
        s.proper_faces([&](const Simplex& f) { cells[static_cast<std::size_t>(f.dim())].push_back(f); });
    }
    for (auto& v : cells) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    SimplicialComplex2 c;
    c.cells_ = std::move(cells);
    return c;
}

SimplicialComplex2 SimplicialComplex2::from_closed_unchecked(std::array<std::vector<Simplex>, 3> cells) {
    SimplicialComplex2 c;
    c.cells_ = std::move(cells);
    return c;
}

bool SimplicialComplex2::contains(const Simplex& s) const {
    const auto& v = cells_[static_cast<std::size_t>(s.dim())];
    return std::binary_search(v.begin(), v.end(), s);
}

FVector SimplicialComplex2::f_vector() const {
    return FVector{static_cast<std::int64_t>(cells_[0].size()),
                   static_cast<std::int64_t>(cells_[1].size()),
                   static_cast<std::int64_t>(cells_[2].size())};
}

std::int64_t SimplicialComplex2::euler_characteristic() const {
    const FVector f = f_vector();
    return f.f0 - f.f1 + f.f2;
}

std::optional<Ratio> SimplicialComplex2::mu(int i) const {
    if (i != 1 && i != 2) throw std::invalid_argument("mu: i must be 1 or 2");
    const FVector f = f_vector();
    if (f[i] == 0) return std::nullopt;
    return make_ratio(f.f0, f[i]);
}

VertexId SimplicialComplex2::max_vertex_id() const {
    // Downward closure: every vertex id used anywhere appears in dimension 0.
    if (cells_[0].empty()) return -1;
    return cells_[0].back()[0];
}

std::vector<Simplex> SimplicialComplex2::external_set(VertexId n) const {
    if (n < 1) throw std::invalid_argument("external_set: n must be >= 1");
    if (max_vertex_id() >= n) throw std::invalid_argument("external_set: vertex id >= n");

    std::vector<Simplex> out;
    // Vertices have empty boundary, so every missing vertex of [n] qualifies.
    {
        std::size_t at = 0;
        const auto& verts = cells_[0];
        for (VertexId v = 0; v < n; ++v) {
            if (at < verts.size() && verts[at][0] == v) {
                ++at;
            } else {
                out.push_back(Simplex::vertex(v));
            }
        }
    }
    // Only pairs/triples of *present* vertices can have their boundary present.
    std::vector<VertexId> vs;
    vs.reserve(cells_[0].size());
    for (const Simplex& s : cells_[0]) vs.push_back(s[0]);

    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            Simplex e = Simplex::edge(vs[i], vs[j]);
            if (!contains(e)) out.push_back(e);
        }
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            if (!contains(Simplex::edge(vs[i], vs[j]))) continue;
            for (std::size_t l = j + 1; l < vs.size(); ++l) {
                if (!contains(Simplex::edge(vs[i], vs[l]))) continue;
                if (!contains(Simplex::edge(vs[j], vs[l]))) continue;
                Simplex t = Simplex::triangle(vs[i], vs[j], vs[l]);
                if (!contains(t)) out.push_back(t);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

SimplicialComplex2 SimplicialComplex2::pure_2_closure() const {
    std::array<std::vector<Simplex>, 3> cells;
    cells[2] = cells_[2];
    for (const Simplex& t : cells_[2])
        t.proper_faces([&](const Simplex& f) { cells[static_cast<std::size_t>(f.dim())].push_back(f); });
    for (int d : {0, 1}) {
        auto& v = cells[static_cast<std::size_t>(d)];
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return from_closed_unchecked(std::move(cells));
}

SimplicialComplex2 SimplicialComplex2::skeleton_1_no_isolated() const {
    std::array<std::vector<Simplex>, 3> cells;
    cells[1] = cells_[1];
    for (const Simplex& e : cells_[1]) {
        cells[0].push_back(Simplex::vertex(e[0]));
        cells[0].push_back(Simplex::vertex(e[1]));
    }
    std::sort(cells[0].begin(), cells[0].end());
    cells[0].erase(std::unique(cells[0].begin(), cells[0].end()), cells[0].end());
    return from_closed_unchecked(std::move(cells));
}

SimplicialComplex2::SurfaceReport SimplicialComplex2::surface_report() const {
    SurfaceReport r;
    r.nonempty = !empty();
    if (!r.nonempty) return r;

    std::map<Simplex, std::vector<const Simplex*>> edge_tris;
    for (const Simplex& e : cells_[1]) edge_tris[e] = {};
    std::map<VertexId, std::vector<const Simplex*>> vert_tris;
    for (const Simplex& v : cells_[0]) vert_tris[v[0]] = {};
    for (const Simplex& t : cells_[2]) {
        t.boundary([&](const Simplex& e) { edge_tris[e].push_back(&t); });
        for (VertexId v : t.vertices()) vert_tris[v].push_back(&t);
    }

    r.pure_2 = true;
    for (auto& [v, ts] : vert_tris)
        if (ts.empty()) r.pure_2 = false;
    for (auto& [e, ts] : edge_tris)
        if (ts.empty()) r.pure_2 = false;

    r.edges_in_two_triangles = true;
    for (auto& [e, ts] : edge_tris)
        if (ts.size() != 2) r.edges_in_two_triangles = false;

    // Link of v: one graph node per neighboring vertex, one link edge per
    // triangle at v.  Single cycle <=> every node has degree 2, #edges equals
    // #nodes, and the link is connected.
    r.vertex_links_single_cycle = true;
    for (auto& [v, ts] : vert_tris) {
        if (ts.empty()) {
            r.vertex_links_single_cycle = false;
            continue;
        }
        std::map<VertexId, std::vector<VertexId>> link;
        for (const Simplex* t : ts) {
            VertexId o[2];
            int c = 0;
            for (VertexId w : t->vertices())
                if (w != v) o[c++] = w;
            link[o[0]].push_back(o[1]);
            link[o[1]].push_back(o[0]);
        }
        bool ok = true;
        for (auto& [w, nb] : link)
            if (nb.size() != 2) ok = false;
        if (ok) {
            // connectivity of the link
            std::set<VertexId> seen;
            std::queue<VertexId> q;
            q.push(link.begin()->first);
            seen.insert(link.begin()->first);
            while (!q.empty()) {
                VertexId w = q.front();
                q.pop();
                for (VertexId x : link[w])
                    if (seen.insert(x).second) q.push(x);
            }
            ok = seen.size() == link.size();
        }
        if (!ok) r.vertex_links_single_cycle = false;
    }

    // Connectivity through edges (adequate once purity holds).
    {
        std::map<VertexId, std::vector<VertexId>> adj;
        for (const Simplex& v : cells_[0]) adj[v[0]] = {};
        for (const Simplex& e : cells_[1]) {
            adj[e[0]].push_back(e[1]);
            adj[e[1]].push_back(e[0]);
        }
        std::set<VertexId> seen;
        std::queue<VertexId> q;
        q.push(adj.begin()->first);
        seen.insert(adj.begin()->first);
        while (!q.empty()) {
            VertexId w = q.front();
            q.pop();
            for (VertexId x : adj[w])
                if (seen.insert(x).second) q.push(x);
        }
        r.connected = seen.size() == adj.size();
    }
    return r;
}

} // namespace stoch2c
