#include "stoch2c/s2c_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace stoch2c {

namespace {

// Maximal = not a proper face of any stored simplex.
std::vector<Simplex> maximal_simplices(const SimplicialComplex2& c) {
    std::vector<Simplex> out;
    for (const Simplex& t : c.simplices(2)) out.push_back(t);
    for (const Simplex& e : c.simplices(1)) {
        bool covered = false;
        for (const Simplex& t : c.simplices(2))
            if (t.contains_vertex(e[0]) && t.contains_vertex(e[1])) {
                covered = true;
                break;
            }
        if (!covered) out.push_back(e);
    }
    for (const Simplex& v : c.simplices(0)) {
        bool covered = false;
        for (const Simplex& e : c.simplices(1))
            if (e.contains_vertex(v[0])) {
                covered = true;
                break;
            }
        for (const Simplex& t : c.simplices(2))
            if (!covered && t.contains_vertex(v[0])) covered = true;
        if (!covered) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

SimplicialComplex2 parse_s2c(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    std::vector<Simplex> listed;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        if (!header_seen) {
            std::string tag;
            int version = 0;
            if (!(ls >> tag)) continue;  // blank/comment before header
            if (!(tag == "s2c" && (ls >> version) && version == 1))
                throw S2cParseError("s2c: bad header at line " + std::to_string(lineno));
            header_seen = true;
            continue;
        }
        int dim;
        if (!(ls >> dim)) continue;
        if (dim < 0 || dim > 2)
            throw S2cParseError("s2c: bad dimension at line " + std::to_string(lineno));
        VertexId v[3];
        for (int i = 0; i <= dim; ++i)
            if (!(ls >> v[i]))
                throw S2cParseError("s2c: expected " + std::to_string(dim + 1) +
                                    " vertex ids at line " + std::to_string(lineno));
        std::string extra;
        if (ls >> extra)
            throw S2cParseError("s2c: trailing tokens at line " + std::to_string(lineno));
        try {
            listed.push_back(Simplex(std::span<const VertexId>(v, static_cast<std::size_t>(dim + 1))));
        } catch (const std::invalid_argument& e) {
            throw S2cParseError(std::string("s2c: ") + e.what() + " at line " + std::to_string(lineno));
        }
    }
    if (!header_seen) throw S2cParseError("s2c: missing header");
    try {
        return SimplicialComplex2::from_maximal_simplices(listed);
    } catch (const std::invalid_argument& e) {
        throw S2cParseError(std::string("s2c: ") + e.what());
    }
}

SimplicialComplex2 parse_s2c_string(const std::string& text) {
    std::istringstream in(text);
    return parse_s2c(in);
}

SimplicialComplex2 load_s2c_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw S2cParseError("s2c: cannot open " + path);
    return parse_s2c(in);
}

std::string serialize_s2c(const SimplicialComplex2& c) {
    std::ostringstream out;
    out << "s2c 1\n";
    for (const Simplex& s : maximal_simplices(c)) {
        out << s.dim();
        for (VertexId v : s.vertices()) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

void save_s2c_file(const SimplicialComplex2& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw S2cParseError("s2c: cannot write " + path);
    out << serialize_s2c(c);
}

std::string inline_form(const SimplicialComplex2& c) {
    auto max = maximal_simplices(c);
    if (max.empty()) return "empty";
    std::string s;
    for (std::size_t i = 0; i < max.size(); ++i) {
        if (i) s += ' ';
        s += max[i].to_string();
    }
    return s;
}

} // namespace stoch2c
