#pragma once

// Triangle meshes of surfaces in H^2 x R, in half-plane model coordinates
// (x, y, t). OBJ/CSV exports write these model coordinates verbatim; they
// are chart coordinates, not an isometric embedding.

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "h2r/errors.hpp"
#include "h2r/geometry.hpp"

namespace h2r {

struct SurfaceMesh {
    std::vector<AmbientPoint> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::string family;  // provenance descriptor
    int res_u = 0, res_v = 0;
};

// Ambient (geodesic-side-length) triangle area by Heron's formula; used
// only to drop degenerate triangles.
inline double ambient_triangle_area(const AmbientPoint& a, const AmbientPoint& b,
                                    const AmbientPoint& c) {
    const double la = dist_ambient(b, c), lb = dist_ambient(a, c), lc = dist_ambient(a, b);
    const double s = 0.5 * (la + lb + lc);
    const double r = s * (s - la) * (s - lb) * (s - lc);
    return r > 0 ? std::sqrt(r) : 0.0;
}

// Tensor-grid mesh from a parametric patch. Degenerate triangles (ambient
// area <= 1e-14) are dropped.
inline SurfaceMesh mesh_from_patch(const std::function<AmbientPoint(double, double)>& patch,
                                   double u0, double u1, double v0, double v1, int nu, int nv,
                                   std::string family) {
    if (nu < 8 || nv < 8) throw ResolutionTooLow("mesh resolution must be at least 8x8");
    SurfaceMesh m;
    m.family = std::move(family);
    m.res_u = nu;
    m.res_v = nv;
    m.vertices.reserve(size_t(nu + 1) * (nv + 1));
    for (int i = 0; i <= nu; ++i) {
        const double u = u0 + (u1 - u0) * i / nu;
        for (int j = 0; j <= nv; ++j) {
            const double v = v0 + (v1 - v0) * j / nv;
            m.vertices.push_back(patch(u, v));
        }
    }
    auto id = [&](int i, int j) { return i * (nv + 1) + j; };
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) {
            const int q[4] = {id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)};
            const std::array<int, 3> t1{q[0], q[1], q[2]}, t2{q[0], q[2], q[3]};
            for (const auto& t : {t1, t2})
                if (ambient_triangle_area(m.vertices[t[0]], m.vertices[t[1]],
                                          m.vertices[t[2]]) > 1e-14)
                    m.triangles.push_back(t);
        }
    return m;
}

inline void write_obj(const SurfaceMesh& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open for writing: " + path);
    out << "# " << m.family << " (" << m.res_u << "x" << m.res_v << ")\n";
    out << "# half-plane model coordinates x y t\n";
    char buf[96];
    for (const auto& v : m.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.base.x, v.base.y, v.t);
        out << buf;
    }
    for (const auto& t : m.triangles)
        out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

inline SurfaceMesh read_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open mesh file: " + path);
    SurfaceMesh m;
    m.family = path;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "v") {
            double x, y, t;
            ss >> x >> y >> t;
            if (!ss) throw ValidationError("malformed OBJ vertex line: " + line);
            m.vertices.push_back(AmbientPoint(x, y, t));
        } else if (tag == "f") {
            std::array<int, 3> f{};
            for (int k = 0; k < 3; ++k) {
                std::string tok;
                ss >> tok;
                f[k] = std::stoi(tok) - 1;  // ignore /vt/vn suffixes
            }
            if (!ss && !in.eof()) throw ValidationError("malformed OBJ face line: " + line);
            m.triangles.push_back(f);
        }
    }
    for (const auto& t : m.triangles)
        for (int k : t)
            if (k < 0 || k >= (int)m.vertices.size())
                throw ValidationError("OBJ face index out of range");
    return m;
}

// CSV pair: vertices (x,y,t) and triangle indices.
inline void write_mesh_csv(const SurfaceMesh& m, const std::string& vertex_path,
                           const std::string& triangle_path) {
    std::ofstream v(vertex_path);
    if (!v) throw ValidationError("cannot open for writing: " + vertex_path);
    v << "x,y,t\n";
    char buf[96];
    for (const auto& p : m.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.base.x, p.base.y, p.t);
        v << buf;
    }
    std::ofstream f(triangle_path);
    if (!f) throw ValidationError("cannot open for writing: " + triangle_path);
    f << "i,j,k\n";
    for (const auto& t : m.triangles) f << t[0] << ',' << t[1] << ',' << t[2] << '\n';
}

} // namespace h2r
