#pragma once

#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "graspgeom/errors.hpp"
#include "graspgeom/mesh.hpp"

namespace graspgeom {

namespace detail {

// Closed meshes are reoriented so the signed volume is positive; open meshes
// keep their winding.
inline TriangleMesh finalize_mesh(std::vector<Vec3> verts, std::vector<Triangle> faces,
                                  std::vector<Vec3> vnormals) {
    TriangleMesh mesh(std::move(verts), std::move(faces), std::move(vnormals));
    if (mesh.signed_volume() < -1e-12) return mesh.flipped();
    return mesh;
}

}  // namespace detail

// ASCII OBJ: v / vn / f records, polygon faces fan-triangulated. Vertex
// normals are kept only when every vertex receives one.
inline TriangleMesh load_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open mesh file: " + path);
    std::vector<Vec3> verts;
    std::vector<Vec3> normals_pool;
    std::vector<int> vertex_normal_idx;
    std::vector<Triangle> faces;
    std::string line;
    while (std::getline(in, line)) {
        if (line.size() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            Vec3 p;
            if (!(ls >> p.x >> p.y >> p.z)) throw IoError("malformed OBJ vertex in " + path);
            verts.push_back(p);
            vertex_normal_idx.push_back(-1);
        } else if (tag == "vn") {
            Vec3 n;
            if (!(ls >> n.x >> n.y >> n.z)) throw IoError("malformed OBJ normal in " + path);
            normals_pool.push_back(n);
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string tok;
            while (ls >> tok) {
                // v, v/vt, v//vn, v/vt/vn; the normal index sits after the
                // last slash whenever there are two of them.
                const std::size_t first = tok.find('/');
                const std::size_t last = tok.rfind('/');
                const int vi = std::stoi(tok.substr(0, first));
                int vni = -1;
                if (first != std::string::npos && last != first && last + 1 < tok.size())
                    vni = std::stoi(tok.substr(last + 1));
                const int v0 = vi > 0 ? vi - 1 : static_cast<int>(verts.size()) + vi;
                if (v0 < 0 || v0 >= static_cast<int>(verts.size()))
                    throw IoError("OBJ face index out of range in " + path);
                if (vni > 0 && vni <= static_cast<int>(normals_pool.size()))
                    vertex_normal_idx[v0] = vni - 1;
                idx.push_back(v0);
            }
            if (idx.size() < 3) throw IoError("OBJ face with fewer than 3 vertices in " + path);
            for (std::size_t k = 1; k + 1 < idx.size(); ++k)
                faces.push_back({idx[0], idx[k], idx[k + 1]});
        }
    }
    std::vector<Vec3> vnormals;
    if (!normals_pool.empty()) {
        bool complete = !verts.empty();
        for (std::size_t i = 0; i < verts.size() && complete; ++i)
            complete = vertex_normal_idx[i] >= 0;
        if (complete) {
            vnormals.reserve(verts.size());
            for (std::size_t i = 0; i < verts.size(); ++i) {
                const Vec3& n = normals_pool[vertex_normal_idx[i]];
                const double len = norm(n);
                vnormals.push_back(len > 1e-12 ? n / len : Vec3{0, 0, 1});
            }
        }
    }
    return detail::finalize_mesh(std::move(verts), std::move(faces), std::move(vnormals));
}

inline void save_obj(const std::string& path, const TriangleMesh& mesh) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write mesh file: " + path);
    out.precision(17);
    for (const Vec3& v : mesh.vertices()) out << "v " << v.x << ' ' << v.y << ' ' << v.z << '\n';
    if (mesh.has_vertex_normals())
        for (const Vec3& n : mesh.vertex_normals())
            out << "vn " << n.x << ' ' << n.y << ' ' << n.z << '\n';
    for (const Triangle& f : mesh.faces()) {
        if (mesh.has_vertex_normals())
            out << "f " << f.a + 1 << "//" << f.a + 1 << ' ' << f.b + 1 << "//" << f.b + 1 << ' '
                << f.c + 1 << "//" << f.c + 1 << '\n';
        else
            out << "f " << f.a + 1 << ' ' << f.b + 1 << ' ' << f.c + 1 << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

// PLY, ascii or binary_little_endian: vertex x/y/z (+ optional nx/ny/nz) and
// face vertex index lists.
inline TriangleMesh load_ply(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open mesh file: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("ply", 0) != 0) throw IoError("not a PLY file: " + path);

    enum class Fmt { Ascii, Binary } fmt = Fmt::Ascii;
    struct Prop {
        std::string type;
        std::string name;
        bool is_list = false;
        std::string count_type;
    };
    struct Elem {
        std::string name;
        std::size_t count = 0;
        std::vector<Prop> props;
    };
    std::vector<Elem> elems;

    while (std::getline(in, line)) {
        if (line.size() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "comment") continue;
        if (tag == "format") {
            std::string f;
            ls >> f;
            if (f == "ascii")
                fmt = Fmt::Ascii;
            else if (f == "binary_little_endian")
                fmt = Fmt::Binary;
            else
                throw IoError("unsupported PLY format '" + f + "' in " + path);
        } else if (tag == "element") {
            Elem e;
            ls >> e.name >> e.count;
            elems.push_back(e);
        } else if (tag == "property") {
            if (elems.empty()) throw IoError("PLY property before element in " + path);
            Prop p;
            std::string first;
            ls >> first;
            if (first == "list") {
                p.is_list = true;
                ls >> p.count_type >> p.type >> p.name;
            } else {
                p.type = first;
                ls >> p.name;
            }
            elems.back().props.push_back(p);
        } else if (tag == "end_header") {
            break;
        }
    }

    auto scalar_size = [&](const std::string& t) -> std::size_t {
        if (t == "char" || t == "uchar" || t == "int8" || t == "uint8") return 1;
        if (t == "short" || t == "ushort" || t == "int16" || t == "uint16") return 2;
        if (t == "int" || t == "uint" || t == "int32" || t == "uint32" || t == "float" ||
            t == "float32")
            return 4;
        if (t == "double" || t == "float64") return 8;
        throw IoError("unsupported PLY type '" + t + "' in " + path);
    };
    auto read_binary_scalar = [&](const std::string& t) -> double {
        unsigned char buf[8];
        in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(scalar_size(t)));
        if (!in) throw IoError("truncated PLY data in " + path);
        if (t == "char" || t == "int8") return static_cast<signed char>(buf[0]);
        if (t == "uchar" || t == "uint8") return buf[0];
        if (t == "short" || t == "int16") {
            std::int16_t x;
            std::memcpy(&x, buf, 2);
            return x;
        }
        if (t == "ushort" || t == "uint16") {
            std::uint16_t x;
            std::memcpy(&x, buf, 2);
            return x;
        }
        if (t == "int" || t == "int32") {
            std::int32_t x;
            std::memcpy(&x, buf, 4);
            return x;
        }
        if (t == "uint" || t == "uint32") {
            std::uint32_t x;
            std::memcpy(&x, buf, 4);
            return x;
        }
        if (t == "float" || t == "float32") {
            float x;
            std::memcpy(&x, buf, 4);
            return x;
        }
        double x;
        std::memcpy(&x, buf, 8);
        return x;
    };

    std::vector<Vec3> verts;
    std::vector<Vec3> vnormals;
    std::vector<Triangle> faces;
    bool has_normals = false;

    for (const Elem& e : elems) {
        for (std::size_t i = 0; i < e.count; ++i) {
            std::istringstream ascii_line;
            if (fmt == Fmt::Ascii) {
                if (!std::getline(in, line)) throw IoError("truncated PLY data in " + path);
                ascii_line.str(line);
            }
            auto next_scalar = [&](const std::string& t) -> double {
                if (fmt == Fmt::Binary) return read_binary_scalar(t);
                double x;
                if (!(ascii_line >> x)) throw IoError("malformed PLY row in " + path);
                return x;
            };
            if (e.name == "vertex") {
                double x = 0, y = 0, z = 0, nx = 0, ny = 0, nz = 0;
                for (const Prop& p : e.props) {
                    const double val = next_scalar(p.type);
                    if (p.name == "x") x = val;
                    else if (p.name == "y") y = val;
                    else if (p.name == "z") z = val;
                    else if (p.name == "nx") { nx = val; has_normals = true; }
                    else if (p.name == "ny") ny = val;
                    else if (p.name == "nz") nz = val;
                }
                verts.push_back({x, y, z});
                if (has_normals) {
                    const Vec3 n{nx, ny, nz};
                    const double len = norm(n);
                    vnormals.push_back(len > 1e-12 ? n / len : Vec3{0, 0, 1});
                }
            } else if (e.name == "face") {
                for (const Prop& p : e.props) {
                    if (!p.is_list) {
                        next_scalar(p.type);
                        continue;
                    }
                    const int n = static_cast<int>(next_scalar(p.count_type));
                    std::vector<int> idx(n);
                    for (int k = 0; k < n; ++k) idx[k] = static_cast<int>(next_scalar(p.type));
                    for (int k = 1; k + 1 < n; ++k) faces.push_back({idx[0], idx[k], idx[k + 1]});
                }
            } else {
                for (const Prop& p : e.props) {
                    if (p.is_list) {
                        const int n = static_cast<int>(next_scalar(p.count_type));
                        for (int k = 0; k < n; ++k) next_scalar(p.type);
                    } else {
                        next_scalar(p.type);
                    }
                }
            }
        }
    }
    if (has_normals && vnormals.size() != verts.size()) vnormals.clear();
    return detail::finalize_mesh(std::move(verts), std::move(faces), std::move(vnormals));
}

// Dispatch on extension (.obj / .ply, case-insensitive).
inline TriangleMesh load_mesh(const std::string& path) {
    auto ends_with = [&](const char* suffix) {
        std::string lower = path;
        for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        const std::string s(suffix);
        return lower.size() >= s.size() && lower.compare(lower.size() - s.size(), s.size(), s) == 0;
    };
    if (ends_with(".obj")) return load_obj(path);
    if (ends_with(".ply")) return load_ply(path);
    throw IoError("unsupported mesh format (want .obj or .ply): " + path);
}

}  // namespace graspgeom
