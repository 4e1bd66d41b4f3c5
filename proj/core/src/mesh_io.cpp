#include "qcdist/mesh_io.hpp"

#include "qcdist/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace qcdist {

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

double parse_double(std::string_view tok, std::size_t line) {
    // strtod accepts forms from_chars rejects in older toolchains ("+1", "1.").
    std::string s(tok);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty()) throw ParseError("invalid number '" + s + "'", line);
    return v;
}

long long parse_int(std::string_view tok, std::size_t line) {
    long long v = 0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    if (!tok.empty() && tok.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last)
        throw ParseError("invalid integer '" + std::string(tok) + "'", line);
    return v;
}

void fan_triangulate(const std::vector<Index>& poly, std::vector<Face>& faces) {
    for (std::size_t k = 1; k + 1 < poly.size(); ++k) faces.push_back({poly[0], poly[k], poly[k + 1]});
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_vertex_line(std::ostream& out, const char* prefix, const Vec3& v) {
    out << prefix << format_double(v.x()) << ' ' << format_double(v.y()) << ' ' << format_double(v.z())
        << '\n';
}

}  // namespace

MeshFormat format_from_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".obj") return MeshFormat::OBJ;
    if (ext == ".off") return MeshFormat::OFF;
    if (ext == ".ply") return MeshFormat::PLY;
    throw IOError("unrecognized mesh extension '" + ext + "' for " + path.string());
}

TriMesh read_obj(std::istream& in) {
    std::vector<Vec3> vertices;
    std::vector<Face> faces;
    std::string raw;
    std::size_t lineNo = 0;
    std::vector<Index> poly;
    while (std::getline(in, raw)) {
        ++lineNo;
        std::string_view line(raw);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto tok = split_ws(line);
        if (tok.empty()) continue;
        if (tok[0] == "v") {
            if (tok.size() < 3 || tok.size() > 5) throw ParseError("vertex record needs 2 to 4 coordinates", lineNo);
            const double x = parse_double(tok[1], lineNo);
            const double y = parse_double(tok[2], lineNo);
            const double z = tok.size() >= 4 ? parse_double(tok[3], lineNo) : 0.0;
            vertices.emplace_back(x, y, z);
        } else if (tok[0] == "f") {
            if (tok.size() < 4) throw ParseError("face record needs at least 3 vertices", lineNo);
            poly.clear();
            for (std::size_t k = 1; k < tok.size(); ++k) {
                const auto slash = tok[k].find('/');
                const long long idx = parse_int(tok[k].substr(0, slash), lineNo);
                const long long n = static_cast<long long>(vertices.size());
                long long zeroBased = idx > 0 ? idx - 1 : n + idx;
                if (idx == 0 || zeroBased < 0 || zeroBased >= n)
                    throw ValidationError("line " + std::to_string(lineNo) + ": face index " +
                                          std::to_string(idx) + " out of range (" + std::to_string(n) +
                                          " vertices)");
                poly.push_back(static_cast<Index>(zeroBased));
            }
            fan_triangulate(poly, faces);
        }
        // vt, vn, g, o, s, usemtl, mtllib, l, ... are ignored.
    }
    if (in.bad()) throw IOError("read failure");
    return TriMesh(std::move(vertices), std::move(faces));
}

TriMesh read_off(std::istream& in) {
    std::string raw;
    std::size_t lineNo = 0;
    std::string current;

    // Tokens of the next non-empty, non-comment line; views stay valid until
    // the following call.
    auto next_tokens = [&]() -> std::vector<std::string_view> {
        while (std::getline(in, raw)) {
            ++lineNo;
            current = raw.substr(0, raw.find('#'));
            auto tok = split_ws(current);
            if (!tok.empty()) return tok;
        }
        throw ParseError("unexpected end of file", lineNo);
    };

    auto tok = next_tokens();
    if (tok[0] != "OFF") throw ParseError("missing OFF header", lineNo);
    tok.erase(tok.begin());
    if (tok.empty()) tok = next_tokens();
    if (tok.size() < 2) throw ParseError("expected vertex and face counts", lineNo);
    const long long nv = parse_int(tok[0], lineNo);
    const long long nf = parse_int(tok[1], lineNo);
    if (nv < 0 || nf < 0) throw ParseError("negative element count", lineNo);

    std::vector<Vec3> vertices;
    vertices.reserve(static_cast<std::size_t>(nv));
    for (long long i = 0; i < nv; ++i) {
        auto v = next_tokens();
        if (v.size() < 3) throw ParseError("vertex line needs 3 coordinates", lineNo);
        vertices.emplace_back(parse_double(v[0], lineNo), parse_double(v[1], lineNo), parse_double(v[2], lineNo));
    }
    std::vector<Face> faces;
    std::vector<Index> poly;
    for (long long i = 0; i < nf; ++i) {
        auto f = next_tokens();
        const long long count = parse_int(f[0], lineNo);
        if (count < 3 || static_cast<long long>(f.size()) < count + 1)
            throw ParseError("face line has too few indices", lineNo);
        poly.clear();
        for (long long k = 1; k <= count; ++k) {
            const long long idx = parse_int(f[k], lineNo);
            if (idx < 0 || idx >= nv)
                throw ValidationError("line " + std::to_string(lineNo) + ": face index " + std::to_string(idx) +
                                      " out of range");
            poly.push_back(static_cast<Index>(idx));
        }
        fan_triangulate(poly, faces);
    }
    return TriMesh(std::move(vertices), std::move(faces));
}

TriMesh load_mesh(const std::filesystem::path& path, MeshFormat format) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot open " + path.string());
    switch (format) {
        case MeshFormat::OBJ: return read_obj(in);
        case MeshFormat::OFF: return read_off(in);
        case MeshFormat::PLY: break;
    }
    throw IOError("PLY input is not supported: " + path.string());
}

TriMesh load_mesh(const std::filesystem::path& path) { return load_mesh(path, format_from_path(path)); }

void write_obj(const TriMesh& mesh, std::ostream& out) {
    for (const auto& v : mesh.vertices()) write_vertex_line(out, "v ", v);
    for (const auto& f : mesh.faces()) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

void write_off(const TriMesh& mesh, std::ostream& out) {
    out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_faces() << " 0\n";
    for (const auto& v : mesh.vertices()) write_vertex_line(out, "", v);
    for (const auto& f : mesh.faces()) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

void write_ply(const TriMesh& mesh, std::ostream& out, std::span<const Rgb> faceColors) {
    const bool colored = !faceColors.empty();
    if (colored && faceColors.size() != mesh.num_faces())
        throw ValidationError("face color count does not match face count");
    out << "ply\nformat ascii 1.0\n"
        << "element vertex " << mesh.num_vertices() << "\n"
        << "property double x\nproperty double y\nproperty double z\n"
        << "element face " << mesh.num_faces() << "\n"
        << "property list uchar int vertex_indices\n";
    if (colored) out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    out << "end_header\n";
    for (const auto& v : mesh.vertices()) write_vertex_line(out, "", v);
    for (std::size_t i = 0; i < mesh.num_faces(); ++i) {
        const Face& f = mesh.face(i);
        out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2];
        if (colored)
            out << ' ' << int(faceColors[i][0]) << ' ' << int(faceColors[i][1]) << ' ' << int(faceColors[i][2]);
        out << '\n';
    }
}

void save_mesh(const TriMesh& mesh, const std::filesystem::path& path, MeshFormat format,
               std::span<const Rgb> faceColors) {
    std::ofstream out(path);
    if (!out) throw IOError("cannot open " + path.string() + " for writing");
    switch (format) {
        case MeshFormat::OBJ: write_obj(mesh, out); break;
        case MeshFormat::OFF: write_off(mesh, out); break;
        case MeshFormat::PLY: write_ply(mesh, out, faceColors); break;
    }
    out.flush();
    if (!out) throw IOError("write failed for " + path.string());
}

}  // namespace qcdist
