#pragma once

#include "qcdist/mesh.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>

namespace qcdist {

enum class MeshFormat { OBJ, OFF, PLY };

using Rgb = std::array<std::uint8_t, 3>;

/// Format from the file extension (case-insensitive). Throws IOError if unknown.
MeshFormat format_from_path(const std::filesystem::path& path);

/// Reads OBJ ("v x y z", "f i j k ..." with 1-based or negative indices;
/// "i/t/n" slashes ignored; other records skipped) or OFF. Polygons are
/// fan-triangulated: (v0, v1, v2), (v0, v2, v3), ...
/// Throws ParseError with the offending line number, ValidationError, IOError.
TriMesh read_obj(std::istream& in);
TriMesh read_off(std::istream& in);

TriMesh load_mesh(const std::filesystem::path& path, MeshFormat format);
TriMesh load_mesh(const std::filesystem::path& path);

/// Text output with 17 significant digits. Dimension-2 meshes write z = 0.
void write_obj(const TriMesh& mesh, std::ostream& out);
void write_off(const TriMesh& mesh, std::ostream& out);
/// ASCII PLY; `faceColors` is either empty or one color per face.
void write_ply(const TriMesh& mesh, std::ostream& out, std::span<const Rgb> faceColors = {});

/// Throws IOError when the file cannot be written.
void save_mesh(const TriMesh& mesh, const std::filesystem::path& path, MeshFormat format,
               std::span<const Rgb> faceColors = {});

}  // namespace qcdist
