#pragma once

#include "qcdist/mesh.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace qcdist {

using Complex = std::complex<double>;
using Triangle2 = std::array<Vec2, 3>;

/// Local linear model of a map on one triangle:
/// (x, y) ↦ (a x + b y + p, c x + d y + q).
struct AffineMap2D {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
    double p = 0.0, q = 0.0;

    double det() const noexcept { return a * d - b * c; }
    /// Sign of the Jacobian determinant: +1, -1, or 0.
    int orientation_sign() const noexcept { return (det() > 0.0) - (det() < 0.0); }
    Vec2 apply(const Vec2& x) const noexcept { return {a * x.x() + b * x.y() + p, c * x.x() + d * x.y() + q}; }
    /// this ∘ inner
    AffineMap2D compose(const AffineMap2D& inner) const noexcept;
};

struct Wirtinger {
    Complex fz;
    Complex fzbar;
};

/// Isometric planar copy of a 3D triangle: q0 at the origin, q1 on the positive
/// x axis, q2 in the open upper half-plane. Throws DegenerateFace.
Triangle2 flatten_triangle(const Vec3& p0, const Vec3& p1, const Vec3& p2);

/// The unique affine map taking src[k] to dst[k]. Throws DegenerateFace when
/// the source triangle is degenerate relative to its own size.
AffineMap2D affine_coefficients(const Triangle2& src, const Triangle2& dst);

/// f_z = ((a+d) + i(c−b))/2, f_zbar = ((a−d) + i(c+b))/2.
Wirtinger wirtinger(const AffineMap2D& m) noexcept;

/// μ = f_zbar / f_z. Throws VanishingFz if |f_z| ≤ 1e−14 (|f_z| + |f_zbar|).
Complex mu_from_affine(const AffineMap2D& m);

/// K = (1 + |μ|)/(1 − |μ|). Throws DomainError unless 0 ≤ absMu < 1.
double dilatation(double absMu);

/// ε_μ = 2 arcsin(|μ|), the largest possible angle change under a linear map
/// with that coefficient. Throws DomainError unless 0 ≤ absMu < 1.
double epsilon_mu(double absMu);

/// Beltrami coefficient of g∘f from μ_f, μ_g evaluated at f, and
/// τ = conj(f_z)/f_z. Throws DomainError when |μ_f| ≥ 1, |μ_g∘f| ≥ 1, or
/// |τ| deviates from 1 by more than 1e−9.
Complex compose_mu(Complex muF, Complex muGofF, Complex tau);

/// A piecewise-linear map f: source → target given as a vertex
/// correspondence between two meshes with identical faces.
class MeshMap {
public:
    /// Throws ValidationError("connectivity mismatch ...") if vertex counts
    /// or face lists differ.
    MeshMap(TriMesh source, TriMesh target);

    const TriMesh& source() const noexcept { return source_; }
    const TriMesh& target() const noexcept { return target_; }
    std::size_t num_faces() const noexcept { return source_.num_faces(); }

    /// Planar representatives of face f on both sides. Dimension-2 meshes
    /// use their own (x, y) coordinates so orientation flips stay visible;
    /// dimension-3 triangles go through flatten_triangle, whose orientation
    /// is defined by the face's vertex order.
    std::array<Triangle2, 2> planar_pair(std::size_t f) const;

private:
    TriMesh source_;
    TriMesh target_;
};

/// Per-face Beltrami data. Folded faces (Jacobian determinant ≤ 0, or
/// |μ| ≥ 1) carry NaN in mu, K and epsMu; absMu holds |f_zbar|/|f_z| there
/// (possibly infinite).
struct BeltramiField {
    std::vector<Complex> mu;
    std::vector<double> absMu;
    std::vector<double> K;
    std::vector<double> epsMu;
    std::vector<std::uint8_t> folded;

    std::size_t size() const noexcept { return mu.size(); }
    bool is_folded(std::size_t f) const { return folded[f] != 0; }
    std::size_t folded_count() const noexcept;
    std::optional<Complex> mu_at(std::size_t f) const;
};

/// μ_T for every face of `map`. Throws DegenerateFace tagged with the face
/// index and mesh.
BeltramiField face_beltrami(const MeshMap& map, unsigned threads = 0);

}  // namespace qcdist
