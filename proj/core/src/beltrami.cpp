#include "qcdist/beltrami.hpp"

#include "qcdist/errors.hpp"
#include "qcdist/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qcdist {

namespace {

constexpr double kRelativeDegeneracy = 1e-12;
constexpr double kVanishingFzGuard = 1e-14;
constexpr double kUnitModulusTolerance = 1e-9;

void check_abs_mu(double absMu, const char* fn) {
    if (!(absMu >= 0.0 && absMu < 1.0))
        throw DomainError(std::string(fn) + ": |mu| must lie in [0, 1), got " + std::to_string(absMu));
}

}  // namespace

AffineMap2D AffineMap2D::compose(const AffineMap2D& inner) const noexcept {
    AffineMap2D r;
    r.a = a * inner.a + b * inner.c;
    r.b = a * inner.b + b * inner.d;
    r.c = c * inner.a + d * inner.c;
    r.d = c * inner.b + d * inner.d;
    r.p = a * inner.p + b * inner.q + p;
    r.q = c * inner.p + d * inner.q + q;
    return r;
}

Triangle2 flatten_triangle(const Vec3& p0, const Vec3& p1, const Vec3& p2) {
    const Vec3 e1 = p1 - p0;
    const Vec3 e2 = p2 - p0;
    const double len1 = e1.norm();
    const double scale = std::max({len1, e2.norm(), (p2 - p1).norm()});
    const double twiceArea = e1.cross(e2).norm();
    if (!(len1 > 0.0) || !(0.5 * twiceArea > kRelativeDegeneracy * scale * scale))
        throw DegenerateFace(0, "", "cannot flatten a degenerate triangle");
    const Vec3 ex = e1 / len1;
    return {Vec2(0.0, 0.0), Vec2(len1, 0.0), Vec2(e2.dot(ex), twiceArea / len1)};
}

AffineMap2D affine_coefficients(const Triangle2& src, const Triangle2& dst) {
    const Vec2 s1 = src[1] - src[0], s2 = src[2] - src[0];
    const double det = s1.x() * s2.y() - s2.x() * s1.y();
    const double scale = std::max({s1.norm(), s2.norm(), (src[2] - src[1]).norm()});
    if (!(0.5 * std::abs(det) > kRelativeDegeneracy * scale * scale))
        throw DegenerateFace(0, "source", "affine map from a degenerate triangle");

    const Vec2 t1 = dst[1] - dst[0], t2 = dst[2] - dst[0];
    // J · [s1 s2] = [t1 t2]  =>  J = [t1 t2] · [s1 s2]^{-1}
    const double inv00 = s2.y() / det, inv01 = -s2.x() / det;
    const double inv10 = -s1.y() / det, inv11 = s1.x() / det;
    AffineMap2D m;
    m.a = t1.x() * inv00 + t2.x() * inv10;
    m.b = t1.x() * inv01 + t2.x() * inv11;
    m.c = t1.y() * inv00 + t2.y() * inv10;
    m.d = t1.y() * inv01 + t2.y() * inv11;
    m.p = dst[0].x() - (m.a * src[0].x() + m.b * src[0].y());
    m.q = dst[0].y() - (m.c * src[0].x() + m.d * src[0].y());
    return m;
}

Wirtinger wirtinger(const AffineMap2D& m) noexcept {
    return {Complex(m.a + m.d, m.c - m.b) * 0.5, Complex(m.a - m.d, m.c + m.b) * 0.5};
}

Complex mu_from_affine(const AffineMap2D& m) {
    const auto [fz, fzbar] = wirtinger(m);
    const double nz = std::abs(fz), nzbar = std::abs(fzbar);
    if (!(nz > kVanishingFzGuard * (nz + nzbar)))
        throw VanishingFz("f_z vanishes: the local map is anti-conformal or collapsed");
    return fzbar / fz;
}

double dilatation(double absMu) {
    check_abs_mu(absMu, "dilatation");
    return (1.0 + absMu) / (1.0 - absMu);
}

double epsilon_mu(double absMu) {
    check_abs_mu(absMu, "epsilon_mu");
    return 2.0 * std::asin(absMu);
}

Complex compose_mu(Complex muF, Complex muGofF, Complex tau) {
    if (!(std::abs(muF) < 1.0)) throw DomainError("compose_mu: |mu_f| must be < 1");
    if (!(std::abs(muGofF) < 1.0)) throw DomainError("compose_mu: |mu_g o f| must be < 1");
    if (!(std::abs(std::abs(tau) - 1.0) <= kUnitModulusTolerance))
        throw DomainError("compose_mu: tau must have unit modulus");
    return (muF + muGofF * tau) / (1.0 + std::conj(muF) * muGofF * tau);
}

MeshMap::MeshMap(TriMesh source, TriMesh target) : source_(std::move(source)), target_(std::move(target)) {
    if (source_.num_vertices() != target_.num_vertices())
        throw ValidationError("connectivity mismatch: source has " + std::to_string(source_.num_vertices()) +
                              " vertices, target has " + std::to_string(target_.num_vertices()));
    if (source_.faces() != target_.faces()) {
        if (source_.num_faces() != target_.num_faces())
            throw ValidationError("connectivity mismatch: source has " + std::to_string(source_.num_faces()) +
                                  " faces, target has " + std::to_string(target_.num_faces()));
        const auto it = std::mismatch(source_.faces().begin(), source_.faces().end(), target_.faces().begin());
        throw ValidationError("connectivity mismatch at face " +
                              std::to_string(it.first - source_.faces().begin()));
    }
}

std::array<Triangle2, 2> MeshMap::planar_pair(std::size_t f) const {
    const auto planar = [f](const TriMesh& mesh, const char* which) -> Triangle2 {
        const auto tri = mesh.triangle(f);
        if (mesh.dimension() == 2) return {tri[0].head<2>(), tri[1].head<2>(), tri[2].head<2>()};
        try {
            return flatten_triangle(tri[0], tri[1], tri[2]);
        } catch (const DegenerateFace&) {
            throw DegenerateFace(f, which, "cannot flatten");
        }
    };
    return {planar(source_, "source"), planar(target_, "target")};
}

std::size_t BeltramiField::folded_count() const noexcept {
    return static_cast<std::size_t>(std::count(folded.begin(), folded.end(), std::uint8_t{1}));
}

std::optional<Complex> BeltramiField::mu_at(std::size_t f) const {
    if (is_folded(f)) return std::nullopt;
    return mu[f];
}

BeltramiField face_beltrami(const MeshMap& map, unsigned threads) {
    const std::size_t n = map.num_faces();
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    BeltramiField field;
    field.mu.assign(n, Complex(nan, nan));
    field.absMu.assign(n, nan);
    field.K.assign(n, nan);
    field.epsMu.assign(n, nan);
    field.folded.assign(n, 0);

    parallel_for(n, threads, [&](std::size_t f) {
        const auto [src, dst] = map.planar_pair(f);
        AffineMap2D affine;
        try {
            affine = affine_coefficients(src, dst);
        } catch (const DegenerateFace&) {
            throw DegenerateFace(f, "source", "affine map from a degenerate triangle");
        }
        const auto [fz, fzbar] = wirtinger(affine);
        const double nz = std::abs(fz), nzbar = std::abs(fzbar);
        if (!(affine.det() > 0.0)) {
            field.folded[f] = 1;
            field.absMu[f] = nz > 0.0 ? nzbar / nz : std::numeric_limits<double>::infinity();
            return;
        }
        const Complex mu = fzbar / fz;
        const double absMu = std::abs(mu);
        field.absMu[f] = absMu;
        if (!(absMu < 1.0)) {
            field.folded[f] = 1;
            return;
        }
        field.mu[f] = mu;
        field.K[f] = (1.0 + absMu) / (1.0 - absMu);
        field.epsMu[f] = 2.0 * std::asin(absMu);
    });
    return field;
}

}  // namespace qcdist
