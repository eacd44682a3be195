#include "tangle/geometry.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <cstdio>

#include "tangle/error.hpp"

namespace tangle {

const std::vector<AngleConvention>& all_conventions() {
    static const std::vector<AngleConvention> v = {AngleConvention::Polar, AngleConvention::Latitude};
    return v;
}

std::string convention_name(AngleConvention c) {
    switch (c) {
        case AngleConvention::Polar: return "POLAR";
        case AngleConvention::Latitude: return "LATITUDE";
    }
    return "?";
}

Vec3 direction(double t, double p, AngleConvention c) {
    switch (c) {
        case AngleConvention::Polar: return {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
        case AngleConvention::Latitude: return {std::cos(t) * std::cos(p), std::cos(t) * std::sin(p), std::sin(t)};
    }
    return Vec3::UnitZ();
}

std::vector<OrientedLine> realize(const LineConfiguration& config, AngleConvention conv) {
    const Vec3 z = Vec3::UnitZ();
    std::vector<OrientedLine> out;
    out.push_back({Vec3::Zero(), z, config.pivot_radius});
    for (size_t idx = 0; idx < config.lines.size(); ++idx) {
        const LineSpec& l = config.lines[idx];
        Vec3 n = direction(l.t, l.p, conv).normalized();
        Vec3 side = n.cross(z);
        double len = side.norm();
        if (len < kParallelTol) throw Error("DirectionParallelToPivot", "", {(int)idx + 1});
        Vec3 a = l.z * z + (config.pivot_radius + l.r) * l.sigma * side / len;
        out.push_back({a, n, l.r});
    }
    return out;
}

double pair_distance(const OrientedLine& a, const OrientedLine& b) {
    Vec3 c = a.direction.cross(b.direction);
    double nc = c.norm();
    if (nc < kParallelTol) throw Error("ParallelLines", "");
    return std::abs((b.point - a.point).dot(c)) / nc;
}

namespace {

double axis_distance(const OrientedLine& a, const OrientedLine& b) {
    Vec3 d = b.point - a.point;
    return (d - d.dot(a.direction) * a.direction).norm();
}

}  // namespace

TangencyReport verify_tangency(const std::vector<OrientedLine>& lines, double tol) {
    TangencyReport rep;
    int n = (int)lines.size();
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) {
            PairResidual pr;
            pr.i = i;
            pr.k = k;
            pr.parallel = lines[i].direction.cross(lines[k].direction).norm() < kParallelTol;
            pr.distance = pr.parallel ? axis_distance(lines[i], lines[k]) : pair_distance(lines[i], lines[k]);
            pr.residual = std::abs(pr.distance - (lines[i].radius + lines[k].radius));
            rep.max_residual = std::max(rep.max_residual, pr.residual);
            rep.pairs.push_back(pr);
        }
    rep.pass = rep.max_residual <= tol;
    return rep;
}

TangencyReport verify_tangency(const LineConfiguration& config, AngleConvention conv, double tol) {
    return verify_tangency(realize(config, conv), tol);
}

AngleConvention calibrate_convention(const LineConfiguration& reference, double tol) {
    if (reference.lines.empty()) throw Error("Ambiguous", "no pairs to constrain the convention");
    std::vector<AngleConvention> fits;
    std::string tried;
    for (AngleConvention c : all_conventions()) {
        double worst;
        try {
            worst = verify_tangency(reference, c, tol).max_residual;
        } catch (const Error&) {
            worst = INFINITY;
        }
        if (!tried.empty()) tried += ", ";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s=%.3g", convention_name(c).c_str(), worst);
        tried += buf;
        if (worst <= tol) fits.push_back(c);
    }
    if (fits.empty()) throw Error("NoConventionFits", tried);
    if (fits.size() > 1) throw Error("Ambiguous", tried);
    return fits[0];
}

ChiralityMatrix chirality_from_geometry(const std::vector<OrientedLine>& lines, const ChiralityMatrix* fallback) {
    int n = (int)lines.size();
    if (n < 2) throw Error("DimensionTooSmall", "n = " + std::to_string(n));
    if (n > kMaxDim) throw Error("DimensionTooLarge", "n = " + std::to_string(n));
    MatrixBuilder b(n);
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) {
            Vec3 c = lines[i].direction.cross(lines[k].direction);
            if (c.norm() < kParallelTol) {
                if (!fallback || fallback->n() != n) throw Error("ParallelPair", "", {i, k});
                b.set(i, k, (*fallback)(i, k));
                continue;
            }
            double s = (lines[i].point - lines[k].point).dot(c);
            b.set(i, k, s > 0 ? 1 : -1);
        }
    return b.build();
}

namespace {

Vec3 unit_toward(const OrientedLine& from, const OrientedLine& to, int i, int k) {
    Vec3 c = from.direction.cross(to.direction);
    double nc = c.norm();
    if (nc < kParallelTol) throw Error("ParallelPair", "", {i, k});
    c /= nc;
    return (to.point - from.point).dot(c) >= 0 ? c : Vec3(-c);
}

}  // namespace

std::map<int, Vec3> shortest_unit_vectors(const std::vector<OrientedLine>& lines, int i) {
    std::map<int, Vec3> out;
    for (int k = 0; k < (int)lines.size(); ++k)
        if (k != i) out[k] = unit_toward(lines[i], lines[k], i, k);
    return out;
}

namespace {

// sign of the dot product of a and b after removing their components along c
int projected_sign(const Vec3& a, const Vec3& b, const Vec3& c, const std::vector<int>& ctx) {
    Vec3 pa = a - a.dot(c) * c;
    Vec3 pb = b - b.dot(c) * c;
    double d = pa.dot(pb);
    if (std::abs(d) < kSignTol) throw Error("DegenerateSign", "projection dot " + std::to_string(d), ctx);
    return d > 0 ? 1 : -1;
}

bool encages_r(const Vec3& rj, const Vec3& rm, const Vec3& rs, const std::vector<int>& ctx) {
    int s1 = projected_sign(rj, rs, rm, ctx);
    int s2 = projected_sign(rm, rs, rj, ctx);
    int s3 = projected_sign(rj, rm, rs, ctx);
    return s1 + s2 + s3 == -3;
}

}  // namespace

bool encages(const std::vector<OrientedLine>& lines, int i, int j, int m, int s) {
    int n = (int)lines.size();
    for (int v : {i, j, m, s})
        if (v < 0 || v >= n) throw Error("IndexOutOfRange", "", {v});
    if (i == j || i == m || i == s || j == m || j == s || m == s)
        throw Error("IndexOutOfRange", "indices must be distinct", {i, j, m, s});
    return encages_r(unit_toward(lines[i], lines[j], i, j), unit_toward(lines[i], lines[m], i, m),
                     unit_toward(lines[i], lines[s], i, s), {i, j, m, s});
}

RingMatrix ring_matrix_from_geometry(const std::vector<OrientedLine>& lines) {
    int n = (int)lines.size();
    RingBuilder b(n);
    for (int i = 0; i < n; ++i) {
        if (n < 4) break;
        auto r = shortest_unit_vectors(lines, i);
        for (int j = 0; j < n; ++j)
            for (int m = j + 1; m < n; ++m)
                for (int s = m + 1; s < n; ++s) {
                    if (j == i || m == i || s == i) continue;
                    if (encages_r(r[j], r[m], r[s], {i, j, m, s})) {
                        b.add(i, j);
                        b.add(i, m);
                        b.add(i, s);
                    }
                }
    }
    return b.build();
}

}  // namespace tangle
