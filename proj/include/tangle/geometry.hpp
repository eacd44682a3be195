#pragma once

#include <Eigen/Core>

#include <map>
#include <string>
#include <vector>

#include "tangle/invariants.hpp"
#include "tangle/seidel.hpp"

namespace tangle {

using Vec3 = Eigen::Vector3d;

struct LineSpec {
    double t = 0, p = 0, z = 0, r = 1;
    int sigma = 1;
};

struct LineConfiguration {
    double pivot_radius = 1.0;
    std::vector<LineSpec> lines;  // pivot not included
    int n() const { return (int)lines.size() + 1; }
};

struct OrientedLine {
    Vec3 point;
    Vec3 direction;
    double radius = 1.0;
};

// POLAR:    n = (sin t cos p, sin t sin p, cos t)
// LATITUDE: n = (cos t cos p, cos t sin p, sin t)
enum class AngleConvention { Polar, Latitude };

const std::vector<AngleConvention>& all_conventions();
std::string convention_name(AngleConvention c);

constexpr double kTangencyTol = 1e-5;
constexpr double kSignTol = 1e-9;
constexpr double kParallelTol = 1e-12;

Vec3 direction(double t, double p, AngleConvention c);

std::vector<OrientedLine> realize(const LineConfiguration& config, AngleConvention conv);

AngleConvention calibrate_convention(const LineConfiguration& reference, double tol = kTangencyTol);

double pair_distance(const OrientedLine& a, const OrientedLine& b);

struct PairResidual {
    int i = 0, k = 0;
    double distance = 0;
    double residual = 0;
    bool parallel = false;
};

struct TangencyReport {
    std::vector<PairResidual> pairs;
    double max_residual = 0;
    bool pass = true;
};

TangencyReport verify_tangency(const std::vector<OrientedLine>& lines, double tol = kTangencyTol);
TangencyReport verify_tangency(const LineConfiguration& config, AngleConvention conv, double tol = kTangencyTol);

// Throws ParallelPair(i,k) unless `fallback` supplies the entry for that pair.
ChiralityMatrix chirality_from_geometry(const std::vector<OrientedLine>& lines,
                                        const ChiralityMatrix* fallback = nullptr);

// r_ik for every k != i, pointing from line i toward line k.
std::map<int, Vec3> shortest_unit_vectors(const std::vector<OrientedLine>& lines, int i);

bool encages(const std::vector<OrientedLine>& lines, int i, int j, int m, int s);

RingMatrix ring_matrix_from_geometry(const std::vector<OrientedLine>& lines);

}  // namespace tangle
