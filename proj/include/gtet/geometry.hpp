#pragma once

#include <array>
#include <cmath>

namespace gtet {

struct Point3 {
    double x = 0, y = 0, z = 0;

    friend Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Point3 operator*(double s, Point3 p) { return {s * p.x, s * p.y, s * p.z}; }
    friend bool operator==(Point3 a, Point3 b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
};

inline double dot(Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Point3 cross(Point3 a, Point3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(Point3 a) { return dot(a, a); }
inline double norm(Point3 a) { return std::sqrt(norm2(a)); }

struct Triangle {
    Point3 a, b, c;
};

struct Tetrahedron {
    Point3 a, b, c, d;
};

// Coefficients of the per-edge projections of d-a onto the edges b-a and c-a:
// r = (b-a).(d-a)/|b-a|^2 and s = (c-a).(d-a)/|c-a|^2.
struct ProjectionCoeffs {
    double r = 0, s = 0;
};

// The two cone membership events for vertex d relative to the triangle abc,
// and their conjunction (the parallelogram event, equivalent to
// 0 < r < 1 and 0 < s < 1).
struct ConeEvents {
    bool in_gamma = false;        // (b-a).(d-a) > 0 and (c-a).(d-a) > 0
    bool in_reflected = false;    // (a-b).(d-b) > 0 and (a-c).(d-c) > 0
    bool in_parallelogram = false;
};

// The six interior dihedral angles, one per edge.  When vertex d sits at the
// origin, the angles along the edges da, db, dc are the named triple
// (alpha, beta, gamma).
struct DihedralAngles {
    double ab = 0, ac = 0, ad = 0, bc = 0, bd = 0, cd = 0;
    double alpha() const { return ad; }
    double beta() const { return bd; }
    double gamma() const { return cd; }
    std::array<double, 6> all() const { return {ab, ac, ad, bc, bd, cd}; }
};

// The four vertex solid angles (steradians) and their sum.
struct SolidAngles {
    double at_a = 0, at_b = 0, at_c = 0, at_d = 0;
    double sum = 0;
};

ProjectionCoeffs projection_coeffs(Point3 a, Point3 b, Point3 c, Point3 d);
ConeEvents cone_events(Point3 a, Point3 b, Point3 c, Point3 d);

// The four norm-squared ratios whose comparison against 1/3 reproduces the
// four cone dot-product sign conditions (in order: the two events involving
// b, then the two involving c).
std::array<double, 4> f_ratio_forms(Point3 a, Point3 b, Point3 c, Point3 d);

// Parameter of the foot of the perpendicular from c onto the line ab;
// the foot lies strictly between a and b iff 0 < t < 1.
double triangle_projection_t(Point3 a, Point3 b, Point3 c);

std::array<double, 3> triangle_angles(const Triangle& t);  // at a, b, c
bool is_acute_triangle(const Triangle& t);

DihedralAngles dihedral_angles(const Tetrahedron& t);
bool is_acute_tetrahedron(const Tetrahedron& t);

// Solid angle subtended at `apex` by the rays toward p1, p2, p3, in (0, 2pi).
double solid_angle(Point3 apex, Point3 p1, Point3 p2, Point3 p3);
SolidAngles solid_angle_sum(const Tetrahedron& t);

// True when the orthogonal shadow of the tetrahedron along plane_normal is a
// triangle (one projected vertex strictly inside the triangle of the other
// three) rather than a quadrilateral.
bool shadow_is_triangle(const Tetrahedron& t, Point3 plane_normal);

Point3 circumcenter_triangle(const Triangle& t);
Point3 circumcenter_tetra(const Tetrahedron& t);

// Circumcenter strictly inside the tetrahedron (all barycentric coordinates
// positive).
bool is_3_well_centered(const Tetrahedron& t);
// Every face contains its own circumcenter strictly inside (equivalently,
// every face is acute).
bool is_2_well_centered(const Tetrahedron& t);

// Degeneracy guard shared by the angle/circumcenter operations: a tetrahedron
// is treated as degenerate when |signed volume| <= 1e-12 * (max edge)^3.
double signed_volume(const Tetrahedron& t);
bool is_degenerate(const Tetrahedron& t);

}  // namespace gtet
