#include "gtet/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "gtet/errors.hpp"

namespace gtet {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kDegeneracyScale = 1e-12;

double max_edge(const Tetrahedron& t) {
    return std::sqrt(std::max({norm2(t.b - t.a), norm2(t.c - t.a), norm2(t.d - t.a),
                               norm2(t.c - t.b), norm2(t.d - t.b), norm2(t.d - t.c)}));
}

void require_distinct(Point3 p, Point3 q, const char* what) {
    if (p == q) throw degeneracy_error(std::string("coincident vertices: ") + what);
}

void require_nondegenerate(const Tetrahedron& t, const char* what) {
    if (is_degenerate(t))
        throw degeneracy_error(std::string("degenerate tetrahedron in ") + what);
}

double triangle_area2(const Triangle& t) {  // twice the area
    return norm(cross(t.b - t.a, t.c - t.a));
}

void require_positive_area(const Triangle& t, const char* what) {
    const double e = std::sqrt(
        std::max({norm2(t.b - t.a), norm2(t.c - t.a), norm2(t.c - t.b)}));
    if (!(triangle_area2(t) > kDegeneracyScale * e * e))
        throw degeneracy_error(std::string("degenerate triangle in ") + what);
}

// Interior angle between the two faces meeting along edge (p, q); u and v are
// the remaining two vertices.  Works with the components of u-p and v-p
// perpendicular to the edge, which is equivalent to the angle between
// consistently oriented face normals.
double edge_dihedral(Point3 p, Point3 q, Point3 u, Point3 v) {
    const Point3 e = q - p;
    const double ee = norm2(e);
    const Point3 w1 = (u - p) - (dot(u - p, e) / ee) * e;
    const Point3 w2 = (v - p) - (dot(v - p, e) / ee) * e;
    return std::atan2(norm(cross(w1, w2)), dot(w1, w2));
}

// Barycentric coordinates of point p with respect to triangle (a, b, c),
// computed in the triangle's plane.
std::array<double, 3> barycentric_in_triangle(Point3 p, Point3 a, Point3 b, Point3 c) {
    const Point3 v0 = b - a, v1 = c - a, v2 = p - a;
    const double d00 = dot(v0, v0), d01 = dot(v0, v1), d11 = dot(v1, v1);
    const double d20 = dot(v2, v0), d21 = dot(v2, v1);
    const double den = d00 * d11 - d01 * d01;
    const double wb = (d11 * d20 - d01 * d21) / den;
    const double wc = (d00 * d21 - d01 * d20) / den;
    return {1.0 - wb - wc, wb, wc};
}

}  // namespace

double signed_volume(const Tetrahedron& t) {
    return dot(t.b - t.a, cross(t.c - t.a, t.d - t.a)) / 6.0;
}

bool is_degenerate(const Tetrahedron& t) {
    const double e = max_edge(t);
    return !(std::fabs(signed_volume(t)) > kDegeneracyScale * e * e * e);
}

ProjectionCoeffs projection_coeffs(Point3 a, Point3 b, Point3 c, Point3 d) {
    require_distinct(a, b, "projection_coeffs needs b != a");
    require_distinct(a, c, "projection_coeffs needs c != a");
    ProjectionCoeffs out;
    out.r = dot(b - a, d - a) / norm2(b - a);
    out.s = dot(c - a, d - a) / norm2(c - a);
    return out;
}

ConeEvents cone_events(Point3 a, Point3 b, Point3 c, Point3 d) {
    require_distinct(a, b, "cone_events needs b != a");
    require_distinct(a, c, "cone_events needs c != a");
    require_distinct(a, d, "cone_events needs d != a");
    require_distinct(b, d, "cone_events needs d != b");
    require_distinct(c, d, "cone_events needs d != c");
    ConeEvents e;
    const bool ba_da = dot(b - a, d - a) > 0.0;
    const bool ca_da = dot(c - a, d - a) > 0.0;
    const bool ab_db = dot(a - b, d - b) > 0.0;
    const bool ac_dc = dot(a - c, d - c) > 0.0;
    e.in_gamma = ba_da && ca_da;
    e.in_reflected = ab_db && ac_dc;
    e.in_parallelogram = e.in_gamma && e.in_reflected;
    return e;
}

std::array<double, 4> f_ratio_forms(Point3 a, Point3 b, Point3 c, Point3 d) {
    if (d == a) throw degeneracy_error("f_ratio_forms: denominator vanishes (d = a)");
    if (d == b) throw degeneracy_error("f_ratio_forms: denominator vanishes (d = b)");
    if (d == c) throw degeneracy_error("f_ratio_forms: denominator vanishes (d = c)");
    const double s6 = std::sqrt(6.0), s23 = std::sqrt(2.0 / 3.0), s2 = std::sqrt(2.0);
    const auto ratio = [&](Point3 num, Point3 den) { return norm2(num) / norm2(den); };
    const Point3 n1 = (1.0 / s6) * a - s23 * b + (1.0 / s6) * d;
    const Point3 n2 = -s23 * a + (1.0 / s6) * b + (1.0 / s6) * d;
    const Point3 n3 = (1.0 / s6) * a - s23 * c + (1.0 / s6) * d;
    const Point3 n4 = -s23 * a + (1.0 / s6) * c + (1.0 / s6) * d;
    const Point3 da = (1.0 / s2) * (d - a);
    const Point3 db = (1.0 / s2) * (d - b);
    const Point3 dc = (1.0 / s2) * (d - c);
    return {ratio(n1, da), ratio(n2, db), ratio(n3, da), ratio(n4, dc)};
}

double triangle_projection_t(Point3 a, Point3 b, Point3 c) {
    require_distinct(a, b, "triangle_projection_t needs b != a");
    return dot(b - a, c - a) / norm2(b - a);
}

std::array<double, 3> triangle_angles(const Triangle& t) {
    require_positive_area(t, "triangle_angles");
    const auto angle = [](Point3 u, Point3 v) {
        return std::atan2(norm(cross(u, v)), dot(u, v));
    };
    return {angle(t.b - t.a, t.c - t.a), angle(t.a - t.b, t.c - t.b),
            angle(t.a - t.c, t.b - t.c)};
}

bool is_acute_triangle(const Triangle& t) {
    const auto ang = triangle_angles(t);
    return ang[0] < kPi / 2 && ang[1] < kPi / 2 && ang[2] < kPi / 2;
}

DihedralAngles dihedral_angles(const Tetrahedron& t) {
    require_nondegenerate(t, "dihedral_angles");
    DihedralAngles d;
    d.ab = edge_dihedral(t.a, t.b, t.c, t.d);
    d.ac = edge_dihedral(t.a, t.c, t.b, t.d);
    d.ad = edge_dihedral(t.a, t.d, t.b, t.c);
    d.bc = edge_dihedral(t.b, t.c, t.a, t.d);
    d.bd = edge_dihedral(t.b, t.d, t.a, t.c);
    d.cd = edge_dihedral(t.c, t.d, t.a, t.b);
    return d;
}

bool is_acute_tetrahedron(const Tetrahedron& t) {
    const auto d = dihedral_angles(t);
    for (double ang : d.all())
        if (!(ang < kPi / 2)) return false;
    return true;
}

double solid_angle(Point3 apex, Point3 p1, Point3 p2, Point3 p3) {
    const Point3 a = p1 - apex, b = p2 - apex, c = p3 - apex;
    const double na = norm(a), nb = norm(b), nc = norm(c);
    const double triple = dot(a, cross(b, c));
    if (!(std::fabs(triple) > kDegeneracyScale * na * nb * nc))
        throw degeneracy_error("solid_angle: rays are coplanar");
    const double num = std::fabs(triple);
    const double den = na * nb * nc + dot(a, b) * nc + dot(a, c) * nb + dot(b, c) * na;
    // den > 0: 2*atan(num/den) in (0, pi); den < 0: branch shifts by 2*pi,
    // which is exactly what atan2 delivers when doubled.
    return 2.0 * std::atan2(num, den);
}

SolidAngles solid_angle_sum(const Tetrahedron& t) {
    require_nondegenerate(t, "solid_angle_sum");
    SolidAngles s;
    s.at_a = solid_angle(t.a, t.b, t.c, t.d);
    s.at_b = solid_angle(t.b, t.a, t.c, t.d);
    s.at_c = solid_angle(t.c, t.a, t.b, t.d);
    s.at_d = solid_angle(t.d, t.a, t.b, t.c);
    s.sum = s.at_a + s.at_b + s.at_c + s.at_d;
    return s;
}

bool shadow_is_triangle(const Tetrahedron& t, Point3 plane_normal) {
    if (!(norm2(plane_normal) > 0.0))
        throw degeneracy_error("shadow_is_triangle: zero plane normal");
    // Orthonormal basis of the projection plane.
    const Point3 n = (1.0 / norm(plane_normal)) * plane_normal;
    const Point3 axis = (std::fabs(n.x) <= std::fabs(n.y) && std::fabs(n.x) <= std::fabs(n.z))
                            ? Point3{1, 0, 0}
                            : (std::fabs(n.y) <= std::fabs(n.z) ? Point3{0, 1, 0}
                                                                : Point3{0, 0, 1});
    Point3 e1 = cross(n, axis);
    e1 = (1.0 / norm(e1)) * e1;
    const Point3 e2 = cross(n, e1);

    std::array<std::array<double, 2>, 4> q;
    const std::array<Point3, 4> v = {t.a, t.b, t.c, t.d};
    for (int i = 0; i < 4; ++i) q[i] = {dot(v[i], e1), dot(v[i], e2)};

    const auto orient = [&](int i, int j, int k) {
        const double det = (q[j][0] - q[i][0]) * (q[k][1] - q[i][1]) -
                           (q[j][1] - q[i][1]) * (q[k][0] - q[i][0]);
        if (det == 0.0)
            throw degeneracy_error("shadow_is_triangle: collinear projected points");
        return det > 0.0 ? 1 : -1;
    };

    int inside_count = 0;
    for (int p = 0; p < 4; ++p) {
        int tri[3], m = 0;
        for (int i = 0; i < 4; ++i)
            if (i != p) tri[m++] = i;
        const int so = orient(tri[0], tri[1], tri[2]);
        const bool inside = orient(tri[0], tri[1], p) == so &&
                            orient(tri[1], tri[2], p) == so &&
                            orient(tri[2], tri[0], p) == so;
        if (inside) ++inside_count;
    }
    return inside_count == 1;
}

Point3 circumcenter_triangle(const Triangle& t) {
    require_positive_area(t, "circumcenter_triangle");
    const Point3 u = t.b - t.a, v = t.c - t.a;
    const double d1 = norm2(u), d2 = norm2(v), uv = dot(u, v);
    const double den = 2.0 * (d1 * d2 - uv * uv);
    const double alpha = d2 * (d1 - uv) / den;
    const double beta = d1 * (d2 - uv) / den;
    return t.a + alpha * u + beta * v;
}

Point3 circumcenter_tetra(const Tetrahedron& t) {
    require_nondegenerate(t, "circumcenter_tetra");
    // Solve 2 (v_i - a) . x = |v_i|^2 - |a|^2 for the three other vertices.
    const Point3 r1 = t.b - t.a, r2 = t.c - t.a, r3 = t.d - t.a;
    const double b1 = 0.5 * (norm2(t.b) - norm2(t.a));
    const double b2 = 0.5 * (norm2(t.c) - norm2(t.a));
    const double b3 = 0.5 * (norm2(t.d) - norm2(t.a));
    const double det = dot(r1, cross(r2, r3));
    const Point3 x = (1.0 / det) * (b1 * cross(r2, r3) + b2 * cross(r3, r1) +
                                    b3 * cross(r1, r2));
    return x;
}

bool is_3_well_centered(const Tetrahedron& t) {
    const Point3 cc = circumcenter_tetra(t);
    // Barycentric coordinates of cc: solve [b-a c-a d-a] w = cc - a.
    const Point3 r1 = t.b - t.a, r2 = t.c - t.a, r3 = t.d - t.a;
    const Point3 rhs = cc - t.a;
    const double det = dot(r1, cross(r2, r3));
    const double wb = dot(rhs, cross(r2, r3)) / det;
    const double wc = dot(r1, cross(rhs, r3)) / det;
    const double wd = dot(r1, cross(r2, rhs)) / det;
    const double wa = 1.0 - wb - wc - wd;
    return wa > 0.0 && wb > 0.0 && wc > 0.0 && wd > 0.0;
}

bool is_2_well_centered(const Tetrahedron& t) {
    require_nondegenerate(t, "is_2_well_centered");
    const std::array<Triangle, 4> faces = {Triangle{t.b, t.c, t.d},
                                           Triangle{t.a, t.c, t.d},
                                           Triangle{t.a, t.b, t.d},
                                           Triangle{t.a, t.b, t.c}};
    for (const Triangle& f : faces) {
        const Point3 cc = circumcenter_triangle(f);
        const auto w = barycentric_in_triangle(cc, f.a, f.b, f.c);
        if (!(w[0] > 0.0 && w[1] > 0.0 && w[2] > 0.0)) return false;
    }
    return true;
}

}  // namespace gtet
