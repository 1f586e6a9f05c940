//! Small fixed-size vector helpers for points in R^3.

pub type Point3 = [f64; 3];

#[inline]
pub fn add(a: Point3, b: Point3) -> Point3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn scale(s: f64, a: Point3) -> Point3 {
    [s * a[0], s * a[1], s * a[2]]
}

#[inline]
pub fn dot(a: Point3, b: Point3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross(a: Point3, b: Point3) -> Point3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn norm(a: Point3) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn dist(a: Point3, b: Point3) -> f64 {
    norm(sub(a, b))
}

#[inline]
pub fn midpoint(a: Point3, b: Point3) -> Point3 {
    scale(0.5, add(a, b))
}

/// Convex combination `l0*p0 + l1*p1 + l2*p2`.
#[inline]
pub fn combine(p: [Point3; 3], l: [f64; 3]) -> Point3 {
    add(add(scale(l[0], p[0]), scale(l[1], p[1])), scale(l[2], p[2]))
}

pub fn normalize(a: Point3) -> Point3 {
    scale(1.0 / norm(a), a)
}
