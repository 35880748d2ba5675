//! Simple-polygon predicates built on exact orientation tests.

use robust::{orient2d, Coord};

fn coord(p: [f64; 2]) -> Coord<f64> {
    Coord { x: p[0], y: p[1] }
}

/// Sign of the signed area of (a, b, c): > 0 counterclockwise, 0 collinear.
pub(crate) fn orientation(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    orient2d(coord(a), coord(b), coord(c))
}

fn within_box(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

fn edges(vertices: &[[f64; 2]]) -> impl Iterator<Item = ([f64; 2], [f64; 2])> + '_ {
    let n = vertices.len();
    (0..n).map(move |i| (vertices[i], vertices[(i + 1) % n]))
}

/// Winding number of the closed polygon around `p`, or `None` when `p` lies on an edge.
pub(crate) fn winding_number(vertices: &[[f64; 2]], p: [f64; 2]) -> Option<i32> {
    let mut wn = 0;
    for (a, b) in edges(vertices) {
        let o = orientation(a, b, p);
        if o == 0.0 && within_box(a, b, p) {
            return None;
        }
        if a[1] <= p[1] {
            if b[1] > p[1] && o > 0.0 {
                wn += 1;
            }
        } else if b[1] <= p[1] && o < 0.0 {
            wn -= 1;
        }
    }
    Some(wn)
}

pub(crate) fn contains(vertices: &[[f64; 2]], p: [f64; 2]) -> bool {
    matches!(winding_number(vertices, p), Some(w) if w != 0)
}

pub(crate) fn signed_area(vertices: &[[f64; 2]]) -> f64 {
    0.5 * edges(vertices).map(|(a, b)| a[0] * b[1] - b[0] * a[1]).sum::<f64>()
}

pub(crate) fn perimeter(vertices: &[[f64; 2]]) -> f64 {
    edges(vertices).map(|(a, b)| (b[0] - a[0]).hypot(b[1] - a[1])).sum()
}

fn segments_intersect(p1: [f64; 2], p2: [f64; 2], q1: [f64; 2], q2: [f64; 2]) -> bool {
    let d1 = orientation(q1, q2, p1);
    let d2 = orientation(q1, q2, p2);
    let d3 = orientation(p1, p2, q1);
    let d4 = orientation(p1, p2, q2);
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        return true;
    }
    (d1 == 0.0 && within_box(q1, q2, p1))
        || (d2 == 0.0 && within_box(q1, q2, p2))
        || (d3 == 0.0 && within_box(p1, p2, q1))
        || (d4 == 0.0 && within_box(p1, p2, q2))
}

/// True when no two non-adjacent edges touch and adjacent edges meet only at
/// their shared vertex.
pub(crate) fn is_simple(vertices: &[[f64; 2]]) -> bool {
    let n = vertices.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        if vertices[i] == vertices[(i + 1) % n] {
            return false;
        }
    }
    let e: Vec<_> = edges(vertices).collect();
    for i in 0..n {
        for k in (i + 1)..n {
            let adjacent = k == i + 1 || (i == 0 && k == n - 1);
            let (a, b) = e[i];
            let (c, d) = e[k];
            if adjacent {
                // shared vertex only: the far endpoints must not fold back onto the other edge
                let (far_i, far_k) = if k == i + 1 { (a, d) } else { (b, c) };
                if orientation(c, d, far_i) == 0.0 && within_box(c, d, far_i) {
                    return false;
                }
                if orientation(a, b, far_k) == 0.0 && within_box(a, b, far_k) {
                    return false;
                }
            } else if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: [[f64; 2]; 4] = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];

    #[test]
    fn square_predicates() {
        assert!(contains(&SQUARE, [0.5, 0.5]));
        assert!(!contains(&SQUARE, [1.5, 0.5]));
        assert_eq!(winding_number(&SQUARE, [1.0, 0.3]), None);
        assert_eq!(winding_number(&SQUARE, [0.0, 0.0]), None);
        assert!((signed_area(&SQUARE) - 1.0).abs() < 1e-15);
        assert!((perimeter(&SQUARE) - 4.0).abs() < 1e-15);
        assert!(is_simple(&SQUARE));
    }

    #[test]
    fn clockwise_orientation_still_contains() {
        let cw: Vec<_> = SQUARE.iter().rev().copied().collect();
        assert!(contains(&cw, [0.25, 0.75]));
        assert!(signed_area(&cw) < 0.0);
    }

    #[test]
    fn bowtie_is_not_simple() {
        let bowtie = [[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]];
        assert!(!is_simple(&bowtie));
        let spike = [[0.0, 0.0], [2.0, 0.0], [1.0, 0.0], [1.0, 1.0]];
        assert!(!is_simple(&spike));
    }

    #[test]
    fn near_edge_points_are_resolved_exactly() {
        let tri = [[0.0, 0.0], [1.0, 0.1], [0.0, 1.0]];
        // a point on the slanted edge, up to representability
        let on = [0.5, 0.05];
        let inside = [0.5, 0.05 + 1e-15];
        let outside = [0.5, 0.05 - 1e-15];
        assert!(!contains(&tri, on));
        assert!(contains(&tri, inside));
        assert!(!contains(&tri, outside));
    }
}
