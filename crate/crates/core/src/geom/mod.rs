//! Exact linear algebra and predicates over an ordered-field scalar.
//!
//! Everything here is generic over [`Scalar`] and computes exact signs:
//! orientation determinants, supporting hyperplanes in R⁴, and dense linear
//! solving. The rational simplex solver lives in [`lp`].

pub mod lp;

use crate::scalar::{sign, Scalar};

pub type V2<S> = [S; 2];
pub type V3<S> = [S; 3];
pub type V4<S> = [S; 4];

pub fn sub2<S: Scalar>(a: &V2<S>, b: &V2<S>) -> V2<S> {
    [a[0].clone() - b[0].clone(), a[1].clone() - b[1].clone()]
}

pub fn sub3<S: Scalar>(a: &V3<S>, b: &V3<S>) -> V3<S> {
    std::array::from_fn(|i| a[i].clone() - b[i].clone())
}

pub fn sub4<S: Scalar>(a: &V4<S>, b: &V4<S>) -> V4<S> {
    std::array::from_fn(|i| a[i].clone() - b[i].clone())
}

pub fn add3<S: Scalar>(a: &V3<S>, b: &V3<S>) -> V3<S> {
    std::array::from_fn(|i| a[i].clone() + b[i].clone())
}

pub fn add4<S: Scalar>(a: &V4<S>, b: &V4<S>) -> V4<S> {
    std::array::from_fn(|i| a[i].clone() + b[i].clone())
}

pub fn scale3<S: Scalar>(s: &S, a: &V3<S>) -> V3<S> {
    std::array::from_fn(|i| s.clone() * a[i].clone())
}

pub fn scale4<S: Scalar>(s: &S, a: &V4<S>) -> V4<S> {
    std::array::from_fn(|i| s.clone() * a[i].clone())
}

pub fn dot2<S: Scalar>(a: &V2<S>, b: &V2<S>) -> S {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone()
}

pub fn dot3<S: Scalar>(a: &V3<S>, b: &V3<S>) -> S {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

pub fn dot4<S: Scalar>(a: &V4<S>, b: &V4<S>) -> S {
    (0..4).map(|i| a[i].clone() * b[i].clone()).fold(S::zero(), |acc, x| acc + x)
}

/// z-component of the 2D cross product a × b.
pub fn cross2<S: Scalar>(a: &V2<S>, b: &V2<S>) -> S {
    a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone()
}

pub fn cross3<S: Scalar>(a: &V3<S>, b: &V3<S>) -> V3<S> {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub fn det2<S: Scalar>(m: &[[S; 2]; 2]) -> S {
    cross2(&m[0], &m[1])
}

pub fn det3<S: Scalar>(m: &[[S; 3]; 3]) -> S {
    dot3(&m[0], &cross3(&m[1], &m[2]))
}

/// Determinant of a 4×4 matrix by cofactor expansion along the first row.
pub fn det4<S: Scalar>(m: &[[S; 4]; 4]) -> S {
    let mut acc = S::zero();
    for k in 0..4 {
        let minor: [[S; 3]; 3] = std::array::from_fn(|r| {
            let row = &m[r + 1];
            let mut it = (0..4).filter(|&c| c != k);
            std::array::from_fn(|_| row[it.next().unwrap()].clone())
        });
        let term = m[0][k].clone() * det3(&minor);
        acc = if k % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Orientation of 2D point c relative to the directed line a→b: +1 left,
/// -1 right, 0 collinear.
pub fn orient2d<S: Scalar>(a: &V2<S>, b: &V2<S>, c: &V2<S>) -> i8 {
    sign(&cross2(&sub2(b, a), &sub2(c, a)))
}

/// Orientation sign of the 3D tetrahedron (a, b, c, d); 0 iff coplanar.
pub fn orient3d<S: Scalar>(a: &V3<S>, b: &V3<S>, c: &V3<S>, d: &V3<S>) -> i8 {
    sign(&det3(&[sub3(b, a), sub3(c, a), sub3(d, a)]))
}

/// Generalized cross product of three vectors in R⁴: the unique (up to sign
/// convention) vector x with x·v = det[v; u0; u1; u2] for all v.
pub fn gencross4<S: Scalar>(u: &[V4<S>; 3]) -> V4<S> {
    std::array::from_fn(|k| {
        let minor: [[S; 3]; 3] = std::array::from_fn(|r| {
            let mut it = (0..4).filter(|&c| c != k);
            std::array::from_fn(|_| u[r][it.next().unwrap()].clone())
        });
        let d = det3(&minor);
        if k % 2 == 0 {
            d
        } else {
            -d
        }
    })
}

/// An affine hyperplane { x : normal·x = offset } in R⁴.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane4<S: Scalar> {
    pub normal: V4<S>,
    pub offset: S,
}

impl<S: Scalar> Hyperplane4<S> {
    /// Hyperplane through four points; `None` if they are affinely dependent.
    pub fn through(p: &[V4<S>; 4]) -> Option<Self> {
        let u = [sub4(&p[1], &p[0]), sub4(&p[2], &p[0]), sub4(&p[3], &p[0])];
        let normal = gencross4(&u);
        if normal.iter().all(|x| x.is_zero()) {
            return None;
        }
        let offset = dot4(&normal, &p[0]);
        Some(Hyperplane4 { normal, offset })
    }

    /// Signed evaluation: positive on the normal side.
    pub fn eval(&self, x: &V4<S>) -> S {
        dot4(&self.normal, x) - self.offset.clone()
    }

    pub fn side(&self, x: &V4<S>) -> i8 {
        sign(&self.eval(x))
    }

    pub fn flip(self) -> Self {
        Hyperplane4 {
            normal: std::array::from_fn(|i| -self.normal[i].clone()),
            offset: -self.offset,
        }
    }
}

pub fn centroid4<S: Scalar>(pts: &[V4<S>]) -> V4<S> {
    let n = S::from_int(pts.len() as i64);
    let mut acc = [S::zero(), S::zero(), S::zero(), S::zero()];
    for p in pts {
        acc = add4(&acc, p);
    }
    std::array::from_fn(|i| acc[i].clone() / n.clone())
}

/// Solves the consistent overdetermined system A x = b exactly, where A is
/// m×n with m ≥ n. Returns `None` when the system is inconsistent or the
/// solution is not unique (rank < n).
pub fn solve_linear<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let m = a.len();
    if m == 0 {
        return None;
    }
    let n = a[0].len();
    if m < n {
        return None;
    }
    // Augmented matrix, forward elimination with first-nonzero pivoting.
    let mut rows: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(r, rhs)| {
            let mut v = r.clone();
            v.push(rhs.clone());
            v
        })
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..n {
        let Some(p) = (pivot_row..m).find(|&r| !rows[r][col].is_zero()) else {
            return None; // rank deficient
        };
        rows.swap(pivot_row, p);
        let pv = rows[pivot_row][col].clone();
        for e in rows[pivot_row].iter_mut() {
            *e = e.clone() / pv.clone();
        }
        for r in 0..m {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for k in col..=n {
                    let delta = f.clone() * rows[pivot_row][k].clone();
                    rows[r][k] = rows[r][k].clone() - delta;
                }
            }
        }
        pivot_row += 1;
    }
    // Remaining rows must have vanished for the system to be consistent.
    for r in pivot_row..m {
        if !rows[r][n].is_zero() {
            return None;
        }
    }
    Some((0..n).map(|i| rows[i][n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(n: i64) -> Q {
        Ratio::from_integer(n)
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(det2(&[[q(1), q(2)], [q(3), q(4)]]), q(-2));
        assert_eq!(
            det3(&[[q(1), q(0), q(0)], [q(0), q(2), q(0)], [q(0), q(0), q(3)]]),
            q(6)
        );
        let id4: [[Q; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| q((i == j) as i64)));
        assert_eq!(det4(&id4), q(1));
    }

    #[test]
    fn det4_antisymmetry() {
        let m = [
            [q(2), q(1), q(0), q(3)],
            [q(1), q(4), q(1), q(0)],
            [q(0), q(2), q(5), q(1)],
            [q(3), q(0), q(1), q(2)],
        ];
        let mut swapped = m.clone();
        swapped.swap(0, 2);
        assert_eq!(det4(&m), -det4(&swapped));
    }

    #[test]
    fn gencross_is_orthogonal_to_inputs() {
        let u = [
            [q(1), q(2), q(0), q(1)],
            [q(0), q(1), q(3), q(2)],
            [q(2), q(0), q(1), q(1)],
        ];
        let x = gencross4(&u);
        for v in &u {
            assert_eq!(dot4(&x, v), q(0));
        }
    }

    #[test]
    fn hyperplane_through_unit_points() {
        // x1+x2+x3+x4 = 1 through e1..e4, scaled by whatever gencross yields.
        let e: [V4<Rat>; 4] = std::array::from_fn(|i| {
            std::array::from_fn(|j| Rat::from_int((i == j) as i64))
        });
        let h = Hyperplane4::through(&e).unwrap();
        let origin = std::array::from_fn(|_| Rat::from_int(0));
        let far = std::array::from_fn(|_| Rat::from_int(1));
        assert_ne!(h.side(&origin), 0);
        assert_eq!(h.side(&origin), -h.side(&far));
    }

    #[test]
    fn solve_overdetermined_consistent() {
        // Barycentric-style system: 4 eqs, 3 unknowns, consistent.
        let a = vec![
            vec![q(1), q(0), q(0)],
            vec![q(0), q(1), q(0)],
            vec![q(0), q(0), q(1)],
            vec![q(1), q(1), q(1)],
        ];
        let b = vec![q(1) / q(4), q(1) / q(4), q(1) / q(4), q(3) / q(4)];
        let x = solve_linear(&a, &b).unwrap();
        assert_eq!(x, vec![q(1) / q(4), q(1) / q(4), q(1) / q(4)]);
    }

    #[test]
    fn solve_rejects_inconsistent_and_deficient() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve_linear(&a, &[q(1), q(3)]).is_none()); // inconsistent
        assert!(solve_linear(&a, &[q(1), q(2)]).is_none()); // rank 1
    }
}
