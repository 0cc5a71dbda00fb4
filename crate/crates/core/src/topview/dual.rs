//! Top views of the two parabola families of a surface `(P/R, Q/R, Z/R²)`
//! are lines of the plane; they are tangent to one dual conic.

use num_traits::Zero;

use super::TopviewError;
use crate::linalg::{cross, nullspace, rank};
use crate::scalar::{rat, Rational};
use crate::surface::{param_grid, ParabolicSurface};

pub type Vec3 = [Rational; 3];
pub type Sym3 = [[Rational; 3]; 3];

/// Outcome of the dual-conic fit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualConic {
    /// `lᵀ C* l = 0` for every top-view line `l`, `rank C* = 3`.
    SmoothConic(Sym3),
    /// Lines of one family pass through `p1`, lines of the other through `p2`.
    TwoPencils { p1: Vec3, p2: Vec3 },
    /// The whole top view lies on one line.
    Line(Vec3),
    /// The whole top view is one point, or all lines pass through it.
    Point(Vec3),
}

impl DualConic {
    pub fn name(&self) -> &'static str {
        match self {
            DualConic::SmoothConic(_) => "smooth_conic",
            DualConic::TwoPencils { .. } => "two_pencils",
            DualConic::Line(_) => "line",
            DualConic::Point(_) => "point",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualConicFit {
    pub outcome: DualConic,
    /// Coefficient matrix rows `P, Q, R` over columns `uv, u, v, 1`.
    pub matrix: [[Rational; 4]; 3],
    /// `rank C*` for a fitted conic, else the rank of `matrix`.
    pub rank: usize,
    pub lines_used: usize,
}

fn coeff_matrix(s: &ParabolicSurface) -> [[Rational; 4]; 3] {
    [&s.p, &s.q, &s.r].map(|p| [p.coeff(1, 1), p.coeff(1, 0), p.coeff(0, 1), p.coeff(0, 0)])
}

fn column(m: &[[Rational; 4]; 3], k: usize) -> Vec3 {
    [m[0][k].clone(), m[1][k].clone(), m[2][k].clone()]
}

fn axpy(t: &Rational, x: &Vec3, y: &Vec3) -> Vec3 {
    [0, 1, 2].map(|k| t * &x[k] + &y[k])
}

/// Line coordinates of the top views of `v = t` (first) and `u = t`
/// (second).
pub fn line_families(s: &ParabolicSurface, t: &Rational) -> (Vec3, Vec3) {
    let m = coeff_matrix(s);
    let [uv, u, v, one] = [0, 1, 2, 3].map(|k| column(&m, k));
    // at v = t the point is u·(t·uv + u) + (t·v + 1)
    let v_line = cross(&axpy(t, &uv, &u), &axpy(t, &v, &one));
    let u_line = cross(&axpy(t, &uv, &v), &axpy(t, &u, &one));
    (v_line, u_line)
}

fn is_zero3(l: &Vec3) -> bool {
    l.iter().all(Zero::is_zero)
}

/// `lᵀ C l`.
pub fn conic_eval(c: &Sym3, l: &Vec3) -> Rational {
    (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .fold(Rational::zero(), |acc, (i, j)| acc + &l[i] * &c[i][j] * &l[j])
}

fn veronese(l: &Vec3) -> Vec<Rational> {
    let two = rat(2);
    vec![
        &l[0] * &l[0],
        &l[1] * &l[1],
        &l[2] * &l[2],
        &two * &l[0] * &l[1],
        &two * &l[0] * &l[2],
        &two * &l[1] * &l[2],
    ]
}

fn sym_from(c: &[Rational]) -> Sym3 {
    [
        [c[0].clone(), c[3].clone(), c[4].clone()],
        [c[3].clone(), c[1].clone(), c[5].clone()],
        [c[4].clone(), c[5].clone(), c[2].clone()],
    ]
}

/// Scales so the first nonzero entry (row-major) is 1.
fn normalize_sym(c: Sym3) -> Sym3 {
    let pivot = c.iter().flatten().find(|x| !x.is_zero()).cloned().expect("nonzero conic");
    c.map(|row| row.map(|x| x / &pivot))
}

fn normalize_vec(p: Vec3) -> Vec3 {
    let pivot = p.iter().rev().find(|x| !x.is_zero()).cloned().expect("nonzero vector");
    p.map(|x| x / &pivot)
}

/// Common point of the given lines (cross product of two independent ones).
fn pencil_point(lines: &[Vec3]) -> Option<Vec3> {
    lines.iter().enumerate().find_map(|(k, a)| {
        lines[k + 1..].iter().map(|b| cross(a, b)).find(|p| !is_zero3(p))
    })
}

/// Fits the dual conic of the top-view lines of `s`.
pub fn dual_conic_param1(s: &ParabolicSurface) -> Result<DualConicFit, TopviewError> {
    dual_conic_with(s, 8)
}

pub fn dual_conic_with(s: &ParabolicSurface, per_family: usize) -> Result<DualConicFit, TopviewError> {
    let matrix = coeff_matrix(s);
    let rows: Vec<Vec<Rational>> = matrix.iter().map(|r| r.to_vec()).collect();
    let rk = rank(&rows);
    if rk <= 2 {
        let cols: Vec<Vec3> = (0..4).map(|k| column(&matrix, k)).filter(|c| !is_zero3(c)).collect();
        let outcome = if rk <= 1 {
            DualConic::Point(normalize_vec(cols[0].clone()))
        } else {
            DualConic::Line(normalize_vec(pencil_point(&cols).expect("rank 2 has two independent columns")))
        };
        return Ok(DualConicFit { outcome, matrix, rank: rk, lines_used: 0 });
    }
    let mut v_lines = Vec::new();
    let mut u_lines = Vec::new();
    for k in 0..per_family {
        let (lv, lu) = line_families(s, &param_grid(k));
        if !is_zero3(&lv) {
            v_lines.push(lv);
        }
        if !is_zero3(&lu) {
            u_lines.push(lu);
        }
    }
    let all: Vec<&Vec3> = v_lines.iter().chain(&u_lines).collect();
    let system: Vec<Vec<Rational>> = all.iter().map(|l| veronese(l)).collect();
    let lines_used = all.len();
    if rank(&system) < 5 {
        return Err(TopviewError::TooFewLines);
    }
    let null = nullspace(&system, 6);
    let [c] = null.as_slice() else {
        return Err(TopviewError::NoCommonConic);
    };
    let cs = normalize_sym(sym_from(c));
    let crank = rank(&cs.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    debug_assert!(all.iter().all(|l| conic_eval(&cs, l).is_zero()));
    let outcome = match crank {
        3 => DualConic::SmoothConic(cs),
        2 => {
            let (p1, p2) = (pencil_point(&v_lines), pencil_point(&u_lines));
            match (p1, p2) {
                (Some(p1), Some(p2)) => DualConic::TwoPencils {
                    p1: normalize_vec(p1),
                    p2: normalize_vec(p2),
                },
                _ => return Err(TopviewError::TooFewLines),
            }
        }
        _ => {
            let p = pencil_point(&v_lines).or_else(|| pencil_point(&u_lines)).ok_or(TopviewError::TooFewLines)?;
            DualConic::Point(normalize_vec(p))
        }
    };
    Ok(DualConicFit { outcome, matrix, rank: crank, lines_used })
}
