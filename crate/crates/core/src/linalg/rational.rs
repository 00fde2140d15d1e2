//! Gaussian elimination over Q with arbitrary-precision fractions.

use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Reduction of a `p`-local rational modulo `p`; `None` when `p` divides the
/// denominator.
pub fn reduce_mod_p(x: &Q, p: u32) -> Option<u8> {
    let pb = num_bigint::BigInt::from(p);
    let den = x.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let num = x.numer().mod_floor(&pb);
    let to_u8 = |v: num_bigint::BigInt| v.to_u32().expect("residue fits") as u8;
    Some(super::fp::mul(to_u8(num), super::fp::inv(to_u8(den), p), p))
}

/// Whether `p` does not divide the reduced denominator.
pub fn is_p_local(x: &Q, p: u32) -> bool {
    !x.denom().mod_floor(&num_bigint::BigInt::from(p)).is_zero()
}

/// Row-reduces `rows` (each of length `width`) in place to reduced row
/// echelon form, dropping zero rows. Returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Q>>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r >= rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let pv = rows[r][col].clone();
        if !pv.is_one() {
            for x in rows[r].iter_mut() {
                *x = &*x / &pv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{v : A v = 0}` where `A` is given by its rows.
pub fn kernel(rows: &[Vec<Q>], width: usize) -> Vec<Vec<Q>> {
    let mut a = rows.to_vec();
    let pivots = rref(&mut a, width);
    let mut is_pivot = vec![false; width];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..width)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Q::zero(); width];
            v[free] = Q::one();
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = -row[free].clone();
            }
            v
        })
        .collect()
}

pub fn rank(rows: &[Vec<Q>], width: usize) -> usize {
    let mut a = rows.to_vec();
    rref(&mut a, width).len()
}

/// All solutions of `A x = b`: a particular solution and a kernel basis.
pub fn solve_affine(rows: &[Vec<Q>], rhs: &[Q], width: usize) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
    assert_eq!(rows.len(), rhs.len());
    let mut aug: Vec<Vec<Q>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let pivots = rref(&mut aug, width + 1);
    if pivots.last() == Some(&width) {
        return None;
    }
    let mut x = vec![Q::zero(); width];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[width].clone();
    }
    Some((x, kernel(rows, width)))
}
