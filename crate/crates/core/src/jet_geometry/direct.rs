//! Direct evaluation of the wedge-contracted invariants from their defining
//! sums, bypassing the symbolic expansion entirely. These are the oracles the
//! expansions are checked against.
//!
//! The wedge inner product is the determinant `det(delta_{i_a j_b})` with no
//! `1/p!` factor. It vanishes unless the `i` tuple is injective and the `j`
//! tuple is a permutation of it, in which case it equals the sign of that
//! permutation, so the defining sum reduces to a sum over injective tuples
//! and permutations.

use super::curvature::CurvatureValues;
use super::eval::{EvalScalar, SymMat};
use super::JetError;

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i8)> {
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i8)>) {
        if current.len() == n {
            let mut inversions = 0usize;
            for i in 0..n {
                for j in i + 1..n {
                    if current[i] > current[j] {
                        inversions += 1;
                    }
                }
            }
            out.push((current.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Calls `f` for every injective tuple of length `n` with entries `< m`.
fn for_each_injection(m: usize, n: usize, f: &mut impl FnMut(&[usize])) {
    let mut tuple = vec![0usize; n];
    let mut used = vec![false; m];
    fn rec(
        pos: usize,
        m: usize,
        n: usize,
        tuple: &mut Vec<usize>,
        used: &mut Vec<bool>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if pos == n {
            f(tuple);
            return;
        }
        for v in 0..m {
            if used[v] {
                continue;
            }
            used[v] = true;
            tuple[pos] = v;
            rec(pos + 1, m, n, tuple, used, f);
            used[v] = false;
        }
    }
    rec(0, m, n, &mut tuple, &mut used, f);
}

fn check_even(n: u32) -> Result<(), JetError> {
    if n % 2 != 0 {
        return Err(JetError::UnsupportedWeight { weight: n, max: 0 });
    }
    Ok(())
}

/// Product of the curvature factors `R[t_{2r}, t_{2r+1}, t_{pi(2r+1)}, t_{pi(2r)}]`.
fn factor_product<T: EvalScalar>(
    data: &CurvatureValues<T>,
    tuple: &[usize],
    perm: &[usize],
    pairs: usize,
) -> Option<T> {
    let mut prod = T::one();
    for r in 0..pairs {
        let v = data.get(
            [
                tuple[2 * r],
                tuple[2 * r + 1],
                tuple[perm[2 * r + 1]],
                tuple[perm[2 * r]],
            ],
            &[],
        );
        if v.is_zero() {
            return None;
        }
        prod = prod.mul_ref(v);
    }
    Some(prod)
}

/// The scalar wedge-contracted invariant of weight `n` evaluated directly.
/// Returns 0 whenever `n` exceeds the dimension (the wedge collapses).
pub fn pfaffian_direct<T: EvalScalar>(data: &CurvatureValues<T>, n: u32) -> Result<T, JetError> {
    check_even(n)?;
    let n = n as usize;
    if n == 0 {
        return Ok(T::one());
    }
    let m = data.dim();
    let mut acc = T::zero();
    if n > m {
        return Ok(acc);
    }
    let perms = permutations_with_sign(n);
    let minus_one = T::from_rational(&crate::rational::rat(-1, 1));
    for_each_injection(m, n, &mut |tuple| {
        for (perm, sign) in &perms {
            if let Some(prod) = factor_product(data, tuple, perm, n / 2) {
                if *sign > 0 {
                    acc.add_assign_ref(&prod);
                } else {
                    acc.add_assign_ref(&prod.mul_ref(&minus_one));
                }
            }
        }
    });
    Ok(acc)
}

/// The symmetric-2-form wedge-contracted invariant of weight `n` (wedge rank
/// `n+1`) evaluated directly into frame components.
pub fn t2_direct<T: EvalScalar>(data: &CurvatureValues<T>, n: u32) -> Result<SymMat<T>, JetError> {
    check_even(n)?;
    let n = n as usize;
    let m = data.dim();
    let mut acc = SymMat::zero(m);
    if n + 1 > m {
        return Ok(acc);
    }
    let perms = permutations_with_sign(n + 1);
    let half = T::from_rational(&crate::rational::rat(1, 2));
    let neg_half = T::from_rational(&crate::rational::rat(-1, 2));
    let one = T::one();
    let neg_one = T::from_rational(&crate::rational::rat(-1, 1));
    for_each_injection(m, n + 1, &mut |tuple| {
        for (perm, sign) in &perms {
            if let Some(prod) = factor_product(data, tuple, perm, n / 2) {
                let u = tuple[n];
                let v = tuple[perm[n]];
                // Components of the symmetric product: a term with free
                // indices (u, v) contributes prod/2 to the packed (u, v)
                // entry when u != v, and the full product on the diagonal.
                let w = match (u == v, *sign > 0) {
                    (true, true) => &one,
                    (true, false) => &neg_one,
                    (false, true) => &half,
                    (false, false) => &neg_half,
                };
                acc.add_at(u, v, &prod.mul_ref(w));
            }
        }
    });
    Ok(acc)
}
