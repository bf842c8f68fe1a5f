use serde_json::{json, Value};

use super::partitions::join;
use crate::diagram_core::{cell_decode, cell_encode, AlgebraElement, CellTriple, PartitionLE2, SpinDiagram};
use crate::error::Error;
use crate::mult_engine::multiply_diagrams;
use crate::scalar_rings::DeltaPolynomial;

/// A value of `φ_ℓ`: zero, or `δ^delta_power · 2^two_power · perm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiValue {
    pub zero: bool,
    pub delta_power: u32,
    pub two_power: u32,
    /// 1-based images; empty when `zero`.
    pub perm: Vec<usize>,
}

impl PhiValue {
    fn zero() -> Self {
        PhiValue { zero: true, delta_power: 0, two_power: 0, perm: Vec::new() }
    }

    /// The scalar `δ^k · 2^j` as a polynomial; zero when `zero`.
    pub fn scalar(&self) -> DeltaPolynomial {
        if self.zero {
            return DeltaPolynomial::zero();
        }
        DeltaPolynomial::monomial(num_bigint::BigInt::from(2).pow(self.two_power), self.delta_power)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "delta_power": self.delta_power,
            "perm": self.perm,
            "two_power": self.two_power,
            "zero": self.zero,
        })
    }
}

pub fn invert_permutation(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j - 1] = i + 1;
    }
    out
}

/// Left-to-right composition: first `p`, then `q`.
pub fn compose_permutations(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&i| q[i - 1]).collect()
}

/// Matches each element of `gamma_t` with a later element of `gamma_s` by
/// repeatedly removing a `Γ_T` element immediately followed by a `Γ_S`
/// element. Returns the removed pairs `(s, t)` as positions in the common
/// γ-sequence; `β` is their number.
fn beta_pairs(gamma_s: &[usize], gamma_t: &[usize]) -> Vec<(usize, usize)> {
    let mut merged: Vec<(usize, bool)> =
        gamma_s.iter().map(|&g| (g, true)).chain(gamma_t.iter().map(|&g| (g, false))).collect();
    merged.sort_unstable();
    let mut open: Vec<usize> = Vec::new();
    let mut pairs = Vec::new();
    for (g, is_s) in merged {
        if is_s {
            if let Some(t) = open.pop() {
                pairs.push((g, t));
            }
        } else {
            open.push(g);
        }
    }
    pairs
}

/// The number of `(i+1, i)` removals that leave every element of `Γ_S`
/// before every element of `Γ_T`. The removal order is forced, so this is
/// always defined.
pub fn beta(gamma_s: &[usize], gamma_t: &[usize]) -> usize {
    beta_pairs(gamma_s, gamma_t).len()
}

/// `φ_ℓ((x,S),(y,T))`.
pub fn phi_ell(ell: usize, x: &PartitionLE2, s: &[usize], y: &PartitionLE2, t: &[usize]) -> Result<PhiValue, Error> {
    if s.len() != ell || t.len() != ell || x.n() != y.n() {
        return Err(Error::InvalidArgument(format!("need |S| = |T| = ℓ = {ell} on a common vertex set")));
    }
    let xy = join(x, y);
    let comp_s: Vec<usize> = s.iter().map(|&v| xy.block_of(v)).collect();
    let comp_t: Vec<usize> = t.iter().map(|&v| xy.block_of(v)).collect();

    // (1) two S's or two T's in one component.
    let repeats = |c: &[usize]| (0..c.len()).any(|i| c[i + 1..].contains(&c[i]));
    if repeats(&comp_s) || repeats(&comp_t) {
        return Ok(PhiValue::zero());
    }

    let gammas: Vec<usize> = x
        .singletons()
        .into_iter()
        .filter(|v| !s.contains(v))
        .chain(y.singletons().into_iter().filter(|v| !t.contains(v)))
        .collect();
    let comp_g: Vec<usize> = gammas.iter().map(|&v| xy.block_of(v)).collect();
    let gamma_s: Vec<usize> = (0..gammas.len()).filter(|&g| comp_s.contains(&comp_g[g])).collect();
    let gamma_t: Vec<usize> = (0..gammas.len()).filter(|&g| comp_t.contains(&comp_g[g])).collect();

    // (2)
    if gamma_s.len() != gamma_t.len() {
        return Ok(PhiValue::zero());
    }
    // (3)
    let crossings: Vec<(usize, usize)> =
        (0..ell).filter_map(|i| comp_t.iter().position(|&c| c == comp_s[i]).map(|j| (i, j))).collect();
    if crossings.len() + gamma_s.len() != ell {
        return Ok(PhiValue::zero());
    }
    // (4)
    let pairs = beta_pairs(&gamma_s, &gamma_t);
    if pairs.len() != gamma_s.len() {
        return Ok(PhiValue::zero());
    }

    let mut perm = vec![0; ell];
    for (i, j) in crossings {
        perm[i] = j + 1;
    }
    for (gs, gt) in pairs {
        let k = comp_s.iter().position(|&c| c == comp_g[gs]).expect("γ in Γ_S meets some S");
        let m = comp_t.iter().position(|&c| c == comp_g[gt]).expect("γ in Γ_T meets some T");
        perm[k] = m + 1;
    }
    let closed = (0..xy.blocks.len()).filter(|c| !comp_s.contains(c) && !comp_t.contains(c)).count();
    Ok(PhiValue { zero: false, delta_power: closed as u32, two_power: gamma_s.len() as u32, perm })
}

/// The term of `top · bottom` with `ℓ` through strings predicted by `φ_ℓ`,
/// for two diagrams that both have `ℓ` through strings.
pub fn modmult_prediction(top: &SpinDiagram, bottom: &SpinDiagram) -> Result<Option<AlgebraElement>, Error> {
    let c1 = cell_encode(top);
    let c2 = cell_encode(bottom);
    if c1.ell != c2.ell {
        return Ok(None);
    }
    let ell = c1.ell;
    let phi = phi_ell(ell, &c1.y, &c1.t, &c2.x, &c2.s)?;
    if phi.zero {
        return Ok(Some(AlgebraElement::zero(top.n())));
    }
    let sigma = compose_permutations(&compose_permutations(&c1.sigma, &phi.perm), &c2.sigma);
    let d = cell_decode(&CellTriple { ell, x: c1.x, s: c1.s, y: c2.y, t: c2.t, sigma })?;
    Ok(Some(AlgebraElement::term(d, phi.scalar())))
}

/// Whether `top · bottom`, modulo diagrams with fewer than `ℓ` through
/// strings, is the element predicted by `φ_ℓ`. Vacuously true when the
/// through counts differ.
pub fn modmult_check(top: &SpinDiagram, bottom: &SpinDiagram) -> Result<bool, Error> {
    let Some(predicted) = modmult_prediction(top, bottom)? else {
        return Ok(true);
    };
    let product = multiply_diagrams(top, bottom)?;
    Ok(product.with_through_count(top.through_count()) == predicted)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(n: usize, blocks: &[&[usize]]) -> PartitionLE2 {
        PartitionLE2::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn beta_example() {
        // γ indices are 0-based here.
        assert_eq!(beta(&[0, 1, 4, 5], &[2, 3, 6]), 2);
        assert_eq!(beta(&[], &[]), 0);
        assert_eq!(beta(&[1], &[0]), 1);
        assert_eq!(beta(&[0], &[1]), 0);
    }

    #[test]
    fn three_string_example() {
        let x = part(8, &[&[1], &[2], &[3], &[4], &[5], &[6], &[7, 8]]);
        let y = part(8, &[&[1, 3], &[2], &[4], &[5], &[6, 7], &[8]]);
        let v = phi_ell(3, &x, &[1, 4, 6], &y, &[2, 5, 8]).unwrap();
        assert_eq!(v, PhiValue { zero: false, delta_power: 0, two_power: 2, perm: vec![1, 2, 3] });
    }

    #[test]
    fn identical_full_singletons() {
        let x = part(3, &[&[1], &[2], &[3]]);
        let v = phi_ell(3, &x, &[1, 2, 3], &x, &[1, 2, 3]).unwrap();
        assert_eq!(v, PhiValue { zero: false, delta_power: 0, two_power: 0, perm: vec![1, 2, 3] });
    }

    #[test]
    fn one_string_with_crossed_leftovers() {
        // The leftover singletons pair up through one Clifford swap.
        let x = part(2, &[&[1], &[2]]);
        let v = phi_ell(1, &x, &[1], &x, &[2]).unwrap();
        assert_eq!(v, PhiValue { zero: false, delta_power: 0, two_power: 1, perm: vec![1] });
        let top = SpinDiagram::from_parts(2, &[2], &[2], &[], &[], &[(1, 1)]).unwrap();
        let bottom = SpinDiagram::from_parts(2, &[1], &[2], &[], &[], &[(2, 1)]).unwrap();
        assert!(modmult_check(&top, &bottom).unwrap());
    }

    #[test]
    fn permutation_helpers() {
        assert_eq!(invert_permutation(&[2, 3, 1]), vec![3, 1, 2]);
        assert_eq!(compose_permutations(&[2, 3, 1], &invert_permutation(&[2, 3, 1])), vec![1, 2, 3]);
    }

    #[test]
    fn identity_modmult() {
        let id = SpinDiagram::identity(2);
        assert!(modmult_check(&id, &id).unwrap());
    }
}
