use super::space::{fock, FockIndex, FockOp, Parity, SpaceSpec};
use crate::error::Error;
use crate::scalar_rings::{LinearMap, Rational, RootTwoNumber, SparseVector};

/// Basis elements of so(N), indices 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SoElement {
    /// `x_{w_i, w_j}`, `i < j`.
    XVW(usize, usize),
    /// `x_{w_i}`; odd N only.
    XV(usize),
    /// `h_{w_i, w_j*}`.
    H(usize, usize),
    /// `y_{w_j*}`; odd N only.
    YL(usize),
    /// `y_{w_i*, w_j*}`, `i < j`.
    YLM(usize, usize),
}

/// A basis of so(N) for the given space.
pub fn so_basis(s: &SpaceSpec) -> Vec<SoElement> {
    let m = s.m;
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            out.push(SoElement::XVW(i, j));
            out.push(SoElement::YLM(i, j));
        }
        for j in 1..=m {
            out.push(SoElement::H(i, j));
        }
        if s.parity == Parity::Odd {
            out.push(SoElement::XV(i));
            out.push(SoElement::YL(i));
        }
    }
    out
}

fn check(g: SoElement, s: &SpaceSpec) -> Result<(), Error> {
    let in_range = |i: usize| (1..=s.m).contains(&i);
    let ok = match g {
        SoElement::XVW(i, j) | SoElement::YLM(i, j) => in_range(i) && in_range(j) && i < j,
        SoElement::H(i, j) => in_range(i) && in_range(j),
        SoElement::XV(i) | SoElement::YL(i) => in_range(i) && s.parity == Parity::Odd,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{g:?} is not a basis element of so({})", s.big_n)))
    }
}

/// `g` acting on a basis vector of V, as `(coefficient, basis vector)` pairs.
fn on_v(g: SoElement, s: &SpaceSpec, u: usize) -> Vec<(i64, usize)> {
    let w = |i| s.w(i);
    let ws = |i| s.w_star(i);
    let e = s.e();
    let mut out = Vec::new();
    let mut push = |c: i64, b: usize| out.push((c, b));
    match g {
        SoElement::XVW(i, j) => {
            // η ↦ η(w_j) w_i − η(w_i) w_j
            if u == ws(j) {
                push(1, w(i));
            }
            if u == ws(i) {
                push(-1, w(j));
            }
        }
        SoElement::XV(i) => {
            let e = e.expect("odd N");
            if u == ws(i) {
                push(-1, e);
            }
            if u == e {
                push(1, w(i));
            }
        }
        SoElement::H(i, j) => {
            if u == w(j) {
                push(1, w(i));
            }
            if u == ws(i) {
                push(-1, ws(j));
            }
        }
        SoElement::YL(j) => {
            let e = e.expect("odd N");
            if u == w(j) {
                push(1, e);
            }
            if u == e {
                push(-1, ws(j));
            }
        }
        SoElement::YLM(i, j) => {
            // u ↦ μ(u) λ − λ(u) μ with λ = w_i*, μ = w_j*
            if u == w(j) {
                push(1, ws(i));
            }
            if u == w(i) {
                push(-1, ws(j));
            }
        }
    }
    out
}

fn chain(ops: &[FockOp], a: FockIndex) -> Option<(i64, FockIndex)> {
    // Rightmost operator first.
    ops.iter().rev().try_fold((1, a), |(k, x), &op| fock(op, x).map(|(k2, y)| (k * k2, y)))
}

/// `ρ(g)` on a wedge.
fn on_spinor(g: SoElement, a: FockIndex) -> SparseVector {
    let half = RootTwoNumber::from_rational(Rational::new(1, 2));
    let (ops, scale): (Vec<FockOp>, RootTwoNumber) = match g {
        SoElement::XVW(i, j) => (vec![FockOp::X(i), FockOp::X(j)], RootTwoNumber::one()),
        SoElement::XV(i) => (vec![FockOp::X(i), FockOp::Parity], RootTwoNumber::inv_sqrt2()),
        SoElement::H(i, j) => (vec![FockOp::X(i), FockOp::Dstar(j)], RootTwoNumber::one()),
        SoElement::YL(j) => (vec![FockOp::Parity, FockOp::Dstar(j)], RootTwoNumber::inv_sqrt2()),
        SoElement::YLM(i, j) => (vec![FockOp::Dstar(i), FockOp::Dstar(j)], RootTwoNumber::one()),
    };
    let mut out = SparseVector::new();
    if let Some((k, b)) = chain(&ops, a) {
        out.add_term(b.0 as usize, &scale * &RootTwoNumber::from_integer(k));
    }
    if let SoElement::H(i, j) = g {
        if i == j {
            out.add_term(a.0 as usize, -half);
        }
    }
    out
}

/// The derivation action of `g` on `V^{⊗n} ⊗ Δ`.
pub fn act_so(g: SoElement, s: &SpaceSpec) -> Result<LinearMap, Error> {
    check(g, s)?;
    LinearMap::from_fn(s.dim(), s.dim(), |col| {
        let (v, a) = s.decode(col);
        let mut out = SparseVector::new();
        for k in 0..s.n {
            for (c, b) in on_v(g, s, v[k]) {
                let mut w = v.clone();
                w[k] = b;
                out.add_term(s.index(&w, a), RootTwoNumber::from_integer(c));
            }
        }
        for (x, c) in on_spinor(g, a).iter() {
            out.add_term(s.index(&v, FockIndex(x as u32)), c.clone());
        }
        out
    })
}

/// The action of `γ = (1/√2)(w₁ − w₁*)` with the V-convention `u ↦ −R(u)`,
/// `R` exchanging `w₁` and `w₁*` and fixing the rest of the basis.
pub fn act_gamma(s: &SpaceSpec) -> LinearMap {
    act_gamma_with_sign(s, -1)
}

/// Like [`act_gamma`] but with `u ↦ sign · R(u)` on each V factor.
pub fn act_gamma_with_sign(s: &SpaceSpec, sign: i64) -> LinearMap {
    let reflect = |b: usize| {
        if b == s.w(1) {
            s.w_star(1)
        } else if b == s.w_star(1) {
            s.w(1)
        } else {
            b
        }
    };
    let k = RootTwoNumber::inv_sqrt2();
    LinearMap::from_fn(s.dim(), s.dim(), |col| {
        let (v, a) = s.decode(col);
        let w: Vec<usize> = v.iter().map(|&b| reflect(b)).collect();
        let vsign = if s.n % 2 == 1 { sign } else { 1 };
        let mut out = SparseVector::new();
        for (op, c) in [(FockOp::X(1), 1), (FockOp::Dstar(1), -1)] {
            if let Some((k2, b)) = fock(op, a) {
                out.add_term(s.index(&w, b), &k * &RootTwoNumber::from_integer(c * k2 * vsign));
            }
        }
        out
    })
    .expect("indices stay in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_on_w1() {
        let s = SpaceSpec::new(3, 1).unwrap();
        let h = act_so(SoElement::H(1, 1), &s).unwrap();
        let a = FockIndex(0);
        // The V part gives w₁; ρ(h) contributes X₁D₁ − ½ = −½ on the vacuum.
        let col = s.index(&[s.w(1)], a);
        assert_eq!(
            h.entry(col, col),
            RootTwoNumber::from_integer(1) + RootTwoNumber::from_rational(Rational::new(-1, 2))
        );
    }

    #[test]
    fn y_on_e() {
        let s = SpaceSpec::new(3, 1).unwrap();
        assert_eq!(on_v(SoElement::YL(1), &s, s.e().unwrap()), vec![(-1, s.w_star(1))]);
    }

    #[test]
    fn ylm_on_top_wedge() {
        let v = on_spinor(SoElement::YLM(1, 2), FockIndex::from_indices(&[1, 2]));
        assert_eq!(v.get(0), Some(&RootTwoNumber::from_integer(-1)));
    }

    #[test]
    fn gamma_on_spinor() {
        let s = SpaceSpec::new(3, 0).unwrap();
        let g = act_gamma(&s);
        assert_eq!(g.entry(1, 0), RootTwoNumber::inv_sqrt2());
        assert_eq!(g.entry(0, 1), -RootTwoNumber::inv_sqrt2());
    }

    #[test]
    fn rejects_odd_elements_for_even_n() {
        let s = SpaceSpec::new(4, 1).unwrap();
        assert!(act_so(SoElement::XV(1), &s).is_err());
        assert_eq!(so_basis(&s).len(), 6);
        assert_eq!(so_basis(&SpaceSpec::new(5, 0).unwrap()).len(), 10);
    }
}
