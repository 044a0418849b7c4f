use super::element::SpinGroupElement;
use crate::error::{Error, Result};
use crate::exactla::{q, GradedOperator, SparseVec, Q};
use crate::qalg::TensorSpace;

/// Image of one basis tuple under `g`: a single signed basis tuple.
pub(crate) fn act_on_tuple(g: &SpinGroupElement, m: usize, t: &[usize]) -> (Vec<usize>, Q) {
    let k = t.len();
    let odd = |i: usize| i >= m;
    let perm = g.perm();
    let mut u = vec![0; k];
    let mut sign = 1i64;
    for i in 0..k {
        u[perm[i]] = t[i];
        for j in i + 1..k {
            if perm[i] > perm[j] && odd(t[i]) && odd(t[j]) {
                sign = -sign;
            }
        }
    }
    for i in (0..k).rev() {
        if !g.eps()[i] {
            continue;
        }
        if u[..i].iter().filter(|&&x| odd(x)).count() % 2 == 1 {
            sign = -sign;
        }
        if u[i] < m {
            u[i] += m;
            sign = -sign;
        } else {
            u[i] -= m;
        }
    }
    (u, g.coeff() * q(sign))
}

/// The operator of `g` on `⊗^k C^{m|m}`: `a_i` applies `P` to factor `i`
/// after the sign of the factors before it, `σ` moves factor `i` to
/// position `σ(i)` with Koszul signs.
pub fn act_tensor(g: &SpinGroupElement, space: &TensorSpace) -> Result<GradedOperator> {
    if g.k() != space.k() {
        return Err(Error::DegreeMismatch(g.k(), space.k()));
    }
    GradedOperator::from_fn(space.module(), g.parity(), |idx| {
        let (u, c) = act_on_tuple(g, space.m(), &space.tuple(idx));
        SparseVec::from_entries([(space.index(&u), c)])
    })
}

/// Images of every normal-form word with coefficient 1.
pub fn all_actions(space: &TensorSpace) -> Result<Vec<GradedOperator>> {
    SpinGroupElement::enumerate(space.k())
        .iter()
        .map(|g| act_tensor(g, space))
        .collect()
}

/// Images of the generators `a_1, s_1, ..., s_{k-1}`.
pub fn generator_actions(space: &TensorSpace) -> Result<Vec<GradedOperator>> {
    SpinGroupElement::generators(space.k())
        .iter()
        .map(|g| act_tensor(g, space))
        .collect()
}

/// `act(a_i)` for every `i`.
pub fn a_actions(space: &TensorSpace) -> Result<Vec<GradedOperator>> {
    (0..space.k())
        .map(|i| act_tensor(&SpinGroupElement::a(space.k(), i), space))
        .collect()
}

#[cfg(test)]
fn minus_identity_check(op: &GradedOperator) -> Result<bool> {
    let sq = op.compose(op)?;
    Ok(sq == GradedOperator::identity(op.domain()).scale(&q(-1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::{basis_actions, tensor_action, QElement};

    fn vec_of(space: &TensorSpace, c: i64, label: &str) -> SparseVec {
        SparseVec::from_entries([(space.module().position(label).unwrap(), q(c))])
    }

    #[test]
    fn spec_examples() {
        let s = TensorSpace::new(1, 2).unwrap();
        let a1 = act_tensor(&SpinGroupElement::a(2, 0), &s).unwrap();
        assert_eq!(a1.apply(&vec_of(&s, 1, "e1⊗e1")), vec_of(&s, -1, "f1⊗e1"));
        let a2 = act_tensor(&SpinGroupElement::a(2, 1), &s).unwrap();
        assert_eq!(a2.apply(&vec_of(&s, 1, "f1⊗e1")), vec_of(&s, 1, "f1⊗f1"));
        let sw = act_tensor(&SpinGroupElement::s(2, 0), &s).unwrap();
        assert_eq!(sw.apply(&vec_of(&s, 1, "e1⊗f1")), vec_of(&s, 1, "f1⊗e1"));
        assert_eq!(sw.apply(&vec_of(&s, 1, "f1⊗f1")), vec_of(&s, -1, "f1⊗f1"));
    }

    #[test]
    fn relations() {
        for k in 1..=4 {
            for m in 1..=3usize {
                if (2 * m).pow(k as u32) > 1296 {
                    continue;
                }
                let s = TensorSpace::new(m, k).unwrap();
                let a = a_actions(&s).unwrap();
                for i in 0..k {
                    assert!(minus_identity_check(&a[i]).unwrap());
                    for j in i + 1..k {
                        let anti = a[i].compose(&a[j]).unwrap().add(&a[j].compose(&a[i]).unwrap()).unwrap();
                        assert!(anti.is_zero());
                    }
                }
                for t in 0..k.saturating_sub(1) {
                    let sg = SpinGroupElement::s(k, t);
                    let so = act_tensor(&sg, &s).unwrap();
                    for i in 0..k {
                        let j = sg.perm()[i];
                        // s is an involution, so s^{-1} = s
                        let conj = so.compose(&a[i]).unwrap().compose(&so).unwrap();
                        assert_eq!(conj, a[j], "k={k} m={m} s{t} a{i}");
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_on_all_pairs() {
        let s = TensorSpace::new(2, 2).unwrap();
        let all = SpinGroupElement::enumerate(2);
        let ops = all_actions(&s).unwrap();
        for (g, og) in all.iter().zip(&ops) {
            for (h, oh) in all.iter().zip(&ops) {
                let gh = act_tensor(&g.multiply(h).unwrap(), &s).unwrap();
                assert_eq!(og.compose(oh).unwrap(), gh, "{g} {h}");
            }
        }
    }

    #[test]
    fn supercommutes_with_q() {
        for (m, k) in [(1, 2), (2, 2), (2, 3)] {
            let s = TensorSpace::new(m, k).unwrap();
            let qs = basis_actions(&s).unwrap();
            for g in generator_actions(&s).unwrap().iter().chain(&a_actions(&s).unwrap()) {
                for x in &qs {
                    assert!(g.superbracket(x).unwrap().is_zero());
                }
            }
        }
        let x = tensor_action(&QElement::odd_unit(1, 0, 0), 1, 1).unwrap();
        assert!(!x.is_zero());
    }

    #[test]
    fn span_dimension_is_faithful_for_large_m() {
        use crate::exactla::span_dim;
        let s = TensorSpace::new(2, 2).unwrap();
        assert_eq!(span_dim(&all_actions(&s).unwrap()), 8);
        let s = TensorSpace::new(1, 2).unwrap();
        assert!(span_dim(&all_actions(&s).unwrap()) <= 8);
    }
}
