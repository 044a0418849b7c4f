use std::collections::HashSet;
use std::sync::Arc;
use std::time::Instant;

use super::action::act_on_tuple;
use super::element::SpinGroupElement;
use crate::dualities::{Params, ReportBuilder, VerificationReport};
use crate::error::Result;
use crate::exactla::{joint_kernel, q, rank, GradedOperator, Parity, SparseVec, SuperModule};
use crate::qalg::{HoweSpace, QElement, Realization, TensorSpace};

/// `(⊗^k C^{m|m}) ⊗ (⊗^k C^{n|n})` with basis `(I, J)`, flat index
/// `I * (2n)^k + J`. Weights are `(lower in Z^m, upper in Z^n)`.
#[derive(Debug, Clone)]
pub struct PairSpace {
    left: TensorSpace,
    right: TensorSpace,
    module: Arc<SuperModule>,
}

impl PairSpace {
    pub fn new(k: usize, m: usize, n: usize) -> Result<Self> {
        let left = TensorSpace::new(m, k)?;
        let right = TensorSpace::new(n, k)?;
        let (dl, dr) = (left.dim(), right.dim());
        let mut labels = Vec::with_capacity(dl * dr);
        let mut parities = Vec::with_capacity(dl * dr);
        let mut weights = Vec::with_capacity(dl * dr);
        for i in 0..dl {
            for j in 0..dr {
                labels.push(format!("{}|{}", left.module().label(i), right.module().label(j)));
                parities.push(left.module().parity(i) + right.module().parity(j));
                let mut w = left.module().weight(i).unwrap().to_vec();
                w.extend_from_slice(right.module().weight(j).unwrap());
                weights.push(w);
            }
        }
        let module = Arc::new(SuperModule::new(labels, parities, Some(weights))?);
        Ok(Self { left, right, module })
    }

    pub fn module(&self) -> &Arc<SuperModule> {
        &self.module
    }

    pub fn left(&self) -> &TensorSpace {
        &self.left
    }

    pub fn right(&self) -> &TensorSpace {
        &self.right
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.right.dim() + j
    }

    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx / self.right.dim(), idx % self.right.dim())
    }

    /// Diagonal action `g·(v⊗w) = (-1)^{p(g)(p(v)+p(w))} gv ⊗ gw`.
    pub fn diagonal(&self, g: &SpinGroupElement) -> Result<GradedOperator> {
        let (m, n) = (self.left.m(), self.right.m());
        let odd_g = g.parity().is_odd();
        GradedOperator::from_fn(&self.module, Parity::Even, |idx| {
            let (i, j) = self.split(idx);
            let (u, c1) = act_on_tuple(g, m, &self.left.tuple(i));
            let (w, c2) = act_on_tuple(g, n, &self.right.tuple(j));
            let mut c = c1 * c2;
            if odd_g && self.module.parity(idx).is_odd() {
                c = -c;
            }
            SparseVec::from_entries([(self.index(self.left.index(&u), self.right.index(&w)), c)])
        })
    }

    /// `X ⊗ 1` for `X` in `q(m)` (standard form).
    pub fn left_action(&self, x: &QElement) -> Result<GradedOperator> {
        let op = self.left.action(x, Realization::Standard)?;
        GradedOperator::from_fn(&self.module, op.parity(), |idx| {
            let (i, j) = self.split(idx);
            op.column(i).map_indices(|r| self.index(r, j))
        })
    }

    /// `1 ⊗ Ŷ` with the Koszul sign `(-1)^{p(Y)p(v)}`, where `Ŷ = Y` for even
    /// `Y` and `Ŷ = ε ∘ Y` for odd `Y` (`ε` the parity operator of
    /// `⊗^k C^{n|n}`). `Ŷ` commutes with the Sergeev group and satisfies the
    /// q(n) relations with odd brackets negated; on `k = 1` it is the twisted
    /// matrix `[[A, B], [-B, A]]`.
    pub fn right_action(&self, y: &QElement) -> Result<GradedOperator> {
        let mut op = self.right.action(y, Realization::Standard)?;
        if op.parity().is_odd() {
            op = GradedOperator::parity_operator(self.right.module()).compose(&op)?;
        }
        let py = op.parity();
        GradedOperator::from_fn(&self.module, py, |idx| {
            let (i, j) = self.split(idx);
            let col = op.column(j).map_indices(|r| self.index(i, r));
            col.scale(&q(py.koszul(self.left.module().parity(i))))
        })
    }
}

/// Vectors fixed by the diagonal action of the generators `a_1, s_i`.
pub fn delta_invariants(k: usize, m: usize, n: usize) -> Result<(PairSpace, Vec<SparseVec>)> {
    let space = PairSpace::new(k, m, n)?;
    let ops = SpinGroupElement::generators(k)
        .iter()
        .map(|g| space.diagonal(g)?.sub(&GradedOperator::identity(space.module())))
        .collect::<Result<Vec<_>>>()?;
    let basis = joint_kernel(space.module(), &ops)?;
    Ok((space, basis))
}

/// The map `S^k(C^{mn|mn}) -> (⊗^k C^{m|m} ⊗ ⊗^k C^{n|n})^{ΔH_k}`: a
/// monomial `y_1 ... y_k` goes to the average, over the group generated by the
/// diagonal generators, of `φ(y_1) ⊗ ... ⊗ φ(y_k)` regrouped as
/// `(v_1 ⊗ ... ⊗ v_k) ⊗ (w_1 ⊗ ... ⊗ w_k)` and multiplied by
/// `(-1)^{N(N-1)/2}`, `N` the number of odd `w_s`. Here
/// `φ(x_i^j) = e_i⊗e_j + f_i⊗f_j` and `φ(ξ_i^j) = e_i⊗f_j + f_i⊗e_j`.
#[derive(Debug, Clone)]
pub struct SymkIsomorphism {
    pub source: PairSpace,
    pub target: HoweSpace,
    /// Image of each monomial basis vector of the target, in target order.
    pub images: Vec<SparseVec>,
}

/// The two `φ` terms of variable `c` as `(left index, right index)` pairs.
fn phi(space: &HoweSpace, c: usize) -> [(usize, usize); 2] {
    let (m, n) = (space.m(), space.n());
    let odd = c >= m * n;
    let r = c % (m * n);
    let (i, j) = (r / n, r % n);
    if odd {
        [(i, n + j), (m + i, j)]
    } else {
        [(i, j), (m + i, n + j)]
    }
}

/// All products of the given invertible operators, which must generate a
/// finite group.
fn generated_group(gens: &[GradedOperator], space: &Arc<SuperModule>) -> Result<Vec<GradedOperator>> {
    let identity = GradedOperator::identity(space);
    let mut seen: HashSet<Vec<SparseVec>> = HashSet::from([identity.columns().to_vec()]);
    let mut group = vec![identity];
    let mut next = 0;
    while next < group.len() {
        for g in gens {
            let h = g.compose(&group[next])?;
            if seen.insert(h.columns().to_vec()) {
                group.push(h);
            }
        }
        next += 1;
    }
    Ok(group)
}

pub fn iso_to_symk(k: usize, m: usize, n: usize) -> Result<SymkIsomorphism> {
    let source = PairSpace::new(k, m, n)?;
    let target = HoweSpace::new(m, n, k)?;
    let gens: Vec<GradedOperator> = SpinGroupElement::generators(k)
        .iter()
        .map(|g| source.diagonal(g))
        .collect::<Result<_>>()?;
    let group = generated_group(&gens, source.module())?;
    let mut images = Vec::with_capacity(target.poly().dim());
    for mono in 0..target.poly().dim() {
        let exps = target.poly().monomial(mono);
        let factors: Vec<usize> = exps
            .iter()
            .enumerate()
            .flat_map(|(c, e)| std::iter::repeat_n(c, *e as usize))
            .collect();
        let mut naive = SparseVec::new();
        for choice in 0..1usize << k {
            let mut left = Vec::with_capacity(k);
            let mut right = Vec::with_capacity(k);
            for (t, &c) in factors.iter().enumerate() {
                let (v, w) = phi(&target, c)[choice >> t & 1];
                left.push(v);
                right.push(w);
            }
            // the diagonal action is the natural one conjugated by (-1)^{N(N-1)/2},
            // N the number of odd right factors
            let odd_right = right.iter().filter(|&&w| w >= n).count();
            let mut sign = if odd_right * odd_right.saturating_sub(1) / 2 % 2 == 0 { 1i64 } else { -1 };
            for s in 0..k {
                for t in s + 1..k {
                    if right[s] >= n && left[t] >= m {
                        sign = -sign;
                    }
                }
            }
            let idx = source.index(source.left().index(&left), source.right().index(&right));
            naive = naive.add_scaled(&q(sign), &SparseVec::unit(idx));
        }
        let avg = group
            .iter()
            .fold(SparseVec::new(), |acc, d| acc.add_scaled(&q(1), &d.apply(&naive)));
        images.push(avg);
    }
    Ok(SymkIsomorphism {
        source,
        target,
        images,
    })
}

impl SymkIsomorphism {
    fn image_of(&self, v: &SparseVec) -> SparseVec {
        v.entries()
            .iter()
            .fold(SparseVec::new(), |acc, (i, c)| acc.add_scaled(c, &self.images[*i]))
    }

    /// Checks invariance, bijectivity onto the invariants, grading and
    /// intertwining of both actions, basis operator by basis operator.
    pub fn verify(&self, invariants: &[SparseVec], tamper: bool) -> Result<ReportBuilder> {
        let (m, n, k) = (self.target.m(), self.target.n(), self.target.poly().degree());
        let mut b = ReportBuilder::new(
            "iso-to-symk",
            Params::new().with("k", k).with("m", m).with("n", n),
        );
        let dim = self.target.poly().dim();
        b.check_eq("invariant dimension equals dim S^k", invariants.len(), dim);

        let gens: Vec<GradedOperator> = SpinGroupElement::generators(k)
            .iter()
            .map(|g| self.source.diagonal(g))
            .collect::<Result<_>>()?;
        let fixed = self
            .images
            .iter()
            .all(|v| gens.iter().all(|g| g.apply(v) == *v));
        b.check("images are invariant", fixed, || "an image moves under a generator".into());
        b.check_eq("images are independent", rank(&self.images), dim);

        let tm = self.target.poly().module();
        let sm = self.source.module();
        let graded = self.images.iter().enumerate().all(|(i, v)| {
            v.entries()
                .iter()
                .all(|(r, _)| sm.parity(*r) == tm.parity(i) && sm.weight(*r) == tm.weight(i))
        });
        b.check("map preserves parity and joint weight", graded, || {
            "an image has the wrong parity or weight".into()
        });

        let mut pairs: Vec<(String, GradedOperator, GradedOperator)> = Vec::new();
        for (x, l) in QElement::basis(m).iter().zip(QElement::basis_labels(m)) {
            pairs.push((format!("lower {l}"), self.target.lower_action(x)?, self.source.left_action(x)?));
        }
        for (y, l) in QElement::basis(n).iter().zip(QElement::basis_labels(n)) {
            pairs.push((format!("upper {l}"), self.target.upper_action(y)?, self.source.right_action(y)?));
        }
        if tamper {
            if let Some(p) = pairs.iter_mut().find(|p| !p.1.is_zero()) {
                p.1.tamper();
            }
        }
        let mut bad = None;
        'outer: for (name, on_poly, on_pair) in &pairs {
            for j in 0..dim {
                let lhs = self.image_of(on_poly.column(j));
                let rhs = on_pair.apply(&self.images[j]);
                if lhs != rhs {
                    bad = Some(format!("{name} on {}", tm.label(j)));
                    break 'outer;
                }
            }
        }
        b.check("map intertwines q(m) x q(n)", bad.is_none(), || bad.clone().unwrap_or_default());
        Ok(b)
    }
}

/// Full report: invariant dimension and the explicit isomorphism.
pub fn verify_invariants(k: usize, m: usize, n: usize, tamper: bool) -> VerificationReport {
    let start = Instant::now();
    let params = Params::new().with("k", k).with("m", m).with("n", n);
    let run = || -> Result<ReportBuilder> {
        let (_, inv) = delta_invariants(k, m, n)?;
        let iso = iso_to_symk(k, m, n)?;
        iso.verify(&inv, tamper)
    };
    match run() {
        Ok(b) => b.finish(start),
        Err(e) => VerificationReport::error("iso-to-symk", params, e.to_string()),
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, r: usize) -> usize {
        if r > n {
            return 0;
        }
        (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn sym_dim(mn: usize, k: usize) -> usize {
        (0..=k.min(mn))
            .map(|j| binom(mn, j) * binom(mn + k - j - 1, k - j))
            .sum()
    }

    #[test]
    fn invariant_dimensions() {
        assert_eq!(delta_invariants(1, 1, 1).unwrap().1.len(), 2);
        assert_eq!(delta_invariants(2, 1, 1).unwrap().1.len(), 2);
        assert_eq!(delta_invariants(2, 2, 1).unwrap().1.len(), 8);
        for m in 1..=2 {
            for n in 1..=2 {
                for k in 1..=2 {
                    let d = delta_invariants(k, m, n).unwrap().1.len();
                    assert_eq!(d, sym_dim(m * n, k), "k={k} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn k1_invariants_are_the_phi_vectors() {
        let (s, inv) = delta_invariants(1, 1, 1).unwrap();
        let iso = iso_to_symk(1, 1, 1).unwrap();
        assert_eq!(inv.len(), 2);
        let x = &iso.images[iso.target.poly().position(&[1, 0]).unwrap()];
        let at = |l: &str| s.module().position(l).unwrap();
        // group of order 2 doubles the vector
        assert_eq!(
            *x,
            SparseVec::from_entries([(at("e1|e1"), q(2)), (at("f1|f1"), q(2))])
        );
    }

    #[test]
    fn isomorphism_small() {
        for (k, m, n) in [(1, 1, 1), (2, 1, 1), (1, 2, 2), (2, 2, 1), (2, 1, 2), (2, 2, 2), (3, 1, 1)] {
            let r = verify_invariants(k, m, n, false);
            assert!(r.is_verified(), "{k} {m} {n}: {:?}", r.detail());
        }
        assert!(!verify_invariants(2, 1, 1, true).is_verified());
    }
}
