use std::sync::Arc;
use std::time::Instant;

use super::report::{DimRow, Params, ReportBuilder, VerificationReport};
use super::sergeev::dim_t;
use crate::error::{Error, Result};
use crate::exactla::{commutant, q, span_dim, GradedOperator, SparseVec, SuperModule};
use crate::partitions::{strict_partitions, StrictPartition};
use crate::qalg::{cyclic_module, irreducible_generator, singular_vectors, HoweKind, HoweSpace, QElement};
use crate::spingroup::SpinGroupElement;

/// Sergeev-group generators acting on some space: `a[i]` and the adjacent
/// transpositions `s[t]`.
struct GroupAction {
    a: Vec<GradedOperator>,
    s: Vec<GradedOperator>,
}

impl GroupAction {
    fn all(&self) -> Vec<GradedOperator> {
        self.a.iter().chain(&self.s).cloned().collect()
    }

    /// Operator of a normal-form word.
    fn word(&self, g: &SpinGroupElement, perm: &GradedOperator) -> Result<GradedOperator> {
        let mut op = perm.clone();
        for i in (0..g.k()).rev() {
            if g.eps()[i] {
                op = self.a[i].compose(&op)?;
            }
        }
        Ok(op.scale(g.coeff()))
    }

    /// First violated defining relation of `B_k`, if any.
    fn relation_defect(&self) -> Result<Option<String>> {
        let k = self.a.len();
        let space = match self.a.first() {
            Some(op) => op.domain().clone(),
            None => return Ok(None),
        };
        let id = GradedOperator::identity(&space);
        let minus_id = id.scale(&q(-1));
        for i in 0..k {
            if self.a[i].compose(&self.a[i])? != minus_id {
                return Ok(Some(format!("a{}^2 = -1", i + 1)));
            }
            for j in i + 1..k {
                let anti = self.a[i].compose(&self.a[j])?.add(&self.a[j].compose(&self.a[i])?)?;
                if !anti.is_zero() {
                    return Ok(Some(format!("a{} a{} = -a{} a{}", i + 1, j + 1, j + 1, i + 1)));
                }
            }
        }
        for t in 0..self.s.len() {
            let s = &self.s[t];
            if s.compose(s)? != id {
                return Ok(Some(format!("s{}^2 = 1", t + 1)));
            }
            if t + 1 < self.s.len() {
                let u = &self.s[t + 1];
                let l = s.compose(u)?.compose(s)?;
                let r = u.compose(s)?.compose(u)?;
                if l != r {
                    return Ok(Some(format!("braid relation at s{}", t + 1)));
                }
            }
            for u in t + 2..self.s.len() {
                if s.compose(&self.s[u])? != self.s[u].compose(s)? {
                    return Ok(Some(format!("s{} s{} = s{} s{}", t + 1, u + 1, u + 1, t + 1)));
                }
            }
            for i in 0..k {
                let j = if i == t {
                    t + 1
                } else if i == t + 1 {
                    t
                } else {
                    i
                };
                if s.compose(&self.a[i])?.compose(s)? != self.a[j] {
                    return Ok(Some(format!("s{} a{} s{} = a{}", t + 1, i + 1, t + 1, j + 1)));
                }
            }
        }
        Ok(None)
    }

    fn tamper(&mut self) {
        if let Some(op) = self.a.iter_mut().chain(self.s.iter_mut()).find(|o| !o.is_zero()) {
            op.tamper();
        }
    }
}

fn transposition(n: usize, t: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(t, t + 1);
    p
}

/// Restriction to the span of `basis`, reporting non-invariance as `None`.
fn restrict_all(
    ops: &[GradedOperator],
    basis: &[SparseVec],
    pivots: &[usize],
    sub: &Arc<SuperModule>,
) -> Result<Option<Vec<GradedOperator>>> {
    let mut out = Vec::with_capacity(ops.len());
    for op in ops {
        match op.restrict(basis, pivots, sub) {
            Ok(r) => out.push(r),
            Err(Error::Construction(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(out))
}

/// Zero-weight space of `U^λ_n` as a module for the Sergeev group `H̃_n`.
pub fn verify_zero_weight(lambda: &StrictPartition, tamper: bool) -> VerificationReport {
    let start = Instant::now();
    let params = Params::new()
        .with("lambda", lambda)
        .with_if(tamper, "tamper", true);
    match zero_weight_inner(lambda, tamper, params.clone()) {
        Ok(b) => b.finish(start),
        Err(e) => VerificationReport::error("zero-weight", params, e.to_string()),
    }
}

fn zero_weight_inner(lambda: &StrictPartition, tamper: bool, params: Params) -> Result<ReportBuilder> {
    let n = lambda.size();
    if n == 0 {
        return Err(Error::InvalidPartition("the empty partition has no zero-weight space".into()));
    }
    let m = lambda.len().max(2);
    let space = HoweSpace::new(m, n, n)?;
    let module = space.poly().module().clone();
    let mut b = ReportBuilder::new("zero-weight", params.with("m", m).with("n", n));

    let mut weight = lambda.padded(m);
    weight.extend(lambda.padded(n));
    let mut raising = space.lower_raising()?;
    let upper_raising = space.upper_raising()?;
    raising.extend(upper_raising.iter().cloned());
    let sing = singular_vectors(&raising, &module, &weight)?;
    b.check("joint singular vector of weight (λ, λ) exists", !sing.is_empty(), String::new);
    if sing.is_empty() {
        return Ok(b);
    }
    let upper_cartan: Vec<GradedOperator> = (0..n)
        .map(|i| space.operator(HoweKind::BUpper, i, i))
        .collect::<Result<_>>()?;
    let v = irreducible_generator(&sing, &upper_cartan, &lambda.padded(n))?;
    let upper_ops = space.upper_basis_actions()?;
    let u = cyclic_module(&v, &upper_raising, &upper_ops, &module)?;
    b.note(format!("q(n)-cyclic module has dimension {}", u.dim()));

    let ones = vec![1i64; n];
    let um = u.module();
    let mut zbasis = Vec::new();
    let mut zpivots = Vec::new();
    let mut labels = Vec::new();
    let mut parities = Vec::new();
    for t in 0..u.dim() {
        if um.weight(t).map(|w| &w[m..]) == Some(&ones[..]) {
            zbasis.push(u.basis()[t].clone());
            zpivots.push(u.pivots()[t]);
            labels.push(format!("z{}", labels.len()));
            parities.push(um.parity(t));
        }
    }
    let zmod = Arc::new(SuperModule::new(labels, parities, None)?);
    let expected = dim_t(lambda, n)? as usize;
    b.param("dim_z", zbasis.len());
    b.check_eq("dim Z equals dim T^λ", zbasis.len(), expected);

    // a_i acts as -B^{ii}, the right action of B^{ii} composed with the parity operator
    let a_ops: Vec<GradedOperator> = upper_cartan.iter().map(|op| op.scale(&q(-1))).collect();
    let s_ops: Vec<GradedOperator> = (0..n.saturating_sub(1))
        .map(|t| space.relabel(&(0..m).collect::<Vec<_>>(), &transposition(n, t)))
        .collect::<Result<_>>()?;
    let a = restrict_all(&a_ops, &zbasis, &zpivots, &zmod)?;
    let s = restrict_all(&s_ops, &zbasis, &zpivots, &zmod)?;
    let (Some(a), Some(s)) = (a, s) else {
        b.check("Z is invariant under the group action", false, || {
            "an operator leaves the zero-weight space".into()
        });
        return Ok(b);
    };
    b.check("Z is invariant under the group action", true, String::new);
    let mut action = GroupAction { a, s };
    if tamper {
        action.tamper();
    }
    let defect = action.relation_defect()?;
    b.check("B_n relations hold on Z", defect.is_none(), || {
        format!("relation {} fails", defect.clone().unwrap_or_default())
    });
    let c = commutant(&action.all(), &zmod)?;
    b.param("commutant_dim", c.dim());
    b.check_eq("graded commutant dimension", c.dim(), 1usize << lambda.delta());
    b.note(format!("commutant parity split ({}, {})", c.even.len(), c.odd.len()));
    Ok(b)
}

/// The `(det, det)` weight space of `S^n(C^{n|n} ⊗ C^n)` as a bimodule for
/// the Sergeev group.
pub fn verify_regular(n: usize, tamper: bool) -> VerificationReport {
    let start = Instant::now();
    let params = Params::new().with("n", n).with_if(tamper, "tamper", true);
    match regular_inner(n, tamper, params.clone()) {
        Ok(b) => b.finish(start),
        Err(e) => VerificationReport::error("regular", params, e.to_string()),
    }
}

fn regular_inner(n: usize, tamper: bool, params: Params) -> Result<ReportBuilder> {
    if n == 0 {
        return Err(Error::Construction("n must be positive".into()));
    }
    let space = HoweSpace::new(n, n, n)?;
    let module = space.poly().module().clone();
    let mut b = ReportBuilder::new("regular", params);
    let ones = vec![1i64; 2 * n];
    let support: Vec<usize> = (0..module.dim())
        .filter(|&i| module.weight(i) == Some(&ones[..]))
        .collect();
    let order = (1usize << n) * (1..=n).product::<usize>();
    b.check_eq("weight space dimension equals 2^n n!", support.len(), order);

    let basis: Vec<SparseVec> = support.iter().map(|&i| SparseVec::unit(i)).collect();
    let sub = Arc::new(SuperModule::new(
        (0..support.len()).map(|t| format!("w{t}")).collect(),
        support.iter().map(|&i| module.parity(i)).collect(),
        None,
    )?);
    let ident: Vec<usize> = (0..n).collect();
    let parity = GradedOperator::parity_operator(&module);

    // left: lower B_jj composed with the parity operator, lower relabeling
    let left_a: Vec<GradedOperator> = (0..n)
        .map(|j| space.lower_action(&QElement::odd_unit(n, j, j))?.compose(&parity))
        .collect::<Result<_>>()?;
    let left_s: Vec<GradedOperator> = (0..n.saturating_sub(1))
        .map(|t| space.relabel(&transposition(n, t), &ident))
        .collect::<Result<_>>()?;
    // right: minus upper B^{ii}, upper relabeling
    let right_a: Vec<GradedOperator> = (0..n)
        .map(|i| Ok(space.operator(HoweKind::BUpper, i, i)?.scale(&q(-1))))
        .collect::<Result<_>>()?;
    let right_s: Vec<GradedOperator> = (0..n.saturating_sub(1))
        .map(|t| space.relabel(&ident, &transposition(n, t)))
        .collect::<Result<_>>()?;

    let restricted = |ops: &[GradedOperator]| restrict_all(ops, &basis, &support, &sub);
    let parts = (
        restricted(&left_a)?,
        restricted(&left_s)?,
        restricted(&right_a)?,
        restricted(&right_s)?,
    );
    let (Some(la), Some(ls), Some(ra), Some(rs)) = parts else {
        b.check("both actions preserve the weight space", false, || {
            "an operator leaves the weight space".into()
        });
        return Ok(b);
    };
    b.check("both actions preserve the weight space", true, String::new);
    let mut left = GroupAction { a: la, s: ls };
    let right = GroupAction { a: ra, s: rs };
    if tamper {
        left.tamper();
    }
    let d = left.relation_defect()?;
    b.check("left action satisfies the B_n relations", d.is_none(), || {
        format!("relation {} fails", d.clone().unwrap_or_default())
    });
    let d = right.relation_defect()?;
    b.check("right action satisfies the B_n relations", d.is_none(), || {
        format!("relation {} fails", d.clone().unwrap_or_default())
    });
    let mut commute = true;
    for x in left.all() {
        for y in right.all() {
            if !x.commutator(&y)?.is_zero() {
                commute = false;
            }
        }
    }
    b.check("left and right actions commute in the usual sense", commute, || {
        "a left and a right generator do not commute".into()
    });

    // the left action is the regular representation: all words are independent
    let mut words = Vec::with_capacity(order);
    for g in SpinGroupElement::enumerate(n) {
        let perm_op = space.relabel(g.perm(), &ident)?;
        let perm_op = perm_op.restrict(&basis, &support, &sub)?;
        words.push(left.word(&g, &perm_op)?);
    }
    b.check_eq("left words span a space of dimension 2^n n!", span_dim(&words), order);

    for lambda in strict_partitions(n, None) {
        let t = dim_t(&lambda, n)?;
        b.row(DimRow::new(lambda.clone(), t, t, lambda.delta()));
    }
    b.decomposition(order as u64);
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(p: &[usize]) -> StrictPartition {
        StrictPartition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn zero_weight_small() {
        for p in [&[1][..], &[2]] {
            let r = verify_zero_weight(&sp(p), false);
            assert!(r.is_verified(), "{p:?}: {:?}", r.detail());
        }
        assert!(!verify_zero_weight(&sp(&[2]), true).is_verified());
    }

    #[test]
    fn regular_small() {
        for n in 1..=2 {
            let r = verify_regular(n, false);
            assert!(r.is_verified(), "{n}: {:?}", r.detail());
        }
        assert!(!verify_regular(2, true).is_verified());
    }
}
