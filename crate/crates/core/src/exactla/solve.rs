use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::operator::same_space;
use super::{q, Echelon, GradedOperator, Parity, SparseVec, SuperModule, Q};
use crate::error::{Error, Result};

/// Unknowns tied together by equations with at most two terms:
/// `x_u = coeff[u] * x_parent[u]`, and a root marked zero forces its class
/// to vanish.
struct Substitution {
    parent: Vec<usize>,
    coeff: Vec<Q>,
    zero: Vec<bool>,
}

impl Substitution {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            coeff: vec![Q::one(); n],
            zero: vec![false; n],
        }
    }

    /// Root of `u` and the factor `c` with `x_u = c * x_root`.
    fn find(&mut self, u: usize) -> (usize, Q) {
        let mut path = Vec::new();
        let mut r = u;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        // compress from the node nearest the root outwards
        let mut acc = Q::one();
        for &v in path.iter().rev() {
            acc = &self.coeff[v] * &acc;
            self.coeff[v] = acc.clone();
            self.parent[v] = r;
        }
        let c = if u == r { Q::one() } else { self.coeff[u].clone() };
        (r, c)
    }

    /// Rewrites a row in terms of live roots.
    fn canonical(&mut self, row: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (u, v) in row.entries() {
            let (r, c) = self.find(*u);
            if !self.zero[r] {
                *acc.entry(r).or_insert_with(Q::zero) += v * &c;
            }
        }
        SparseVec::from_map(acc)
    }

    /// Imposes `a x_ra + b x_rb = 0` on two distinct live roots.
    fn link(&mut self, ra: usize, a: &Q, rb: usize, b: &Q) {
        self.parent[ra] = rb;
        self.coeff[ra] = -(b / a);
    }
}

/// Basis of the null space of the given rows inside `Q^unknowns`, in
/// reduced echelon form.
///
/// Equations with one or two terms are used first to eliminate unknowns by
/// substitution, which keeps the remaining elimination small and sparse.
pub fn kernel_of_rows(unknowns: usize, rows: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut sub = Substitution::new(unknowns);
    let mut pending: Vec<SparseVec> = rows.into_iter().collect();
    loop {
        let mut changed = false;
        let mut rest = Vec::with_capacity(pending.len());
        for row in pending {
            let row = sub.canonical(&row);
            match row.entries() {
                [] => {}
                [(r, _)] => {
                    sub.zero[*r] = true;
                    changed = true;
                }
                [(ra, a), (rb, b)] => {
                    sub.link(*ra, a, *rb, b);
                    changed = true;
                }
                _ => rest.push(row),
            }
        }
        pending = rest;
        if !changed {
            break;
        }
    }

    let mut roots = Vec::new();
    let mut local = HashMap::new();
    for u in 0..unknowns {
        if sub.find(u).0 == u && !sub.zero[u] {
            local.insert(u, roots.len());
            roots.push(u);
        }
    }
    let mut ech = Echelon::new();
    for row in &pending {
        ech.insert(&row.map_indices(|u| local[&u]));
    }
    ech.make_reduced();
    let reduced_kernel = ech.null_space(roots.len());

    let mut members: Vec<Vec<(usize, Q)>> = vec![Vec::new(); roots.len()];
    for u in 0..unknowns {
        let (r, c) = sub.find(u);
        if !sub.zero[r] {
            members[local[&r]].push((u, c));
        }
    }
    let mut out = Echelon::new();
    for k in reduced_kernel {
        let mut entries = Vec::new();
        for (l, v) in k.entries() {
            entries.extend(members[*l].iter().map(|(u, c)| (*u, c * v)));
        }
        out.insert(&SparseVec::from_entries(entries));
    }
    out.make_reduced();
    out.into_rows()
}

pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut ech = Echelon::new();
    vectors.iter().filter(|v| ech.insert(v).is_some()).count()
}

fn check_endomorphisms(ops: &[GradedOperator], space: &Arc<SuperModule>) -> Result<()> {
    for op in ops {
        if !same_space(op.domain(), space) || !same_space(op.codomain(), space) {
            return Err(Error::SpaceMismatch("operator does not act on the given space".into()));
        }
    }
    Ok(())
}

/// Exact basis of the joint kernel of `ops`, restricted to vectors supported
/// on `support` (all of the space when `None`). Returned vectors are in
/// reduced echelon form.
pub fn joint_kernel_on(
    space: &Arc<SuperModule>,
    ops: &[GradedOperator],
    support: Option<&[usize]>,
) -> Result<Vec<SparseVec>> {
    for op in ops {
        if !same_space(op.domain(), space) {
            return Err(Error::SpaceMismatch("joint_kernel: domain mismatch".into()));
        }
    }
    let all: Vec<usize>;
    let support = match support {
        Some(s) => s,
        None => {
            all = (0..space.dim()).collect();
            &all
        }
    };
    let mut equations: BTreeMap<(usize, usize), Vec<(usize, Q)>> = BTreeMap::new();
    for (k, op) in ops.iter().enumerate() {
        for (l, &g) in support.iter().enumerate() {
            for (i, v) in op.column(g).entries() {
                equations.entry((k, *i)).or_default().push((l, v.clone()));
            }
        }
    }
    let kernel = kernel_of_rows(
        support.len(),
        equations.into_values().map(SparseVec::from_entries),
    );
    Ok(kernel
        .into_iter()
        .map(|v| v.map_indices(|l| support[l]))
        .collect())
}

/// Exact basis of `∩ ker(op)`. An empty list yields the whole space.
pub fn joint_kernel(space: &Arc<SuperModule>, ops: &[GradedOperator]) -> Result<Vec<SparseVec>> {
    joint_kernel_on(space, ops, None)
}

/// Graded commutant split by parity.
#[derive(Debug, Clone)]
pub struct Commutant {
    pub even: Vec<GradedOperator>,
    pub odd: Vec<GradedOperator>,
}

impl Commutant {
    pub fn dim(&self) -> usize {
        self.even.len() + self.odd.len()
    }

    pub fn all(&self) -> Vec<GradedOperator> {
        self.even.iter().chain(&self.odd).cloned().collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Basis of `{Z : [Z, g] = 0 for every generator g}` for each parity of `Z`.
///
/// Diagonal generators restrict the unknown entries `Z_ij` to pairs with
/// equal diagonal signature; the remaining equations are split into
/// independent blocks by connectivity and solved exactly.
pub fn commutant(gens: &[GradedOperator], space: &Arc<SuperModule>) -> Result<Commutant> {
    check_endomorphisms(gens, space)?;
    let n = space.dim();
    let (diagonal, others): (Vec<&GradedOperator>, Vec<&GradedOperator>) =
        gens.iter().filter(|g| !g.is_zero()).partition(|g| g.is_diagonal());
    let mut classes: BTreeMap<Vec<Q>, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let sig: Vec<Q> = diagonal.iter().map(|d| d.entry(i, i)).collect();
        classes.entry(sig).or_default().push(i);
    }
    let rows: Vec<Vec<Vec<(usize, Q)>>> = others.iter().map(|g| g.rows()).collect();

    let solve_parity = |zp: Parity| -> Result<Vec<GradedOperator>> {
        let mut unknowns: Vec<(usize, usize)> = Vec::new();
        for class in classes.values() {
            for &j in class {
                for &i in class {
                    if space.parity(i) == space.parity(j) + zp {
                        unknowns.push((i, j));
                    }
                }
            }
        }
        unknowns.sort_by_key(|&(i, j)| (j, i));
        let mut equations: HashMap<(usize, usize, usize), Vec<(usize, Q)>> = HashMap::new();
        for (gi, g) in others.iter().enumerate() {
            let s = q(-zp.koszul(g.parity()));
            for (u, &(r, j)) in unknowns.iter().enumerate() {
                // (Z g)_{rc} = Σ_j Z_rj g_jc
                for (c, v) in &rows[gi][j] {
                    equations.entry((gi, r, *c)).or_default().push((u, v.clone()));
                }
                // -s (g Z)_{r'c} = -s Σ_a g_{r'a} Z_{a c}, with (a, c) = (r, j)
                for (r2, v) in g.column(r).entries() {
                    equations
                        .entry((gi, *r2, j))
                        .or_default()
                        .push((u, &s * v));
                }
            }
        }
        let equations: Vec<SparseVec> = equations
            .into_values()
            .map(SparseVec::from_entries)
            .filter(|e| !e.is_zero())
            .collect();
        let mut uf = UnionFind::new(unknowns.len());
        for e in &equations {
            let first = e.entries()[0].0;
            for (u, _) in &e.entries()[1..] {
                uf.union(first, *u);
            }
        }
        let mut components: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for u in 0..unknowns.len() {
            let root = uf.find(u);
            components.entry(root).or_default().0.push(u);
        }
        for (k, e) in equations.iter().enumerate() {
            let root = uf.find(e.entries()[0].0);
            components.get_mut(&root).expect("component").1.push(k);
        }
        let solutions: Vec<Vec<SparseVec>> = components
            .into_par_iter()
            .map(|(_, (members, eqs))| {
                let local: HashMap<usize, usize> =
                    members.iter().enumerate().map(|(l, &u)| (u, l)).collect();
                let local_rows = eqs
                    .iter()
                    .map(|&k| equations[k].map_indices(|u| local[&u]));
                kernel_of_rows(members.len(), local_rows)
                    .into_iter()
                    .map(|v| v.map_indices(|l| members[l]))
                    .collect()
            })
            .collect();
        solutions
            .into_iter()
            .flatten()
            .map(|sol| {
                let flat = SparseVec::from_entries(sol.entries().iter().map(|(u, v)| {
                    let (i, j) = unknowns[*u];
                    (j * n + i, v.clone())
                }));
                GradedOperator::unflatten(space, space, zp, &flat)
            })
            .collect()
    };

    Ok(Commutant {
        even: solve_parity(Parity::Even)?,
        odd: solve_parity(Parity::Odd)?,
    })
}

type GradeKey = (Parity, Option<Vec<i64>>);

/// Grading keys for a family of operators: `(parity, weight shift)` when
/// every operator has a weight shift, otherwise parity alone. Operators with
/// different keys have disjoint supports.
fn grade_keys(ops: &[&GradedOperator]) -> Vec<GradeKey> {
    let shifts: Option<Vec<Option<Vec<i64>>>> = ops.iter().map(|op| op.weight_shift()).collect();
    match shifts {
        Some(s) if s.iter().all(Option::is_some) => ops
            .iter()
            .zip(s)
            .map(|(op, sh)| (op.parity(), sh))
            .collect(),
        _ => ops.iter().map(|op| (op.parity(), None)).collect(),
    }
}

/// Dimension of the linear span of `ops` inside `End(V)`.
pub fn span_dim(ops: &[GradedOperator]) -> usize {
    let nonzero: Vec<&GradedOperator> = ops.iter().filter(|o| !o.is_zero()).collect();
    let keys = grade_keys(&nonzero);
    let mut groups: BTreeMap<GradeKey, Echelon> = BTreeMap::new();
    for (op, key) in nonzero.iter().zip(keys) {
        groups.entry(key).or_default().insert(&op.flatten());
    }
    groups.values().map(Echelon::rank).sum()
}

/// True iff `span(a) = span(b)` inside `End(V)`.
pub fn span_equal(a: &[GradedOperator], b: &[GradedOperator]) -> Result<bool> {
    if let (Some(x), Some(y)) = (a.first(), b.first()) {
        if !same_space(x.domain(), y.domain()) || !same_space(x.codomain(), y.codomain()) {
            return Err(Error::SpaceMismatch("span_equal: different spaces".into()));
        }
    }
    let ra = span_dim(a);
    let rb = span_dim(b);
    if ra != rb {
        return Ok(false);
    }
    let both: Vec<GradedOperator> = a.iter().chain(b).cloned().collect();
    Ok(span_dim(&both) == ra)
}

/// Basis of the associative algebra generated by `gens` and the identity,
/// computed by breadth-first left multiplication with exact rank tracking.
pub fn algebra_closure(gens: &[GradedOperator], space: &Arc<SuperModule>) -> Result<Vec<GradedOperator>> {
    check_endomorphisms(gens, space)?;
    let gens: Vec<&GradedOperator> = gens.iter().filter(|g| !g.is_zero()).collect();
    let identity = GradedOperator::identity(space);
    let mut all: Vec<&GradedOperator> = gens.clone();
    all.push(&identity);
    let graded = grade_keys(&all).iter().all(|k| k.1.is_some());
    let key_of = |op: &GradedOperator| -> GradeKey {
        let shift = if graded {
            op.weight_shift().flatten()
        } else {
            None
        };
        (op.parity(), shift)
    };
    let mut groups: BTreeMap<GradeKey, Echelon> = BTreeMap::new();
    let mut basis = Vec::new();
    let mut queue = VecDeque::new();
    groups.entry(key_of(&identity)).or_default().insert(&identity.flatten());
    basis.push(identity.clone());
    queue.push_back(identity);
    while let Some(z) = queue.pop_front() {
        for g in &gens {
            let p = g.compose(&z)?;
            if p.is_zero() {
                continue;
            }
            let key = key_of(&p);
            if groups.entry(key).or_default().insert(&p.flatten()).is_some() {
                basis.push(p.clone());
                queue.push_back(p);
            }
        }
    }
    Ok(basis)
}

/// Groups basis indices by their joint eigenvalue under commuting diagonal
/// operators. Fails if an operator is not diagonal or has a non-integer
/// eigenvalue.
pub fn weight_decompose(
    torus: &[GradedOperator],
    space: &Arc<SuperModule>,
) -> Result<BTreeMap<Vec<i64>, Vec<usize>>> {
    check_endomorphisms(torus, space)?;
    for (k, t) in torus.iter().enumerate() {
        if !t.is_diagonal() {
            return Err(Error::NotDiagonal(format!("torus operator {k}")));
        }
    }
    let mut out: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for i in 0..space.dim() {
        let mut w = Vec::with_capacity(torus.len());
        for (k, t) in torus.iter().enumerate() {
            let e = t.entry(i, i);
            let v = e.to_integer().ok_or_else(|| {
                Error::NotDiagonal(format!(
                    "torus operator {k} has eigenvalue {e} on {}",
                    space.label(i)
                ))
            })?;
            let v: i64 = i64::try_from(v).map_err(|_| Error::NotDiagonal("eigenvalue overflow".into()))?;
            w.push(v);
        }
        out.entry(w).or_default().push(i);
    }
    Ok(out)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn even_space(d: usize) -> Arc<SuperModule> {
        Arc::new(SuperModule::anonymous(vec![Parity::Even; d]))
    }

    fn matrix_units(v: &Arc<SuperModule>) -> Vec<GradedOperator> {
        let d = v.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                out.push(
                    GradedOperator::from_fn(v, Parity::Even, |c| {
                        if c == j {
                            SparseVec::unit(i)
                        } else {
                            SparseVec::new()
                        }
                    })
                    .unwrap(),
                );
            }
        }
        out
    }

    #[test]
    fn joint_kernel_examples() {
        let v = even_space(2);
        let zero = GradedOperator::zero(&v, Parity::Even);
        assert_eq!(joint_kernel(&v, &[zero]).unwrap().len(), 2);
        assert_eq!(joint_kernel(&v, &[]).unwrap().len(), 2);
        let id = GradedOperator::identity(&v);
        assert!(joint_kernel(&v, &[id]).unwrap().is_empty());
        // projections onto e1 and onto span(e1 + e2)
        let p1 = GradedOperator::from_fn(&v, Parity::Even, |j| {
            if j == 0 { SparseVec::unit(0) } else { SparseVec::new() }
        })
        .unwrap();
        let p2 = GradedOperator::from_fn(&v, Parity::Even, |_| {
            SparseVec::from_entries([(0, q(1) / q(2)), (1, q(1) / q(2))])
        })
        .unwrap();
        assert!(joint_kernel(&v, &[p1, p2]).unwrap().is_empty());
    }

    #[test]
    fn commutant_examples() {
        let v = Arc::new(SuperModule::anonymous(vec![Parity::Even, Parity::Odd]));
        let c = commutant(&[GradedOperator::identity(&v)], &v).unwrap();
        assert_eq!(c.dim(), 4);
        let w = even_space(3);
        let c = commutant(&matrix_units(&w), &w).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.odd.is_empty());
    }

    #[test]
    fn span_equal_examples() {
        let v = even_space(2);
        let id = GradedOperator::identity(&v);
        let nil = &matrix_units(&v)[1];
        let one = std::slice::from_ref(&id);
        assert!(span_equal(one, one).unwrap());
        assert!(span_equal(one, &[id.scale(&q(2))]).unwrap());
        assert!(!span_equal(one, &[id.clone(), nil.clone()]).unwrap());
    }

    #[test]
    fn closure_of_matrix_unit_generators() {
        let v = even_space(3);
        let units = matrix_units(&v);
        let gens = vec![units[1].clone(), units[3].clone(), units[5].clone(), units[7].clone()];
        assert_eq!(algebra_closure(&gens, &v).unwrap().len(), 9);
    }

    #[test]
    fn weight_decompose_rejects_off_diagonal() {
        let v = even_space(2);
        let units = matrix_units(&v);
        assert!(matches!(
            weight_decompose(&[units[1].clone()], &v),
            Err(Error::NotDiagonal(_))
        ));
        let w = weight_decompose(&[units[0].clone()], &v).unwrap();
        assert_eq!(w[&vec![1]], vec![0]);
        assert_eq!(w[&vec![0]], vec![1]);
    }
}
