//! Reduction of OGe_χ modulo the chosen prime, as a finite algebra over F_p.

use num_traits::Zero;
use rayon::prelude::*;

use super::CharOrder;
use crate::arith::{residue, Rational};
use crate::cyclo::cyclo_data;
use crate::error::{bail, Result};
use crate::fp::{add_scaled, common_fixed_space, left_kernel, BasisSolver, Echelon, FpMatrix, FpVec};
use crate::grp::{Group, Subgroup};

/// Projection L → L/𝔭L, in lattice coordinates mod p.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub p: u64,
    /// F_p-degree of the residue field of Q(ζ_c) at the prime.
    pub fc: usize,
    rank: usize,
    /// 𝔭L/pL inside F_p^rank.
    prime_part: Echelon,
}

impl Reduction {
    pub fn new(order: &CharOrder) -> Result<Self> {
        let p = order.ld.p;
        let c = order.conductor;
        let nc = order.nc;
        let step = order.ld.m / c;
        let residues: Vec<FpVec> = (0..nc as u64).map(|j| order.ld.residue_of_zeta_pow(j * step)).collect();
        let kernel = left_kernel(p, &residues);
        let fc = nc - kernel.len();
        let rank = order.lattice.rank();
        let mut prime_part = Echelon::new(p, rank);
        if !kernel.is_empty() {
            let zeta_rows: Vec<FpVec> = order
                .lattice
                .basis()
                .par_iter()
                .map(|b| lattice_coords_mod_p(order, &order.zeta_mul(b)))
                .collect::<Result<_>>()?;
            let z = FpMatrix::from_rows(p, rank, &zeta_rows);
            let mut powers = vec![FpMatrix::identity(p, rank)];
            for j in 1..nc {
                powers.push(powers[j - 1].mul(&z));
            }
            for kappa in &kernel {
                let mut m = FpMatrix::zeros(p, rank, rank);
                for (j, &k) in kappa.iter().enumerate() {
                    if k != 0 {
                        add_scaled(p, &mut m.data, &powers[j].data, k);
                    }
                }
                for row in m.row_vecs() {
                    prime_part.insert(&row);
                }
            }
        }
        let red = Reduction { p, fc, rank, prime_part };
        let expected = (order.degree * order.degree) as usize * fc;
        if red.dim_fp() != expected {
            bail!(Internal, "L/pL has F_p-dimension {} instead of {expected}", red.dim_fp());
        }
        Ok(red)
    }

    pub fn dim_fp(&self) -> usize {
        self.rank - self.prime_part.dim()
    }

    /// Dimension over F_p of the image of the span of `vecs` in L/𝔭L.
    pub fn image_rank(&self, vecs: &[FpVec]) -> usize {
        let mut e = self.prime_part.clone();
        let base = e.dim();
        for v in vecs {
            e.insert(v);
        }
        e.dim() - base
    }

    /// Coordinates in the standard complement of 𝔭L/pL.
    fn complement_coords(&self, v: &[u64]) -> FpVec {
        let r = self.prime_part.reduce(v);
        let pivots = self.prime_part.pivots();
        let mut is_piv = vec![false; self.rank];
        for q in pivots {
            is_piv[q] = true;
        }
        r.into_iter().enumerate().filter(|(i, _)| !is_piv[*i]).map(|(_, x)| x).collect()
    }
}

/// Lattice coordinates of a lattice vector, reduced mod p.
pub fn lattice_coords_mod_p(order: &CharOrder, v: &[Rational]) -> Result<FpVec> {
    let Some(c) = order.lattice.coordinates(v)? else {
        bail!(Internal, "vector is not in the span of the order");
    };
    c.iter().map(|q| residue(q, order.ld.p)).collect()
}

/// A finite-dimensional associative F_p-algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct ModAlgebra {
    pub p: u64,
    /// Degree over F_p of the residue field the algebra is defined over.
    pub f: usize,
    n: usize,
    /// Product of basis elements s and t occupies `[(s*n + t)*n..][..n]`.
    table: Vec<u64>,
    one: FpVec,
    /// Group labels (x, j) of the basis: basis s is the image of ζ_c^j·x·e_χ.
    labels: Vec<(usize, usize)>,
    /// Coordinates of the image of every ζ_c^j·x·e_χ, j < c, at `x*c + j`.
    label_coords: Vec<FpVec>,
    c: usize,
}

impl ModAlgebra {
    pub fn from_table(p: u64, f: usize, n: usize, table: Vec<u64>, one: FpVec) -> Result<Self> {
        if table.len() != n * n * n || one.len() != n {
            bail!(Input, "structure constants do not match dimension {n}");
        }
        Ok(ModAlgebra { p, f, n, table, one, labels: Vec::new(), label_coords: Vec::new(), c: 0 })
    }

    pub fn dim_fp(&self) -> usize {
        self.n
    }

    /// Dimension over the residue field.
    pub fn dimension(&self) -> usize {
        self.n / self.f
    }

    pub fn one(&self) -> &[u64] {
        &self.one
    }

    pub fn basis_vector(&self, s: usize) -> FpVec {
        let mut v = vec![0; self.n];
        v[s] = 1;
        v
    }

    pub fn basis_product(&self, s: usize, t: usize) -> &[u64] {
        &self.table[(s * self.n + t) * self.n..(s * self.n + t + 1) * self.n]
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> FpVec {
        let p = self.p;
        let mut out = vec![0u64; self.n];
        for (s, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (t, &y) in b.iter().enumerate() {
                if y != 0 {
                    add_scaled(p, &mut out, self.basis_product(s, t), x * y % p);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> FpVec {
        let mut acc = self.one.clone();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Matrix of v ↦ a·v in the row convention.
    pub fn left_mul_matrix(&self, a: &[u64]) -> FpMatrix {
        let rows: Vec<FpVec> = (0..self.n).map(|s| self.mul(a, &self.basis_vector(s))).collect();
        FpMatrix::from_rows(self.p, self.n, &rows)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|s| (0..s).all(|t| self.basis_product(s, t) == self.basis_product(t, s)))
    }

    pub fn is_associative(&self) -> bool {
        (0..self.n).all(|s| {
            (0..self.n).all(|t| {
                (0..self.n).all(|u| {
                    let es = self.basis_vector(s);
                    let eu = self.basis_vector(u);
                    let st = self.basis_product(s, t).to_vec();
                    let tu = self.basis_product(t, u).to_vec();
                    self.mul(&st, &eu) == self.mul(&es, &tu)
                })
            })
        })
    }

    /// Basis of the center over F_p.
    pub fn center_basis(&self) -> Vec<FpVec> {
        let p = self.p;
        let rows: Vec<FpVec> = (0..self.n)
            .map(|w| {
                let mut r = Vec::with_capacity(self.n * self.n);
                for u in 0..self.n {
                    let mut d = self.basis_product(w, u).to_vec();
                    add_scaled(p, &mut d, self.basis_product(u, w), p - 1);
                    r.extend(d);
                }
                r
            })
            .collect();
        left_kernel(p, &rows)
    }

    /// Center dimension over the residue field.
    pub fn center_dim(&self) -> usize {
        self.center_basis().len() / self.f
    }

    /// Matrix of v ↦ x·v·x⁻¹ for a group element x; only for algebras built
    /// from a group.
    pub fn conjugation_matrix(&self, g: &Group, x: usize) -> Result<FpMatrix> {
        if self.labels.is_empty() {
            bail!(Domain, "algebra carries no group action");
        }
        let rows: Vec<FpVec> = self
            .labels
            .iter()
            .map(|&(y, j)| self.label_coords[g.conjugate(x, y) * self.c + j].clone())
            .collect();
        Ok(FpMatrix::from_rows(self.p, self.n, &rows))
    }

    /// Image of the element ζ_c^j·x·e_χ.
    pub fn label(&self, x: usize, j: usize) -> Result<&[u64]> {
        if self.labels.is_empty() {
            bail!(Domain, "algebra carries no group action");
        }
        Ok(&self.label_coords[x * self.c + j % self.c])
    }

    /// Σ over a left transversal of `sub` in G of t·a·t⁻¹.
    fn relative_trace(&self, g: &Group, sub: &Subgroup, a: &[u64]) -> FpVec {
        let p = self.p;
        let mut out = vec![0u64; self.n];
        for t in sub.left_transversal(g) {
            for (s, &coef) in a.iter().enumerate() {
                if coef != 0 {
                    let (y, j) = self.labels[s];
                    add_scaled(p, &mut out, &self.label_coords[g.conjugate(t, y) * self.c + j], coef);
                }
            }
        }
        out
    }
}

/// k ⊗ OGe_χ as an F_p-algebra of dimension f_c·χ(1)², with a basis chosen
/// among the images of ζ_c^j·x·e_χ.
pub fn reduce_mod_p(order: &CharOrder, red: &Reduction) -> Result<ModAlgebra> {
    let g = order.group;
    let p = red.p;
    let nc = order.nc;
    let c = order.conductor as usize;
    let n = red.dim_fp();
    let gens: Vec<Vec<FpVec>> = (0..g.order())
        .into_par_iter()
        .map(|x| {
            let mut v = order.left_mul(x, &order.e);
            let mut out = Vec::with_capacity(nc);
            for _ in 0..nc {
                out.push(red.complement_coords(&lattice_coords_mod_p(order, &v)?));
                v = order.zeta_mul(&v);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut span = Echelon::new(p, n);
    let mut labels = Vec::new();
    let mut chosen = Vec::new();
    'outer: for x in g.bfs_order() {
        for j in 0..nc {
            if span.insert(&gens[x][j]) {
                labels.push((x, j));
                chosen.push(gens[x][j].clone());
                if chosen.len() == n {
                    break 'outer;
                }
            }
        }
    }
    if chosen.len() != n {
        bail!(Internal, "group labels span {} of {n} dimensions", chosen.len());
    }
    let solver = BasisSolver::new(p, &chosen).expect("chosen labels are independent");
    let data = cyclo_data(order.conductor);
    let mut label_coords = vec![Vec::new(); g.order() * c];
    for x in 0..g.order() {
        for j in 0..c {
            let w = if j < nc {
                gens[x][j].clone()
            } else {
                let mut acc = vec![0u64; n];
                for (i, &z) in data.zeta_pow(j as u64).iter().enumerate() {
                    if z != 0 {
                        add_scaled(p, &mut acc, &gens[x][i], z.rem_euclid(p as i64) as u64);
                    }
                }
                acc
            };
            label_coords[x * c + j] = solver.solve(&w).expect("label lies in the algebra");
        }
    }
    let mut table = vec![0u64; n * n * n];
    for (s, &(xs, js)) in labels.iter().enumerate() {
        for (t, &(xt, jt)) in labels.iter().enumerate() {
            let prod = &label_coords[g.mul(xs, xt) * c + (js + jt) % c];
            table[(s * n + t) * n..(s * n + t + 1) * n].copy_from_slice(prod);
        }
    }
    let one = label_coords[g.identity() * c].clone();
    Ok(ModAlgebra { p, f: red.fc, n, table, one, labels, label_coords, c })
}

/// dim over k of (OGe_χ)^Q / (Σ_R Tr_R^Q (OGe_χ)^R + 𝔭(OGe_χ)^Q), R maximal in Q.
pub fn brauer_quotient_dim(order: &CharOrder, red: &Reduction, q: &Subgroup) -> Result<usize> {
    let g = order.group;
    let fixed = order.fixed_lattice(q)?;
    let fixed_images: Vec<FpVec> = fixed.basis().iter().map(|b| lattice_coords_mod_p(order, b)).collect::<Result<_>>()?;
    let top = red.image_rank(&fixed_images);
    let mut traces = Vec::new();
    for r in q.maximal_subgroups(g, red.p) {
        let fr = order.fixed_lattice(&r)?;
        for b in fr.basis() {
            let t = order.relative_trace(q, &r, b);
            if t.iter().any(|x| !x.is_zero()) {
                traces.push(lattice_coords_mod_p(order, &t)?);
            }
        }
    }
    let bottom = red.image_rank(&traces);
    if !(top - bottom).is_multiple_of(red.fc) {
        bail!(Internal, "Brauer quotient F_p-dimension {} is not a multiple of {}", top - bottom, red.fc);
    }
    Ok((top - bottom) / red.fc)
}

/// Minimal P with 1 ∈ Tr_P^G(A^P) over the reduction; asserted to be
/// subconjugate to `anchor` when given.
pub fn defect_group_mod_p(g: &Group, alg: &ModAlgebra, anchor: Option<&Subgroup>) -> Result<Subgroup> {
    let p = alg.p;
    let classes = g.p_subgroup_classes(p)?;
    let holds: Vec<bool> = classes
        .par_iter()
        .map(|h| {
            let maps: Vec<FpMatrix> =
                h.generators(g).into_iter().map(|x| alg.conjugation_matrix(g, x)).collect::<Result<_>>()?;
            let fixed = common_fixed_space(p, alg.n, &maps);
            let mut image = Echelon::new(p, alg.n);
            for a in &fixed {
                image.insert(&alg.relative_trace(g, h, a));
            }
            Ok(image.contains(&alg.one))
        })
        .collect::<Result<_>>()?;
    let mut minimal = Vec::new();
    for i in 0..classes.len() {
        if !holds[i] {
            continue;
        }
        let mut is_min = true;
        for j in 0..classes.len() {
            if j != i && holds[j] && classes[j].order() < classes[i].order() && g.is_subconjugate(&classes[j], &classes[i])? {
                is_min = false;
                break;
            }
        }
        if is_min {
            minimal.push(i);
        }
    }
    if minimal.len() != 1 {
        bail!(TheoremViolation, "{} minimal classes satisfy the mod-p trace condition", minimal.len());
    }
    let d = classes[minimal[0]].clone();
    if let Some(a) = anchor {
        if !g.is_subconjugate(&d, a)? {
            bail!(TheoremViolation, "mod-p defect group of order {} is not subconjugate to the anchor", d.order());
        }
    }
    Ok(d)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// F_2[x]/(x²) and M_2(F_2) by hand.
    pub(crate) fn dual_numbers() -> ModAlgebra {
        // basis 1, x
        let table = vec![1, 0, 0, 1, 0, 1, 0, 0];
        ModAlgebra::from_table(2, 1, 2, table, vec![1, 0]).unwrap()
    }

    pub(crate) fn matrices() -> ModAlgebra {
        // basis E11, E12, E21, E22; Eij Ekl = δjk Eil
        let n = 4;
        let mut table = vec![0u64; n * n * n];
        let idx = |i: usize, j: usize| 2 * i + j;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        if j == k {
                            table[(idx(i, j) * n + idx(k, l)) * n + idx(i, l)] = 1;
                        }
                    }
                }
            }
        }
        ModAlgebra::from_table(2, 1, 4, table, vec![1, 0, 0, 1]).unwrap()
    }

    #[test]
    fn hand_algebras() {
        let d = dual_numbers();
        assert!(d.is_associative() && d.is_commutative());
        assert_eq!(d.center_dim(), 2);
        assert_eq!(d.mul(&[0, 1], &[0, 1]), vec![0, 0]);
        let m = matrices();
        assert!(m.is_associative() && !m.is_commutative());
        assert_eq!(m.center_dim(), 1);
        assert_eq!(m.pow(&[1, 1, 0, 1], 2), vec![1, 0, 0, 1]);
    }
}
