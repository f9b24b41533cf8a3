//! The order OGe_χ as a Z_(p)-lattice with G-action, the relative trace test
//! over p-subgroup classes, and everything derived from it.
//!
//! Ambient coordinates are pairs (x, j): the coefficient of ζ_c^j·x, with x a
//! group element index and j < φ(c). Conjugation and left multiplication by
//! group elements permute the x-part only.

mod radical;
mod reduce;

pub use radical::{radical_basis, radical_brute_force, radical_data, RadicalData};
pub use reduce::{brauer_quotient_dim, defect_group_mod_p, reduce_mod_p, ModAlgebra, Reduction};

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{euler_phi, Rational};
use crate::chtab::CharTable;
use crate::cyclo::{cyclo_data, CycloNum};
use crate::error::{bail, Result};
use crate::grp::{Group, Subgroup};
use crate::lat::{CoordPermutation, LinearMap, PLattice};
use crate::padic::LocalData;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnchorConfig {
    /// Use Q(ζ_exp(G)) coefficients instead of the character's value field.
    pub full_field: bool,
}

/// e_χ = (χ(1)/|G|) Σ_g χ(g⁻¹) g, one coefficient per group element.
#[derive(Clone, Debug)]
pub struct CentralIdempotent {
    pub chi: usize,
    pub conductor: u64,
    pub coefficients: Vec<CycloNum>,
}

pub fn central_idempotent(g: &Group, table: &CharTable, chi: usize, conductor: u64) -> Result<CentralIdempotent> {
    let ch = &table.characters[chi];
    if !conductor.is_multiple_of(ch.value_conductor) || !table.m.is_multiple_of(conductor) {
        bail!(Input, "conductor {conductor} does not contain the values of character {chi}");
    }
    let scale = Rational::new(BigInt::from(ch.degree), BigInt::from(g.order()));
    let vals: Vec<CycloNum> = ch
        .values
        .iter()
        .map(|v| v.restrict(conductor))
        .collect::<Result<_>>()?;
    let coefficients = (0..g.order())
        .map(|x| vals[g.class_of(g.inv(x))].scale(&scale))
        .collect();
    Ok(CentralIdempotent { chi, conductor, coefficients })
}

impl CentralIdempotent {
    /// Convolution product in Q(ζ_c)G.
    pub fn square(&self, g: &Group) -> Vec<CycloNum> {
        let n = g.order();
        (0..n)
            .into_par_iter()
            .map(|z| {
                let mut s = CycloNum::zero(self.conductor);
                for x in 0..n {
                    let a = &self.coefficients[x];
                    if a.is_zero() {
                        continue;
                    }
                    let b = &self.coefficients[g.mul(g.inv(x), z)];
                    if !b.is_zero() {
                        s = &s + &(a * b);
                    }
                }
                s
            })
            .collect()
    }

    /// Exact e·e = e and g·e·g⁻¹ = e for every generator.
    pub fn verify(&self, g: &Group) -> Result<()> {
        if self.square(g) != self.coefficients {
            bail!(Internal, "e_chi for character {} is not idempotent", self.chi);
        }
        for &s in g.generator_indices() {
            for x in 0..g.order() {
                if self.coefficients[g.conjugate(s, x)] != self.coefficients[x] {
                    bail!(Internal, "e_chi for character {} is not central", self.chi);
                }
            }
        }
        Ok(())
    }
}

/// OGe_χ over Z_(p)[ζ_c], flattened to a Z_(p)-lattice in Q^{|G|·φ(c)}.
pub struct CharOrder<'a> {
    pub group: &'a Group,
    pub table: &'a CharTable,
    pub chi: usize,
    pub degree: u64,
    pub conductor: u64,
    /// φ(c).
    pub nc: usize,
    pub idempotent: CentralIdempotent,
    /// e_χ in ambient coordinates.
    pub e: Vec<Rational>,
    pub lattice: PLattice,
    /// Prime above p in Q(ζ_exp(G)); valuations of Q(ζ_c) elements are read
    /// through it and normalized to Q(ζ_c).
    pub ld: LocalData,
    fixed: RwLock<HashMap<Vec<usize>, Arc<PLattice>>>,
}

/// Outcome of the trace test at one subgroup.
#[derive(Clone, Debug)]
pub struct TraceResult {
    pub subgroup: Subgroup,
    /// Tr_P^G(b_i) = λ_i e_χ for the basis b_i of (OGe_χ)^P.
    pub lambdas: Vec<CycloNum>,
    pub trace_defect: i64,
}

pub fn order_lattice<'a>(
    g: &'a Group,
    table: &'a CharTable,
    chi: usize,
    ld: &LocalData,
    cfg: AnchorConfig,
) -> Result<CharOrder<'a>> {
    let ch = &table.characters[chi];
    let conductor = if cfg.full_field { table.m } else { ch.value_conductor };
    let nc = euler_phi(conductor) as usize;
    let idempotent = central_idempotent(g, table, chi, conductor)?;
    let n = g.order();
    let mut e = vec![Rational::zero(); n * nc];
    for x in 0..n {
        for (j, c) in idempotent.coefficients[x].coeffs().iter().enumerate() {
            e[x * nc + j] = c.clone();
        }
    }
    let mut order = CharOrder {
        group: g,
        table,
        chi,
        degree: ch.degree,
        conductor,
        nc,
        idempotent,
        e,
        lattice: PLattice::zero(ld.p, n * nc),
        ld: ld.clone(),
        fixed: RwLock::new(HashMap::new()),
    };
    let gens: Vec<Vec<Rational>> = (0..n)
        .into_par_iter()
        .flat_map_iter(|x| {
            let v = order.left_mul(x, &order.e);
            let mut out = Vec::with_capacity(nc);
            let mut cur = v;
            for _ in 0..nc {
                let next = order.zeta_mul(&cur);
                out.push(cur);
                cur = next;
            }
            out
        })
        .collect();
    order.lattice = PLattice::normal_form(ld.p, n * nc, gens)?;
    let expected = (ch.degree * ch.degree) as usize * nc;
    if order.lattice.rank() != expected {
        bail!(Internal, "lattice rank {} differs from chi(1)^2 phi(c) = {expected}", order.lattice.rank());
    }
    Ok(order)
}

impl<'a> CharOrder<'a> {
    pub fn ambient_dim(&self) -> usize {
        self.group.order() * self.nc
    }

    /// x·v.
    pub fn left_mul(&self, x: usize, v: &[Rational]) -> Vec<Rational> {
        let g = self.group;
        let nc = self.nc;
        let mut out = vec![Rational::zero(); v.len()];
        for y in 0..g.order() {
            let z = g.mul(x, y);
            out[z * nc..(z + 1) * nc].clone_from_slice(&v[y * nc..(y + 1) * nc]);
        }
        out
    }

    /// ζ_c·v.
    pub fn zeta_mul(&self, v: &[Rational]) -> Vec<Rational> {
        let nc = self.nc;
        let data = cyclo_data(self.conductor);
        let top_row = data.zeta_pow(nc as u64);
        let mut out = vec![Rational::zero(); v.len()];
        for x in 0..self.group.order() {
            let block = &v[x * nc..(x + 1) * nc];
            let o = &mut out[x * nc..(x + 1) * nc];
            for j in 0..nc - 1 {
                o[j + 1] = block[j].clone();
            }
            let top = &block[nc - 1];
            if !top.is_zero() {
                for (oi, &c) in o.iter_mut().zip(top_row) {
                    if c != 0 {
                        *oi += top * BigInt::from(c);
                    }
                }
            }
        }
        out
    }

    /// Coordinate permutation for v ↦ g v g⁻¹.
    pub fn conjugation_map(&self, g: usize) -> CoordPermutation {
        let grp = self.group;
        let nc = self.nc;
        let mut target = vec![0; self.ambient_dim()];
        for x in 0..grp.order() {
            let y = grp.conjugate(g, x);
            for j in 0..nc {
                target[x * nc + j] = y * nc + j;
            }
        }
        CoordPermutation { target }
    }

    /// Σ over a left transversal of `sub` in `over` of t·v·t⁻¹.
    pub fn relative_trace(&self, over: &Subgroup, sub: &Subgroup, v: &[Rational]) -> Vec<Rational> {
        let g = self.group;
        let nc = self.nc;
        let mut out = vec![Rational::zero(); v.len()];
        for t in over.transversal_of(g, sub) {
            for x in 0..g.order() {
                let src = &v[x * nc..(x + 1) * nc];
                if src.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let y = g.conjugate(t, x);
                for (o, s) in out[y * nc..(y + 1) * nc].iter_mut().zip(src) {
                    *o += s;
                }
            }
        }
        out
    }

    /// (OGe_χ)^P, memoized per subgroup.
    pub fn fixed_lattice(&self, p_sub: &Subgroup) -> Result<Arc<PLattice>> {
        let key = p_sub.elements().to_vec();
        if let Some(l) = self.fixed.read().unwrap().get(&key) {
            return Ok(l.clone());
        }
        let maps: Vec<CoordPermutation> =
            p_sub.generators(self.group).into_iter().map(|x| self.conjugation_map(x)).collect();
        let refs: Vec<&dyn LinearMap> = maps.iter().map(|m| m as &dyn LinearMap).collect();
        let fixed = Arc::new(self.lattice.fixed_sublattice(&refs)?);
        Ok(self.fixed.write().unwrap().entry(key).or_insert(fixed).clone())
    }

    /// The Q(ζ_c) element stored in the identity block of v, times |G|/χ(1)².
    fn lambda_of(&self, v: &[Rational]) -> CycloNum {
        let factor = Rational::new(BigInt::from(self.group.order()), BigInt::from(self.degree * self.degree));
        let coeffs: Vec<Rational> = v[..self.nc].iter().map(|c| c * &factor).collect();
        CycloNum::from_coeffs(self.conductor, coeffs).expect("identity block has phi(c) entries")
    }

    /// λ·e_χ in ambient coordinates.
    pub fn scalar_times_e(&self, lambda: &CycloNum) -> Vec<Rational> {
        let nc = self.nc;
        let mut out = vec![Rational::zero(); self.ambient_dim()];
        for x in 0..self.group.order() {
            let c = &self.idempotent.coefficients[x];
            if c.is_zero() {
                continue;
            }
            let prod = lambda * c;
            out[x * nc..(x + 1) * nc].clone_from_slice(prod.coeffs());
        }
        out
    }

    /// Valuation at the chosen prime, normalized for Q(ζ_c).
    pub fn valuation(&self, x: &CycloNum) -> Result<Option<i64>> {
        self.ld.valuation_in_subfield(x)
    }

    /// Min over the fixed-point basis of v(λ_i); zero iff e_χ ∈ Tr_P^G((OGe_χ)^P).
    pub fn trace_defect(&self, p_sub: &Subgroup) -> Result<TraceResult> {
        let fixed = self.fixed_lattice(p_sub)?;
        let whole = self.group.whole();
        let mut lambdas = Vec::with_capacity(fixed.rank());
        let mut best: Option<i64> = None;
        for b in fixed.basis() {
            let t = self.relative_trace(&whole, p_sub, b);
            let lambda = self.lambda_of(&t);
            if self.scalar_times_e(&lambda) != t {
                bail!(Internal, "trace of a fixed point is not a multiple of e_chi");
            }
            if let Some(v) = self.valuation(&lambda)? {
                if v < 0 {
                    bail!(Internal, "trace coefficient {lambda} has negative valuation {v}");
                }
                best = Some(best.map_or(v, |b| b.min(v)));
            }
            lambdas.push(lambda);
        }
        let Some(trace_defect) = best else {
            bail!(Internal, "relative trace from a subgroup of order {} vanishes", p_sub.order());
        };
        Ok(TraceResult { subgroup: p_sub.clone(), lambdas, trace_defect })
    }

    /// Whether the ambient vector lies in the lattice.
    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        self.lattice.member(v)
    }
}

/// Anchor search over every p-subgroup class.
#[derive(Clone, Debug)]
pub struct AnchorResult {
    pub anchor: Subgroup,
    /// p-subgroup class representatives, ascending by order.
    pub classes: Vec<Subgroup>,
    pub trace_defects: Vec<i64>,
    /// Indices into `classes` of the condition-minimal classes.
    pub minimal: Vec<usize>,
}

impl AnchorResult {
    pub fn anchor_order(&self) -> usize {
        self.anchor.order()
    }

    pub fn anchor_class(&self) -> usize {
        self.minimal[0]
    }
}

pub fn anchors(order: &CharOrder) -> Result<AnchorResult> {
    let g = order.group;
    let classes = g.p_subgroup_classes(order.ld.p)?;
    let results: Vec<Result<TraceResult>> = classes.par_iter().map(|h| order.trace_defect(h)).collect();
    let mut defects = Vec::with_capacity(classes.len());
    for r in results {
        defects.push(r?.trace_defect);
    }
    let holds: Vec<bool> = defects.iter().map(|&d| d == 0).collect();
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
        let orders: Vec<usize> = minimal.iter().map(|&i| classes[i].order()).collect();
        bail!(
            TheoremViolation,
            "character {}: {} minimal classes satisfy the trace condition (orders {orders:?}, trace defects {defects:?})",
            order.chi,
            minimal.len()
        );
    }
    Ok(AnchorResult { anchor: classes[minimal[0]].clone(), classes, trace_defects: defects, minimal })
}

/// Quotient valuations of (OG)^P·e_χ inside (OGe_χ)^P.
pub fn fixed_point_gap(order: &CharOrder, p_sub: &Subgroup) -> Result<Vec<i64>> {
    let g = order.group;
    let mut seen = vec![false; g.order()];
    let mut gens = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        let mut orbit: Vec<usize> = p_sub.elements().iter().map(|&y| g.conjugate(y, x)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        let mut v = vec![Rational::zero(); order.ambient_dim()];
        for &y in &orbit {
            seen[y] = true;
            for (o, s) in v.iter_mut().zip(order.left_mul(y, &order.e)) {
                *o += s;
            }
        }
        let mut cur = v;
        for _ in 0..order.nc {
            let next = order.zeta_mul(&cur);
            gens.push(cur);
            cur = next;
        }
    }
    let sub = PLattice::normal_form(order.ld.p, order.ambient_dim(), gens)?;
    let fixed = order.fixed_lattice(p_sub)?;
    fixed.quotient_valuations(&sub)
}

/// Builds OGe_χ for every character of the table.
pub fn all_orders<'a>(
    g: &'a Group,
    table: &'a CharTable,
    ld: &LocalData,
    cfg: AnchorConfig,
) -> Result<Vec<CharOrder<'a>>> {
    (0..table.characters.len()).map(|chi| order_lattice(g, table, chi, ld, cfg)).collect()
}
