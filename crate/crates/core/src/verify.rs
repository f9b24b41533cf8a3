//! Theorem checks over a catalog of groups, and the report they produce.
//!
//! Failed checks are report entries, not errors; only malformed input aborts.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::anchor::{
    anchors, brauer_quotient_dim, defect_group_mod_p, fixed_point_gap, order_lattice, radical_data, reduce_mod_p,
    AnchorConfig, AnchorResult, Reduction,
};
use crate::arith::{gcd, is_prime, prime_factors, vp_u64};
use crate::cache::TableCache;
use crate::catalog::{quotient_map, Catalog, CatalogEntry, CharSelector, Expectation, Quantity};
use crate::chtab::{block_defect_group, blocks, compute_table, Block, CharTable};
use crate::error::{bail, Result};
use crate::grp::{Group, Homomorphism, Subgroup};
use crate::padic::{choose_prime, LocalData, PrimeHeader};

type Outcome<T> = std::result::Result<T, String>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyConfig {
    pub full_field: bool,
    pub initial_precision: Option<u32>,
}

impl VerifyConfig {
    pub fn anchor_config(&self) -> AnchorConfig {
        AnchorConfig { full_field: self.full_field }
    }
}

/// The chosen prime above p in Q(ζ_exp(G)), with the configured precision.
pub fn local_data(table: &CharTable, p: u64, cfg: &VerifyConfig) -> Result<LocalData> {
    if !is_prime(p) {
        bail!(Input, "{p} is not a prime");
    }
    let ld = choose_prime(p, table.m).for_group_order(table.order);
    Ok(match cfg.initial_precision {
        Some(0) => bail!(Input, "initial precision must be positive"),
        Some(n) => ld.with_initial_precision(n),
        None => ld,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionSummary {
    /// Over the residue field.
    pub dimension: usize,
    pub field_degree: usize,
    pub radical_dim: usize,
    pub center_dim: usize,
    pub quotient_blocks: Vec<usize>,
    pub commutative: bool,
    pub associative: bool,
    pub radical_cross_checked: bool,
}

impl ReductionSummary {
    pub fn irreducible_mod_p(&self) -> bool {
        self.radical_dim == 0 && self.center_dim == 1
    }
}

/// Everything computed for one character at one prime.
#[derive(Clone, Debug)]
pub struct CharAnalysis {
    pub chi: usize,
    pub degree: u64,
    pub faithful: bool,
    pub block: usize,
    pub defect: u32,
    pub height: u32,
    pub value_conductor: u64,
    pub coefficient_conductor: u64,
    pub anchor: Outcome<AnchorResult>,
    pub reduction: Outcome<ReductionSummary>,
    pub mod_p_defect: Outcome<Subgroup>,
    pub brauer_at_anchor: Outcome<usize>,
    pub brauer_at_trivial: Outcome<usize>,
    pub gap_at_anchor: Outcome<Vec<i64>>,
    /// (conjugating element, trace defect at the anchor, at its conjugate).
    pub conjugate_defect: Outcome<(usize, i64, i64)>,
}

fn not_run<T>() -> Outcome<T> {
    Err("not computed".to_string())
}

fn msg<T>(r: Result<T>) -> Outcome<T> {
    r.map_err(|e| e.to_string())
}

pub fn analyze_character(
    g: &Group,
    table: &CharTable,
    ld: &LocalData,
    blocks: &[Block],
    chi: usize,
    cfg: &VerifyConfig,
) -> CharAnalysis {
    let ch = &table.characters[chi];
    let block = blocks.iter().position(|b| b.contains(chi)).expect("blocks partition the characters");
    let mut out = CharAnalysis {
        chi,
        degree: ch.degree,
        faithful: ch.faithful,
        block,
        defect: ch.defect(table.order, ld.p),
        height: blocks[block].height_of(chi).expect("member of its block"),
        value_conductor: ch.value_conductor,
        coefficient_conductor: ch.value_conductor,
        anchor: not_run(),
        reduction: not_run(),
        mod_p_defect: not_run(),
        brauer_at_anchor: not_run(),
        brauer_at_trivial: not_run(),
        gap_at_anchor: not_run(),
        conjugate_defect: not_run(),
    };
    let order = match order_lattice(g, table, chi, ld, cfg.anchor_config()) {
        Ok(o) => o,
        Err(e) => {
            out.anchor = Err(e.to_string());
            return out;
        }
    };
    out.coefficient_conductor = order.conductor;
    out.anchor = msg(anchors(&order));
    match Reduction::new(&order) {
        Ok(red) => {
            match reduce_mod_p(&order, &red) {
                Ok(alg) => {
                    let commutative = alg.is_commutative();
                    let associative = alg.is_associative();
                    out.reduction = msg(radical_data(&alg)).map(|rd| ReductionSummary {
                        dimension: alg.dimension(),
                        field_degree: alg.f,
                        radical_dim: rd.radical_dim,
                        center_dim: rd.center_dim,
                        quotient_blocks: rd.quotient_blocks,
                        commutative,
                        associative,
                        radical_cross_checked: rd.cross_checked,
                    });
                    out.mod_p_defect = msg(defect_group_mod_p(g, &alg, None));
                }
                Err(e) => out.reduction = Err(e.to_string()),
            }
            out.brauer_at_trivial = msg(brauer_quotient_dim(&order, &red, &g.trivial_subgroup()));
            if let Ok(a) = &out.anchor {
                out.brauer_at_anchor = msg(brauer_quotient_dim(&order, &red, &a.anchor));
            }
        }
        Err(e) => out.reduction = Err(e.to_string()),
    }
    if let Ok(a) = &out.anchor {
        out.gap_at_anchor = msg(fixed_point_gap(&order, &a.anchor));
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + chi as u64);
        let x = rng.gen_range(0..g.order());
        let before = a.trace_defects[a.anchor_class()];
        out.conjugate_defect = msg(order.trace_defect(&a.anchor.conjugate(g, x))).map(|t| (x, before, t.trace_defect));
    }
    out
}

/// Everything computed for one group at one prime.
#[derive(Clone, Debug)]
pub struct GroupAnalysis {
    pub p: u64,
    pub header: PrimeHeader,
    pub initial_precision: u32,
    pub precision_cap: u32,
    pub classes: Vec<Subgroup>,
    pub p_core: Subgroup,
    pub blocks: Vec<Block>,
    pub block_defect_groups: Vec<Outcome<Subgroup>>,
    pub chars: Vec<CharAnalysis>,
}

pub fn analyze_group(g: &Group, table: &CharTable, p: u64, cfg: &VerifyConfig) -> Result<GroupAnalysis> {
    let ld = local_data(table, p, cfg)?;
    let classes = g.p_subgroup_classes(p)?;
    let bl = blocks(table, &ld)?;
    let block_defect_groups = bl.par_iter().map(|b| msg(block_defect_group(g, b, &ld))).collect();
    let chars = (0..table.characters.len())
        .into_par_iter()
        .map(|chi| analyze_character(g, table, &ld, &bl, chi, cfg))
        .collect();
    Ok(GroupAnalysis {
        p,
        header: ld.header(),
        initial_precision: ld.initial_precision,
        precision_cap: ld.precision_cap,
        classes,
        p_core: g.p_core(p),
        blocks: bl,
        block_defect_groups,
        chars,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Generators (one-based images) of each subgroup involved.
    pub subgroups: Vec<Vec<Vec<usize>>>,
    pub valuations: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub char: Option<usize>,
    pub passed: bool,
    pub detail: String,
    pub provenance: Option<&'static str>,
    pub witness: Option<Witness>,
}

impl Check {
    fn new(name: &str, chi: Option<usize>, passed: bool, detail: String) -> Self {
        Check { name: name.to_string(), char: chi, passed, detail, provenance: None, witness: None }
    }

    fn with_witness(mut self, g: &Group, subgroups: &[&Subgroup], valuations: Vec<i64>) -> Self {
        self.witness = Some(Witness {
            subgroups: subgroups.iter().map(|h| h.generator_perms(g)).collect(),
            valuations,
        });
        self
    }
}

fn subconj(g: &Group, h: &Subgroup, k: &Subgroup) -> bool {
    g.is_subconjugate(h, k).unwrap_or(false)
}

fn conj(g: &Group, h: &Subgroup, k: &Subgroup) -> bool {
    g.are_conjugate(h, k).unwrap_or(false)
}

/// The per-character theorem checks.
pub fn group_checks(g: &Group, table: &CharTable, a: &GroupAnalysis) -> Vec<Check> {
    let mut checks = Vec::new();
    let p = a.p;
    for c in &a.chars {
        let chi = Some(c.chi);
        let res = match &c.anchor {
            Ok(r) => r,
            Err(e) => {
                checks.push(Check::new("anchor_class_unique", chi, false, e.clone()));
                continue;
            }
        };
        let anchor = &res.anchor;
        let order = anchor.order();
        checks.push(Check::new(
            "anchor_class_unique",
            chi,
            true,
            format!("class {} of order {order} is the unique minimal class", res.anchor_class()),
        ));
        let dg = match &a.block_defect_groups[c.block] {
            Ok(d) => d,
            Err(e) => {
                checks.push(Check::new("block_defect_group", chi, false, e.clone()));
                continue;
            }
        };
        let ok = subconj(g, anchor, dg);
        checks.push(
            Check::new("anchor_in_block_defect_group", chi, ok, format!("anchor order {order}, defect group order {}", dg.order()))
                .with_witness(g, &[anchor, dg], vec![]),
        );
        let ok = a.p_core.is_subset_of(anchor);
        checks.push(
            Check::new("p_core_in_anchor", chi, ok, format!("O_p(G) order {}, anchor order {order}", a.p_core.order()))
                .with_witness(g, &[&a.p_core, anchor], vec![]),
        );
        let ok = (c.defect == 0) == anchor.is_trivial();
        checks.push(Check::new(
            "defect_zero_iff_trivial_anchor",
            chi,
            ok,
            format!("defect {}, anchor order {order}", c.defect),
        ));
        if c.height == 0 {
            let want = (p as usize).pow(a.blocks[c.block].defect);
            checks.push(
                Check::new("height_zero_anchor_order", chi, order == want, format!("anchor order {order}, p^d(B) = {want}"))
                    .with_witness(g, &[anchor], vec![]),
            );
        }
        if dg.is_abelian(g) {
            let ok = conj(g, anchor, dg);
            checks.push(
                Check::new("abelian_defect_group_is_anchor", chi, ok, format!("defect group order {}", dg.order()))
                    .with_witness(g, &[anchor, dg], vec![]),
            );
        }
        let mut bad = Vec::new();
        for i in 0..res.classes.len() {
            for j in 0..res.classes.len() {
                if res.classes[i].order() < res.classes[j].order()
                    && subconj(g, &res.classes[i], &res.classes[j])
                    && res.trace_defects[j] > res.trace_defects[i]
                {
                    bad.push((i, j));
                }
            }
        }
        let mut check = Check::new("trace_defect_monotone", chi, bad.is_empty(), format!("violating class pairs {bad:?}"));
        if let Some(&(i, j)) = bad.first() {
            check = check.with_witness(g, &[&res.classes[i], &res.classes[j]], vec![res.trace_defects[i], res.trace_defects[j]]);
        }
        checks.push(check);
        checks.push(match &c.conjugate_defect {
            Ok((x, before, after)) => Check::new(
                "trace_defect_conjugation_invariant",
                chi,
                before == after,
                format!("conjugating by element {x}: {before} vs {after}"),
            )
            .with_witness(g, &[anchor], vec![*before, *after]),
            Err(e) => Check::new("trace_defect_conjugation_invariant", chi, false, e.clone()),
        });
        checks.push(match &c.mod_p_defect {
            Ok(q) => Check::new(
                "mod_p_defect_in_anchor",
                chi,
                subconj(g, q, anchor),
                format!("mod-p defect order {}, anchor order {order}", q.order()),
            )
            .with_witness(g, &[q, anchor], vec![]),
            Err(e) => Check::new("mod_p_defect_in_anchor", chi, false, e.clone()),
        });
        checks.push(match &c.brauer_at_anchor {
            Ok(d) => Check::new("brauer_quotient_nonzero_at_anchor", chi, *d > 0, format!("dimension {d}"))
                .with_witness(g, &[anchor], vec![]),
            Err(e) => Check::new("brauer_quotient_nonzero_at_anchor", chi, false, e.clone()),
        });
        let d2 = (c.degree * c.degree) as usize;
        checks.push(match (&c.reduction, &c.brauer_at_trivial) {
            (Ok(r), Ok(b)) => Check::new(
                "reduction_dimension",
                chi,
                r.dimension == d2 && r.associative && *b == d2,
                format!("dimension {}, Brauer quotient at 1 {b}, chi(1)^2 = {d2}, associative {}", r.dimension, r.associative),
            ),
            (Err(e), _) | (_, Err(e)) => Check::new("reduction_dimension", chi, false, e.clone()),
        });
        checks.push(match &c.gap_at_anchor {
            Ok(gap) => {
                let equal = gap.iter().all(|&v| v == 0);
                let ok = !equal || conj(g, anchor, dg);
                Check::new(
                    "fixed_point_gap",
                    chi,
                    ok,
                    format!("gap {gap:?} at the anchor; equality forces a defect group"),
                )
                .with_witness(g, &[anchor, dg], gap.clone())
            }
            Err(e) => Check::new("fixed_point_gap", chi, false, e.clone()),
        });
        let mut partners = Vec::new();
        for j in 2..table.m.max(2) {
            if gcd(j, table.m) != 1 {
                continue;
            }
            if let Some(k) = table.galois_conjugate(c.chi, j as i64) {
                if k != c.chi && !partners.contains(&k) {
                    partners.push(k);
                }
            }
        }
        partners.sort_unstable();
        if !partners.is_empty() {
            let mut failures = Vec::new();
            for &k in &partners {
                match &a.chars[k].anchor {
                    Ok(other) if conj(g, anchor, &other.anchor) => {}
                    _ => failures.push(k),
                }
            }
            checks.push(Check::new(
                "galois_conjugate_anchors",
                chi,
                failures.is_empty(),
                format!("conjugates {partners:?}, mismatched {failures:?}"),
            ));
        }
    }
    checks
}

/// Every per-character check for G at p. Failures, including failure to analyse, are entries.
pub fn verify_theorems(g: &Group, p: u64, table: &CharTable, cfg: &VerifyConfig) -> Vec<Check> {
    match analyze_group(g, table, p, cfg) {
        Ok(a) => group_checks(g, table, &a),
        Err(e) => vec![Check::new("analysis", None, false, e.to_string())],
    }
}

/// Index of the inflation of ψ ∈ Irr(H) along `hom`, if it is a character of `table`.
pub fn inflated_index(g: &Group, table: &CharTable, h: &Group, htable: &CharTable, hom: &Homomorphism, psi: usize) -> Option<usize> {
    let vals: Vec<_> = g
        .classes
        .iter()
        .map(|c| htable.characters[psi].values[h.class_of(hom.image_of(c.representative))].embed(table.m))
        .collect::<Result<_>>()
        .ok()?;
    table.characters.iter().position(|ch| ch.values == vals)
}

/// Inflation law for every character of the quotient.
pub fn inflation_checks(
    g: &Group,
    table: &CharTable,
    a: &GroupAnalysis,
    h: &Group,
    htable: &CharTable,
    ha: &GroupAnalysis,
    hom: &Homomorphism,
) -> Vec<Check> {
    let mut checks = Vec::new();
    let kernel = hom.kernel(g);
    let sylow_n = (a.p as usize).pow(vp_u64(kernel.order() as u64, a.p));
    for psi in 0..htable.characters.len() {
        let Some(chi) = inflated_index(g, table, h, htable, hom, psi) else {
            checks.push(Check::new("inflation_law", None, false, format!("character {psi} of {} does not inflate", h.name)));
            continue;
        };
        let (Ok(pa), Ok(qa)) = (&a.chars[chi].anchor, &ha.chars[psi].anchor) else {
            checks.push(Check::new("inflation_law", Some(chi), false, "anchor missing".into()));
            continue;
        };
        let image = hom.image_subgroup(h, &pa.anchor);
        let meet = pa.anchor.intersection(g, &kernel);
        let ok = conj(h, &image, &qa.anchor) && meet.order() == sylow_n;
        checks.push(
            Check::new(
                "inflation_law",
                Some(chi),
                ok,
                format!(
                    "from {} character {psi}: image order {}, quotient anchor order {}, |P ∩ N| = {}, Sylow of N order {sylow_n}",
                    h.name,
                    image.order(),
                    qa.anchor_order(),
                    meet.order()
                ),
            )
            .with_witness(g, &[&pa.anchor, &kernel], vec![]),
        );
    }
    checks
}

fn selects(sel: CharSelector, c: &CharAnalysis) -> bool {
    match sel {
        CharSelector::All => true,
        CharSelector::Degree(d) => c.degree == d,
        CharSelector::FaithfulDegree(d) => c.degree == d && c.faithful,
        CharSelector::UnfaithfulDegree(d) => c.degree == d && !c.faithful,
    }
}

fn quantity_name(q: Quantity) -> &'static str {
    match q {
        Quantity::AnchorOrder(_) => "expected_anchor_order",
        Quantity::BlockDefectOrder(_) => "expected_block_defect_order",
        Quantity::ModPDefectOrder(_) => "expected_mod_p_defect_order",
        Quantity::IrreducibleModP(_) => "expected_irreducible_mod_p",
        Quantity::ReductionDim(_) => "expected_reduction_dim",
        Quantity::RadicalDim(_) => "expected_radical_dim",
        Quantity::ReductionCommutative(_) => "expected_reduction_commutative",
        Quantity::BlockCount(_) => "expected_block_count",
    }
}

/// Observed value of a quantity for one character, as a string.
fn observe(q: Quantity, c: &CharAnalysis, a: &GroupAnalysis) -> Outcome<String> {
    Ok(match q {
        Quantity::AnchorOrder(_) => c.anchor.as_ref()?.anchor_order().to_string(),
        Quantity::BlockDefectOrder(_) => a.block_defect_groups[c.block].as_ref()?.order().to_string(),
        Quantity::ModPDefectOrder(_) => c.mod_p_defect.as_ref()?.order().to_string(),
        Quantity::IrreducibleModP(_) => c.reduction.as_ref()?.irreducible_mod_p().to_string(),
        Quantity::ReductionDim(_) => c.reduction.as_ref()?.dimension.to_string(),
        Quantity::RadicalDim(_) => c.reduction.as_ref()?.radical_dim.to_string(),
        Quantity::ReductionCommutative(_) => c.reduction.as_ref()?.commutative.to_string(),
        Quantity::BlockCount(_) => a.blocks.len().to_string(),
    })
}

fn expected_value(q: Quantity) -> String {
    match q {
        Quantity::AnchorOrder(n)
        | Quantity::BlockDefectOrder(n)
        | Quantity::ModPDefectOrder(n)
        | Quantity::ReductionDim(n)
        | Quantity::RadicalDim(n)
        | Quantity::BlockCount(n) => n.to_string(),
        Quantity::IrreducibleModP(b) | Quantity::ReductionCommutative(b) => b.to_string(),
    }
}

pub fn expectation_checks(expected: &[Expectation], a: &GroupAnalysis) -> Vec<Check> {
    let mut checks = Vec::new();
    for ex in expected.iter().filter(|e| e.prime == a.p) {
        let name = quantity_name(ex.expect);
        let want = expected_value(ex.expect);
        let mut push = |chi: Option<usize>, obs: Outcome<String>| {
            let (passed, detail) = match obs {
                Ok(v) => (v == want, format!("expected {want}, observed {v}")),
                Err(e) => (false, e),
            };
            let mut c = Check::new(name, chi, passed, detail);
            c.provenance = Some(ex.provenance.as_str());
            checks.push(c);
        };
        if let Quantity::BlockCount(_) = ex.expect {
            push(None, Ok(a.blocks.len().to_string()));
            continue;
        }
        let selected: Vec<&CharAnalysis> = a.chars.iter().filter(|c| selects(ex.chars, c)).collect();
        if selected.is_empty() {
            push(None, Err(format!("no character matches {:?}", ex.chars)));
        }
        for c in selected {
            push(Some(c.chi), observe(ex.expect, c, a));
        }
    }
    checks
}

/// Values keyed by p-subgroup class id, serialized as a JSON object in id order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassValues(pub Vec<(usize, i64)>);

impl Serialize for ClassValues {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(&k.to_string(), v)?;
        }
        m.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharRecord {
    pub char: usize,
    pub degree: u64,
    pub block: usize,
    pub defect: u32,
    pub height: u32,
    pub value_conductor: u64,
    pub coefficient_conductor: u64,
    pub anchor_order: Option<usize>,
    pub anchor_class: Option<usize>,
    pub anchor_generators: Option<Vec<Vec<usize>>>,
    pub trace_defects: ClassValues,
    pub mod_p_defect_order: Option<usize>,
    pub irreducible_mod_p: Option<bool>,
    pub reduction: Option<ReductionSummary>,
    pub brauer_quotient_at_anchor: Option<usize>,
    pub fixed_point_gap_at_anchor: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub id: usize,
    pub order: usize,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockRecord {
    pub index: usize,
    pub members: Vec<usize>,
    pub defect: u32,
    pub heights: Vec<u32>,
    pub defect_group_order: Option<usize>,
    pub defect_group_generators: Option<Vec<Vec<usize>>>,
    pub abelian_defect_group: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrecisionRecord {
    pub initial: u32,
    pub cap: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Run {
    pub group: String,
    pub order: usize,
    pub prime: u64,
    pub header: Option<PrimeHeader>,
    pub precision: Option<PrecisionRecord>,
    pub p_core_order: Option<usize>,
    pub p_subgroup_classes: Vec<ClassRecord>,
    pub blocks: Vec<BlockRecord>,
    pub characters: Vec<CharRecord>,
    pub checks: Vec<Check>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigRecord {
    pub catalog: String,
    pub primes: Option<Vec<u64>>,
    pub full_field: bool,
    pub initial_precision: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub runs: usize,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub failed_checks: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: ConfigRecord,
    pub runs: Vec<Run>,
    pub summary: Summary,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

pub fn char_record(g: &Group, c: &CharAnalysis) -> CharRecord {
    let anchor = c.anchor.as_ref().ok();
    CharRecord {
        char: c.chi,
        degree: c.degree,
        block: c.block,
        defect: c.defect,
        height: c.height,
        value_conductor: c.value_conductor,
        coefficient_conductor: c.coefficient_conductor,
        anchor_order: anchor.map(|a| a.anchor_order()),
        anchor_class: anchor.map(|a| a.anchor_class()),
        anchor_generators: anchor.map(|a| a.anchor.generator_perms(g)),
        trace_defects: ClassValues(anchor.map(|a| a.trace_defects.iter().copied().enumerate().collect()).unwrap_or_default()),
        mod_p_defect_order: c.mod_p_defect.as_ref().ok().map(|q| q.order()),
        irreducible_mod_p: c.reduction.as_ref().ok().map(|r| r.irreducible_mod_p()),
        reduction: c.reduction.as_ref().ok().cloned(),
        brauer_quotient_at_anchor: c.brauer_at_anchor.as_ref().ok().copied(),
        fixed_point_gap_at_anchor: c.gap_at_anchor.as_ref().ok().cloned(),
    }
}

fn run_record(g: &Group, p: u64, analysis: &Outcome<GroupAnalysis>, checks: Vec<Check>) -> Run {
    let mut run = Run {
        group: g.name.clone(),
        order: g.order(),
        prime: p,
        header: None,
        precision: None,
        p_core_order: None,
        p_subgroup_classes: Vec::new(),
        blocks: Vec::new(),
        characters: Vec::new(),
        checks,
        error: None,
    };
    match analysis {
        Ok(a) => {
            run.header = Some(a.header.clone());
            run.precision = Some(PrecisionRecord { initial: a.initial_precision, cap: a.precision_cap });
            run.p_core_order = Some(a.p_core.order());
            run.p_subgroup_classes = a
                .classes
                .iter()
                .enumerate()
                .map(|(id, h)| ClassRecord { id, order: h.order(), generators: h.generator_perms(g) })
                .collect();
            run.blocks = a
                .blocks
                .iter()
                .zip(&a.block_defect_groups)
                .enumerate()
                .map(|(index, (b, d))| BlockRecord {
                    index,
                    members: b.members.clone(),
                    defect: b.defect,
                    heights: b.heights.clone(),
                    defect_group_order: d.as_ref().ok().map(|d| d.order()),
                    defect_group_generators: d.as_ref().ok().map(|d| d.generator_perms(g)),
                    abelian_defect_group: d.as_ref().ok().map(|d| d.is_abelian(g)),
                })
                .collect();
            run.characters = a.chars.iter().map(|c| char_record(g, c)).collect();
        }
        Err(e) => run.error = Some(e.clone()),
    }
    run
}

fn load_table(g: &Group, cache: Option<&TableCache>) -> Result<CharTable> {
    match cache {
        Some(c) => Ok(c.load_or_compute(g)?.0),
        None => compute_table(g),
    }
}

fn primes_for(entry: &CatalogEntry, order: usize, primes: Option<&[u64]>) -> Vec<u64> {
    let mut ps = match primes {
        Some(ps) => ps.to_vec(),
        None if !entry.primes.is_empty() => entry.primes.clone(),
        None => prime_factors(order as u64),
    };
    ps.sort_unstable();
    ps.dedup();
    ps
}

/// Runs every check for every catalog group at its primes (or at `primes`).
pub fn verify_catalog(
    catalog: &Catalog,
    catalog_name: &str,
    primes: Option<&[u64]>,
    cfg: &VerifyConfig,
    cache: Option<&TableCache>,
) -> Result<Report> {
    for &p in primes.unwrap_or(&[]) {
        if !is_prime(p) {
            bail!(Input, "{p} is not a prime");
        }
    }
    let groups: Vec<Group> = catalog.groups.iter().map(|e| e.build()).collect::<Result<_>>()?;
    let tables: Vec<CharTable> = groups.par_iter().map(|g| load_table(g, cache)).collect::<Result<_>>()?;
    let mut jobs = Vec::new();
    for (i, e) in catalog.groups.iter().enumerate() {
        for p in primes_for(e, groups[i].order(), primes) {
            if !is_prime(p) {
                bail!(Input, "{p} is not a prime");
            }
            jobs.push((i, p));
        }
    }
    let analyses: Vec<Outcome<GroupAnalysis>> =
        jobs.par_iter().map(|&(i, p)| msg(analyze_group(&groups[i], &tables[i], p, cfg))).collect();
    let mut by_job: HashMap<(usize, u64), &Outcome<GroupAnalysis>> = HashMap::new();
    for (job, a) in jobs.iter().zip(&analyses) {
        by_job.insert(*job, a);
    }
    let mut extra: HashMap<(usize, u64), Outcome<GroupAnalysis>> = HashMap::new();
    let mut runs = Vec::new();
    for (&(i, p), analysis) in jobs.iter().zip(&analyses) {
        let g = &groups[i];
        let entry = &catalog.groups[i];
        let mut checks = Vec::new();
        match analysis {
            Ok(a) => {
                checks.extend(group_checks(g, &tables[i], a));
                checks.extend(expectation_checks(&entry.expected, a));
                for q in &entry.quotients {
                    let t = catalog.groups.iter().position(|e| e.group.name.eq_ignore_ascii_case(&q.target)).expect("validated target");
                    let hom = match quotient_map(g, &groups[t], q) {
                        Ok(h) => h,
                        Err(e) => {
                            checks.push(Check::new("inflation_law", None, false, e.to_string()));
                            continue;
                        }
                    };
                    let ta = match by_job.get(&(t, p)) {
                        Some(a) => (*a).clone(),
                        None => extra
                            .entry((t, p))
                            .or_insert_with(|| msg(analyze_group(&groups[t], &tables[t], p, cfg)))
                            .clone(),
                    };
                    match ta {
                        Ok(ta) => checks.extend(inflation_checks(g, &tables[i], a, &groups[t], &tables[t], &ta, &hom)),
                        Err(e) => checks.push(Check::new("inflation_law", None, false, e)),
                    }
                }
            }
            Err(e) => checks.push(Check::new("analysis", None, false, e.clone())),
        }
        runs.push(run_record(g, p, analysis, checks));
    }
    let mut failed_checks = Vec::new();
    let mut total = 0;
    for r in &runs {
        for c in &r.checks {
            total += 1;
            if !c.passed {
                let who = c.char.map(|x| format!(" char {x}")).unwrap_or_default();
                failed_checks.push(format!("{} p={}{who}: {}", r.group, r.prime, c.name));
            }
        }
    }
    let failed = failed_checks.len();
    Ok(Report {
        tool: "anchorkit".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: ConfigRecord {
            catalog: catalog_name.to_string(),
            primes: primes.map(|p| p.to_vec()),
            full_field: cfg.full_field,
            initial_precision: cfg.initial_precision,
        },
        summary: Summary { runs: runs.len(), checks: total, passed: total - failed, failed, failed_checks },
        runs,
    })
}

pub fn render_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// One row per check.
pub fn render_csv(report: &Report) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| crate::Error::Io(e.to_string());
    w.write_record(["group", "prime", "check", "char", "passed", "provenance", "detail"]).map_err(io)?;
    for r in &report.runs {
        for c in &r.checks {
            w.write_record([
                r.group.as_str(),
                &r.prime.to_string(),
                &c.name,
                &c.char.map(|x| x.to_string()).unwrap_or_default(),
                if c.passed { "true" } else { "false" },
                c.provenance.unwrap_or(""),
                &c.detail,
            ])
            .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_else(|| "-".into())
}

pub fn render_markdown(report: &Report) -> String {
    let mut out = String::new();
    let s = &report.summary;
    out.push_str(&format!(
        "# anchorkit {} verification\n\n{} runs, {} checks, {} passed, {} failed.\n",
        report.version, s.runs, s.checks, s.passed, s.failed
    ));
    for r in &report.runs {
        out.push_str(&format!("\n## {} (order {}), p = {}\n\n", r.group, r.order, r.prime));
        if let Some(e) = &r.error {
            out.push_str(&format!("Error: {e}\n"));
            continue;
        }
        out.push_str("| char | degree | block | height | anchor | mod-p defect | irreducible mod p |\n");
        out.push_str("|---:|---:|---:|---:|---:|---:|:---:|\n");
        for c in &r.characters {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} |\n",
                c.char,
                c.degree,
                c.block,
                c.height,
                opt(&c.anchor_order),
                opt(&c.mod_p_defect_order),
                opt(&c.irreducible_mod_p)
            ));
        }
        let failed: Vec<&Check> = r.checks.iter().filter(|c| !c.passed).collect();
        out.push_str(&format!("\n{} checks, {} failed.\n", r.checks.len(), failed.len()));
        for c in failed {
            out.push_str(&format!("- {} (char {}): {}\n", c.name, opt(&c.char), c.detail));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;

    fn small_catalog() -> Catalog {
        let b = builtin_catalog();
        Catalog { groups: ["S3", "C3"].iter().map(|n| b.get(n).unwrap().clone()).collect() }
    }

    #[test]
    fn small_catalog_passes_and_renders() {
        let r = verify_catalog(&small_catalog(), "test", None, &VerifyConfig::default(), None).unwrap();
        assert!(r.all_passed(), "{:?}", r.summary.failed_checks);
        let json = render_json(&r);
        assert!(json.contains("\"trace_defects\""));
        let csv = render_csv(&r).unwrap();
        assert_eq!(csv.lines().count(), r.summary.checks + 1);
        assert!(render_markdown(&r).contains("## S3 (order 6), p = 2"));
        let again = verify_catalog(&small_catalog(), "test", None, &VerifyConfig::default(), None).unwrap();
        assert_eq!(render_json(&again), json);
    }

    #[test]
    fn verify_theorems_on_s4_at_two() {
        let g = builtin_catalog().get("S4").unwrap().build().unwrap();
        let t = compute_table(&g).unwrap();
        assert_eq!(g.conjugacy_classes()[0].size(), 1);
        let checks = verify_theorems(&g, 2, &t, &VerifyConfig::default());
        assert!(checks.len() > 5 * 8);
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }

    #[test]
    fn bad_prime_is_input_error() {
        let e = verify_catalog(&small_catalog(), "test", Some(&[4]), &VerifyConfig::default(), None).unwrap_err();
        assert!(matches!(e, crate::Error::Input(_)));
    }

    #[test]
    fn wrong_expectation_fails_with_provenance() {
        let mut cat = small_catalog();
        cat.groups[0].expected[0].expect = Quantity::AnchorOrder(2);
        let r = verify_catalog(&cat, "test", Some(&[2]), &VerifyConfig::default(), None).unwrap();
        assert!(!r.all_passed());
        let bad: Vec<&Check> = r.runs[0].checks.iter().filter(|c| !c.passed).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].provenance, Some("published_example"));
    }
}
