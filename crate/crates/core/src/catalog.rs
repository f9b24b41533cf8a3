//! Built-in groups, quotient maps between them, and expected values.

use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::grp::{group_from_spec, Group, GroupSpec, Homomorphism, Perm};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// A worked example from the literature.
    PublishedExample,
    /// Follows directly from definitions.
    Elementary,
    /// Checked by an independent computation.
    IndependentCheck,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::PublishedExample => "published_example",
            Provenance::Elementary => "elementary",
            Provenance::IndependentCheck => "independent_check",
        }
    }
}

/// Which characters an expectation applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "degree")]
pub enum CharSelector {
    All,
    Degree(u64),
    FaithfulDegree(u64),
    UnfaithfulDegree(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "quantity", content = "value")]
pub enum Quantity {
    AnchorOrder(usize),
    BlockDefectOrder(usize),
    ModPDefectOrder(usize),
    IrreducibleModP(bool),
    ReductionDim(usize),
    RadicalDim(usize),
    ReductionCommutative(bool),
    BlockCount(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub prime: u64,
    pub chars: CharSelector,
    pub expect: Quantity,
    pub provenance: Provenance,
}

/// Surjection onto another catalog group, by images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSpec {
    pub target: String,
    /// One-based image permutations, one per source generator.
    pub images: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    #[serde(flatten)]
    pub group: GroupSpec,
    #[serde(default)]
    pub primes: Vec<u64>,
    #[serde(default)]
    pub quotients: Vec<QuotientSpec>,
    #[serde(default)]
    pub expected: Vec<Expectation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub groups: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn from_json(s: &str) -> Result<Self> {
        let c: Catalog = serde_json::from_str(s).map_err(|e| crate::Error::Input(format!("catalog: {e}")))?;
        for e in &c.groups {
            for q in &e.quotients {
                if c.get(&q.target).is_none() {
                    bail!(Input, "quotient target {} of {} is not in the catalog", q.target, e.group.name);
                }
            }
        }
        Ok(c)
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.groups.iter().find(|e| e.group.name.eq_ignore_ascii_case(name))
    }

    pub fn names(&self) -> Vec<&str> {
        self.groups.iter().map(|e| e.group.name.as_str()).collect()
    }
}

impl CatalogEntry {
    pub fn build(&self) -> Result<Group> {
        group_from_spec(&self.group)
    }
}

/// Builds the homomorphism described by `q` from `source` to `target`.
pub fn quotient_map(source: &Group, target: &Group, q: &QuotientSpec) -> Result<Homomorphism> {
    let images: Vec<Perm> = q.images.iter().map(|im| Perm::from_images_one_based(im)).collect::<Result<_>>()?;
    let h = Homomorphism::from_generator_images(source, target, &images)?;
    if !h.is_surjective(target) {
        bail!(Input, "map from {} to {} is not surjective", source.name, target.name);
    }
    Ok(h)
}

fn spec(name: &str, degree: usize, generators: Vec<Vec<usize>>) -> GroupSpec {
    GroupSpec { name: name.to_string(), degree, generators }
}

fn symmetric(n: usize) -> Vec<Vec<usize>> {
    let mut tr: Vec<usize> = (1..=n).collect();
    tr.swap(0, 1);
    let cyc: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
    vec![tr, cyc]
}

/// Nonzero vectors of F_3², in the fixed order used for GL(2,3).
const F3_VECTORS: [(u8, u8); 8] = [(0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)];

/// One-based permutation of the nonzero vectors induced by v ↦ Mv.
fn matrix_on_vectors(m: [[u8; 2]; 2]) -> Vec<usize> {
    F3_VECTORS
        .iter()
        .map(|&(x, y)| {
            let img = ((m[0][0] * x + m[0][1] * y) % 3, (m[1][0] * x + m[1][1] * y) % 3);
            F3_VECTORS.iter().position(|&v| v == img).unwrap() + 1
        })
        .collect()
}

/// One-based permutation of the four lines ⟨(0,1)⟩, ⟨(1,0)⟩, ⟨(1,1)⟩, ⟨(1,2)⟩.
fn matrix_on_lines(m: [[u8; 2]; 2]) -> Vec<usize> {
    let lines = [(0u8, 1u8), (1, 0), (1, 1), (1, 2)];
    let line_of = |(x, y): (u8, u8)| {
        lines
            .iter()
            .position(|&(a, b)| (0..3).any(|k| ((a * k) % 3, (b * k) % 3) == (x, y) && k != 0))
            .unwrap()
    };
    lines
        .iter()
        .map(|&(x, y)| line_of(((m[0][0] * x + m[0][1] * y) % 3, (m[1][0] * x + m[1][1] * y) % 3)) + 1)
        .collect()
}

const SL23_GENS: [[[u8; 2]; 2]; 2] = [[[1, 1], [0, 1]], [[0, 2], [1, 0]]];
const GL23_EXTRA: [[u8; 2]; 2] = [[2, 0], [0, 1]];

fn exp(prime: u64, chars: CharSelector, expect: Quantity, provenance: Provenance) -> Expectation {
    Expectation { prime, chars, expect, provenance }
}

/// The built-in catalog.
pub fn builtin_catalog() -> Catalog {
    use CharSelector::*;
    use Provenance::*;
    use Quantity::*;
    let entry = |group: GroupSpec, primes: &[u64], quotients: Vec<QuotientSpec>, expected: Vec<Expectation>| CatalogEntry {
        group,
        primes: primes.to_vec(),
        quotients,
        expected,
    };
    let gl_gens: Vec<[[u8; 2]; 2]> = SL23_GENS.iter().copied().chain([GL23_EXTRA]).collect();
    // S4 acts on the three pair partitions {12|34}, {13|24}, {14|23}
    let s4_to_s3 = QuotientSpec { target: "S3".into(), images: vec![vec![1, 3, 2], vec![3, 2, 1]] };
    let gl_to_s4 = QuotientSpec { target: "S4".into(), images: gl_gens.iter().map(|&m| matrix_on_lines(m)).collect() };
    let groups = vec![
        entry(
            spec("C2", 2, vec![vec![2, 1]]),
            &[2, 3, 5],
            vec![],
            vec![exp(2, All, AnchorOrder(2), Elementary)],
        ),
        entry(
            spec("C3", 3, vec![vec![2, 3, 1]]),
            &[2, 3, 5],
            vec![],
            vec![exp(3, All, AnchorOrder(3), Elementary), exp(2, All, AnchorOrder(1), Elementary)],
        ),
        entry(spec("C5", 5, vec![vec![2, 3, 4, 5, 1]]), &[2, 3, 5], vec![], vec![exp(5, All, AnchorOrder(5), Elementary)]),
        entry(
            spec("D8", 4, vec![vec![2, 3, 4, 1], vec![3, 2, 1, 4]]),
            &[2, 3, 5],
            vec![],
            vec![
                exp(2, Degree(2), AnchorOrder(8), PublishedExample),
                exp(2, Degree(2), ReductionDim(4), PublishedExample),
                exp(2, Degree(2), ReductionCommutative(true), PublishedExample),
                exp(2, Degree(2), RadicalDim(3), IndependentCheck),
            ],
        ),
        entry(
            spec("Q8", 8, vec![vec![3, 4, 2, 1, 7, 8, 6, 5], vec![5, 6, 8, 7, 2, 1, 3, 4]]),
            &[2, 3, 5],
            vec![],
            vec![exp(2, Degree(2), AnchorOrder(8), IndependentCheck), exp(2, All, BlockCount(1), Elementary)],
        ),
        entry(
            spec("A4", 4, vec![vec![2, 3, 1, 4], vec![2, 1, 4, 3]]),
            &[2, 3, 5],
            vec![],
            vec![exp(2, Degree(3), AnchorOrder(4), IndependentCheck)],
        ),
        entry(
            spec("S3", 3, symmetric(3)),
            &[2, 3, 5],
            vec![],
            vec![
                exp(2, Degree(2), AnchorOrder(1), PublishedExample),
                exp(2, Degree(2), ReductionDim(4), PublishedExample),
                exp(2, Degree(2), IrreducibleModP(true), PublishedExample),
                exp(2, Degree(2), BlockDefectOrder(1), Elementary),
            ],
        ),
        entry(
            spec("S4", 4, symmetric(4)),
            &[2, 3, 5],
            vec![s4_to_s3],
            vec![
                exp(2, Degree(2), AnchorOrder(4), PublishedExample),
                exp(2, Degree(2), BlockDefectOrder(8), PublishedExample),
                exp(2, Degree(3), RadicalDim(4), IndependentCheck),
                exp(2, All, BlockCount(1), Elementary),
            ],
        ),
        entry(
            spec("S5", 5, symmetric(5)),
            &[2, 3, 5],
            vec![],
            vec![
                exp(2, All, BlockCount(2), PublishedExample),
                exp(2, Degree(6), AnchorOrder(8), PublishedExample),
                exp(2, Degree(4), BlockDefectOrder(2), PublishedExample),
                exp(2, Degree(5), BlockDefectOrder(8), PublishedExample),
            ],
        ),
        entry(
            spec("A5", 5, vec![vec![2, 3, 1, 4, 5], vec![2, 3, 4, 5, 1]]),
            &[2, 3, 5],
            vec![],
            vec![exp(2, Degree(4), AnchorOrder(1), Elementary), exp(5, Degree(5), AnchorOrder(1), Elementary)],
        ),
        entry(
            spec("SL(2,3)", 8, SL23_GENS.iter().map(|&m| matrix_on_vectors(m)).collect()),
            &[2, 3, 5],
            vec![],
            vec![exp(2, All, BlockCount(1), Elementary)],
        ),
        entry(
            spec("GL(2,3)", 8, gl_gens.iter().map(|&m| matrix_on_vectors(m)).collect()),
            &[2, 3, 5],
            vec![gl_to_s4],
            vec![
                exp(2, FaithfulDegree(2), IrreducibleModP(true), PublishedExample),
                exp(2, FaithfulDegree(2), AnchorOrder(16), PublishedExample),
                exp(2, FaithfulDegree(2), ModPDefectOrder(8), PublishedExample),
                exp(2, UnfaithfulDegree(2), AnchorOrder(8), PublishedExample),
            ],
        ),
    ];
    Catalog { groups }
}
