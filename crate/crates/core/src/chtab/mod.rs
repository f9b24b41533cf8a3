//! Ordinary character tables, central characters and p-blocks.

mod blocks;
pub mod dixon;

pub use blocks::{block_defect_group, blocks, Block};

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{rat, vp_u64, Rational};
use crate::cyclo::{value_conductor, CycloNum};
use crate::error::{bail, Error, Result};
use crate::grp::{Group, Perm};
use crate::padic::LocalData;

const DIXON_ESCALATIONS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub degree: u64,
    /// One value per class, at conductor exp(G).
    pub values: Vec<CycloNum>,
    pub value_conductor: u64,
    pub faithful: bool,
}

impl Character {
    fn new(degree: u64, values: Vec<CycloNum>) -> Self {
        let value_conductor = value_conductor(&values);
        let d = CycloNum::from_int(values[0].conductor(), degree as i64);
        let faithful = values.iter().skip(1).all(|v| *v != d);
        Character { degree, values, value_conductor, faithful }
    }

    /// d(χ) = v_p(|G|) − v_p(χ(1)).
    pub fn defect(&self, group_order: u64, p: u64) -> u32 {
        vp_u64(group_order, p) - vp_u64(self.degree, p)
    }

    /// Values rewritten at the value conductor.
    pub fn values_at_conductor(&self) -> Vec<CycloNum> {
        self.values.iter().map(|v| v.restrict(self.value_conductor).expect("value conductor")).collect()
    }

    /// Classes in the kernel.
    pub fn kernel_classes(&self) -> Vec<usize> {
        let d = CycloNum::from_int(self.values[0].conductor(), self.degree as i64);
        (0..self.values.len()).filter(|&c| self.values[c] == d).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharTable {
    pub group_name: String,
    pub m: u64,
    pub order: u64,
    pub class_sizes: Vec<u64>,
    pub class_orders: Vec<u32>,
    pub class_reps: Vec<Perm>,
    pub characters: Vec<Character>,
}

fn cmp_chars(a: &(u64, Vec<CycloNum>), b: &(u64, Vec<CycloNum>)) -> Ordering {
    a.0.cmp(&b.0).then_with(|| {
        for (x, y) in a.1.iter().zip(&b.1) {
            let o = x.cmp_coeffs(y);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

/// Character table by Dixon's method, verified by exact orthogonality.
pub fn compute_table(g: &Group) -> Result<CharTable> {
    let m = g.exponent();
    let a = dixon::class_constants(g);
    let bound = 2.0 * (g.order() as f64).sqrt();
    let mut l = 0;
    let mut last_err = None;
    for _ in 0..=DIXON_ESCALATIONS {
        l = dixon::dixon_prime(m, bound, l);
        match dixon::dixon_attempt(g, &a, l) {
            Ok(mut chars) => {
                chars.sort_by(cmp_chars);
                let table = CharTable::from_parts(g, chars.into_iter().map(|(d, v)| Character::new(d, v)).collect());
                match table.verify_orthogonality() {
                    Ok(()) => return Ok(table),
                    Err(e) => last_err = Some(e),
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    bail!(Internal, "character table verification failed after escalation: {}", last_err.unwrap())
}

impl CharTable {
    fn from_parts(g: &Group, characters: Vec<Character>) -> Self {
        CharTable {
            group_name: g.name.clone(),
            m: g.exponent(),
            order: g.order() as u64,
            class_sizes: g.classes.iter().map(|c| c.size() as u64).collect(),
            class_orders: g.classes.iter().map(|c| c.element_order).collect(),
            class_reps: g.classes.iter().map(|c| g.element(c.representative).clone()).collect(),
            characters,
        }
    }

    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.characters.iter().map(|c| c.degree).collect()
    }

    /// Σ_C |C| χ(C) conj(ψ(C)).
    pub fn inner_product_times_order(&self, i: usize, j: usize) -> CycloNum {
        let (a, b) = (&self.characters[i], &self.characters[j]);
        let mut s = CycloNum::zero(self.m);
        for c in 0..self.num_classes() {
            let t = (&a.values[c] * &b.values[c].conj()).scale(&rat(self.class_sizes[c] as i64));
            s = &s + &t;
        }
        s
    }

    /// Exact row and column orthogonality, Σ χ(1)² = |G| and χ(1) | |G|.
    pub fn verify_orthogonality(&self) -> Result<()> {
        let k = self.num_classes();
        if self.characters.len() != k {
            bail!(Input, "{} characters for {k} classes", self.characters.len());
        }
        let n = self.order as i64;
        for (i, ch) in self.characters.iter().enumerate() {
            if ch.values.len() != k {
                bail!(Input, "character {i} has {} values", ch.values.len());
            }
            if ch.values[0] != CycloNum::from_int(self.m, ch.degree as i64) {
                bail!(Input, "character {i}: value at identity differs from degree {}", ch.degree);
            }
            if !self.order.is_multiple_of(ch.degree) {
                bail!(Input, "character {i}: degree {} does not divide |G|", ch.degree);
            }
        }
        for i in 0..k {
            for j in i..k {
                let ip = self.inner_product_times_order(i, j);
                let expected = CycloNum::from_int(self.m, if i == j { n } else { 0 });
                if ip != expected {
                    bail!(Input, "row orthogonality fails for characters ({i}, {j})");
                }
            }
        }
        for c in 0..k {
            for d in c..k {
                let mut s = CycloNum::zero(self.m);
                for ch in &self.characters {
                    s = &s + &(&ch.values[c] * &ch.values[d].conj());
                }
                let expected = if c == d { (self.order / self.class_sizes[c]) as i64 } else { 0 };
                if s != CycloNum::from_int(self.m, expected) {
                    bail!(Input, "column orthogonality fails for classes ({c}, {d})");
                }
            }
        }
        let sum_sq: u64 = self.characters.iter().map(|c| c.degree * c.degree).sum();
        if sum_sq != self.order {
            bail!(Input, "sum of squared degrees {sum_sq} differs from |G| = {}", self.order);
        }
        Ok(())
    }

    /// ω_χ(Ĉ) = |C| χ(g_C) / χ(1).
    pub fn central_character(&self, chi: usize, class: usize) -> CycloNum {
        let ch = &self.characters[chi];
        ch.values[class].scale(&Rational::new(BigInt::from(self.class_sizes[class]), BigInt::from(ch.degree)))
    }

    /// ω_χ(Ĉ), checked to be integral at the chosen prime.
    pub fn central_character_checked(&self, chi: usize, class: usize, ld: &LocalData) -> Result<CycloNum> {
        let w = self.central_character(chi, class);
        if let Some(v) = ld.valuation(&w)? {
            if v < 0 {
                bail!(Internal, "central character of {chi} at class {class} has valuation {v}");
            }
        }
        Ok(w)
    }

    /// Galois conjugate index: χ^σ for ζ ↦ ζ^j.
    pub fn galois_conjugate(&self, chi: usize, j: i64) -> Option<usize> {
        let vals: Vec<CycloNum> = self.characters[chi].values.iter().map(|v| v.galois(j).unwrap()).collect();
        self.characters.iter().position(|c| c.values == vals)
    }

    /// Indices of characters whose kernel contains the given classes.
    pub fn characters_with_kernel_containing(&self, classes: &[usize]) -> Vec<usize> {
        (0..self.characters.len())
            .filter(|&i| {
                let ker = self.characters[i].kernel_classes();
                classes.iter().all(|c| ker.contains(c))
            })
            .collect()
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            group: self.group_name.clone(),
            m: self.m,
            classes: (0..self.num_classes())
                .map(|c| ClassJson {
                    size: self.class_sizes[c],
                    order: self.class_orders[c],
                    rep: self.class_reps[c].images_one_based(),
                })
                .collect(),
            chars: self
                .characters
                .iter()
                .map(|ch| CharJson { degree: ch.degree, values: ch.values.clone() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassJson {
    pub size: u64,
    pub order: u32,
    pub rep: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CharJson {
    pub degree: u64,
    pub values: Vec<CycloNum>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableJson {
    pub group: String,
    pub m: u64,
    pub classes: Vec<ClassJson>,
    pub chars: Vec<CharJson>,
}

pub fn export_table(t: &CharTable) -> String {
    serde_json::to_string_pretty(&t.to_json()).expect("table serializes")
}

/// Parses a table for `g`, matching classes by representative, and
/// re-verifies orthogonality before accepting it.
pub fn ingest_table(g: &Group, json: &str) -> Result<CharTable> {
    let tj: TableJson = serde_json::from_str(json)?;
    if tj.m != g.exponent() {
        bail!(Input, "table exponent {} differs from group exponent {}", tj.m, g.exponent());
    }
    let k = g.num_classes();
    if tj.classes.len() != k {
        bail!(Input, "table has {} classes, group has {k}", tj.classes.len());
    }
    // position in the table of each group class
    let mut order_map = vec![usize::MAX; k];
    for (ti, c) in tj.classes.iter().enumerate() {
        let rep = Perm::from_images_one_based(&c.rep)?;
        let Some(idx) = g.index_of(&rep) else {
            bail!(Input, "class representative {rep} is not in the group");
        };
        let gc = g.class_of(idx);
        if order_map[gc] != usize::MAX {
            bail!(Input, "two table classes fall into group class {gc}");
        }
        if g.classes[gc].size() as u64 != c.size || g.classes[gc].element_order != c.order {
            bail!(Input, "class data for representative {rep} do not match the group");
        }
        order_map[gc] = ti;
    }
    let mut chars = Vec::new();
    for (i, cj) in tj.chars.iter().enumerate() {
        if cj.values.len() != k {
            bail!(Input, "character {i} has {} values", cj.values.len());
        }
        let mut vals = Vec::with_capacity(k);
        for &ti in order_map.iter() {
            let v = &cj.values[ti];
            vals.push(v.embed(tj.m).map_err(|_| Error::Input(format!("character {i}: bad conductor")))?);
        }
        chars.push((cj.degree, vals));
    }
    chars.sort_by(cmp_chars);
    let table = CharTable::from_parts(g, chars.into_iter().map(|(d, v)| Character::new(d, v)).collect());
    table.verify_orthogonality()?;
    Ok(table)
}

/// True when every entry of a class function vector is zero.
pub fn is_zero_class_function(v: &[CycloNum]) -> bool {
    v.iter().all(|x| x.is_zero())
}
