//! p-blocks by central-character congruences, and block defect groups by the
//! relative trace test in class-sum coordinates.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::arith::{vp_u64, Rational};
use crate::cyclo::CycloNum;
use crate::error::{bail, Result};
use crate::grp::{Group, Subgroup};
use crate::padic::{LocalData, ResidueElt};

use super::CharTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Character indices, ascending.
    pub members: Vec<usize>,
    pub defect: u32,
    /// h(χ) = d(B) − d(χ), aligned with `members`.
    pub heights: Vec<u32>,
    /// Coefficient of every element of each class in 1_B.
    pub idempotent: Vec<CycloNum>,
}

impl Block {
    pub fn contains(&self, chi: usize) -> bool {
        self.members.contains(&chi)
    }

    pub fn height_of(&self, chi: usize) -> Option<u32> {
        self.members.iter().position(|&c| c == chi).map(|i| self.heights[i])
    }
}

/// The partition of Irr(G) into p-blocks at the chosen prime.
pub fn blocks(table: &CharTable, ld: &LocalData) -> Result<Vec<Block>> {
    let k = table.num_classes();
    let mut groups: BTreeMap<Vec<ResidueElt>, Vec<usize>> = BTreeMap::new();
    for chi in 0..table.characters.len() {
        let mut key = Vec::with_capacity(k);
        for c in 0..k {
            let w = table.central_character_checked(chi, c, ld)?;
            key.push(ld.residue(&w)?);
        }
        groups.entry(key).or_default().push(chi);
    }
    let mut parts: Vec<Vec<usize>> = groups.into_values().collect();
    parts.sort();
    let order = table.order;
    let mut out = Vec::with_capacity(parts.len());
    for members in parts {
        let defects: Vec<u32> = members.iter().map(|&c| table.characters[c].defect(order, ld.p)).collect();
        let defect = *defects.iter().max().unwrap();
        let heights = defects.iter().map(|d| defect - d).collect();
        let mut idempotent = Vec::with_capacity(k);
        for c in 0..k {
            let mut s = CycloNum::zero(table.m);
            for &chi in &members {
                let ch = &table.characters[chi];
                s = &s + &ch.values[c].conj().scale(&Rational::new(BigInt::from(ch.degree), BigInt::from(order)));
            }
            if let Some(v) = ld.valuation(&s)? {
                if v < 0 {
                    bail!(Internal, "block idempotent coefficient at class {c} has valuation {v}");
                }
            }
            idempotent.push(s);
        }
        out.push(Block { members, defect, heights, idempotent });
    }
    Ok(out)
}

/// `min_{x ∈ C} v_p(|C_G(x)| / |C_P(x)|)` for every class C.
pub fn trace_index_valuations(g: &Group, subgroup: &Subgroup, p: u64) -> Vec<u32> {
    g.classes
        .iter()
        .enumerate()
        .map(|(ci, cls)| {
            let cg = g.centralizer_order(ci) as u64;
            cls.members
                .iter()
                .map(|&x| {
                    let cp = subgroup.elements().iter().filter(|&&y| g.mul(x, y) == g.mul(y, x)).count() as u64;
                    vp_u64(cg / cp, p)
                })
                .min()
                .unwrap()
        })
        .collect()
}

/// Whether 1_B lies in Tr_P^G((OG)^P). The trace of a P-orbit sum of x is
/// |C_G(x) : C_P(x)| times the class sum of x, so the image is diagonal in
/// class-sum coordinates.
pub fn idempotent_in_trace_image(g: &Group, block: &Block, subgroup: &Subgroup, ld: &LocalData) -> Result<bool> {
    let a = trace_index_valuations(g, subgroup, ld.p);
    for (c, beta) in block.idempotent.iter().enumerate() {
        if let Some(v) = ld.valuation(beta)? {
            if v < ld.e as i64 * a[c] as i64 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Minimal p-subgroup class P with 1_B ∈ Tr_P^G((OG)^P).
pub fn block_defect_group(g: &Group, block: &Block, ld: &LocalData) -> Result<Subgroup> {
    let classes = g.p_subgroup_classes(ld.p)?;
    let mut found: Vec<Subgroup> = Vec::new();
    for h in classes {
        if let Some(first) = found.first() {
            if h.order() > first.order() {
                break;
            }
        }
        if idempotent_in_trace_image(g, block, &h, ld)? {
            found.push(h);
        }
    }
    let Some(d) = found.first().cloned() else {
        bail!(Internal, "no p-subgroup class satisfies the trace condition for block {:?}", block.members);
    };
    let expected = ld.p.pow(block.defect) as usize;
    if d.order() != expected {
        bail!(Internal, "trace-minimal order {} differs from p^d(B) = {expected}", d.order());
    }
    if found.len() > 1 {
        bail!(TheoremViolation, "{} non-conjugate minimal defect group candidates for block {:?}", found.len(), block.members);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chtab::compute_table;
    use crate::grp::group_from_generators;
    use crate::padic::choose_prime;

    fn sym(n: usize) -> Group {
        let mut cyc: Vec<usize> = (2..=n).collect();
        cyc.push(1);
        let mut tr: Vec<usize> = (1..=n).collect();
        tr.swap(0, 1);
        group_from_generators(&format!("S{n}"), n, &[tr, cyc]).unwrap()
    }

    #[test]
    fn s3_blocks_at_two() {
        let g = sym(3);
        let t = compute_table(&g).unwrap();
        let ld = choose_prime(2, g.exponent());
        let bs = blocks(&t, &ld).unwrap();
        assert_eq!(bs.len(), 2);
        assert_eq!(bs[0].members, vec![0, 1]);
        assert_eq!(bs[0].defect, 1);
        assert_eq!(bs[1].members, vec![2]);
        assert_eq!(bs[1].defect, 0);
        assert_eq!(block_defect_group(&g, &bs[0], &ld).unwrap().order(), 2);
        assert!(block_defect_group(&g, &bs[1], &ld).unwrap().is_trivial());
    }

    #[test]
    fn s4_single_block() {
        let g = sym(4);
        let t = compute_table(&g).unwrap();
        let ld = choose_prime(2, g.exponent());
        let bs = blocks(&t, &ld).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].defect, 3);
        let d = block_defect_group(&g, &bs[0], &ld).unwrap();
        assert_eq!(d.order(), 8);
    }

    #[test]
    fn idempotents_sum_to_one() {
        let g = sym(4);
        let t = compute_table(&g).unwrap();
        let ld = choose_prime(3, g.exponent());
        let bs = blocks(&t, &ld).unwrap();
        for c in 0..t.num_classes() {
            let mut s = CycloNum::zero(t.m);
            for b in &bs {
                s = &s + &b.idempotent[c];
            }
            let expected = if c == 0 { 1 } else { 0 };
            assert_eq!(s, CycloNum::from_int(t.m, expected));
        }
    }
}
