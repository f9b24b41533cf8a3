//! Acceptance gate: one PASS/FAIL line per criterion, exit status 1 on any failure.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use anchorkit::arith::{euler_phi, vp_u64};
use anchorkit::catalog::{builtin_catalog, quotient_map, Catalog};
use anchorkit::chtab::{blocks, compute_table, CharTable};
use anchorkit::cyclo::CycloNum;
use anchorkit::grp::{Group, Homomorphism, Subgroup};
use anchorkit::lat::PLattice;
use anchorkit::padic::choose_prime;
use anchorkit::verify::{analyze_group, inflated_index, verify_catalog, CharAnalysis, GroupAnalysis, VerifyConfig};

type Q = BigRational;
type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

struct Setup {
    catalog: Catalog,
}

impl Setup {
    fn group(&self, name: &str) -> (Group, CharTable) {
        let g = self.catalog.get(name).unwrap().build().unwrap();
        let t = compute_table(&g).unwrap();
        (g, t)
    }

    fn analysis(&self, name: &str, p: u64) -> (Group, CharTable, GroupAnalysis) {
        let (g, t) = self.group(name);
        let a = analyze_group(&g, &t, p, &VerifyConfig::default()).unwrap();
        (g, t, a)
    }
}

fn by_degree(a: &GroupAnalysis, d: u64) -> Vec<&CharAnalysis> {
    a.chars.iter().filter(|c| c.degree == d).collect()
}

fn involutions(g: &Group, h: &Subgroup) -> usize {
    h.elements().iter().filter(|&&x| g.element_order(x) == 2).count()
}

fn is_dihedral_8(g: &Group, h: &Subgroup) -> bool {
    h.order() == 8 && !h.is_abelian(g) && involutions(g, h) == 5
}

fn is_quaternion_8(g: &Group, h: &Subgroup) -> bool {
    h.order() == 8 && !h.is_abelian(g) && involutions(g, h) == 1
}

fn criterion_1(s: &Setup) -> Outcome {
    let (g, _, a) = s.analysis("D8", 2);
    let cs = by_degree(&a, 2);
    ensure(cs.len() == 1, "D8 has one degree-2 character")?;
    let c = cs[0];
    let anchor = &c.anchor.as_ref().map_err(|e| e.clone())?.anchor;
    ensure(anchor.order() == 8 && anchor.elements() == g.whole().elements(), "anchor is the whole group")?;
    let r = c.reduction.as_ref().map_err(|e| e.clone())?;
    ensure(r.commutative, "reduction commutative")?;
    ensure(r.dimension == 4, format!("reduction dimension {}", r.dimension))?;
    ensure(r.radical_dim == 3, format!("radical dimension {}", r.radical_dim))?;
    Ok("anchor D8, reduction commutative of dimension 4 with radical of dimension 3".into())
}

fn criterion_2(s: &Setup) -> Outcome {
    let (_, _, a) = s.analysis("S3", 2);
    let cs = by_degree(&a, 2);
    ensure(cs.len() == 1, "S3 has one degree-2 character")?;
    let c = cs[0];
    ensure(a.blocks[c.block].defect == 0, "block of defect zero")?;
    let anchor = &c.anchor.as_ref().map_err(|e| e.clone())?.anchor;
    ensure(anchor.is_trivial(), format!("anchor order {}", anchor.order()))?;
    let r = c.reduction.as_ref().map_err(|e| e.clone())?;
    ensure(r.dimension == 4 && r.radical_dim == 0 && r.quotient_blocks == vec![4], "reduction is M_2(F_2)")?;
    ensure(!r.commutative && r.irreducible_mod_p(), "reduction irreducible")?;
    Ok("defect 0, trivial anchor, reduction M_2(F_2), irreducible mod 2".into())
}

fn criterion_3(s: &Setup) -> Outcome {
    let (g, _, a) = s.analysis("S4", 2);
    let cs = by_degree(&a, 2);
    ensure(cs.len() == 1, "S4 has one degree-2 character")?;
    let c = cs[0];
    let anchor = &c.anchor.as_ref().map_err(|e| e.clone())?.anchor;
    ensure(anchor.order() == 4 && anchor.elements() == a.p_core.elements(), "anchor is O_2(S4)")?;
    ensure(anchor.is_abelian(&g) && involutions(&g, anchor) == 3, "anchor is a Klein four group")?;
    let d = a.block_defect_groups[c.block].as_ref().map_err(|e| e.clone())?;
    ensure(is_dihedral_8(&g, d), format!("block defect group order {}", d.order()))?;
    Ok("anchor V4 = O_2(S4), block defect group D8".into())
}

fn criterion_4(s: &Setup) -> Outcome {
    let (g, _, a) = s.analysis("S5", 2);
    let mut defects: Vec<u32> = a.blocks.iter().map(|b| b.defect).collect();
    defects.sort_unstable();
    ensure(defects == vec![1, 3], format!("block defects {defects:?}"))?;
    let sylow = g.sylow(2);
    for c in &a.chars {
        let anchor = &c.anchor.as_ref().map_err(|e| e.clone())?.anchor;
        if c.degree == 6 {
            ensure(c.height == 1, "degree-6 character has height 1")?;
            ensure(anchor.order() == 8 && g.are_conjugate(anchor, &sylow).unwrap(), "degree-6 anchor is Sylow")?;
        } else {
            ensure(c.height == 0, format!("character {} has height {}", c.chi, c.height))?;
            let want = 1usize << a.blocks[c.block].defect;
            ensure(anchor.order() == want, format!("character {} anchor order {}", c.chi, anchor.order()))?;
        }
    }
    Ok("two blocks of defects 3 and 1; degree-6 character of height 1 with Sylow anchor".into())
}

fn criterion_5(s: &Setup) -> Outcome {
    let (g, _, a) = s.analysis("GL(2,3)", 2);
    let faithful: Vec<&CharAnalysis> = a.chars.iter().filter(|c| c.degree == 2 && c.faithful).collect();
    ensure(faithful.len() == 2, format!("{} faithful degree-2 characters", faithful.len()))?;
    let sylow = g.sylow(2);
    for c in faithful {
        let r = c.reduction.as_ref().map_err(|e| e.clone())?;
        ensure(r.irreducible_mod_p(), "irreducible mod 2")?;
        let anchor = &c.anchor.as_ref().map_err(|e| e.clone())?.anchor;
        ensure(anchor.order() == 16 && g.are_conjugate(anchor, &sylow).unwrap(), "anchor is Sylow of order 16")?;
        let q = c.mod_p_defect.as_ref().map_err(|e| e.clone())?;
        ensure(is_quaternion_8(&g, q), format!("mod-p defect group order {}", q.order()))?;
        ensure(g.is_subconjugate(q, anchor).unwrap(), "mod-p defect group inside the anchor")?;
    }
    Ok("both faithful degree-2 characters: irreducible mod 2, anchor order 16, mod-p defect Q8".into())
}

/// Both clauses of the inflation law for ψ of degree `degree` of the quotient.
fn inflation(s: &Setup, source: &str, target: &str, degree: u64) -> Result<(Group, Homomorphism, CharAnalysis), String> {
    let (g, t, a) = s.analysis(source, 2);
    let (h, ht, ha) = s.analysis(target, 2);
    let spec = s.catalog.get(source).unwrap().quotients.iter().find(|q| q.target == target).unwrap().clone();
    let hom = quotient_map(&g, &h, &spec).map_err(|e| e.to_string())?;
    let psi = ha.chars.iter().find(|c| c.degree == degree).ok_or("no ψ")?.chi;
    let chi = inflated_index(&g, &t, &h, &ht, &hom, psi).ok_or("inflation not found")?;
    ensure(!a.chars[chi].faithful, "inflated character is unfaithful")?;
    let p = &a.chars[chi].anchor.as_ref().map_err(|e| e.clone())?.anchor;
    let q = &ha.chars[psi].anchor.as_ref().map_err(|e| e.clone())?.anchor;
    let image = hom.image_subgroup(&h, p);
    ensure(h.are_conjugate(&image, q).unwrap(), "PN/N is an anchor of ψ")?;
    let n = hom.kernel(&g);
    let sylow_n = 1usize << n.order().trailing_zeros();
    ensure(p.intersection(&g, &n).order() == sylow_n, "P ∩ N is a Sylow subgroup of N")?;
    Ok((g, hom, a.chars[chi].clone()))
}

fn criterion_6(s: &Setup) -> Outcome {
    let (_, _, c) = inflation(s, "S4", "S3", 2)?;
    ensure(c.anchor.as_ref().unwrap().anchor_order() == 4, "S4 degree-2 anchor order 4")?;
    let (g, hom, c) = inflation(s, "GL(2,3)", "S4", 2)?;
    let (h, _) = s.group("S4");
    let v4 = h.p_core(2);
    let preimage = Subgroup::from_elements(&g, (0..g.order()).filter(|&x| v4.contains(hom.image_of(x))).collect());
    let anchor = &c.anchor.as_ref().unwrap().anchor;
    ensure(anchor.order() == 8 && g.are_conjugate(anchor, &preimage).unwrap(), "GL(2,3) unfaithful anchor is the preimage of V4")?;
    Ok("S4 <- S3 and GL(2,3) <- S4: quotient anchors match and P ∩ N is Sylow in N; GL(2,3) anchor of order 8".into())
}

const PROPERTY_CHECKS: [&str; 9] = [
    "anchor_class_unique",
    "p_core_in_anchor",
    "anchor_in_block_defect_group",
    "defect_zero_iff_trivial_anchor",
    "abelian_defect_group_is_anchor",
    "height_zero_anchor_order",
    "mod_p_defect_in_anchor",
    "brauer_quotient_nonzero_at_anchor",
    "trace_defect_monotone",
];

fn criterion_7(s: &Setup) -> Outcome {
    let r = verify_catalog(&s.catalog, "builtin", Some(&[2, 3, 5]), &VerifyConfig::default(), None).map_err(|e| e.to_string())?;
    ensure(r.all_passed(), format!("failed: {:?}", r.summary.failed_checks))?;
    let mut counts = Vec::new();
    for name in PROPERTY_CHECKS {
        let n = r.runs.iter().flat_map(|run| &run.checks).filter(|c| c.name == name).count();
        ensure(n > 0, format!("{name} never ran"))?;
        counts.push(n);
    }
    let agree = full_field_agreement(s)?;
    Ok(format!(
        "{} runs, {} checks all pass; property counts {counts:?}; full-field agreement on {agree} runs",
        r.summary.runs, r.summary.checks
    ))
}

/// Ramification index of p in Q(ζ_n).
fn ram(p: u64, n: u64) -> i64 {
    let pa = p.pow(vp_u64(n, p));
    euler_phi(pa) as i64
}

/// Anchors with coefficients in Q(ζ_exp(G)) agree with the value-field computation, and trace
/// defects agree after rescaling to the ramification of each field. Limited to |G|·φ(exp G) ≤ 100.
fn full_field_agreement(s: &Setup) -> Result<usize, String> {
    let full = VerifyConfig { full_field: true, initial_precision: None };
    let mut runs = 0;
    for e in &s.catalog.groups {
        let g = e.build().unwrap();
        let t = compute_table(&g).unwrap();
        if g.order() as u64 * euler_phi(t.m) > 100 {
            continue;
        }
        for p in [2, 3, 5] {
            let a = analyze_group(&g, &t, p, &VerifyConfig::default()).map_err(|e| e.to_string())?;
            let b = analyze_group(&g, &t, p, &full).map_err(|e| e.to_string())?;
            for (x, y) in a.chars.iter().zip(&b.chars) {
                let (ec, em) = (ram(p, x.coefficient_conductor), ram(p, y.coefficient_conductor));
                let (x, y) = (x.anchor.as_ref().map_err(|e| e.clone())?, y.anchor.as_ref().map_err(|e| e.clone())?);
                let scaled = x.trace_defects.iter().zip(&y.trace_defects).all(|(u, v)| u * em == v * ec);
                ensure(
                    x.anchor_class() == y.anchor_class() && scaled,
                    format!("{} p={p}: full-field anchors differ", g.name),
                )?;
            }
            runs += 1;
        }
    }
    Ok(runs)
}

fn vp_int(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        k += 1;
    }
    k
}

fn vp(q: &Q, p: u64) -> Option<i64> {
    (!q.is_zero()).then(|| vp_int(q.numer(), p) - vp_int(q.denom(), p))
}

fn random_q(rng: &mut ChaCha8Rng, p: u64, integral: bool) -> Q {
    let num = rng.gen_range(-6i64..=6);
    let den = loop {
        let d = [1i64, 1, 2, 3, 4, 5, 6, 7, 9][rng.gen_range(0..9)];
        if !integral || d % p as i64 != 0 {
            break d;
        }
    };
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Solves Σ a_i rows[i] = v over Q by elimination on the transposed system.
fn solve_q(rows: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let r = rows.len();
    let n = v.len();
    let mut aug: Vec<Vec<Q>> = (0..n).map(|j| rows.iter().map(|row| row[j].clone()).chain([v[j].clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r {
        let Some(pr) = (row..n).find(|&i| !aug[i][col].is_zero()) else { continue };
        aug.swap(row, pr);
        let inv = aug[row][col].recip();
        for x in aug[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != row && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                let pivot_row = aug[row].clone();
                for (x, y) in aug[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if aug[row..].iter().any(|r| !r[rows.len()].is_zero()) {
        return None;
    }
    let mut a = vec![Q::zero(); r];
    for (i, &c) in pivots.iter().enumerate() {
        a[c] = aug[i][rows.len()].clone();
    }
    Some(a)
}

fn rank_q(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut rank = 0;
    let cols = m.first().map_or(0, |r| r.len());
    for col in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, pr);
        for i in rank + 1..m.len() {
            let f = &m[i][col] / &m[rank][col];
            let pivot_row = m[rank].clone();
            for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                *x = &*x - &f * y;
            }
        }
        rank += 1;
    }
    rank
}

fn lattice_oracle(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut members = 0;
    let mut done = 0;
    while done < 1000 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let dim = rng.gen_range(1..=4);
        let r = rng.gen_range(1..=dim);
        let basis: Vec<Vec<Q>> = (0..r).map(|_| (0..dim).map(|_| random_q(rng, p, false)).collect()).collect();
        if rank_q(&basis) < r {
            continue;
        }
        let mut gens = basis.clone();
        let coeffs: Vec<Q> = (0..r).map(|_| Q::from_integer(BigInt::from(rng.gen_range(-3..=3)))).collect();
        gens.push((0..dim).map(|j| (0..r).map(|i| &coeffs[i] * &basis[i][j]).sum()).collect());
        let v: Vec<Q> = match rng.gen_range(0..3) {
            0 => (0..dim).map(|_| random_q(rng, p, false)).collect(),
            k => {
                let a: Vec<Q> = (0..r).map(|_| random_q(rng, p, true)).collect();
                let scale = if k == 1 { Q::one() } else { Q::new(BigInt::one(), BigInt::from(p)) };
                (0..dim).map(|j| (0..r).map(|i| &a[i] * &basis[i][j]).sum::<Q>() * &scale).collect()
            }
        };
        let expected = match solve_q(&basis, &v) {
            Some(a) => a.iter().all(|x| vp(x, p).is_none_or(|k| k >= 0)),
            None => false,
        };
        let lat = PLattice::normal_form(p, dim, gens).map_err(|e| e.to_string())?;
        let got = lat.member(&v).map_err(|e| e.to_string())?;
        ensure(got == expected, format!("membership mismatch at p={p}: basis {basis:?}, v {v:?}"))?;
        if let Some(c) = lat.coordinates(&v).map_err(|e| e.to_string())? {
            ensure(lat.combine(&c) == v, "coordinates reproduce the vector")?;
        }
        members += expected as usize;
        done += 1;
    }
    Ok(members)
}

fn random_cyclo(rng: &mut ChaCha8Rng, m: u64) -> CycloNum {
    let phi = CycloNum::zero(m).coeffs().len();
    loop {
        let c: Vec<Q> = (0..phi).map(|_| Q::from_integer(BigInt::from(rng.gen_range(-4..=4)))).collect();
        let mut x = CycloNum::from_coeffs(m, c).unwrap();
        if rng.gen_bool(0.3) {
            let one_minus = &CycloNum::one(m) - &CycloNum::zeta_pow(m, 1);
            x = &x * &one_minus;
        }
        if !x.is_zero() {
            return x;
        }
    }
}

fn valuation_oracle(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let fields = [(2u64, 4u64), (2, 8), (2, 12), (3, 3), (3, 9), (3, 12), (5, 5), (5, 20), (2, 3), (3, 8), (2, 24)];
    for i in 0..500 {
        let (p, m) = fields[i % fields.len()];
        let ld = choose_prime(p, m);
        let (x, y) = (random_cyclo(rng, m), random_cyclo(rng, m));
        let vx = ld.valuation(&x).map_err(|e| e.to_string())?.unwrap();
        let vy = ld.valuation(&y).map_err(|e| e.to_string())?.unwrap();
        let vxy = ld.valuation(&(&x * &y)).map_err(|e| e.to_string())?.unwrap();
        ensure(vxy == vx + vy, format!("v(xy) = {vxy} but v(x) + v(y) = {vx} + {vy} in Q(ζ_{m}) at {p}"))?;
        if i < 60 {
            let units: Vec<i64> = (1..m as i64).filter(|j| j.gcd(&(m as i64)) == 1).collect();
            let mut norm = CycloNum::one(m);
            let mut total = 0;
            for &j in &units {
                let s = x.galois(j).map_err(|e| e.to_string())?;
                total += ld.valuation(&s).map_err(|e| e.to_string())?.unwrap();
                norm = &norm * &s;
            }
            let n = norm.as_rational().ok_or("norm is rational")?;
            ensure(total == ld.e as i64 * vp(&n, p).unwrap(), "valuations of conjugates sum to e·v_p(norm)")?;
        }
    }
    for (p, a) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (5, 1)] {
        let m = p.pow(a);
        let ld = choose_prime(p, m);
        let e = (m - m / p) as i64;
        ensure(ld.e as i64 == e, "ramification index φ(p^a)")?;
        let vpp = ld.valuation(&CycloNum::from_int(m, p as i64)).map_err(|e| e.to_string())?;
        ensure(vpp == Some(e), format!("v(p) = {vpp:?} in Q(ζ_{m})"))?;
        let u = &CycloNum::one(m) - &CycloNum::zeta_pow(m, 1);
        ensure(ld.valuation(&u).map_err(|e| e.to_string())? == Some(1), format!("v(1 − ζ_{m}) = 1"))?;
    }
    Ok("500 products multiplicative, 60 norm identities, v(p) = e and v(1 − ζ) = 1 for 5 fields".into())
}

fn orthogonality_oracle(s: &Setup) -> Result<usize, String> {
    let mut tables = 0;
    for e in &s.catalog.groups {
        let g = e.build().unwrap();
        let t = compute_table(&g).unwrap();
        let k = g.num_classes();
        let order = CycloNum::from_int(t.m, g.order() as i64);
        for i in 0..k {
            for j in 0..k {
                let mut row = CycloNum::zero(t.m);
                let mut col = CycloNum::zero(t.m);
                for c in 0..k {
                    let size = CycloNum::from_int(t.m, g.classes[c].size() as i64);
                    let term = &t.characters[i].values[c] * &t.characters[j].values[g.inverse_class(c)];
                    row = &row + &(&size * &term);
                    let col_term = &t.characters[c].values[i] * &t.characters[c].values[j].conj();
                    col = &col + &col_term;
                }
                let delta = if i == j { order.clone() } else { CycloNum::zero(t.m) };
                ensure(row == delta, format!("{}: row orthogonality fails at ({i}, {j})", g.name))?;
                let cent = if i == j { CycloNum::from_int(t.m, g.centralizer_order(i) as i64) } else { CycloNum::zero(t.m) };
                ensure(col == cent, format!("{}: column orthogonality fails at ({i}, {j})", g.name))?;
            }
        }
        tables += 1;
    }
    Ok(tables)
}

fn idempotent_oracle(s: &Setup) -> Result<usize, String> {
    let mut checked = 0;
    for e in &s.catalog.groups {
        let g = e.build().unwrap();
        let t = compute_table(&g).unwrap();
        let k = g.num_classes();
        for p in [2u64, 3, 5] {
            let ld = choose_prime(p, t.m).for_group_order(g.order() as u64);
            let bl = blocks(&t, &ld).map_err(|e| e.to_string())?;
            let mut total = vec![CycloNum::zero(t.m); k];
            for b in &bl {
                for c in 0..k {
                    let mut coeff = CycloNum::zero(t.m);
                    for &chi in &b.members {
                        let ch = &t.characters[chi];
                        let w = Q::new(BigInt::from(ch.degree), BigInt::from(g.order()));
                        coeff = &coeff + &ch.values[g.inverse_class(c)].scale(&w);
                    }
                    ensure(coeff == b.idempotent[c], format!("{} p={p}: idempotent coefficient at class {c}", g.name))?;
                    let v = ld.valuation(&coeff).map_err(|e| e.to_string())?;
                    ensure(v.is_none_or(|v| v >= 0), format!("{} p={p}: coefficient of valuation {v:?}", g.name))?;
                    total[c] = &total[c] + &coeff;
                    checked += 1;
                }
            }
            ensure(total[0].is_one() && total[1..].iter().all(|x| x.is_zero()), "block idempotents sum to 1")?;
        }
    }
    Ok(checked)
}

fn criterion_8(s: &Setup) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20260815);
    let members = lattice_oracle(&mut rng)?;
    let vals = valuation_oracle(&mut rng)?;
    let tables = orthogonality_oracle(s)?;
    let coeffs = idempotent_oracle(s)?;
    Ok(format!(
        "1000 membership instances ({members} members); {vals}; orthogonality on {tables} tables; {coeffs} idempotent coefficients integral"
    ))
}

fn main() {
    let s = Setup { catalog: builtin_catalog() };
    let criteria: [(&str, fn(&Setup) -> Outcome); 8] = [
        ("D8 degree-2 character at 2", criterion_1),
        ("S3 degree-2 character at 2", criterion_2),
        ("S4 degree-2 character at 2", criterion_3),
        ("S5 blocks and heights at 2", criterion_4),
        ("GL(2,3) faithful degree-2 characters at 2", criterion_5),
        ("inflation law", criterion_6),
        ("property suite over the catalog at 2, 3, 5", criterion_7),
        ("infrastructure oracles", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = std::time::Instant::now();
        let outcome = std::panic::catch_unwind(|| f(&s)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS ({name}) {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}) {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
