//! Per-instance verification bundles, shared by the catalog runner and the
//! command line. Each returns a JSON payload and a pass flag.

use crate::bar::{koszul_check, Variant};
use crate::building::BuildingSet;
use crate::fy::FyAlgebra;
use crate::nested::{associativity_instances, Ctx};
use crate::operad::{CheckReport, FyOperad, RelationKind};
use crate::os::OsAlgebra;
use crate::os_operad::OsOperad;
use crate::shuffle::{check_admissibility, check_el, verify_quadratic_gb_factored, Directed};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub const CHECKS: [&str; 8] = ["fy", "duality", "os", "nested", "operad-check", "groebner-check", "el", "koszul"];

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub ok: bool,
    pub outputs: Value,
}

impl Outcome {
    fn skipped(why: &str) -> Outcome {
        Outcome { ok: true, outputs: json!({ "skipped": why }) }
    }
}

fn summary(r: &CheckReport) -> Value {
    json!({ "checked": r.checked, "failures": r.failures.len(), "first_failure": r.failures.first() })
}

fn kinds(v: &[(RelationKind, CheckReport)]) -> (bool, Value) {
    let ok = v.iter().all(|(_, r)| r.ok());
    let m: BTreeMap<String, Value> =
        v.iter().map(|(k, r)| (serde_json::to_value(k).unwrap().as_str().unwrap().to_string(), summary(r))).collect();
    (ok, json!(m))
}

/// `count` distinct atom orders: identity, reverse, then rotations of both.
/// When fewer permutations exist, all of them.
pub fn atom_orders(n: usize, count: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut cands = vec![id.clone(), id.iter().rev().copied().collect()];
    for r in 1..n {
        let mut rot = id.clone();
        rot.rotate_left(r);
        cands.push(rot.clone());
        rot.reverse();
        cands.push(rot);
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    for c in cands {
        if !out.contains(&c) {
            out.push(c);
        }
        if out.len() == count {
            break;
        }
    }
    out
}

pub fn fy(bs: &BuildingSet) -> Outcome {
    match FyAlgebra::build(bs, true) {
        Ok(fy) => {
            let hilbert = fy.hilbert();
            let relation_count: Vec<usize> = (0..hilbert.len())
                .map(|d| {
                    let (cols, rank) = fy.piece_stats(d);
                    cols - rank
                })
                .collect();
            Outcome {
                ok: hilbert == relation_count,
                outputs: json!({ "hilbert": hilbert, "quotient_dims": relation_count, "dim": fy.dim() }),
            }
        }
        Err(e) => Outcome { ok: false, outputs: json!({ "error": e.to_string() }) },
    }
}

pub fn duality(bs: &BuildingSet) -> Outcome {
    if !bs.is_irreducible() {
        return Outcome::skipped("reducible building set");
    }
    match FyAlgebra::new(bs) {
        Ok(fy) => {
            let top = fy.hilbert().last().copied().unwrap_or(0);
            let pd = fy.poincare_duality_holds();
            Outcome { ok: pd && top == 1, outputs: json!({ "poincare_duality": pd, "top_dimension": top }) }
        }
        Err(e) => Outcome { ok: false, outputs: json!({ "error": e.to_string() }) },
    }
}

pub fn os(bs: &BuildingSet) -> Outcome {
    match OsAlgebra::new(bs.lattice().clone(), None) {
        Ok(os) => {
            let exact = os.kernel_equals_image();
            Outcome {
                ok: exact,
                outputs: json!({ "hilbert": os.hilbert(), "projective_hilbert": os.projective_hilbert(), "delta_exact": exact }),
            }
        }
        Err(e) => Outcome { ok: false, outputs: json!({ "error": e.to_string() }) },
    }
}

/// compose ∘ decompose = id and associativity, for nested sets of size ≤ max_size.
pub fn nested(bs: &BuildingSet, max_size: usize) -> Outcome {
    if !bs.is_irreducible() {
        return Outcome::skipped("reducible building set");
    }
    let run = || -> Result<(CheckReport, CheckReport), crate::nested::NestedError> {
        let ctx = Ctx::whole(bs);
        let mut round = CheckReport::default();
        for s in ctx.enumerate(true, Some(max_size))? {
            let others: Vec<usize> = s.iter().copied().filter(|&g| g != bs.top()).collect();
            for mask in 0u32..1 << others.len() {
                let mut sub: Vec<usize> =
                    others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &g)| g).collect();
                sub.push(bs.top());
                sub.sort_unstable();
                let locals = ctx.decompose(&s, &sub)?;
                let back = ctx.compose(&sub, &locals)?;
                round.record(back == s, || format!("{s:?} over {sub:?}"));
            }
        }
        let mut assoc = CheckReport::default();
        for inst in associativity_instances(bs, max_size)? {
            assoc.record(inst.inner_first == inst.outer_first, || format!("{:?}", inst.outer));
        }
        Ok((round, assoc))
    };
    match run() {
        Ok((round, assoc)) => Outcome {
            ok: round.ok() && assoc.ok(),
            outputs: json!({ "round_trip": summary(&round), "associativity": summary(&assoc) }),
        },
        Err(e) => Outcome { ok: false, outputs: json!({ "error": e.to_string() }) },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Fy,
    Fypd,
    Os,
    Osbar,
}

impl std::str::FromStr for MapKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fy" => Ok(MapKind::Fy),
            "fypd" => Ok(MapKind::Fypd),
            "os" => Ok(MapKind::Os),
            "osbar" => Ok(MapKind::Osbar),
            _ => Err(format!("unknown map kind {s:?} (expected fy, fypd, os or osbar)")),
        }
    }
}

pub fn operad(bs: &BuildingSet, kind: MapKind) -> Outcome {
    if !bs.is_irreducible() {
        return Outcome::skipped("reducible building set");
    }
    let run = || -> Result<(bool, Value), crate::operad::OperadError> {
        Ok(match kind {
            MapKind::Fy => {
                let op = FyOperad::new(bs)?;
                let mut wd = CheckReport::default();
                for &g in bs.members().iter().filter(|&&g| g != bs.top()) {
                    wd.merge(op.cooperad_well_defined(g)?);
                }
                let (rel_ok, rel) = kinds(&op.check_cooperad_relations()?);
                let formula = op.check_nested_formula(None)?;
                let (_, ev) = op.evaluation_matrix()?;
                let full = ev.rank() == op.whole()?.dim();
                (
                    wd.ok() && rel_ok && formula.ok() && full,
                    json!({ "well_defined": summary(&wd), "relations": rel, "nested_formula": summary(&formula), "evaluation_full_rank": full }),
                )
            }
            MapKind::Fypd => {
                let op = FyOperad::new(bs)?;
                let mut wd = CheckReport::default();
                for &g in bs.members().iter().filter(|&&g| g != bs.top()) {
                    wd.merge(op.pd_well_defined(g)?);
                }
                let (rel_ok, rel) = kinds(&op.check_pd_relations()?);
                let conj = op.check_pd_conjugation()?;
                (
                    wd.ok() && rel_ok && conj.ok(),
                    json!({ "well_defined": summary(&wd), "relations": rel, "conjugation": summary(&conj) }),
                )
            }
            MapKind::Os => {
                let op = OsOperad::new(bs, None)?;
                let wd = op.check_well_defined()?;
                let (rel_ok, rel) = kinds(&op.check_relations(false)?);
                (wd.ok() && rel_ok, json!({ "well_defined": summary(&wd), "relations": rel }))
            }
            MapKind::Osbar => {
                let op = OsOperad::new(bs, None)?;
                let lands = op.check_odd_lands()?;
                let (rel_ok, rel) = kinds(&op.check_relations(true)?);
                (lands.ok() && rel_ok, json!({ "lands_in_kernel": summary(&lands), "relations": rel }))
            }
        })
    };
    match run() {
        Ok((ok, v)) => Outcome { ok, outputs: v },
        Err(e) => Outcome { ok: false, outputs: json!({ "error": e.to_string() }) },
    }
}

pub fn operad_all(bs: &BuildingSet) -> Outcome {
    let mut ok = true;
    let mut out = serde_json::Map::new();
    for kind in [MapKind::Fy, MapKind::Fypd, MapKind::Os, MapKind::Osbar] {
        let o = operad(bs, kind);
        ok &= o.ok;
        out.insert(serde_json::to_value(kind).unwrap().as_str().unwrap().to_string(), o.outputs);
    }
    Outcome { ok, outputs: Value::Object(out) }
}

/// Normal-monomial counts for each order, plus admissibility for the first.
pub fn groebner(bs: &BuildingSet, orders: &[Vec<usize>], max_size: usize) -> Outcome {
    let mut ok = true;
    let mut per_order = Vec::new();
    for order in orders {
        match verify_quadratic_gb_factored(bs, order) {
            Ok(r) => {
                ok &= r.verdict;
                per_order.push(json!({
                    "atom_order": order,
                    "normal_monomials": r.normal_monomials,
                    "fy_dim": r.fy_dim,
                    "factors": r.factors.len(),
                    "verdict": r.verdict,
                }));
            }
            Err(e) => {
                ok = false;
                per_order.push(json!({ "atom_order": order, "error": e.to_string() }));
            }
        }
    }
    let admissibility = if bs.is_irreducible() {
        let mut rep = CheckReport::default();
        for order in orders {
            match Directed::new(bs, order).and_then(|d| check_admissibility(&d, max_size)) {
                Ok(r) => rep.merge(r),
                Err(e) => rep.record(false, || e.to_string()),
            }
        }
        ok &= rep.ok();
        summary(&rep)
    } else {
        json!({ "skipped": "reducible building set" })
    };
    Outcome { ok, outputs: json!({ "orders": per_order, "admissibility": admissibility }) }
}

pub fn el(bs: &BuildingSet, orders: &[Vec<usize>]) -> Outcome {
    let mut ok = true;
    let mut per_order = Vec::new();
    for order in orders {
        match Directed::new(bs, order) {
            Ok(d) => {
                let r = check_el(&d);
                ok &= r.ok();
                per_order.push(json!({ "atom_order": order, "pairs": summary(&r) }));
            }
            Err(e) => {
                ok = false;
                per_order.push(json!({ "atom_order": order, "error": e.to_string() }));
            }
        }
    }
    Outcome { ok, outputs: json!({ "orders": per_order }) }
}

pub fn koszul(bs: &BuildingSet, variants: &[Variant]) -> Outcome {
    if !bs.is_irreducible() {
        return Outcome::skipped("reducible building set");
    }
    let mut ok = true;
    let mut out = serde_json::Map::new();
    for &v in variants {
        let key = serde_json::to_value(v).unwrap().as_str().unwrap().to_string();
        match koszul_check(bs, v) {
            Ok(r) => {
                ok &= r.koszul;
                out.insert(key, serde_json::to_value(&r).expect("report serializes"));
            }
            Err(e) => {
                ok = false;
                out.insert(key, json!({ "error": e.to_string() }));
            }
        }
    }
    Outcome { ok, outputs: Value::Object(out) }
}

/// Run one named catalog check with its default parameters.
pub fn run_named(bs: &BuildingSet, check: &str) -> Option<Outcome> {
    let n = bs.lattice().num_atoms();
    Some(match check {
        "fy" => fy(bs),
        "duality" => duality(bs),
        "os" => os(bs),
        "nested" => nested(bs, 3),
        "operad-check" => operad_all(bs),
        "groebner-check" => groebner(bs, &atom_orders(n, 3), 3),
        "el" => el(bs, &atom_orders(n, 2)),
        "koszul" => koszul(bs, &[Variant::Projective, Variant::Affine]),
        _ => return None,
    })
}
